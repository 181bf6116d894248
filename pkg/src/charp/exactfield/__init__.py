"""Exact algebra over F_p: polynomials, Groebner bases, finite fields and presented fields."""
