"""Formulas of the ring and valued-field languages: parsing, rewriting, bounded evaluation."""
