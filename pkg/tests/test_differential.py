import pytest

from charp.differential import (absolute_module, almost_separable, almost_separable_on_basis, cotangent_fibre,
                                element_differential, fibre_log_degree, inseparability_degree, is_separable_ext,
                                p_basis, p_independent, p_independent_oracle, relative_module)
from charp.errors import UnsupportedBase
from charp.exactfield.presentation import FieldPresentation
from charp.fixtures import fixture

F5t = FieldPresentation(5, ["t"])
F5st = FieldPresentation(5, ["s", "t"])
ROOT = FieldPresentation(5, ["t", "u"], ["u^5 - t"], [["t"]])


def test_absolute_module_rational():
    M = absolute_module(F5t)
    assert M.dimension() == 1 and M.symbols == ("d(t)",)


def test_absolute_module_root_kills_dt():
    M = absolute_module(ROOT)
    assert [[str(e) for e in r] for r in M.relations] == [["-1", "0"]]
    assert M.dimension() == 1
    # dt is zero, du is not
    assert M.span_rank([element_differential(ROOT.gen("t"))]) == 0
    assert M.span_rank([element_differential(ROOT.gen("u"))]) == 1


def test_absolute_module_cusp():
    L = FieldPresentation(5, ["x", "y"], ["y^2 - x^3"])
    M = absolute_module(L)
    assert [str(e) for e in M.relations[0]] == ["2*x^2", "2*y"]  # -3 = 2 mod 5
    assert M.dimension() == 1


def test_relative_module_examples():
    assert relative_module(F5t, ["t"]).dimension() == 0
    assert relative_module(ROOT, ["t"]).dimension() == 1
    L = FieldPresentation(5, ["t", "x"], [], [["t"]])
    assert relative_module(L, ["t"]).dimension() == 1


def test_p_independent_examples():
    assert p_independent(["t"], F5t)
    assert not p_independent(["t^5"], F5t)
    assert not p_independent(["s", "t", "s + t"], F5st)
    assert p_independent(["s", "t"], F5st)


def test_oracle_examples():
    assert p_independent_oracle(["t"], F5t)
    assert not p_independent_oracle(["t", "t + 1"], F5t)
    assert p_independent_oracle(["s*t"], F5st) == p_independent(["s*t"], F5st)
    with pytest.raises(UnsupportedBase):
        p_independent_oracle(["t"], ROOT)


def test_oracle_fibre_degrees():
    assert fibre_log_degree([], F5st) == 2
    assert fibre_log_degree(["s^5*t + s"], F5st) == 1
    # s*t^5 and s^2*t^10 generate the same L^p-extension
    assert fibre_log_degree(["s*t^5", "s^2*t^10"], F5st) == 1
    assert not p_independent_oracle(["s/(t + 1)^5", "s^3"], F5st)
    assert p_independent_oracle(["s/(t + 1)", "t^2"], F5st)


def test_p_basis_examples():
    assert [str(x) for x in p_basis(F5st)] == ["s", "t"]
    assert [str(x) for x in p_basis(ROOT)] == ["u"]
    L = FieldPresentation(5, ["s", "t", "y"], ["y^2 - s*t"], [["s", "t"]])
    B = p_basis(L)
    assert len(B) == 2 and len(B) == L.imperfect_exponent
    assert p_independent(B, L)
    # the oracle works over F_5(s, y) = L, where t = y^2/s
    R = FieldPresentation(5, ["s", "y"])
    images = {"s": "s", "t": "y^2/s", "y": "y"}
    assert p_independent_oracle([images[str(b)] for b in B], R)


def test_separability_examples():
    L = FieldPresentation(5, ["t", "x"], [], [["t"]])
    assert is_separable_ext(L, ["t"])
    assert not is_separable_ext(ROOT, ["t"])
    Q = FieldPresentation(5, ["t", "y"], ["y^2 - t"], [["t"]])
    assert is_separable_ext(Q, ["t"])


def test_inseparability_degree_examples():
    assert inseparability_degree(FieldPresentation(5, ["t", "y"], ["y^2 - t"], [["t"]]), ["t"]) == 0
    assert inseparability_degree(ROOT, ["t"]) == 1
    two = FieldPresentation(5, ["s", "t", "u", "w"], ["u^5 - t", "w^5 - s"], [["s", "t"]])
    assert inseparability_degree(two, ["s", "t"]) == 2
    assert not almost_separable(two, ["s", "t"])
    assert almost_separable(ROOT, ["t"])


@pytest.mark.parametrize("L,F", [
    (ROOT, ["t"]),
    (FieldPresentation(5, ["s", "t", "u", "w"], ["u^5 - t", "w^5 - s"], [["s", "t"]]), ["s", "t"]),
    (FieldPresentation(5, ["s", "t", "u"], ["u^5 - s*t"], [["s", "t"]]), ["s", "t"]),
    (FieldPresentation(5, ["s", "t", "x"], [], [["s", "t"]]), ["s", "t"]),
])
def test_almost_separable_conditions_agree(L, F):
    assert almost_separable(L, F) == almost_separable_on_basis(L, F)


def test_differential_independent_of_representative():
    L = ROOT
    a = L.element("(u^2 + t)/(u + 1)")
    b = L.element("(u^2 + t)*(u^3 + 2)/((u + 1)*(u^3 + 2))")
    M = absolute_module(L)
    assert M.span_rank([element_differential(a), element_differential(b)]) == 1


def test_cotangent_fibre_k3():
    fib = cotangent_fibre(fixture("K3"))
    assert len(fib.residue_field.generators) == 3
    assert fib.jacobian_rank() == 1
    assert fib.dimension() == 2
