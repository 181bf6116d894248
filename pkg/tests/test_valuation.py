import pytest
from sympy import GF as SymGF, Poly, symbols

from charp.errors import NotCodimOne, NotPrime, NotRegular, ValueCapExceeded
from charp.exactfield import finite as ff
from charp.exactfield.presentation import FieldPresentation
from charp.fixtures import fixture
from charp.valuation import (ZeroOutside, enumerate_places, enumerate_places_xa, exceptional_places,
                             place_from_prime, ramification_data, residue_of, valuation_of)

F5x = FieldPresentation(5, ["x"])
F5t = FieldPresentation(5, ["t"])


def at(F, prime, constants=()):
    return place_from_prime(F, prime, constants=constants)


def test_k2_place():
    P = fixture("K2")
    assert str(P.uniformiser) == "X^5 - t"
    assert P.regularity == 1
    assert P.residue_degree == 5
    assert valuation_of(P, "X^5 - t") == 1
    assert valuation_of(P, "(X^5 - t)^3*X") == 3


def test_rational_place():
    P = at(F5x, ["x"])
    assert P.residue_field.is_finite() and P.residue_degree == 1


def test_cusp_is_not_regular():
    A = FieldPresentation(5, ["x", "y"], ["y^2 - x^3"])
    with pytest.raises(NotRegular):
        at(A, ["x", "y"])


def test_bad_primes():
    with pytest.raises(NotPrime):
        at(F5x, ["x^2 - 1"])
    with pytest.raises(NotCodimOne):
        at(FieldPresentation(5, ["x", "y"]), ["x", "y"])


def test_valuation_examples():
    P = at(F5t, ["t"])
    assert valuation_of(P, P.uniformiser) == 1
    assert valuation_of(P, "t^2/(t + 1)") == 2
    assert valuation_of(P, "1/t^3") == -3
    with pytest.raises(ValueCapExceeded):
        valuation_of(P, "t^70")


def test_valuation_in_presented_algebra():
    P = fixture("K3")
    assert valuation_of(P, "pi") == 1
    assert valuation_of(P, "t - X^5") == 2
    assert valuation_of(P, "pi^3/(t - X^5)") == 1


def test_residue_examples():
    P = at(F5x, ["x - 2"])
    assert residue_of(P, "x^2 + 1").is_zero()
    assert residue_of(P, P.uniformiser).is_zero()
    Q = at(F5x, ["x"])
    r = residue_of(Q, "1/x")
    assert isinstance(r, ZeroOutside) and r.is_zero()
    assert residue_of(Q, "(x + 3)/(x + 1)") == Q.residue_field.element(3)


def test_enumerate_rational_counts():
    assert len(enumerate_places(F5x, 1)) == 6
    ps = enumerate_places(F5x, 2)
    assert sum(1 for P in ps if P.residue_degree == 2) == 10


@pytest.mark.parametrize("p", [2, 3, 5])
def test_place_counts_against_brute_force(p):
    F = FieldPresentation(p, ["x"])
    ps = enumerate_places(F, 4)
    x = symbols("x")
    for d in range(1, 5):
        ours = sum(1 for P in ps if P.residue_degree == d and P.label != "inf")
        brute = 0
        for tail in range(p ** d):
            coeffs = [1] + [(tail // p ** i) % p for i in range(d)]
            if Poly(coeffs, x, domain=SymGF(p)).is_irreducible:
                brute += 1
        assert ours == brute == ff.necklace_count(p, d)


def test_enumerated_places_recertify():
    for P in enumerate_places(F5x, 2):
        if P.label == "inf":
            continue
        Q = at(F5x, [str(g) for g in P.prime])
        assert Q.residue_degree == P.residue_degree


def test_elliptic_ramified_over_x_minus_2():
    F = FieldPresentation(5, ["x", "y"], ["y^2 - x^3 - x"])
    ps = enumerate_places(F, 1)
    over = [P for P in ps if str(P.prime[0]) == "x + 3"]
    assert len(over) == 1 and over[0].e == 2
    assert not ps.unresolved


def test_xa_family_counts():
    G = FieldPresentation(5, ["s", "x"], [], [["s"]])
    assert len(enumerate_places_xa(G, 0)) == 5
    ps = enumerate_places_xa(G, 1)
    assert len(ps) == 25
    for P in list(ps)[:6]:
        a = P.prime[0] - P.algebra.ring.gen("x")
        assert valuation_of(P, P.prime[0]) == 1
        assert residue_of(P, "x") == P.residue_field.element(-a)


def test_ramification_examples():
    P = at(F5t, ["t - 2"])
    assert ramification_data(P, "t") == (1, True)
    assert ramification_data(at(F5x, ["x"]), "x^2")[0] == 2
    assert ramification_data(at(F5x, ["x - 1"]), "x^2")[0] == 1


def test_exceptional_examples():
    ps = enumerate_places(F5x, 2)
    assert sorted(P.label for P, _ in exceptional_places(ps, "x")) == ["inf"]
    assert sorted(P.label for P, _ in exceptional_places(ps, "x^2")) == ["(x)", "inf"]
    G = FieldPresentation(5, ["s", "x"], [], [["s"]])
    assert exceptional_places(enumerate_places_xa(G, 1), "x") == []


def test_place_json_record():
    rec = at(F5x, ["x^2 + 2"]).to_json()
    assert rec["prime"] == ["x^2 + 2"] and rec["residue_degree"] == 2 and rec["uniformiser"] == "x^2 + 2"
