import pytest
import sympy
from sympy import GF as SymGF, Poly, symbols

from charp.budget import Budget
from charp.errors import NotPrime, ResourceExceeded, UnsupportedBase
from charp.exactfield import finite as ff
from charp.exactfield.factor import factor_univariate, is_pth_power
from charp.exactfield.groebner import IdealHandle, groebner_basis, ideal_membership, normal_form
from charp.exactfield.poly import PolyRing, PrimeFieldElem
from charp.exactfield.presentation import FieldPresentation, transcendence_degree


def test_prime_field_elem_reduces():
    a = PrimeFieldElem(7, 5)
    assert int(a) == 2
    assert int(a * a.inverse()) == 1
    with pytest.raises(ValueError):
        PrimeFieldElem(1, 4)


def test_multipoly_drops_zero_terms():
    R = PolyRing(5, ["x", "y"])
    f = R.parse("5*x^2 + x*y - x*y + 3")
    assert str(f) == "3"
    assert all(c for c in f.terms.values())


def test_groebner_contained_generator():
    R = PolyRing(5, ["x"])
    gb = groebner_basis(IdealHandle.of(R, [R.parse("x^2 - 1"), R.parse("x - 1")]), "lex")
    assert [str(g) for g in gb.basis] == ["x - 1"]


def test_groebner_unit_ideal():
    R = PolyRing(5, ["x", "y"])
    gb = groebner_basis(IdealHandle.of(R, [R.one()]))
    assert [str(g) for g in gb.basis] == ["1"]


def test_groebner_matches_sympy_and_substitution():
    R = PolyRing(5, ["x", "y"])
    ideal = IdealHandle.of(R, [R.parse("y - x^2"), R.parse("x^3")])
    gb = groebner_basis(ideal, "lex")
    x, y = symbols("x y")
    oracle = sympy.groebner([y - x**2, x**3], x, y, order="lex", modulus=5)
    ours = sorted(str(g).replace(" ", "") for g in gb.basis)
    theirs = sorted(str(g.as_expr()).replace(" ", "").replace("**", "^") for g in oracle.exprs)
    assert len(ours) == len(theirs)
    assert normal_form(R.parse("x^6"), gb, "lex").is_zero()
    # substituting y = x^2 turns y*x^2 into x^4, which x^3 kills
    assert normal_form(R.parse("y*x"), gb, "lex").is_zero()


def test_groebner_is_deterministic():
    R = PolyRing(3, ["x", "y", "z"])
    gens = [R.parse("x*y - z^2"), R.parse("y^2 - x*z"), R.parse("x^2*y + z")]
    a = groebner_basis(IdealHandle.of(R, gens)).basis
    b = groebner_basis(IdealHandle.of(R, list(reversed(gens)))).basis
    assert [str(g) for g in a] == [str(g) for g in b]


def test_groebner_budget():
    R = PolyRing(5, ["x", "y", "z"])
    gens = [R.parse("x^3*y - z^4 + 1"), R.parse("y^3*z - x^2 + 2"), R.parse("z^3*x - y^2 + 3")]
    with pytest.raises(ResourceExceeded):
        groebner_basis(IdealHandle.of(R, gens), budget=Budget(50))


def test_ideal_membership_examples():
    R = PolyRing(5, ["x", "y"])
    I = IdealHandle.of(R, [R.parse("x^2")])
    assert ideal_membership(R.zero(), I)
    assert not ideal_membership(R.parse("x"), I)
    J = IdealHandle.of(R, [R.parse("x^5 + y^5")])
    assert ideal_membership(R.parse("(x + y)^5"), J)


def test_transcendence_degree_examples():
    assert transcendence_degree(FieldPresentation(5, ["t"]), None) == 1
    L = FieldPresentation(5, ["t", "X"], ["X^5 - t"], [["t"]])
    assert transcendence_degree(L, ["t"]) == 0
    C = FieldPresentation(5, ["s", "t", "x", "y"], ["y^2 - x^3 - s"], [["s", "t"]])
    assert transcendence_degree(C, ["s", "t"]) == 1
    assert transcendence_degree(C, None) == transcendence_degree(C, ["s", "t"]) + 2


def test_factor_x2_plus_1_over_f5():
    F5 = FieldPresentation(5, [])
    factors = factor_univariate("X^2 + 1", F5, "X")
    assert sorted(str(f) for f, _ in factors) == ["X + 2", "X + 3"]
    x = symbols("x")
    oracle = sympy.factor_list(x**2 + 1, modulus=5)[1]
    assert len(oracle) == len(factors)


def test_factor_x2_minus_2_irreducible():
    factors = factor_univariate("X^2 - 2", FieldPresentation(5, []), "X")
    assert len(factors) == 1 and factors[0][1] == 1
    assert factors[0][0] == factors[0][0].ring.parse("X^2 - 2")
    assert {a * a % 5 for a in range(5)} == {0, 1, 4}


def test_factor_pth_pattern_over_f5t():
    C = FieldPresentation(5, ["t"])
    factors = factor_univariate("X^5 - t", C, "X")
    assert len(factors) == 1 and factors[0][1] == 1
    # X^5 - t^5 = (X - t)^5
    factors = factor_univariate("X^5 - t^5", C, "X")
    R = factors[0][0].ring
    assert factors == [(R.parse("X - t"), 5)]


def test_factor_unsupported_base():
    C = FieldPresentation(5, ["s", "t"])
    with pytest.raises(UnsupportedBase):
        factor_univariate("X^2 - s*t", C, "X")


@pytest.mark.parametrize("p,text", [(5, "X^4 + X^3 + 2*X + 1"), (3, "X^6 - 1"), (2, "X^7 + X + 1"),
                                    (7, "X^5 + 3*X^2 + 1")])
def test_factor_finite_against_sympy(p, text):
    F = FieldPresentation(p, [])
    factors = factor_univariate(text, F, "X")
    x = symbols("X")
    expr = sympy.sympify(text.replace("^", "**"))
    oracle = sympy.factor_list(expr, modulus=p)[1]
    assert sorted(m for _, m in factors) == sorted(m for _, m in oracle)
    assert sorted(f.degree("X") for f, _ in factors) == sorted(Poly(f, x).degree() for f, _ in oracle)
    R = factors[0][0].ring
    prod = R.one()
    for f, m in factors:
        prod = prod * f ** m
    assert prod == R.parse(text)


def test_factor_separable_over_f5t_remultiplies():
    C = FieldPresentation(5, ["t"])
    factors = factor_univariate("X^2 - t^2", C, "X")
    R = factors[0][0].ring
    assert {f for f, _ in factors} == {R.parse("X + t"), R.parse("X - t")}


def test_is_pth_power_examples():
    L = FieldPresentation(5, ["t"])
    z = is_pth_power(L.element("t^5"))
    assert z == L.gen("t")
    assert is_pth_power(L.gen("t")) is None
    M = FieldPresentation(5, ["s", "t"])
    c = M.element("(s + t)^5 / s^5")
    z = is_pth_power(c)
    assert z is not None and z ** 5 == c
    assert z == M.element("(s + t)/s")


def test_is_pth_power_in_presented_field():
    L = FieldPresentation(5, ["t", "u"], ["u^5 - t"], [["t"]])
    z = is_pth_power(L.gen("t"))
    assert z is not None and z ** 5 == L.gen("t")


def test_presentation_validation():
    FieldPresentation(5, ["t", "u"], ["u^5 - t"], [["t"]]).validate()
    with pytest.raises(NotPrime):
        FieldPresentation(5, ["x"], ["x^2 - 4"]).validate()
    with pytest.raises(NotPrime):
        FieldPresentation(5, ["x"], ["1"]).validate()
    with pytest.raises(ValueError):
        FieldPresentation(5, ["x", "y"], [], [["y"], ["x"]])


def test_tower_json_roundtrip():
    doc = {"p": 5, "generators": ["t", "u"], "relations": ["u^5 - t"], "tower": [["t"], ["t", "u"]]}
    L = FieldPresentation.from_json(doc)
    assert L.to_json() == doc
    assert FieldPresentation.from_json(L.to_json()) == L


def test_finite_field_presentation():
    L = FieldPresentation(5, ["a"], ["a^2 - 2"])
    F = L.finite_field()
    assert F.q == 25
    a = L.to_gf(L.gen("a"))
    assert F.mul(a, a) == F.from_int(2)
    assert L.from_gf(a) == L.gen("a")


@pytest.mark.parametrize("p", [2, 3, 5])
def test_irreducible_counts_match_necklaces_and_sympy(p):
    F = ff.GF(p)
    for d in range(1, 5):
        found = list(ff.monic_irreducibles(F, d))
        assert len(found) == ff.necklace_count(p, d)
    x = symbols("x")
    for f in ff.monic_irreducibles(F, 3):
        assert Poly(list(reversed(f)), x, domain=SymGF(p)).is_irreducible


def test_gf_extension_arithmetic():
    F = ff.GF(3, ff.conway_like_modulus(3, 2))
    elems = F.elements()
    assert len(elems) == 9
    for a in elems:
        if a != F.zero:
            assert F.mul(a, F.inv(a)) == F.one
            assert F.pow(a, 8) == F.one


@pytest.mark.parametrize("p", [2, 3, 5])
def test_zech_field_axioms_and_rank(p):
    import random

    from charp.exactfield.zech import ZERO, zech_field

    F = zech_field(p)
    rng = random.Random(p)
    for _ in range(500):
        a, b, c = (rng.randrange(-1, F.order) for _ in range(3))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, F.neg(a)) == ZERO
    one = F.from_int(1)
    total = ZERO
    for _ in range(p):
        total = F.add(total, one)
    assert total == ZERO
    rows = [[rng.randrange(F.order) for _ in range(4)] for _ in range(3)]
    combo = [F.add(x, F.mul(y, F.from_int(1))) for x, y in zip(rows[0], rows[1])]
    assert F.rank(rows) == 3
    assert F.rank(rows[:2] + [combo]) == 2
