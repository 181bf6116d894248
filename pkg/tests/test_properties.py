import random

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from charp.differential import p_independent, p_independent_oracle
from charp.errors import FormulaSyntaxError, UnknownConstant
from charp.exactfield.factor import factor_univariate, is_pth_power
from charp.exactfield.groebner import IdealHandle, groebner_basis, ideal_membership
from charp.exactfield.poly import PolyRing
from charp.exactfield.presentation import FieldPresentation, transcendence_degree
from charp.logic.ast import Not, print_formula
from charp.logic.evaluate import FiniteFieldModel, eval_bounded
from charp.logic.parser import parse
from charp.logic.rewrite import eliminate_inequalities, to_nnf
from charp.valuation import place_from_prime, residue_of, valuation_of

from gen import formulas, random_existential, seeds

FAST = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
CONST_FIELD = FieldPresentation(5, ["t", "X"])


def poly_text(coeffs, var):
    parts = [f"{c}*{var}^{i}" for i, c in enumerate(coeffs) if c]
    return " + ".join(parts) or "0"


coeff_lists = st.lists(st.integers(0, 4), min_size=1, max_size=4)
nonzero_polys = coeff_lists.filter(any)


@FAST
@given(formulas)
def test_print_parse_roundtrip(f):
    assert parse(print_formula(f), CONST_FIELD) == f


def test_parser_fuzz_raises_only_syntax_errors():
    rng = random.Random(11)
    alphabet = list("xyt01() =*+-^!&|,EA`") + ["InO(", " E ", " A "]
    for _ in range(500):
        text = "".join(rng.choice(alphabet) for _ in range(rng.randrange(1, 16)))
        try:
            parse(text)
        except (FormulaSyntaxError, UnknownConstant):
            pass


def closed_sentence(seed):
    rng = random.Random(seed)
    f = random_existential(rng, valued=rng.random() < 0.5)
    return Not(f) if rng.random() < 0.5 else f


@FAST
@given(seeds)
def test_nnf_preserves_finite_verdicts(seed):
    f = closed_sentence(seed)
    M = FiniteFieldModel.prime(3)
    assert eval_bounded(f, M).value == eval_bounded(to_nnf(f), M).value


@FAST
@given(seeds)
def test_inequality_elimination_preserves_finite_verdicts(seed):
    f = closed_sentence(seed)
    M = FiniteFieldModel.prime(3)
    assert eval_bounded(f, M).value == eval_bounded(eliminate_inequalities(f), M).value


@pytest.fixture(scope="module")
def quadratic_place():
    # t^2 + 2 is irreducible over F_5 since 3 is not a square
    return place_from_prime(FieldPresentation(5, ["t"]), ["t^2 + 2"])


@FAST
@given(nonzero_polys, nonzero_polys, st.integers(0, 3))
def test_valuation_multiplicative_and_ultrametric(quadratic_place, a, b, k):
    P = quadratic_place
    f = f"({poly_text(a, 't')})*(t^2 + 2)^{k}"
    g = poly_text(b, "t")
    vf, vg = valuation_of(P, f), valuation_of(P, g)
    assert valuation_of(P, f"({f})*({g})") == vf + vg
    assert valuation_of(P, f"({f})/({g})") == vf - vg
    s = FieldPresentation(5, ["t"]).element(f"({f}) + ({g})")
    if not s.is_zero():
        assert valuation_of(P, s) >= min(vf, vg)


@FAST
@given(coeff_lists, coeff_lists)
def test_residue_is_a_ring_map(quadratic_place, a, b):
    P = quadratic_place
    f, g = poly_text(a, "t"), poly_text(b, "t")
    rf, rg = residue_of(P, f), residue_of(P, g)
    assert residue_of(P, f"({f})*({g})") == rf * rg
    assert residue_of(P, f"({f}) + ({g})") == rf + rg


small_polys = st.lists(st.tuples(st.integers(1, 4), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)),
                       min_size=1, max_size=3)


def xyz_text(terms):
    return " + ".join(f"{c}*x^{i}*y^{j}*z^{k}" for c, i, j, k in terms)


@settings(max_examples=25, deadline=None)
@given(st.lists(small_polys, min_size=1, max_size=3), st.randoms(use_true_random=False))
def test_groebner_independent_of_generator_order(gens, rnd):
    R = PolyRing(3, ["x", "y", "z"])
    polys = [R.parse(xyz_text(g)) for g in gens]
    shuffled = list(polys)
    rnd.shuffle(shuffled)
    a = groebner_basis(IdealHandle.of(R, polys)).basis
    b = groebner_basis(IdealHandle.of(R, shuffled)).basis
    assert [str(g) for g in a] == [str(g) for g in b]


@settings(max_examples=25, deadline=None)
@given(st.lists(small_polys, min_size=1, max_size=2), small_polys)
def test_membership_closed_under_multiples(gens, mult):
    R = PolyRing(3, ["x", "y", "z"])
    polys = [R.parse(xyz_text(g)) for g in gens]
    I = IdealHandle.of(R, polys)
    h = R.parse(xyz_text(mult))
    for f in polys:
        assert ideal_membership(f * h, I)
    assert ideal_membership(sum((f * h for f in polys), R.zero()), I)


@FAST
@given(st.sampled_from([2, 3, 5]), st.lists(st.integers(0, 4), min_size=2, max_size=7))
def test_factors_remultiply(p, coeffs):
    coeffs = [c % p for c in coeffs]
    if not any(coeffs[1:]):
        return
    text = poly_text(coeffs, "X")
    factors = factor_univariate(text, FieldPresentation(p, []), "X")
    R = factors[0][0].ring
    prod = R.one()
    for f, m in factors:
        prod = prod * f ** m
    target = R.parse(text)
    parts = target.coeffs_in("X")
    # factors are monic
    assert prod * parts[max(parts)] == target


@FAST
@given(nonzero_polys, nonzero_polys)
def test_pth_powers_are_recognised(a, b):
    L = FieldPresentation(5, ["s", "t"])
    c = L.element(f"({poly_text(a, 's')} + t)/({poly_text(b, 't')} + s)")
    z = is_pth_power(c ** 5)
    assert z is not None and z ** 5 == c ** 5


@FAST
@given(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.data())
def test_transcendence_degree_adds_up(p, n, data):
    gens = [f"u{i}" for i in range(n)]
    k = data.draw(st.integers(0, n))
    L = FieldPresentation(p, gens, [], [gens[:k]] if 0 < k < n else [])
    below = transcendence_degree(FieldPresentation(p, gens[:k]), None)
    assert transcendence_degree(L, None) == n
    if 0 < k < n:
        assert transcendence_degree(L, gens[:k]) + below == n


monomials = st.tuples(st.integers(0, 6), st.integers(0, 6)).filter(any)


@FAST
@given(st.lists(monomials, min_size=1, max_size=3), st.sampled_from([2, 3]))
def test_p_independence_matches_oracle(exps, p):
    L = FieldPresentation(p, ["s", "t"])
    elems = [f"s^{i}*t^{j}" for i, j in exps]
    assert p_independent(elems, L) == p_independent_oracle(elems, L)
