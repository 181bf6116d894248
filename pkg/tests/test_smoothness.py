import pytest

from charp.differential import inseparability_degree, is_separable_ext
from charp.errors import NotTriviallyValued
from charp.exactfield.presentation import FieldPresentation
from charp.fixtures import FIXTURES, fixture
from charp.logic.ast import print_formula
from charp.logic.parser import parse
from charp.smoothness import (conormal_check, conormal_dimensions, emit_fs_axioms, formally_smooth_over,
                              proot_adjunction_is_dvr, scan_smooth, ur_sentence, ur_t_holds)
from charp.valuation import enumerate_places, place_from_prime


def test_perfect_subfield_is_always_smooth():
    v = formally_smooth_over(fixture("F5x@x"), [])
    assert v.verdict and v.basis == ()


@pytest.mark.parametrize("name,expected", [("K1", False), ("K2", True), ("K3", False)])
def test_example_places(name, expected):
    v = formally_smooth_over(fixture(name), ["t"], ["t"])
    assert v.verdict is expected
    assert v.recheck()
    if not expected:
        assert v.witness_kind == "dependence"
        assert [str(c) for c in v.witness] == ["1"]


def test_subfield_must_be_trivially_valued():
    with pytest.raises(NotTriviallyValued):
        formally_smooth_over(fixture("F5tx@t"), ["t"])


def test_verdict_stable_under_permuting_basis():
    P = fixture("F5stX@pi")
    assert formally_smooth_over(P, T=["s", "t"]).verdict == formally_smooth_over(P, T=["t", "s"]).verdict


def test_ur_t_examples():
    assert ur_t_holds(fixture("K2"), "t")
    assert not ur_t_holds(fixture("K3"), "t")
    assert ur_t_holds(fixture("F5tx@x"), "t")


def test_proot_examples():
    assert proot_adjunction_is_dvr(fixture("K2"), ["t"])
    assert not proot_adjunction_is_dvr(fixture("K1"), ["t"])
    assert proot_adjunction_is_dvr(fixture("F5x@x"), [])


def test_conormal_examples():
    assert conormal_dimensions(fixture("K2")) == (2, 1)
    assert conormal_dimensions(fixture("F5x@x")) == (1, 0)
    assert conormal_dimensions(fixture("K3")) == (2, 1)
    assert all(conormal_check(fixture(n)) for n in ("K1", "K2", "K3"))


def test_emit_single_is_ur_t():
    axioms = emit_fs_axioms(["t"], 1)
    assert len(axioms) == 1
    assert print_formula(axioms[0]) == "A s, r (InO(r) | !InO((`t` - s^5)*r^2))"
    assert axioms[0] == ur_sentence("t", 5)


def test_emit_empty_and_counts():
    assert emit_fs_axioms([], 3) == []
    axioms = emit_fs_axioms(["s", "t"], 2)
    assert len(axioms) == 4
    for f in axioms:
        assert parse(print_formula(f)) == f


def test_emit_p_parameter():
    f = emit_fs_axioms(["t"], 1, p=3)[0]
    assert "s^3" in print_formula(f)


# properties over the fixture set

@pytest.mark.parametrize("name", list(FIXTURES))
def test_fixture_expected_and_oracle(name):
    fx = FIXTURES[name]
    P = fixture(name)
    v = formally_smooth_over(P, list(fx.subfield), list(fx.basis) or None)
    assert v.verdict is fx.smooth
    assert v.recheck()
    assert proot_adjunction_is_dvr(P, list(fx.basis)) is v.verdict
    assert conormal_check(P)


@pytest.mark.parametrize("name", list(FIXTURES))
def test_fixture_separability_properties(name):
    fx = FIXTURES[name]
    P = fixture(name)
    C = list(fx.subfield)
    verdict = formally_smooth_over(P, C).verdict
    kappa = P.residue_field
    if not C:
        assert verdict
        return
    kappa_over_C = FieldPresentation(kappa.p, kappa.generators, kappa.relations, [C])
    if is_separable_ext(kappa_over_C, C):
        assert verdict
    if verdict:
        field = P.field
        frac = FieldPresentation(field.p, field.generators, field.relations, [C])
        assert is_separable_ext(frac, C)
        assert inseparability_degree(kappa_over_C, C) <= 1


@pytest.mark.parametrize("f", ["X", "X^2 + 2", "X^5 - t", "X^2 - t", "X^5 - t^2 - t", "X^3 + t*X + 1"])
def test_hypersurface_places_are_smooth(f):
    A = FieldPresentation(5, ["t", "X"], [], [["t"]])
    P = place_from_prime(A, [f], constants=("t",))
    assert formally_smooth_over(P).verdict


def test_representation_invariance():
    assert formally_smooth_over(fixture("K2")).verdict == formally_smooth_over(fixture("K2'")).verdict


def test_scan_smooth_small():
    records = scan_smooth(enumerate_places(FieldPresentation(5, ["t"]), 2), "t^2")
    assert [r.place.label for r in records if r.status == "vanishes"] == ["(t)"]
    assert [r.place.label for r in records if r.status == "pole"] == ["inf"]
