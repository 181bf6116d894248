import random

import pytest

from charp.errors import NotFormallySmooth, PrecisionTooLow, ResidueEmbeddingInvalid
from charp.fixtures import EMBEDDING_PAIRS, fixture
from charp.series import (CAP_NEG, Laurent, adhoc_refute, build_embedding, complete_at, random_integral,
                          verify_embedding)
from charp.smoothness import formally_smooth_over


@pytest.fixture(scope="module")
def models():
    return {name: complete_at(fixture(name), N) for name, N in
            [("F5x@x", 4), ("K2", 4), ("K3", 8), ("K1", 8), ("F5tx@x", 4)]}


def test_geometric_series(models):
    M = models["F5x@x"]
    x = M.transport("1/(1 - x)")
    assert M.show(x) == "1 + pi + pi^2 + pi^3 + O(pi^4)"
    assert M.equal(M.mul(x, M.transport("1 - x")), M.from_int(1))


def test_uniformiser_goes_to_pi(models):
    for name in ("F5x@x", "K2", "K3"):
        M = models[name]
        assert M.equal(M.transport(M.place.uniformiser), M.pi())


def test_k2_transport_of_t(models):
    M = models["K2"]
    t = M.transport("t")
    assert str(M.residue(t)) == "t"
    assert M.valuation(M.sub(t, M.lift_residue("t"))) == 1
    assert M.show(t) == "t + (-1)*pi + O(pi^4)"


def test_k3_transport(models):
    M = models["K3"]
    assert M.valuation(M.sub(M.transport("t"), M.lift_residue("t"))) == 2


def test_laurent_inverse_and_cap(models):
    M = models["F5x@x"]
    y = M.transport("(1 + x)/x^2")
    assert y.valuation() == -2
    # the pi^(-2) leading term costs two digits of absolute precision
    assert M.mul(y, M.transport("x^2/(1 + x)")).equal_mod(M.from_int(1), 2)
    with pytest.raises(Exception):
        M.element({-(CAP_NEG + 1): M.ops.one})


def test_transport_is_homomorphism(models):
    rng = random.Random(1)
    for name in ("K2", "K3", "F5tx@x"):
        M = models[name]
        gens = list(M.place.field.generators)
        for _ in range(30):
            a = " + ".join(f"{rng.randrange(1, 5)}*{rng.choice(gens)}^{rng.randrange(0, 3)}" for _ in range(2))
            b = " + ".join(f"{rng.randrange(1, 5)}*{rng.choice(gens)}^{rng.randrange(0, 3)}" for _ in range(2))
            ta, tb = M.transport(a), M.transport(b)
            assert M.equal(M.transport(f"({a}) + ({b})"), M.add(ta, tb))
            assert M.equal(M.transport(f"({a})*({b})"), M.mul(ta, tb))


def test_refutation_k3(models):
    M = models["K3"]
    res = adhoc_refute(M, ["t"])
    assert res.found
    cx = res.counterexample
    assert cx.gamma == "t" and cx.ts == () and cx.value == 2
    assert M.show(cx.xhat) == "(-1)*pi^2 + O(pi^8)"
    assert not formally_smooth_over(M.place).verdict


def test_refutation_k2_absent(models):
    res = adhoc_refute(models["K2"], ["t"], search_budget=500)
    assert not res.found


def test_refutation_vacuous(models):
    res = adhoc_refute(models["F5x@x"], [])
    assert not res.found and res.tried == 0


def test_refutation_needs_precision():
    with pytest.raises(PrecisionTooLow):
        adhoc_refute(complete_at(fixture("K3"), 1), ["t"])


def test_identity_embedding(models):
    M = models["F5tx@x"]
    emb = build_embedding(M, M, {"t": "t", "x": "x"}, 4)
    assert emb.kind == "separable"
    rng = random.Random(3)
    for _ in range(10):
        a = random_integral(M, rng)
        assert emb(a).equal_mod(a, 4)


def test_k2_re_presented():
    R, S = complete_at(fixture("K2"), 4), complete_at(fixture("K2'"), 4)
    emb = build_embedding(R, S, {"t": "t", "X": "Z - 1"}, samples=100)
    assert emb.kind == "inseparable" and emb.gamma == "t"
    assert all(emb.checks.values())


def test_separable_residue_extension():
    R, S = complete_at(fixture("F5x@x"), 4), complete_at(fixture("F5x@x2+2"), 4)
    emb = build_embedding(R, S, {"x": "0"})
    assert emb.to_json()["pi_image"] == "pi + O(pi^4)"


def test_embedding_errors():
    K3 = complete_at(fixture("K3"), 4)
    K2 = complete_at(fixture("K2"), 4)
    with pytest.raises(NotFormallySmooth):
        build_embedding(K3, K2, {"t": "t", "X": "X", "pi": "0"})
    with pytest.raises(PrecisionTooLow):
        build_embedding(K2, K2, {"t": "t", "X": "X"}, N=1)
    with pytest.raises(ResidueEmbeddingInvalid):
        build_embedding(K2, K2, {"t": "t + 1", "X": "X"})


@pytest.mark.parametrize("a,b,m", EMBEDDING_PAIRS)
def test_embedding_refines(a, b, m):
    e4 = build_embedding(complete_at(fixture(a), 4), complete_at(fixture(b), 4), m)
    e8 = build_embedding(complete_at(fixture(a), 8), complete_at(fixture(b), 8), m)
    rng = random.Random(0)
    for _ in range(10):
        x = random_integral(e8.source, rng)
        x4 = e4.source.canon(Laurent(e4.source.ops, x.terms, None).truncate(4))
        assert e8(x).equal_mod(e4(x4), 4)


def test_verify_embedding_is_deterministic():
    R, S = complete_at(fixture("K2"), 4), complete_at(fixture("K2'"), 4)
    emb = build_embedding(R, S, {"t": "t", "X": "Z - 1"})
    assert verify_embedding(emb, 10, seed=5) == verify_embedding(emb, 10, seed=5)
