"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import io
import json
import random
import time

import pytest
import sympy

from charp.cli import run
from charp.differential import inseparability_degree, is_separable_ext, p_independent, p_independent_oracle
from charp.errors import CharpError
from charp.exactfield.poly import PolyRing
from charp.exactfield.presentation import FieldPresentation
from charp.fixtures import EMBEDDING_PAIRS, FIXTURES, fixture
from charp.logic.evaluate import FiniteFieldModel, eval_bounded
from charp.logic.rewrite import eliminate_valuation, residue_interpretation
from charp.series import build_embedding, complete_at, random_integral
from charp.smoothness import (conormal_check, differential_status, formally_smooth_over,
                              proot_adjunction_is_dvr, scan_smooth)
from charp.valuation import enumerate_places, exceptional_places, place_from_prime

from gen import existential_corpus


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
        assert ok, detail
    return emit


def rand_poly(rng, p, gens, deg):
    terms = []
    for _ in range(rng.randrange(1, 4)):
        mon = "*".join(f"{g}^{rng.randrange(0, deg + 1)}" for g in gens)
        terms.append(f"{rng.randrange(1, p)}*{mon}")
    return " + ".join(terms)


def hypersurface_places(seed, count, p=5):
    """Places of F_p(t)[X] at random irreducible polynomials monic in X."""
    rng = random.Random(seed)
    A = FieldPresentation(p, ["t", "X"], [], [["t"]])
    out = []
    while len(out) < count:
        d = rng.randrange(1, 4)
        coeffs = [rand_poly(rng, p, ["t"], 2) if rng.random() < 0.7 else "0" for _ in range(d)]
        f = f"X^{d} + " + " + ".join(f"({c})*X^{i}" for i, c in enumerate(coeffs))
        try:
            out.append(place_from_prime(A, [f], constants=("t",)))
        except CharpError:
            continue
    return out


def k3_family(seed, count):
    """Frac(F_p(t)[X, pi]/(X^p - c*pi^k - t)) at pi: smooth over F_p(t) exactly when k = 1."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        p = rng.choice([2, 3, 5])
        k = rng.randrange(1, 4)
        c = rng.randrange(1, p)
        A = FieldPresentation(p, ["t", "X", "pi"], [f"X^{p} - {c}*pi^{k} - t"], [["t"]])
        out.append((place_from_prime(A, ["pi"], constants=("t",)), k == 1))
    return out


# 1 ---------------------------------------------------------------------------

def test_criterion_1_corpus(report):
    out, err = io.StringIO(), io.StringIO()
    start = time.perf_counter()
    code = run(["corpus"], out=out, err=err)
    elapsed = time.perf_counter() - start
    doc = json.loads(out.getvalue())
    rows = {r["place"]: r for r in doc["example_1_5"]}
    fs = tuple(rows[k]["formally_smooth"] for k in ("K1", "K2", "K3"))
    ur = tuple(rows[k]["ur_t"] for k in ("K1", "K2", "K3"))
    witnesses = all("dependence" in rows[k] for k in ("K1", "K3"))
    ok = code == 0 and fs == (False, True, False) and ur == (False, True, False) and witnesses and elapsed < 5
    report(1, ok, f"formally_smooth={fs} ur_t={ur} witnesses={witnesses} runtime={elapsed:.2f}s")


# 2 ---------------------------------------------------------------------------

def p_independence_inputs(seed, count):
    rng = random.Random(seed)
    for _ in range(count):
        p = rng.choice([2, 3, 5])
        n = rng.randrange(1, 4)
        gens = ["a", "b", "c"][:n]
        k = rng.randrange(1, n + 1)
        elems = [rand_poly(rng, p, gens, 4) for _ in range(k)]
        roll = rng.random()
        # about a third of the inputs are dependent by construction
        if roll < 0.12:
            elems[-1] = f"({elems[0]})^{p}"
        elif roll < 0.24 and k >= 2:
            elems[-1] = f"({elems[0]}) + ({rng.choice(gens)})^{p}*({elems[0]})^2"
        elif roll < 0.33 and k >= 3:
            elems[-1] = f"({elems[0]})*({elems[1]})"
        yield FieldPresentation(p, gens), elems


def test_criterion_2_dual_p_independence(report):
    start = time.perf_counter()
    total = agree = dependent = 0
    for L, elems in p_independence_inputs(2024, 220):
        a, b = p_independent(elems, L), p_independent_oracle(elems, L)
        total += 1
        agree += a == b
        dependent += not a
    elapsed = time.perf_counter() - start
    ok = total >= 200 and agree == total and elapsed < 60
    report(2, ok, f"{agree}/{total} agree ({dependent} dependent) in {elapsed:.1f}s")


# 3 ---------------------------------------------------------------------------

def test_criterion_3_proot_cross_validation(report):
    mismatches = []
    for name, fx in FIXTURES.items():
        P = fixture(name)
        v = formally_smooth_over(P, list(fx.subfield), list(fx.basis) or None)
        if proot_adjunction_is_dvr(P, list(fx.basis)) != v.verdict:
            mismatches.append(name)
    ok = len(FIXTURES) >= 12 and not mismatches
    report(3, ok, f"{len(FIXTURES) - len(mismatches)}/{len(FIXTURES)} fixtures agree {mismatches or ''}")


# 4 ---------------------------------------------------------------------------

def test_criterion_4_conormal_identity(report):
    bad = [name for name in FIXTURES if not conormal_check(fixture(name))]
    random_places = hypersurface_places(4, 50)
    bad += [P.label for P in random_places if not conormal_check(P)]
    ok = not bad and len(random_places) == 50
    report(4, ok, f"{len(FIXTURES)} fixtures + {len(random_places)} random places, failures {bad}")


# 5 ---------------------------------------------------------------------------

def oracle_failure_labels(h):
    t = sympy.symbols("t")
    dh = sympy.diff(sympy.sympify(h.replace("^", "**")), t)
    ring = PolyRing(5, ["t"])
    labels = set()
    for f, _ in sympy.factor_list(dh, modulus=5)[1]:
        poly = sympy.Poly(f, t, modulus=5)
        if poly.degree() < 1:
            continue
        coeffs = [int(c) % 5 for c in poly.all_coeffs()]
        lead = pow(coeffs[0], -1, 5)
        text = " + ".join(f"{c * lead % 5}*t^{poly.degree() - i}" for i, c in enumerate(coeffs))
        labels.add(f"({ring.parse(text)})")
    return labels


def test_criterion_5_finite_failure_surrogate(report):
    places = enumerate_places(FieldPresentation(5, ["t"]), 6)
    lines, ok = [], True
    for h in ("t^2", "t^2 + t", "t^3 + 1"):
        records = scan_smooth(places, h)
        found = {r.place.label for r in records if r.status == "vanishes"}
        poles = {r.place.label for r in records if r.status == "pole"}
        expected = oracle_failure_labels(h)
        ok &= found == expected and poles == {"inf"}
        lines.append(f"{h}: {sorted(found)} vs {sorted(expected)}")
    report(5, ok, f"{len(places)} places; " + "; ".join(lines))


# 6 ---------------------------------------------------------------------------

def test_criterion_6_exceptional_places(report):
    places = enumerate_places(FieldPresentation(5, ["x"]), 5)
    exc = {P.label for P, _ in exceptional_places(places, "x^2")}
    failures = [P.label for P in places if P.label not in exc and differential_status(P, "x^2") != "nonzero"]
    ok = exc == {"inf", "(x)"} and not failures
    report(6, ok, f"exceptional {sorted(exc)}; {len(places) - len(exc)} other places, {len(failures)} failures")


# 7 ---------------------------------------------------------------------------

def separability_violations(P, C, expected=None):
    out = []
    verdict = formally_smooth_over(P, C).verdict
    if expected is not None and verdict is not expected:
        out.append("verdict")
    if not C:
        return out if verdict else out + ["perfect base"]
    kappa = P.residue_field
    kappa_over_C = FieldPresentation(kappa.p, kappa.generators, kappa.relations, [C])
    if is_separable_ext(kappa_over_C, C) and not verdict:
        out.append("separable residue field but not smooth")
    if verdict:
        L = P.field
        if not is_separable_ext(FieldPresentation(L.p, L.generators, L.relations, [C]), C):
            out.append("smooth but Frac(O) inseparable")
        if inseparability_degree(kappa_over_C, C) > 1:
            out.append("smooth but inseparability degree > 1")
    return out


def test_criterion_7_separability_properties(report):
    bad = {}
    for name, fx in FIXTURES.items():
        v = separability_violations(fixture(name), list(fx.subfield), fx.smooth)
        if v:
            bad[name] = v
    generated = [(P, True) for P in hypersurface_places(7, 25)] + k3_family(7, 25)
    for P, expected in generated:
        v = separability_violations(P, ["t"], expected)
        if v:
            bad[P.label] = v
    ok = not bad and len(generated) == 50
    report(7, ok, f"{len(FIXTURES)} fixtures + {len(generated)} generated instances, violations {bad}")


# 8 ---------------------------------------------------------------------------

def contradicts(a, b):
    return a.value is not None and b.value is not None and a.value != b.value


def test_criterion_8_rewriting_soundness(report):
    finite_checked = contradictions = 0
    for p in (3, 5):
        M = FiniteFieldModel.prime(p)
        zero = M.from_int(0)
        for psi in existential_corpus(80 + p, 100, valued=True):
            rewritten = eliminate_valuation(psi, "w")
            a = eval_bounded(psi, M)
            b = eval_bounded(rewritten, M, assignment={"w": zero})
            finite_checked += 1
            contradictions += contradicts(a, b) or a.value is None or b.value is None
        for theta in existential_corpus(90 + p, 100):
            a = eval_bounded(theta, M)
            b = eval_bounded(residue_interpretation(theta), M)
            finite_checked += 1
            contradictions += contradicts(a, b) or a.value is None or b.value is None

    truncated_checked = decided = 0
    for name in ("K2", "K3", "F5tx@x"):
        M = complete_at(fixture(name), 4)
        for psi in existential_corpus(7, 25, consts=("t",), valued=True, max_vars=1):
            a = eval_bounded(psi, M, 3000)
            b = eval_bounded(eliminate_valuation(psi, "w"), M, 3000, assignment={"w": M.pi()})
            truncated_checked += 1
            decided += a.value is not None and b.value is not None
            contradictions += contradicts(a, b)
    for name in ("F5x@x", "F5x@x2+2"):
        P = fixture(name)
        M = complete_at(P, 4)
        kappa = FiniteFieldModel.of(P.residue_field)
        for theta in existential_corpus(11, 25, max_vars=1):
            a = eval_bounded(theta, kappa)
            b = eval_bounded(residue_interpretation(theta), M, 3000)
            truncated_checked += 1
            decided += a.value is not None and b.value is not None
            contradictions += contradicts(a, b)
    ok = contradictions == 0 and finite_checked == 400
    report(8, ok, f"{finite_checked} finite-field checks, {truncated_checked} truncated checks "
                  f"({decided} decided both sides), {contradictions} contradictions")


# 9 ---------------------------------------------------------------------------

def test_criterion_9_embeddings(report):
    lines, ok = [], True
    for a, b, m in EMBEDDING_PAIRS:
        embs = {N: build_embedding(complete_at(fixture(a), N), complete_at(fixture(b), N), m) for N in (4, 8)}
        checks = all(all(e.checks.values()) for e in embs.values())
        rng = random.Random(9)
        refine = True
        for _ in range(20):
            x = random_integral(embs[8].source, rng)
            x4 = embs[4].source.canon(x.truncate(4))
            refine &= embs[8](x).equal_mod(embs[4](x4), 4)
        ok &= checks and refine
        lines.append(f"{a}->{b} {embs[4].kind}: checks={checks} refines={refine}")
    report(9, ok, "; ".join(lines))


# 10 --------------------------------------------------------------------------

def test_criterion_10_p_indep_simple_ext(report):
    rng = random.Random(10)
    cases = failures = 0
    for p in (2, 3, 5):
        for m in (1, 2):
            for n in (1, 2, 3):
                for _ in range(3):
                    gens = ["a", "b", "c"][:n]
                    K = FieldPresentation(p, gens)
                    xs = [rand_poly(rng, p, gens, 2) for _ in range(n)]
                    if not p_independent(xs, K):
                        continue
                    L = FieldPresentation(p, gens + ["u"], [f"u^{p ** m} - ({xs[0]})"], [gens])
                    cases += 1
                    if not p_independent(["u"] + xs[1:], L):
                        failures += 1
    ok = failures == 0 and cases >= 30
    report(10, ok, f"{cases} generated extensions K(x1^(1/p^m)), {failures} failures")
