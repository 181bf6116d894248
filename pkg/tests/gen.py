"""Seeded generators shared by the property and acceptance tests."""

import random

from hypothesis import strategies as st

from charp.logic.ast import Add, And, Const, Eq, Exists, Forall, InO, Mul, Neg, Not, Num, Or, Pow, Sub, Var

VARS = ("x", "y", "u")


def random_term(rng, names, consts=(), depth=2):
    if depth == 0 or rng.random() < 0.3:
        pool = [lambda: Num(rng.randrange(0, 5))]
        if names:
            pool += [lambda: Var(rng.choice(names))] * 3
        if consts:
            pool.append(lambda: Const(rng.choice(consts)))
        return rng.choice(pool)()
    kind = rng.choice("+-*^n")
    if kind == "^":
        return Pow(random_term(rng, names, consts, 0), rng.randrange(2, 4))
    if kind == "n":
        return Neg(random_term(rng, names, consts, depth - 1))
    cls = {"+": Add, "-": Sub, "*": Mul}[kind]
    return cls(random_term(rng, names, consts, depth - 1), random_term(rng, names, consts, depth - 1))


def random_literal(rng, names, consts=(), valued=False):
    if valued and rng.random() < 0.4:
        atom = InO(random_term(rng, names, consts))
    else:
        atom = Eq(random_term(rng, names, consts), random_term(rng, names, consts))
    return Not(atom) if rng.random() < 0.35 else atom


def random_qf(rng, names, consts=(), valued=False, depth=2):
    if depth == 0 or rng.random() < 0.3:
        return random_literal(rng, names, consts, valued)
    cls = And if rng.random() < 0.5 else Or
    return cls(random_qf(rng, names, consts, valued, depth - 1), random_qf(rng, names, consts, valued, depth - 1))


def random_existential(rng, consts=(), valued=False, max_vars=2):
    """A closed existential sentence in NNF: E vars (quantifier-free matrix)."""
    k = rng.randrange(1, max_vars + 1)
    names = VARS[:k]
    return Exists(names, random_qf(rng, names, consts, valued))


def existential_corpus(seed, count, consts=(), valued=False, max_vars=2):
    rng = random.Random(seed)
    return [random_existential(rng, consts, valued, max_vars) for _ in range(count)]


# hypothesis strategies

names = st.sampled_from(["x", "y", "z", "r", "s1", "a_b"])
consts = st.sampled_from(["t", "2", "t + 1", "X^2"])

terms = st.recursive(
    st.one_of(names.map(Var), st.integers(0, 30).map(Num), consts.map(Const)),
    lambda inner: st.one_of(
        st.tuples(inner, inner).map(lambda a: Add(*a)),
        st.tuples(inner, inner).map(lambda a: Sub(*a)),
        st.tuples(inner, inner).map(lambda a: Mul(*a)),
        inner.map(Neg),
        st.tuples(inner, st.integers(2, 6)).map(lambda a: Pow(*a)),
    ),
    max_leaves=6,
)

atoms = st.one_of(st.tuples(terms, terms).map(lambda a: Eq(*a)), terms.map(InO))

formulas = st.recursive(
    atoms,
    lambda inner: st.one_of(
        inner.map(Not),
        st.tuples(inner, inner).map(lambda a: And(*a)),
        st.tuples(inner, inner).map(lambda a: Or(*a)),
        st.tuples(st.lists(names, min_size=1, max_size=2, unique=True), inner).map(
            lambda a: Exists(tuple(a[0]), a[1])),
        st.tuples(st.lists(names, min_size=1, max_size=2, unique=True), inner).map(
            lambda a: Forall(tuple(a[0]), a[1])),
    ),
    max_leaves=5,
)

seeds = st.integers(0, 2**32 - 1)
