"""Poset identity checks and random fixtures shared by the poset tests and the acceptance suite."""

from __future__ import annotations

from itertools import combinations

from kmob.poset import (
    build_poset, extend_by_zero, greatest_lower_bounds, mobius, order_ideal, unique_min_above,
)

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def random_poset(rng, max_size=10):
    n = rng.randint(1, max_size)
    density = rng.choice([0.1, 0.25, 0.4, 0.7])
    labels = [f"p{i}" for i in range(n)]
    rng.shuffle(labels)
    rels = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n)
            if rng.random() < density]
    return build_poset(labels, rels)


def glb_close(P, seed):
    """Close ``seed`` under greatest lower bounds of all subsets, to a fixpoint."""
    Q = set(seed)
    while True:
        new = set()
        members = sorted(Q)
        for k in range(len(members) + 1):
            for S in combinations(members, k):
                new |= greatest_lower_bounds(P, S)
        if new <= Q:
            return Q
        Q |= new


def glb_closed_restriction_holds(P, Q):
    mu_P = mobius(P)
    mins = {p: unique_min_above(P, Q, p) for p in P}
    assert all((mins[p] == p) == (p in Q) for p in P)
    assert mu_P == extend_by_zero(P, Q, mobius(P.subposet(Q)))


def ideal_union_holds(P, M1, M2):
    P1, P2 = set(order_ideal(P, M1)), set(order_ideal(P, M2))
    assert P1 | P2 == set(P)
    for Q in (P1, P2):
        m = extend_by_zero(P, Q, mobius(P.subposet(Q)))
        for p in P:
            assert sum(m[q] for q in P.up[p]) == (p in Q)
    m1 = extend_by_zero(P, P1, mobius(P.subposet(P1)))
    m2 = extend_by_zero(P, P2, mobius(P.subposet(P2)))
    m12 = extend_by_zero(P, P1 & P2, mobius(P.subposet(P1 & P2)))
    assert mobius(P) == {p: m1[p] + m2[p] - m12[p] for p in P}


def random_cover(P, rng):
    tops = P.maximal()
    M1 = {m for m in tops if rng.random() < 0.5}
    M2 = {m for m in tops if m not in M1 or rng.random() < 0.3}
    return M1, M2
