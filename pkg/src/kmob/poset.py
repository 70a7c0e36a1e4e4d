"""Finite posets and the one-variable Möbius function.

The Möbius function used throughout this package is the unique integer
assignment ``mu`` on a finite poset with ``sum(mu[q] for q >= p) == 1`` for
every element ``p``.  It is not the two-variable incidence-algebra function,
although it equals ``-mu(p, top)`` once a top element is adjoined.

>>> P = build_poset("ABCD0", [("0", "C"), ("0", "D"), ("C", "A"),
...                           ("C", "B"), ("D", "A"), ("D", "B")])
>>> sorted(mobius(P).items())
[('0', 1), ('A', 1), ('B', 1), ('C', -1), ('D', -1)]
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

__all__ = [
    "PosetError", "FinitePoset", "build_poset", "mobius", "upper_set",
    "order_ideal", "greatest_lower_bounds", "is_glb_closed",
    "unique_min_above", "extend_by_zero", "parse_poset", "read_poset",
    "format_poset",
]

# exhaustive subset checks are documented test-scale only
GLB_CLOSED_LIMIT = 20


class PosetError(ValueError):
    """Malformed poset input or a violated precondition."""


@dataclass(frozen=True)
class FinitePoset:
    """Immutable finite poset on string labels.

    ``up[p]`` is the principal upper set of ``p`` (including ``p``); the
    order relation is read off it.  Use :func:`build_poset` or
    :meth:`from_leq` rather than calling the constructor directly.
    """

    elements: tuple[str, ...]
    up: Mapping[str, frozenset[str]]

    @classmethod
    def from_leq(cls, elements: Iterable[str],
                 leq: Callable[[str, str], bool]) -> FinitePoset:
        """Build from an order predicate that is already a partial order."""
        elems = _distinct(elements)
        up = {p: frozenset(q for q in elems if leq(p, q)) for p in elems}
        poset = cls(tuple(sorted(elems)), up)
        poset._check_partial_order()
        return poset

    def _check_partial_order(self) -> None:
        for p in self.elements:
            if p not in self.up[p]:
                raise PosetError(f"relation is not reflexive at {p!r}")
            for q in self.up[p]:
                if q != p and p in self.up[q]:
                    raise PosetError(f"cycle detected between {p!r} and {q!r}")
                if not self.up[q] <= self.up[p]:
                    raise PosetError(f"relation is not transitive through {q!r}")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, p: object) -> bool:
        return p in self.up

    def leq(self, p: str, q: str) -> bool:
        return q in self.up[p]

    def lt(self, p: str, q: str) -> bool:
        return p != q and q in self.up[p]

    def down(self, p: str) -> frozenset[str]:
        return frozenset(q for q in self.elements if p in self.up[q])

    def maximal(self) -> list[str]:
        return [p for p in self.elements if len(self.up[p]) == 1]

    def minimal(self) -> list[str]:
        return [p for p in self.elements if len(self.down(p)) == 1]

    def covers(self) -> list[tuple[str, str]]:
        """All pairs ``(p, q)`` with ``q`` covering ``p``, sorted."""
        out = []
        for p in self.elements:
            above = self.up[p] - {p}
            for q in sorted(above):
                if not any(self.lt(r, q) for r in above if r != q):
                    out.append((p, q))
        return out

    def subposet(self, labels: Iterable[str]) -> FinitePoset:
        keep = frozenset(labels)
        self.check_labels(keep)
        up = {p: self.up[p] & keep for p in keep}
        return FinitePoset(tuple(sorted(keep)), up)

    def check_labels(self, labels: Iterable[str]) -> None:
        for p in labels:
            if p not in self.up:
                raise PosetError(f"unknown label {p!r}")


def _distinct(labels: Iterable[str]) -> list[str]:
    seen: list[str] = []
    index: set[str] = set()
    for p in labels:
        if not isinstance(p, str) or not p or any(c.isspace() for c in p):
            raise PosetError(f"invalid label {p!r}")
        if p in index:
            raise PosetError(f"duplicate label {p!r}")
        index.add(p)
        seen.append(p)
    return seen


def build_poset(elements: Iterable[str],
                relations: Iterable[tuple[str, str]]) -> FinitePoset:
    """Poset generated by ``lower < upper`` pairs (reflexive-transitive closure).

    Raises :class:`PosetError` on duplicate labels, unknown relation
    endpoints, or a cycle.
    """
    elems = _distinct(elements)
    known = set(elems)
    succ: dict[str, set[str]] = {p: set() for p in elems}
    for a, b in relations:
        for x in (a, b):
            if x not in known:
                raise PosetError(f"unknown label {x!r} in relation {a} < {b}")
        if a == b:
            raise PosetError(f"cycle detected: {a!r} < {a!r}")
        succ[a].add(b)

    up: dict[str, frozenset[str]] = {}
    for p in elems:
        seen = {p}
        stack = list(succ[p])
        while stack:
            q = stack.pop()
            if q == p:
                raise PosetError(f"cycle detected through {p!r}")
            if q not in seen:
                seen.add(q)
                stack.extend(succ[q])
        up[p] = frozenset(seen)
    poset = FinitePoset(tuple(sorted(elems)), up)
    poset._check_partial_order()
    return poset


def reverse_linear_extension(P: FinitePoset) -> list[str]:
    # q > p implies up(q) is a proper subset of up(p), so sorting by upper-set
    # size puts every element after everything above it.
    return sorted(P.elements, key=lambda p: (len(P.up[p]), p))


def mobius(P: FinitePoset) -> dict[str, int]:
    """Möbius function of ``P``: ``mu(p) = 1 - sum(mu(q) for q > p)``."""
    mu: dict[str, int] = {}
    for p in reverse_linear_extension(P):
        mu[p] = 1 - sum(mu[q] for q in P.up[p] if q != p)
    return {p: mu[p] for p in P.elements}


def upper_set(P: FinitePoset, p: str) -> frozenset[str]:
    P.check_labels([p])
    return P.up[p]


def order_ideal(P: FinitePoset, S: Iterable[str]) -> FinitePoset:
    """Induced subposet on everything below some element of ``S``."""
    S = set(S)
    P.check_labels(S)
    return P.subposet(q for q in P.elements if P.up[q] & S)


def greatest_lower_bounds(P: FinitePoset, S: Iterable[str]) -> frozenset[str]:
    """Maximal common lower bounds of ``S``; the maximal elements when ``S`` is empty."""
    S = set(S)
    P.check_labels(S)
    lower = [x for x in P.elements if S <= P.up[x]]
    lower_set = set(lower)
    return frozenset(x for x in lower if not (P.up[x] - {x}) & lower_set)


def is_glb_closed(P: FinitePoset, Q: Iterable[str]) -> bool:
    """Whether every subset of ``Q`` has all its greatest lower bounds in ``Q``.

    Enumerates all ``2**len(Q)`` subsets, so it refuses ``len(Q) > 20``.
    """
    Q = sorted(set(Q))
    P.check_labels(Q)
    if len(Q) > GLB_CLOSED_LIMIT:
        raise PosetError(f"is_glb_closed is exhaustive; |Q|={len(Q)} exceeds {GLB_CLOSED_LIMIT}")
    members = set(Q)
    for k in range(len(Q) + 1):
        for S in combinations(Q, k):
            if not greatest_lower_bounds(P, S) <= members:
                return False
    return True


def unique_min_above(P: FinitePoset, Q: Iterable[str], p: str) -> str:
    """The unique minimal element of ``{q in Q : q >= p}``.

    When ``Q`` is glb-closed this exists and equals ``p`` iff ``p`` is in
    ``Q``; otherwise a :class:`PosetError` reports the violation.
    """
    Q = set(Q)
    P.check_labels(Q | {p})
    above = [q for q in Q if q in P.up[p]]
    mins = sorted(q for q in above if not any(P.lt(r, q) for r in above))
    if len(mins) != 1:
        raise PosetError(
            f"{{q in Q : q >= {p}}} has minimal elements {mins}; Q is not glb-closed")
    return mins[0]


def extend_by_zero(P: FinitePoset, Q: Iterable[str],
                   mu_Q: Mapping[str, int]) -> dict[str, int]:
    Q = set(Q)
    P.check_labels(Q)
    if set(mu_Q) != Q:
        raise PosetError("assignment domain does not match Q")
    return {p: mu_Q[p] if p in Q else 0 for p in P.elements}


# --- text format -----------------------------------------------------------

def parse_poset(text: str, source: str = "<string>") -> FinitePoset:
    """Parse the line format ``elem <label>`` / ``rel <a> <b>`` (meaning a < b).

    Errors carry ``source:line`` prefixes.
    """
    elements: list[str] = []
    declared: dict[str, int] = {}
    relations: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        words = raw.split("#", 1)[0].split()
        if not words:
            continue
        where = f"{source}:{lineno}"
        if words[0] == "elem" and len(words) == 2:
            if words[1] in declared:
                raise PosetError(f"{where}: duplicate element {words[1]!r} "
                                 f"(first declared on line {declared[words[1]]})")
            declared[words[1]] = lineno
            elements.append(words[1])
        elif words[0] == "rel" and len(words) == 3:
            relations.append((words[1], words[2], lineno))
        else:
            raise PosetError(f"{where}: cannot parse {raw.strip()!r}")
    for a, b, lineno in relations:
        for x in (a, b):
            if x not in declared:
                raise PosetError(f"{source}:{lineno}: unknown label {x!r}")
    try:
        return build_poset(elements, [(a, b) for a, b, _ in relations])
    except PosetError as exc:
        raise PosetError(f"{source}: {exc}") from None


def read_poset(path: str | Path) -> FinitePoset:
    path = Path(path)
    return parse_poset(path.read_text(encoding="utf-8"), str(path))


def format_poset(P: FinitePoset) -> str:
    """Inverse of :func:`parse_poset`, emitting cover relations only."""
    lines = [f"elem {p}" for p in P.elements]
    lines += [f"rel {a} {b}" for a, b in P.covers()]
    return "\n".join(lines) + "\n"
