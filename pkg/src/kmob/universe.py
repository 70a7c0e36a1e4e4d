"""Intersect-decompose universes of irreducible varieties.

A universe knows three things about its labels: containment, the
components of a pairwise intersection, and (optionally) the components of
the ambient union ``X``.  Varieties are opaque strings; reducedness of
every intersection is assumed, never checked.

A reduced union of irreducibles is represented by its components, a
``frozenset`` of pairwise incomparable labels (an *antichain*).
"""

from __future__ import annotations

import os
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

from .poset import FinitePoset

__all__ = [
    "Antichain", "UniverseError", "ClosureError", "VarietyUniverse",
    "TableUniverse", "CoordinateUniverse", "ValidationReport",
    "element_ceiling", "maximal_elements", "check_antichain",
    "validate_universe", "validate_table", "antichain_meet",
    "intersect_decompose_closure", "check_subset_closure",
    "parse_universe", "read_universe", "DEFAULT_CEILING",
]

Antichain = frozenset  # frozenset[str] of pairwise incomparable labels

DEFAULT_CEILING = 100_000
SUBSET_CLOSURE_LIMIT = 20


class UniverseError(ValueError):
    pass


class ClosureError(UniverseError):
    """The element ceiling was exceeded."""


def element_ceiling() -> int:
    """Element ceiling from ``KMOB_CEILING``, default 100000."""
    raw = os.environ.get("KMOB_CEILING")
    if raw is None or raw.strip() == "":
        return DEFAULT_CEILING
    try:
        value = int(raw)
    except ValueError:
        raise UniverseError(f"KMOB_CEILING must be a positive integer, got {raw!r}") from None
    if value <= 0:
        raise UniverseError(f"KMOB_CEILING must be a positive integer, got {raw!r}")
    return value


class VarietyUniverse:
    """Interface for a family of irreducible varieties.

    Subclasses implement :meth:`labels`, :meth:`contains` and
    :meth:`meet_components`; ``contains(a, b)`` means ``a ⊆ b``.
    """

    seeds: frozenset[str] = frozenset()

    def labels(self) -> Iterable[str]:
        raise NotImplementedError

    def has_label(self, a: str) -> bool:
        return a in set(self.labels())

    def contains(self, a: str, b: str) -> bool:
        raise NotImplementedError

    def meet_components(self, a: str, b: str) -> frozenset[str]:
        raise NotImplementedError

    def lower_set(self, a: str) -> frozenset[str]:
        """Every label contained in ``a``."""
        return frozenset(x for x in self.labels() if self.contains(x, a))

    def check_labels(self, labels: Iterable[str]) -> None:
        for a in labels:
            if not self.has_label(a):
                raise UniverseError(f"unknown label {a!r}")

    def poset(self, labels: Iterable[str]) -> FinitePoset:
        return FinitePoset.from_leq(labels, self.contains)


def maximal_elements(U: VarietyUniverse, labels: Iterable[str]) -> frozenset[str]:
    pool = set(labels)
    return frozenset(a for a in pool
                     if not any(b != a and U.contains(a, b) for b in pool))


def check_antichain(U: VarietyUniverse, labels: Iterable[str]) -> frozenset[str]:
    comps = frozenset(labels)
    U.check_labels(comps)
    for a, b in combinations(sorted(comps), 2):
        if U.contains(a, b) or U.contains(b, a):
            raise UniverseError(f"{a!r} and {b!r} are comparable; not an antichain")
    return comps


# --- table universes -------------------------------------------------------

class TableUniverse(VarietyUniverse):
    """Universe given by explicit tables.

    Containment is the reflexive-transitive closure of ``containment``
    (pairs ``(a, b)`` meaning ``a ⊆ b``).  Missing meet entries default to the
    maximal common lower bounds under containment; an entry for ``(a, b)``
    is used for ``(b, a)`` too unless that order is declared separately.
    """

    def __init__(self, elements: Iterable[str],
                 containment: Iterable[tuple[str, str]] = (),
                 meets: Mapping[tuple[str, str], Iterable[str]] | None = None,
                 seeds: Iterable[str] = ()):
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise UniverseError("duplicate element label")
        known = set(self.elements)
        self.containment = tuple(containment)
        self.meets = {k: frozenset(v) for k, v in (meets or {}).items()}
        self.seeds = frozenset(seeds)
        for pair in self.containment:
            self._known(pair, known, "containment")
        for key, comps in self.meets.items():
            self._known(key, known, "meet")
            self._known(comps, known, "meet component")
        self._known(self.seeds, known, "seed")

        succ: dict[str, set[str]] = {a: set() for a in self.elements}
        for a, b in self.containment:
            succ[a].add(b)
        self._up: dict[str, frozenset[str]] = {}
        for a in self.elements:
            seen, stack = {a}, list(succ[a])
            while stack:
                b = stack.pop()
                if b not in seen:
                    seen.add(b)
                    stack.extend(succ[b])
            self._up[a] = frozenset(seen)

    @staticmethod
    def _known(labels, known, what):
        for a in labels:
            if a not in known:
                raise UniverseError(f"unknown label {a!r} in {what}")

    def labels(self) -> tuple[str, ...]:
        return self.elements

    def has_label(self, a: str) -> bool:
        return a in self._up

    def contains(self, a: str, b: str) -> bool:
        return b in self._up[a]

    def default_meet(self, a: str, b: str) -> frozenset[str]:
        common = [x for x in self.elements if a in self._up[x] and b in self._up[x]]
        return maximal_elements(self, common)

    def meet_components(self, a: str, b: str) -> frozenset[str]:
        if (a, b) in self.meets:
            return self.meets[(a, b)]
        if (b, a) in self.meets:
            return self.meets[(b, a)]
        if a == b:
            return frozenset([a])
        return self.default_meet(a, b)

    def lower_set(self, a: str) -> frozenset[str]:
        return frozenset(x for x in self.elements if a in self._up[x])

    def with_meet(self, a: str, b: str, comps: Iterable[str]) -> TableUniverse:
        """Copy with the meet entry for ``{a, b}`` replaced."""
        meets = {k: v for k, v in self.meets.items() if k not in ((a, b), (b, a))}
        meets[(a, b)] = frozenset(comps)
        return TableUniverse(self.elements, self.containment, meets, self.seeds)


class CoordinateUniverse(VarietyUniverse):
    """Coordinate subspaces of affine ``n``-space.

    The label ``{1,3}`` is the subspace where coordinates 1 and 3 vanish.
    Every intersection is irreducible (vanishing sets union), which makes
    this a cheap stress-test universe.
    """

    def __init__(self, n: int, seeds: Iterable[str] = ()):
        if n < 0:
            raise UniverseError("n must be nonnegative")
        self.n = n
        self.seeds = frozenset(seeds)
        self.check_labels(self.seeds)

    @staticmethod
    def label(indices: Iterable[int]) -> str:
        return "{" + ",".join(str(i) for i in sorted(set(indices))) + "}"

    def indices(self, a: str) -> frozenset[int]:
        if not (a.startswith("{") and a.endswith("}")):
            raise UniverseError(f"unknown label {a!r}")
        body = a[1:-1]
        try:
            idx = [int(t) for t in body.split(",")] if body else []
        except ValueError:
            raise UniverseError(f"unknown label {a!r}") from None
        if any(not 1 <= i <= self.n for i in idx) or self.label(idx) != a:
            raise UniverseError(f"unknown label {a!r}")
        return frozenset(idx)

    def labels(self) -> Iterator[str]:
        for k in range(self.n + 1):
            for idx in combinations(range(1, self.n + 1), k):
                yield self.label(idx)

    def has_label(self, a: str) -> bool:
        try:
            self.indices(a)
        except UniverseError:
            return False
        return True

    def contains(self, a: str, b: str) -> bool:
        return self.indices(a) >= self.indices(b)

    def meet_components(self, a: str, b: str) -> frozenset[str]:
        return frozenset([self.label(self.indices(a) | self.indices(b))])

    def lower_set(self, a: str) -> frozenset[str]:
        base = self.indices(a)
        rest = sorted(set(range(1, self.n + 1)) - base)
        return frozenset(self.label(base | set(extra))
                         for k in range(len(rest) + 1)
                         for extra in combinations(rest, k))


# --- validation ------------------------------------------------------------

@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_universe(U: VarietyUniverse, labels: Iterable[str] | None = None) -> ValidationReport:
    """Check the universe invariants exhaustively over ``labels``.

    Covers: containment is a partial order, meets are symmetric and
    idempotent, meet components lie in both arguments and are pairwise
    incomparable, containment absorbs (``a ⊆ b`` gives ``{a}``), and the
    seeds form an antichain.
    """
    report = ValidationReport()
    bad = report.violations
    labs = sorted(U.labels() if labels is None else labels)
    for a in labs:
        if not U.contains(a, a):
            bad.append(f"containment not reflexive at {a}")
    for a, b in combinations(labs, 2):
        if U.contains(a, b) and U.contains(b, a):
            bad.append(f"containment cycle: {a} and {b} contain each other")
    for a in labs:
        for b in labs:
            if a != b and U.contains(a, b):
                for c in labs:
                    if U.contains(b, c) and not U.contains(a, c):
                        bad.append(f"containment not transitive: {a} ⊆ {b} ⊆ {c}")

    for a in labs:
        if U.meet_components(a, a) != {a}:
            bad.append(f"idempotence: meet({a},{a}) = {_fmt(U.meet_components(a, a))}")
    for a, b in combinations(labs, 2):
        ab, ba = U.meet_components(a, b), U.meet_components(b, a)
        if ab != ba:
            bad.append(f"symmetry: meet({a},{b}) = {_fmt(ab)} but meet({b},{a}) = {_fmt(ba)}")
        for key in ((a, b), (b, a)) if ab != ba else ((a, b),):
            comps = U.meet_components(*key)
            for c in sorted(comps):
                if not (U.contains(c, a) and U.contains(c, b)):
                    bad.append(f"component not contained: {c} in meet({key[0]},{key[1]})")
            for c, d in combinations(sorted(comps), 2):
                if U.contains(c, d) or U.contains(d, c):
                    bad.append(f"components comparable: {c}, {d} in meet({key[0]},{key[1]})")
        for lo, hi in ((a, b), (b, a)):
            if U.contains(lo, hi) and U.meet_components(lo, hi) != {lo}:
                bad.append(f"absorption: {lo} ⊆ {hi} but meet({lo},{hi}) = "
                           f"{_fmt(U.meet_components(lo, hi))}")
    for a, b in combinations(sorted(U.seeds), 2):
        if U.contains(a, b) or U.contains(b, a):
            bad.append(f"seeds comparable: {a}, {b}")
    return report


def validate_table(T: TableUniverse) -> ValidationReport:
    """Full invariant check of a table universe.

    Beyond :func:`validate_universe`, each declared meet is compared with
    the containment default; a mismatch is a warning, since the table is
    taken as ground truth but the declared data then disagree.
    """
    report = validate_universe(T)
    for (a, b), comps in sorted(T.meets.items()):
        default = T.default_meet(a, b)
        if comps != default:
            report.warnings.append(
                f"meet({a},{b}) declared {_fmt(comps)} but containment gives {_fmt(default)}")
    return report


def _fmt(comps: Iterable[str]) -> str:
    return "{" + ",".join(sorted(comps)) + "}"


# --- closure ---------------------------------------------------------------

def antichain_meet(U: VarietyUniverse, X1: Iterable[str], X2: Iterable[str]) -> frozenset[str]:
    """Components of ``(∪X1) ∩ (∪X2)``."""
    pool: set[str] = set()
    for a in X1:
        for b in X2:
            pool |= U.meet_components(a, b)
    return maximal_elements(U, pool)


def intersect_decompose_closure(U: VarietyUniverse, seeds: Iterable[str] | None = None,
                                ceiling: int | None = None) -> FinitePoset:
    """Smallest family containing ``seeds`` and closed under pairwise meets.

    Pairwise closure is enough: a component of ``∩(S ∪ {s})`` is a
    component of ``C ∩ s`` for some component ``C`` of ``∩S``.  Raises
    :class:`ClosureError` once more than ``ceiling`` labels appear.
    """
    ceiling = element_ceiling() if ceiling is None else ceiling
    seeds = U.seeds if seeds is None else frozenset(seeds)
    U.check_labels(seeds)
    present = set(seeds)
    if len(present) > ceiling:
        raise ClosureError(f"closure exceeds element ceiling {ceiling}")
    frontier = set(present)
    while frontier:
        found: set[str] = set()
        for a in sorted(frontier):
            for b in sorted(present):
                found |= U.meet_components(a, b)
        frontier = found - present
        present |= frontier
        if len(present) > ceiling:
            raise ClosureError(f"closure exceeds element ceiling {ceiling}")
    return U.poset(present)


def check_subset_closure(U: VarietyUniverse, P: FinitePoset | Iterable[str],
                         seeds: Iterable[str] | None = None) -> bool:
    """Whether the components of every intersection of members of ``P`` lie in ``P``.

    The empty intersection is ``X`` itself, whose components are ``seeds``
    (defaulting to the universe's seeds, or to ``P``'s maximal elements when
    the universe has none).  Exhaustive over subsets; at most 20 labels.
    """
    members = frozenset(P)
    U.check_labels(members)
    if len(members) > SUBSET_CLOSURE_LIMIT:
        raise UniverseError(f"check_subset_closure is exhaustive; |P|={len(members)} "
                            f"exceeds {SUBSET_CLOSURE_LIMIT}")
    if seeds is None:
        seeds = U.seeds or maximal_elements(U, members)
    if not frozenset(seeds) <= members:
        return False
    order = sorted(members)

    # depth-first over subsets, carrying the components of the running intersection
    def extend(start: int, current: frozenset[str]) -> bool:
        for i in range(start, len(order)):
            nxt = antichain_meet(U, current, [order[i]])
            if not nxt <= members or not extend(i + 1, nxt):
                return False
        return True

    return all(extend(i + 1, frozenset([a])) for i, a in enumerate(order))


# --- text format -----------------------------------------------------------

def parse_universe(text: str, source: str = "<string>") -> TableUniverse:
    """Parse ``elem``/``contain``/``meet a b = c ...``/``seed ...`` lines."""
    elements: list[str] = []
    declared: dict[str, int] = {}
    containment: list[tuple[str, str]] = []
    meets: dict[tuple[str, str], frozenset[str]] = {}
    seeds: list[str] = []
    refs: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        words = raw.split("#", 1)[0].split()
        if not words:
            continue
        where = f"{source}:{lineno}"
        head, args = words[0], words[1:]
        if head == "elem" and len(args) == 1:
            if args[0] in declared:
                raise UniverseError(f"{where}: duplicate element {args[0]!r}")
            declared[args[0]] = lineno
            elements.append(args[0])
        elif head == "contain" and len(args) == 2:
            containment.append((args[0], args[1]))
            refs += [(lineno, a) for a in args]
        elif head == "meet" and len(args) >= 3 and args[2] == "=":
            key = (args[0], args[1])
            if key in meets:
                raise UniverseError(f"{where}: duplicate meet entry for {key[0]} {key[1]}")
            meets[key] = frozenset(args[3:])
            refs += [(lineno, a) for a in args[:2] + args[3:]]
        elif head == "seed" and args:
            seeds += args
            refs += [(lineno, a) for a in args]
        else:
            raise UniverseError(f"{where}: cannot parse {raw.strip()!r}")
    for lineno, a in refs:
        if a not in declared:
            raise UniverseError(f"{source}:{lineno}: unknown label {a!r}")
    return TableUniverse(elements, containment, meets, seeds)


def read_universe(path: str | Path) -> TableUniverse:
    path = Path(path)
    return parse_universe(path.read_text(encoding="utf-8"), str(path))
