"""Type A Bruhat order, parabolic quotients and Schubert universes.

Permutations are tuples in 1-based one-line notation.  As labels they are
written as digit strings (``"2413"``) for ``n <= 9`` and comma-separated
beyond that.

>>> bruhat_leq((2, 1, 3), (2, 3, 1))
True
>>> U = schubert_universe(3)
>>> sorted(U.meet_components("231", "312"))
['132', '213']
"""

from __future__ import annotations

import re
from bisect import insort
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from math import factorial

from .universe import UniverseError, VarietyUniverse

__all__ = [
    "Permutation", "ParabolicQuotient", "SchubertUniverse",
    "parse_permutation", "format_permutation", "length", "bruhat_leq",
    "minimal_coset_reps", "schubert_universe", "parse_generators",
    "grassmannian_k", "partition_to_permutation", "permutation_to_partition",
    "parse_partition",
]

Permutation = tuple[int, ...]


def _check_perm(w: Sequence[int]) -> Permutation:
    w = tuple(w)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise UniverseError(f"not a permutation of 1..{len(w)}: {w}")
    return w


def parse_permutation(text: str) -> Permutation:
    """``"2413"`` or ``"2,4,1,3"``."""
    text = text.strip()
    if "," in text:
        parts = text.split(",")
    else:
        parts = list(text)
    try:
        w = tuple(int(p) for p in parts)
    except ValueError:
        raise UniverseError(f"invalid permutation {text!r}") from None
    if not w:
        raise UniverseError("empty permutation")
    return _check_perm(w)


def format_permutation(w: Sequence[int]) -> str:
    if len(w) <= 9:
        return "".join(str(i) for i in w)
    return ",".join(str(i) for i in w)


def length(w: Sequence[int]) -> int:
    """Number of inversions."""
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def bruhat_leq(u: Sequence[int], v: Sequence[int]) -> bool:
    """Tableau criterion: sorted prefixes of ``u`` are dominated by those of ``v``."""
    if len(u) != len(v):
        raise UniverseError(f"rank mismatch: {len(u)} vs {len(v)}")
    pu: list[int] = []
    pv: list[int] = []
    for a, b in zip(u, v):
        insort(pu, a)
        insort(pv, b)
        if any(x > y for x, y in zip(pu, pv)):
            return False
    return True


def parse_generators(text: str) -> frozenset[int]:
    """Comma-separated simple reflection indices; empty string for none."""
    text = text.strip()
    if not text:
        return frozenset()
    try:
        return frozenset(int(t) for t in text.split(","))
    except ValueError:
        raise UniverseError(f"invalid parabolic generators {text!r}") from None


@dataclass(frozen=True)
class ParabolicQuotient:
    n: int
    parabolic_generators: frozenset[int]
    reps: tuple[Permutation, ...]

    def block_sizes(self) -> list[int]:
        """Sizes of the blocks of consecutive positions joined by generators."""
        sizes, run = [], 1
        for i in range(1, self.n):
            if i in self.parabolic_generators:
                run += 1
            else:
                sizes.append(run)
                run = 1
        sizes.append(run)
        return sizes if self.n else []

    def is_rep(self, w: Sequence[int]) -> bool:
        return (len(w) == self.n
                and all(w[i - 1] < w[i] for i in self.parabolic_generators))


def minimal_coset_reps(n: int, parabolic_generators: Iterable[int] = ()) -> ParabolicQuotient:
    """Minimal-length representatives of ``S_n / W_P``, sorted by length then one-line."""
    if n < 1:
        raise UniverseError("n must be positive")
    gens = frozenset(parabolic_generators)
    for i in gens:
        if not 1 <= i <= n - 1:
            raise UniverseError(f"invalid generator index {i} for n={n}")
    reps = [w for w in permutations(range(1, n + 1))
            if all(w[i - 1] < w[i] for i in gens)]
    reps.sort(key=lambda w: (length(w), w))
    return ParabolicQuotient(n, gens, tuple(reps))


# --- Grassmannians ---------------------------------------------------------

def grassmannian_k(n: int, parabolic_generators: Iterable[int]) -> int | None:
    """``k`` when the generators are all of ``1..n-1`` except ``k``, else None."""
    missing = set(range(1, n)) - set(parabolic_generators)
    if len(missing) == 1:
        return missing.pop()
    return None


def parse_partition(text: str) -> tuple[int, ...]:
    """``"(2,1)"``, ``"(1)"``, ``"()"``; zeros are dropped."""
    text = text.strip()
    m = re.fullmatch(r"\(\s*([0-9,\s]*)\)", text)
    if not m:
        raise UniverseError(f"invalid partition {text!r}")
    body = m.group(1).strip()
    parts = tuple(int(t) for t in body.split(",") if t.strip()) if body else ()
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise UniverseError(f"partition parts must be weakly decreasing: {text!r}")
    return tuple(p for p in parts if p > 0)


def partition_to_permutation(partition: Sequence[int], k: int, n: int) -> Permutation:
    """Grassmannian permutation with descent at ``k`` for a partition in the k×(n−k) box.

    Positions ``1..k`` hold ``i + λ_{k+1-i}``; length equals ``|λ|``.
    """
    lam = list(partition) + [0] * (k - len(partition))
    if len(lam) > k or any(p > n - k for p in lam) or any(p < 0 for p in lam):
        raise UniverseError(f"partition {tuple(partition)} not in the {k}x{n - k} box")
    head = [i + lam[k - i] for i in range(1, k + 1)]
    tail = [x for x in range(1, n + 1) if x not in head]
    return _check_perm(head + tail)


def permutation_to_partition(w: Sequence[int], k: int) -> tuple[int, ...]:
    lam = [w[i - 1] - i for i in range(k, 0, -1)]
    return tuple(p for p in lam if p > 0)


# --- Schubert universe -----------------------------------------------------

class SchubertUniverse(VarietyUniverse):
    """Schubert varieties ``X_w`` in ``G/P`` for type A.

    Labels are minimal coset representatives; ``X_u ⊆ X_v`` iff ``u <= v`` in
    Bruhat order, and the components of ``X_u ∩ X_v`` are the maximal
    elements of the common lower ideal (every Borel-stable closed
    subvariety is a union of Schubert varieties).
    """

    def __init__(self, quotient: ParabolicQuotient, seeds: Iterable[str] = ()):
        self.quotient = quotient
        self._perm = {format_permutation(w): w for w in quotient.reps}
        self._order = {lab: i for i, lab in enumerate(self._perm)}
        self.seeds = frozenset(seeds)
        self.check_labels(self.seeds)

    @property
    def n(self) -> int:
        return self.quotient.n

    def labels(self) -> list[str]:
        return list(self._perm)

    def has_label(self, a: str) -> bool:
        return a in self._perm

    def check_labels(self, labels: Iterable[str]) -> None:
        for a in labels:
            if a not in self._perm:
                raise UniverseError(f"{a!r} is not a minimal coset representative "
                                    f"for n={self.n}, generators {sorted(self.quotient.parabolic_generators)}")

    def permutation(self, a: str) -> Permutation:
        self.check_labels([a])
        return self._perm[a]

    @cached_property
    def _down(self) -> dict[str, frozenset[str]]:
        labs = self.labels()
        return {v: frozenset(u for u in labs if bruhat_leq(self._perm[u], self._perm[v]))
                for v in labs}

    def contains(self, a: str, b: str) -> bool:
        return a in self._down[b]

    def lower_set(self, a: str) -> frozenset[str]:
        self.check_labels([a])
        return self._down[a]

    def meet_components(self, a: str, b: str) -> frozenset[str]:
        common = self._down[a] & self._down[b]
        return frozenset(x for x in common
                         if not any(y != x and x in self._down[y] for y in common))

    def label_of(self, text: str) -> str:
        """Resolve permutation or (for Grassmannians) partition syntax to a label."""
        text = text.strip()
        if text.startswith("("):
            k = grassmannian_k(self.n, self.quotient.parabolic_generators)
            if k is None:
                raise UniverseError("partition syntax needs a Grassmannian quotient "
                                    "(all generators but one)")
            w = partition_to_permutation(parse_partition(text), k, self.n)
        else:
            w = parse_permutation(text)
            if len(w) != self.n:
                raise UniverseError(f"permutation {text!r} has rank {len(w)}, expected {self.n}")
        label = format_permutation(w)
        self.check_labels([label])
        return label


def schubert_universe(n: int, parabolic_generators: Iterable[int] = (),
                      seeds: Iterable[str] = ()) -> SchubertUniverse:
    return SchubertUniverse(minimal_coset_reps(n, parabolic_generators), seeds)


def quotient_size(n: int, parabolic_generators: Iterable[int]) -> int:
    """``n! / |W_P|`` computed from block sizes."""
    q = ParabolicQuotient(n, frozenset(parabolic_generators), ())
    size = factorial(n)
    for b in q.block_sizes():
        size //= factorial(b)
    return size
