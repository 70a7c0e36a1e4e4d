"""K-homology class expansions of reduced unions of irreducibles.

Two independent routes compute ``[X]`` for ``X = ∪ D`` as an integer
combination of the classes ``[A]`` of its irreducible subvarieties:

* :func:`mobius_kclass` takes the order ideal below ``D`` and weights each
  element by the poset Möbius function;
* :func:`inclusion_exclusion_kclass` peels off one component at a time with
  ``[A ∪ X'] = [A] + [X'] - [A ∩ X']``.

:func:`verify_expansion` cross-checks them.  The coefficient vector is the
same in ``G``-equivariant K-homology for connected ``G`` preserving each
variety; that hypothesis is the caller's to ensure.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field

from .poset import mobius
from .universe import (
    ClosureError, UniverseError, VarietyUniverse, antichain_meet,
    check_antichain, element_ceiling, intersect_decompose_closure,
)

__all__ = [
    "KClassExpansion", "Normalized", "VerificationReport",
    "normalize_components", "mobius_kclass", "inclusion_exclusion_kclass",
    "closure_support", "verify_expansion", "enumerate_antichains",
    "format_expansion",
]


class KClassExpansion:
    """Finitely supported integer combination of basis classes ``[label]``.

    Zero coefficients are kept; equality treats missing labels as zero.
    """

    def __init__(self, coefficients: Mapping[str, int] | None = None):
        self.coefficients: dict[str, int] = dict(coefficients or {})

    @classmethod
    def unit(cls, label: str) -> KClassExpansion:
        return cls({label: 1})

    def __getitem__(self, label: str) -> int:
        return self.coefficients.get(label, 0)

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self.coefficients))

    def __len__(self) -> int:
        return len(self.coefficients)

    def items(self) -> list[tuple[str, int]]:
        return sorted(self.coefficients.items())

    def nonzero(self) -> dict[str, int]:
        return {k: v for k, v in self.items() if v}

    def _combine(self, other: KClassExpansion, sign: int) -> KClassExpansion:
        out = dict(self.coefficients)
        for k, v in other.coefficients.items():
            out[k] = out.get(k, 0) + sign * v
        return KClassExpansion(out)

    def __add__(self, other: KClassExpansion) -> KClassExpansion:
        return self._combine(other, 1)

    def __sub__(self, other: KClassExpansion) -> KClassExpansion:
        return self._combine(other, -1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KClassExpansion):
            return NotImplemented
        return self.nonzero() == other.nonzero()

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"KClassExpansion({dict(self.items())})"


@dataclass(frozen=True)
class Normalized:
    components: frozenset[str]
    dropped: tuple[str, ...]

    @property
    def changed(self) -> bool:
        return bool(self.dropped)


def normalize_components(U: VarietyUniverse, D: Iterable[str]) -> Normalized:
    """Reduce ``D`` to its maximal elements, reporting what was dropped."""
    labels = list(D)
    if not labels:
        raise UniverseError("no components given")
    U.check_labels(labels)
    distinct = set(labels)
    keep = frozenset(a for a in distinct
                     if not any(b != a and U.contains(a, b) for b in distinct))
    dropped = [a for a in labels if a not in keep]
    # repeated labels count as drops too
    seen: set[str] = set()
    for a in labels:
        if a in keep:
            if a in seen:
                dropped.append(a)
            seen.add(a)
    return Normalized(keep, tuple(sorted(dropped)))


def _ideal(U: VarietyUniverse, D: frozenset[str], ceiling: int) -> set[str]:
    ideal: set[str] = set()
    for d in sorted(D):
        ideal |= U.lower_set(d)
        if len(ideal) > ceiling:
            raise ClosureError(f"order ideal exceeds element ceiling {ceiling}")
    return ideal


def mobius_kclass(U: VarietyUniverse, D: Iterable[str],
                  ceiling: int | None = None) -> KClassExpansion:
    """``[∪D] = Σ μ(e) [e]`` over the order ideal generated by ``D``."""
    ceiling = element_ceiling() if ceiling is None else ceiling
    D = check_antichain(U, D)
    P = U.poset(_ideal(U, D, ceiling))
    return KClassExpansion(mobius(P))


def inclusion_exclusion_kclass(U: VarietyUniverse, D: Iterable[str], reverse: bool = False,
                               ceiling: int | None = None) -> KClassExpansion:
    """Recursive ``[A] + [X'] - [A ∩ X']`` expansion.

    ``A`` is the least component in label order (the greatest when
    ``reverse``).  Results are memoized on the sorted component tuple.
    """
    ceiling = element_ceiling() if ceiling is None else ceiling
    D = check_antichain(U, D)
    memo: dict[tuple[str, ...], KClassExpansion] = {}

    def expand(comps: tuple[str, ...]) -> KClassExpansion:
        if comps in memo:
            return memo[comps]
        if not comps:
            result = KClassExpansion()
        elif len(comps) == 1:
            result = KClassExpansion.unit(comps[0])
        else:
            a = comps[-1] if reverse else comps[0]
            rest = tuple(c for c in comps if c != a)
            meet = tuple(sorted(antichain_meet(U, [a], rest)))
            result = expand((a,)) + expand(rest) - expand(meet)
        if len(memo) >= ceiling:
            raise ClosureError(f"inclusion-exclusion memo exceeds element ceiling {ceiling}")
        memo[comps] = result
        return result

    return expand(tuple(sorted(D)))


def closure_support(U: VarietyUniverse, D: Iterable[str],
                    ceiling: int | None = None) -> frozenset[str]:
    """Elements of the intersect-decompose closure of ``D``: the predicted support."""
    D = check_antichain(U, D)
    return frozenset(intersect_decompose_closure(U, D, ceiling).elements)


@dataclass
class VerificationReport:
    components: frozenset[str]
    mobius: KClassExpansion
    inclusion_exclusion: KClassExpansion
    support: frozenset[str]
    checks: dict[str, bool] = field(default_factory=dict)
    messages: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def summary(self) -> str:
        comps = ",".join(sorted(self.components))
        status = "PASS" if self.passed else "FAIL"
        detail = " ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in self.checks.items())
        return f"{status}\t{{{comps}}}\t{detail}"


def verify_expansion(U: VarietyUniverse, D: Iterable[str],
                     ceiling: int | None = None) -> VerificationReport:
    """Cross-check both expansions and the vanishing off the closure.

    Checks: ``equal`` (the two routes agree coefficientwise), ``vanishing``
    (Möbius coefficients are zero outside the closure), ``restriction`` (on
    the closure they equal the closure poset's own Möbius function).
    """
    D = check_antichain(U, D)
    mob = mobius_kclass(U, D, ceiling)
    ie = inclusion_exclusion_kclass(U, D, ceiling=ceiling)
    closure = intersect_decompose_closure(U, D, ceiling)
    support = frozenset(closure.elements)
    report = VerificationReport(D, mob, ie, support)

    diff = sorted(k for k in set(mob.coefficients) | set(ie.coefficients) if mob[k] != ie[k])
    report.checks["equal"] = not diff
    for k in diff:
        report.messages.append(f"coefficient of {k}: mobius {mob[k]} vs inclusion-exclusion {ie[k]}")

    outside = sorted(k for k, v in mob.items() if v and k not in support)
    report.checks["vanishing"] = not outside
    for k in outside:
        report.messages.append(f"nonzero coefficient {mob[k]} on {k} outside the closure")

    mu_closure = mobius(closure)
    wrong = sorted(k for k in support if mob[k] != mu_closure[k])
    report.checks["restriction"] = not wrong
    for k in wrong:
        report.messages.append(f"on {k}: ideal coefficient {mob[k]} vs closure Möbius {mu_closure[k]}")
    return report


def enumerate_antichains(U: VarietyUniverse, labels: Iterable[str] | None = None) -> Iterator[frozenset[str]]:
    """All nonempty antichains, depth-first over labels in sorted order."""
    order = sorted(U.labels() if labels is None else labels)

    def grow(start: int, chosen: list[str]) -> Iterator[frozenset[str]]:
        for i in range(start, len(order)):
            a = order[i]
            if any(U.contains(a, b) or U.contains(b, a) for b in chosen):
                continue
            chosen.append(a)
            yield frozenset(chosen)
            yield from grow(i + 1, chosen)
            chosen.pop()

    yield from grow(0, [])


def format_expansion(E: KClassExpansion | Mapping[str, int]) -> str:
    """``label<TAB>coefficient`` lines sorted by label, then a summary comment."""
    items = E.items() if isinstance(E, KClassExpansion) else sorted(E.items())
    lines = [f"{k}\t{v}" for k, v in items]
    nonzero = sum(1 for _, v in items if v)
    lines.append(f"# support={len(items)} nonzero={nonzero}")
    return "\n".join(lines) + "\n"
