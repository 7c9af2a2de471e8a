"""Structural predicates and the desirability classification of relations.

The grading below runs on the canonical completion of an asymmetric acyclic
relation: the reflexive, complete relation obtained by adding every
incomparable pair in both directions plus the diagonal. An (m, n)-chain-mixing
property ("Ferrers property") asks that for all completion chains
x1 >= ... >= xm and y1 >= ... >= yn (elements not necessarily distinct),
x1 >= yn or y1 >= xm. Larger (m, n) is stronger; (1, 1) always holds because
the completion is complete.

Classification ladder (first match wins):

  1. weak order          (3,3)
  6. semiorder           (3,1) and (2,2)
  7. interval order      (2,2) alone; or semitransitive, (3,1) alone
  8. transitive          (2,1)
  9. intransitive        everything else (still acyclic by precondition)

Class indices 2-5 name finer grades between weak orders and semiorders that
cannot occur under this chain-with-repeats reading of the properties (each
candidate predicate for them collapses into the ones above); they stay in
the 1..9 scale because weighting maps are defined on all nine ranks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import BinaryRelation
from .errors import PreconditionViolated

TRACKED_FERRERS: tuple[tuple[int, int], ...] = (
    (1, 1),
    (2, 1),
    (2, 2),
    (3, 1),
    (3, 2),
    (4, 1),
    (4, 2),
    (5, 1),
    (3, 3),
)


@dataclass(frozen=True)
class RelationProfile:
    """Predicate summary of a relation.

    ferrers is None when the relation is not asymmetric-acyclic (the grading
    is only defined on that domain).
    """

    asymmetric: bool
    irreflexive: bool
    acyclic: bool
    transitive: bool
    negatively_transitive: bool
    ferrers: dict[tuple[int, int], bool] | None


@dataclass(frozen=True)
class DesirabilityClass:
    class_index: int
    node_label: str


def relation_profile(rel: BinaryRelation) -> RelationProfile:
    asymmetric = rel.is_asymmetric()
    acyclic = rel.is_acyclic()
    ferrers = None
    if asymmetric and acyclic:
        ferrers = {mn: is_mn_ferrers(rel, *mn) for mn in TRACKED_FERRERS}
    return RelationProfile(
        asymmetric=asymmetric,
        irreflexive=rel.is_irreflexive(),
        acyclic=acyclic,
        transitive=rel.is_transitive(),
        negatively_transitive=rel.is_negatively_transitive(),
        ferrers=ferrers,
    )


def _require_asymmetric_acyclic(rel: BinaryRelation) -> None:
    if not rel.is_asymmetric():
        raise PreconditionViolated("relation must be asymmetric")
    if not rel.is_acyclic():
        raise PreconditionViolated("relation must be acyclic")


def canonical_completion(rel: BinaryRelation) -> BinaryRelation:
    """rel plus both directions of every incomparable pair plus the diagonal."""
    _require_asymmetric_acyclic(rel)
    n = rel.ground.n
    pairs = set(rel.pairs)
    for a in range(n):
        pairs.add((a, a))
        for b in range(a + 1, n):
            if (a, b) not in rel.pairs and (b, a) not in rel.pairs:
                pairs.add((a, b))
                pairs.add((b, a))
    return BinaryRelation(rel.ground, frozenset(pairs))


def _completion_rows(rel: BinaryRelation) -> tuple[int, ...]:
    return canonical_completion(rel).successor_masks


def _chain_endpoints(rows: tuple[int, ...], length: int) -> list[int]:
    """ends[s] = mask of elements reachable from s by a completion chain of
    the given length (elements may repeat)."""
    n = len(rows)
    ends = [1 << s for s in range(n)]
    for _ in range(length - 1):
        nxt = []
        for s in range(n):
            reach = 0
            todo = ends[s]
            while todo:
                e = (todo & -todo).bit_length() - 1
                todo &= todo - 1
                reach |= rows[e]
            nxt.append(reach)
        ends = nxt
    return ends


def is_mn_ferrers(rel: BinaryRelation, m: int, n: int) -> bool:
    """Chain-mixing test on the canonical completion.

    Walks endpoint pairs of all m-chains against all n-chains instead of raw
    tuples; step-by-step endpoint extension reaches exactly the endpoints of
    chains with repeats, so this agrees with a literal tuple scan.
    """
    if m < n or n < 1:
        raise PreconditionViolated(f"need m >= n >= 1, got ({m}, {n})")
    _require_asymmetric_acyclic(rel)
    rows = _completion_rows(rel)
    size = len(rows)
    ends_m = _chain_endpoints(rows, m)
    ends_n = ends_m if n == m else _chain_endpoints(rows, n)
    for x1 in range(size):
        xm_candidates = ends_m[x1]
        for y1 in range(size):
            # need some yn not below x1 and some xm not below y1
            if ends_n[y1] & ~rows[x1] and xm_candidates & ~rows[y1]:
                return False
    return True


def desirability_class(rel: BinaryRelation) -> DesirabilityClass:
    """Position of the relation on the 1..9 desirability scale (1 best)."""
    _require_asymmetric_acyclic(rel)
    if is_mn_ferrers(rel, 3, 3):
        return DesirabilityClass(1, "weak order")
    semitransitive = is_mn_ferrers(rel, 3, 1)
    interval = is_mn_ferrers(rel, 2, 2)
    if semitransitive and interval:
        return DesirabilityClass(6, "semiorder")
    if interval:
        return DesirabilityClass(7, "interval order")
    if semitransitive:
        return DesirabilityClass(7, "semitransitive")
    if is_mn_ferrers(rel, 2, 1):
        return DesirabilityClass(8, "transitive")
    return DesirabilityClass(9, "intransitive")
