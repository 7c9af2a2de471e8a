"""Stochastic choice over a finite ground set, exactly.

A stochastic choice function assigns every nonempty menu a probability
distribution over its members; all probabilities are Fractions, so sign
tests and row sums never depend on float rounding. The module covers the
alternating-superset-sum polynomials of each (item, menu) pair, the random
utility test (a function is a mixture of linear-order maximizers exactly
when every polynomial is nonnegative), negativity vectors, the
permutation-invariant irrationality preorder on those vectors, isomorphism,
total variation, and Kullback-Leibler divergence (the one float-valued
quantity, since it takes logarithms).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping, Sequence

from .core import GroundSet, Menu, iter_submasks, nonempty_menus
from .errors import (
    DatasetError,
    ItemNotInMenu,
    NotABijection,
    NotADistribution,
)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class StochasticChoiceFunction:
    """Dense table of exact choice probabilities.

    table[menu][i] is the probability of picking alternative i from menu;
    entries off the menu are zero and every nonempty menu row sums to one.
    """

    ground: GroundSet
    table: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        size = 1 << self.ground.n
        if len(self.table) != size:
            raise DatasetError(f"probability table must cover all {size} menus")
        for menu, row in enumerate(self.table):
            if len(row) != self.ground.n:
                raise DatasetError("each table row needs one entry per alternative")
            total = ZERO
            for i, p in enumerate(row):
                if not isinstance(p, Fraction):
                    raise DatasetError("probabilities must be Fractions")
                if menu >> i & 1:
                    if not 0 <= p <= 1:
                        raise DatasetError(
                            f"p({self.ground.names[i]}, {self.ground.format_menu(menu)}) "
                            f"= {p} is not in [0, 1]"
                        )
                    total += p
                elif p:
                    raise DatasetError(
                        f"nonzero probability for {self.ground.names[i]} outside "
                        f"menu {self.ground.format_menu(menu)}"
                    )
            if menu and total != 1:
                raise DatasetError(
                    f"probabilities on menu {self.ground.format_menu(menu)} sum to "
                    f"{total}, not exactly 1"
                )

    @classmethod
    def from_menu_rows(
        cls, ground: GroundSet, rows: Mapping[Menu, Mapping[str, Fraction]]
    ) -> "StochasticChoiceFunction":
        """Build from per-menu name-keyed rows; every nonempty menu required."""
        size = 1 << ground.n
        table = [tuple([ZERO] * ground.n)]
        for menu in range(1, size):
            if menu not in rows:
                raise DatasetError(f"menu {ground.format_menu(menu)} is missing")
            row = rows[menu]
            dense = [ZERO] * ground.n
            members = set(ground.names_of(menu))
            for name, value in row.items():
                if name not in members:
                    raise DatasetError(
                        f"{name!r} does not belong to menu {ground.format_menu(menu)}"
                    )
                dense[ground.index(name)] = Fraction(value)
            missing = members - set(row)
            if missing:
                raise DatasetError(
                    f"menu {ground.format_menu(menu)} omits probabilities for "
                    f"{sorted(missing)}"
                )
            table.append(tuple(dense))
        return cls(ground, tuple(table))

    def value(self, item: str, menu: Menu) -> Fraction:
        """p(item, menu); zero when the item is outside the menu."""
        self.ground.check_menu(menu)
        return self.table[menu][self.ground.index(item)]


def bm_polynomial(scf: StochasticChoiceFunction, item: str, menu: Menu) -> Fraction:
    """Alternating sum of p(item, U) over all supersets U of the menu."""
    ground = scf.ground
    idx = ground.index(item)
    if not menu >> idx & 1:
        raise ItemNotInMenu(
            f"{item!r} is not a member of menu {ground.format_menu(menu)}"
        )
    complement = ground.full_mask & ~menu
    total = ZERO
    for extra in iter_submasks(complement):
        term = scf.table[menu | extra][idx]
        total += term if extra.bit_count() % 2 == 0 else -term
    return total


@dataclass(frozen=True)
class BMTable:
    """All polynomials, keyed (item name, menu), menus ascending."""

    ground: GroundSet
    q: Mapping[tuple[str, Menu], Fraction]

    def negatives(self) -> list[tuple[str, Menu, Fraction]]:
        return [(item, menu, v) for (item, menu), v in self.q.items() if v < 0]


def bm_table(scf: StochasticChoiceFunction) -> BMTable:
    ground = scf.ground
    q: dict[tuple[str, Menu], Fraction] = {}
    for menu in nonempty_menus(ground):
        for i in range(ground.n):
            if menu >> i & 1:
                name = ground.names[i]
                q[(name, menu)] = bm_polynomial(scf, name, menu)
    return BMTable(ground, q)


def is_rum(scf: StochasticChoiceFunction) -> tuple[bool, list[tuple[str, Menu, Fraction]]]:
    """Random-utility test: nonnegativity of every polynomial, exact.

    Returns the verdict and the complete list of negative entries.
    """
    negatives = bm_table(scf).negatives()
    return (not negatives), negatives


@dataclass(frozen=True)
class NegativityVector:
    """Per-item absolute sum of the strictly negative polynomials."""

    ground: GroundSet
    v: Mapping[str, Fraction]

    def as_tuple(self) -> tuple[Fraction, ...]:
        return tuple(self.v[name] for name in self.ground.names)


def negativity_vector(scf: StochasticChoiceFunction) -> NegativityVector:
    totals = {name: ZERO for name in scf.ground.names}
    for item, _, value in bm_table(scf).negatives():
        totals[item] += value
    return NegativityVector(scf.ground, {name: -totals[name] for name in scf.ground.names})


def sample_rum(
    ground: GroundSet, distribution: Mapping[Sequence[str], Fraction | str | int]
) -> StochasticChoiceFunction:
    """Stochastic choice induced by a probability distribution on linear orders.

    Keys are full orders over the ground set, best alternative first;
    p(a, A) accumulates the mass of orders ranking a above the rest of A.
    """
    n = ground.n
    masses: list[tuple[tuple[int, ...], Fraction]] = []
    total = ZERO
    for order, raw in distribution.items():
        try:
            mass = Fraction(raw)
        except (ValueError, TypeError, ZeroDivisionError):
            raise NotADistribution(f"weight {raw!r} is not a rational number") from None
        if mass < 0:
            raise NotADistribution(f"negative weight {mass} for order {tuple(order)}")
        indexed = tuple(ground.index(name) for name in order)
        if sorted(indexed) != list(range(n)):
            raise NotADistribution(
                f"{tuple(order)} is not a linear order over all {n} alternatives"
            )
        masses.append((indexed, mass))
        total += mass
    if total != 1:
        raise NotADistribution(f"order weights sum to {total}, not exactly 1")
    size = 1 << n
    dense = [[ZERO] * n for _ in range(size)]
    for order, mass in masses:
        if mass == 0:
            continue
        for menu in range(1, size):
            for idx in order:
                if menu >> idx & 1:
                    dense[menu][idx] += mass
                    break
    return StochasticChoiceFunction(ground, tuple(tuple(row) for row in dense))


class Verdict(Enum):
    EQUALLY_IRRATIONAL = "EquallyIrrational"
    LEFT_LESS = "LeftLess"
    RIGHT_LESS = "RightLess"
    INCOMPARABLE = "Incomparable"


@dataclass(frozen=True)
class PreorderVerdict:
    """Outcome of the negativity-vector comparison.

    A side relates to the other when some relabeling makes its vector
    componentwise no larger; the witness permutations (as name maps) are
    kept for whichever directions hold.
    """

    verdict: Verdict
    left_to_right: Mapping[str, str] | None
    right_to_left: Mapping[str, str] | None


def _sorted_names(vec: NegativityVector) -> list[str]:
    return sorted(vec.ground.names, key=lambda name: (vec.v[name], vec.ground.index(name)))


def _dominance_witness(
    smaller: NegativityVector, larger: NegativityVector
) -> Mapping[str, str] | None:
    """Rank-matching permutation proving smaller <= larger, if any."""
    small_names = _sorted_names(smaller)
    large_names = _sorted_names(larger)
    sigma = {}
    for s, l in zip(small_names, large_names):
        if smaller.v[s] > larger.v[l]:
            return None
        sigma[s] = l
    return sigma


def compare_irrationality(
    left: StochasticChoiceFunction, right: StochasticChoiceFunction
) -> PreorderVerdict:
    """Permutation-invariant comparison of negativity vectors.

    Sorting both vectors ascending and comparing rank by rank decides the
    existential-permutation ordering; the matching itself is returned as the
    witness.
    """
    left.ground.require_same(right.ground)
    lv = negativity_vector(left)
    rv = negativity_vector(right)
    ltr = _dominance_witness(lv, rv)
    rtl = _dominance_witness(rv, lv)
    if ltr is not None and rtl is not None:
        verdict = Verdict.EQUALLY_IRRATIONAL
    elif ltr is not None:
        verdict = Verdict.LEFT_LESS
    elif rtl is not None:
        verdict = Verdict.RIGHT_LESS
    else:
        verdict = Verdict.INCOMPARABLE
    return PreorderVerdict(verdict, ltr, rtl)


def _as_permutation(ground: GroundSet, sigma: Mapping[str, str]) -> list[int]:
    if sorted(sigma) != sorted(ground.names) or sorted(sigma.values()) != sorted(ground.names):
        raise NotABijection("permutation must map the alternatives onto themselves")
    return [ground.index(sigma[name]) for name in ground.names]


def apply_permutation(
    scf: StochasticChoiceFunction, sigma: Mapping[str, str]
) -> StochasticChoiceFunction:
    """Relabeled function q with q(sigma(x), sigma(A)) = p(x, A)."""
    ground = scf.ground
    perm = _as_permutation(ground, sigma)

    def move(mask: Menu) -> Menu:
        out = 0
        for i in range(ground.n):
            if mask >> i & 1:
                out |= 1 << perm[i]
        return out

    size = 1 << ground.n
    dense = [[ZERO] * ground.n for _ in range(size)]
    for menu in range(size):
        target = move(menu)
        for i in range(ground.n):
            dense[target][perm[i]] = scf.table[menu][i]
    return StochasticChoiceFunction(ground, tuple(tuple(row) for row in dense))


def are_isomorphic(
    left: StochasticChoiceFunction, right: StochasticChoiceFunction
) -> tuple[bool, Mapping[str, str] | None]:
    """Search all relabelings for one carrying left onto right."""
    left.ground.require_same(right.ground)
    names = left.ground.names
    for image in itertools.permutations(names):
        sigma = dict(zip(names, image))
        if apply_permutation(left, sigma).table == right.table:
            return True, sigma
    return False, None


def total_variation(
    left: StochasticChoiceFunction, right: StochasticChoiceFunction
) -> Fraction:
    """Largest absolute pointwise probability difference."""
    left.ground.require_same(right.ground)
    worst = ZERO
    for menu in nonempty_menus(left.ground):
        for i in range(left.ground.n):
            if menu >> i & 1:
                gap = abs(left.table[menu][i] - right.table[menu][i])
                if gap > worst:
                    worst = gap
    return worst


def kl_divergence(
    left: StochasticChoiceFunction, right: StochasticChoiceFunction
) -> float:
    """Sum of p log(p/q) over all (item, menu) pairs.

    Conventions: terms with p = 0 contribute nothing; p > 0 against q = 0
    makes the divergence infinite (math.inf).
    """
    left.ground.require_same(right.ground)
    total = 0.0
    for menu in nonempty_menus(left.ground):
        for i in range(left.ground.n):
            if menu >> i & 1:
                p = left.table[menu][i]
                if p == 0:
                    continue
                q = right.table[menu][i]
                if q == 0:
                    return math.inf
                total += float(p) * math.log(p / q)
    return total


def is_monotonic(
    scf: StochasticChoiceFunction,
) -> tuple[bool, list[tuple[str, Menu, Menu]]]:
    """Regularity: enlarging a menu never raises an item's probability.

    Returns the complete list of witnesses (item, menu, supermenu) with
    p(item, supermenu) > p(item, menu), supermenus ascending.
    """
    ground = scf.ground
    witnesses: list[tuple[str, Menu, Menu]] = []
    for big in nonempty_menus(ground):
        for sub in iter_submasks(big):
            if sub == 0 or sub == big:
                continue
            for i in range(ground.n):
                if sub >> i & 1 and scf.table[big][i] > scf.table[sub][i]:
                    witnesses.append((ground.names[i], sub, big))
    return (not witnesses), witnesses
