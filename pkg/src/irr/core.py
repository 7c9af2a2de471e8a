"""Ground sets, menus, binary relations, and quasi-choice correspondences.

Menus are bitmasks over the ground-set index order fixed at construction,
and every enumeration walks menus in ascending bitmask order, so all results
are deterministic. A quasi-choice stores a dense table of 2^n choice masks;
a choice correspondence is a quasi-choice that is decisive (nonempty choice
on every nonempty menu).

Rationalizability means: one binary relation R explains every choice set as
the undominated elements max(A, R) = {x in A : no a in A with a R x}. The
equivalence with contraction consistency (alpha) plus expansion consistency
(gamma) is used as the decision procedure; the returned rationalizer is the
pairwise-defeat relation, re-checked by re-induction.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import (
    DatasetError,
    GroundMismatch,
    GroundSetTooLarge,
    NotASubset,
    NotRationalizable,
)

Menu = int

DEFAULT_MAX_N = 4
HARD_MAX_N = 6


def enumeration_cap() -> int:
    """Current size cap for enumeration-based operations.

    Controlled by the IRR_MAX_N environment variable (default 4). Values
    above the hard maximum of 6 are clamped: benchmark enumeration walks
    2^(n*n) relations and is hopeless beyond that.
    """
    raw = os.environ.get("IRR_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    try:
        cap = int(raw)
    except ValueError:
        raise DatasetError(f"IRR_MAX_N must be an integer, got {raw!r}") from None
    return min(max(cap, 2), HARD_MAX_N)


def _require_cap(n: int) -> None:
    cap = enumeration_cap()
    if n > cap:
        raise GroundSetTooLarge(
            f"ground set has {n} alternatives, enumeration cap is {cap} "
            f"(raise IRR_MAX_N up to {HARD_MAX_N} to override)"
        )


def iter_submasks(mask: Menu) -> Iterator[Menu]:
    """All submasks of ``mask`` in ascending numeric order, including 0."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


@dataclass(frozen=True)
class GroundSet:
    """Finite set of at least two distinctly named alternatives."""

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.names, tuple):
            object.__setattr__(self, "names", tuple(self.names))
        if len(self.names) < 2:
            raise DatasetError("a ground set needs at least 2 alternatives")
        seen = set()
        for name in self.names:
            if not isinstance(name, str) or not name:
                raise DatasetError(f"alternative names must be nonempty strings, got {name!r}")
            if "," in name:
                raise DatasetError(f"alternative name {name!r} may not contain a comma")
            if name in seen:
                raise DatasetError(f"duplicate alternative name {name!r}")
            seen.add(name)

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def full_mask(self) -> Menu:
        return (1 << self.n) - 1

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise DatasetError(f"unknown alternative {name!r}") from None

    def mask_of(self, names: Iterable[str]) -> Menu:
        mask = 0
        for name in names:
            bit = 1 << self.index(name)
            if mask & bit:
                raise DatasetError(f"alternative {name!r} listed twice")
            mask |= bit
        return mask

    def names_of(self, menu: Menu) -> tuple[str, ...]:
        self.check_menu(menu)
        return tuple(self.names[i] for i in range(self.n) if menu >> i & 1)

    def check_menu(self, menu: Menu) -> None:
        if not 0 <= menu <= self.full_mask:
            raise NotASubset(f"menu mask {menu:#x} is not over this ground set")

    def menu_key(self, menu: Menu) -> str:
        """Comma-joined member names in declared order ('' for the empty menu)."""
        return ",".join(self.names_of(menu))

    def format_menu(self, menu: Menu) -> str:
        return "{" + ",".join(self.names_of(menu)) + "}"

    def require_same(self, other: "GroundSet") -> None:
        if self != other:
            raise GroundMismatch(
                f"ground sets differ: {list(self.names)} vs {list(other.names)}"
            )


def all_menus(ground: GroundSet) -> list[Menu]:
    """Every menu, the empty one included, in ascending bitmask order."""
    return list(range((1 << ground.n)))


def nonempty_menus(ground: GroundSet) -> range:
    return range(1, 1 << ground.n)


@dataclass(frozen=True)
class BinaryRelation:
    """Arbitrary binary relation stored as a frozenset of index pairs."""

    ground: GroundSet
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if not isinstance(self.pairs, frozenset):
            object.__setattr__(self, "pairs", frozenset(self.pairs))
        n = self.ground.n
        for a, b in self.pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise DatasetError(f"relation pair ({a}, {b}) is out of range")

    @classmethod
    def from_names(
        cls, ground: GroundSet, pairs: Iterable[tuple[str, str]]
    ) -> "BinaryRelation":
        return cls(ground, frozenset((ground.index(a), ground.index(b)) for a, b in pairs))

    @property
    def named_pairs(self) -> tuple[tuple[str, str], ...]:
        return tuple(
            (self.ground.names[a], self.ground.names[b]) for a, b in sorted(self.pairs)
        )

    @cached_property
    def dominator_masks(self) -> tuple[int, ...]:
        """dominator_masks[x] = mask of all a with (a, x) in the relation."""
        doms = [0] * self.ground.n
        for a, b in self.pairs:
            doms[b] |= 1 << a
        return tuple(doms)

    @cached_property
    def successor_masks(self) -> tuple[int, ...]:
        """successor_masks[a] = mask of all x with (a, x) in the relation."""
        rows = [0] * self.ground.n
        for a, b in self.pairs:
            rows[a] |= 1 << b
        return tuple(rows)

    def is_asymmetric(self) -> bool:
        return all((b, a) not in self.pairs for a, b in self.pairs)

    def is_irreflexive(self) -> bool:
        return all(a != b for a, b in self.pairs)

    def is_acyclic(self) -> bool:
        """No directed cycle (self-loops and 2-cycles count as cycles)."""
        rows = self.successor_masks
        color = [0] * self.ground.n  # 0 fresh, 1 on stack, 2 done
        for start in range(self.ground.n):
            if color[start]:
                continue
            stack: list[tuple[int, int]] = [(start, rows[start])]
            color[start] = 1
            while stack:
                node, todo = stack[-1]
                if todo == 0:
                    color[node] = 2
                    stack.pop()
                    continue
                nxt = (todo & -todo).bit_length() - 1
                stack[-1] = (node, todo & (todo - 1))
                if color[nxt] == 1:
                    return False
                if color[nxt] == 0:
                    color[nxt] = 1
                    stack.append((nxt, rows[nxt]))
        return True

    def is_transitive(self) -> bool:
        rows = self.successor_masks
        for a in range(self.ground.n):
            reach = rows[a]
            step = 0
            todo = reach
            while todo:
                b = (todo & -todo).bit_length() - 1
                todo &= todo - 1
                step |= rows[b]
            if step & ~reach:
                return False
        return True

    def is_negatively_transitive(self) -> bool:
        """a R c implies a R b or b R c, for every b."""
        rows = self.successor_masks
        n = self.ground.n
        for a, c in self.pairs:
            for b in range(n):
                if not (rows[a] >> b & 1) and not (rows[b] >> c & 1):
                    return False
        return True

    def relabel(self, perm: Sequence[int]) -> "BinaryRelation":
        """Relation under the index permutation i -> perm[i] (same ground)."""
        return BinaryRelation(
            self.ground, frozenset((perm[a], perm[b]) for a, b in self.pairs)
        )


def max_set(menu: Menu, rel: BinaryRelation) -> Menu:
    """Elements of the menu dominated by no element of the menu.

    A self-loop (x, x) excludes x from every menu containing it, so the
    result can be empty.
    """
    rel.ground.check_menu(menu)
    doms = rel.dominator_masks
    out = 0
    todo = menu
    while todo:
        x = (todo & -todo).bit_length() - 1
        todo &= todo - 1
        if not doms[x] & menu:
            out |= 1 << x
    return out


@dataclass(frozen=True)
class QuasiChoice:
    """Total choice map over all menus; choice sets may be empty."""

    ground: GroundSet
    table: tuple[Menu, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.table, tuple):
            object.__setattr__(self, "table", tuple(self.table))
        size = 1 << self.ground.n
        if len(self.table) != size:
            raise DatasetError(
                f"choice table must have {size} entries, got {len(self.table)}"
            )
        for menu, chosen in enumerate(self.table):
            if chosen & ~menu:
                raise DatasetError(
                    f"choice at menu {self.ground.format_menu(menu)} "
                    "contains elements outside the menu"
                )

    def choice(self, menu: Menu) -> Menu:
        self.ground.check_menu(menu)
        return self.table[menu]

    @property
    def is_decisive(self) -> bool:
        return all(self.table[menu] for menu in range(1, len(self.table)))

    def encoding(self) -> int:
        """Canonical integer key: table entries packed menu-0-first.

        Ascending encoding order equals lexicographic order of tables, which
        is the tie-break order used for reported minimizers.
        """
        n = self.ground.n
        enc = 0
        for entry in self.table:
            enc = (enc << n) | entry
        return enc

    def relabel(self, perm: Sequence[int]) -> "QuasiChoice":
        """Quasi-choice under the index permutation i -> perm[i]."""

        def move(mask: Menu) -> Menu:
            out = 0
            for i in range(self.ground.n):
                if mask >> i & 1:
                    out |= 1 << perm[i]
            return out

        size = len(self.table)
        new_table = [0] * size
        for menu in range(size):
            new_table[move(menu)] = move(self.table[menu])
        return type(self)(self.ground, tuple(new_table))

    def as_choice_correspondence(self) -> "ChoiceCorrespondence":
        return ChoiceCorrespondence(self.ground, self.table)


@dataclass(frozen=True)
class ChoiceCorrespondence(QuasiChoice):
    """Quasi-choice certified decisive at construction."""

    def __post_init__(self) -> None:
        super().__post_init__()
        for menu in range(1, len(self.table)):
            if not self.table[menu]:
                raise DatasetError(
                    f"not decisive: empty choice at menu {self.ground.format_menu(menu)}"
                )


def induced_quasi_choice(rel: BinaryRelation) -> QuasiChoice:
    """The quasi-choice picking max(A, rel) on every menu A."""
    size = 1 << rel.ground.n
    return QuasiChoice(rel.ground, tuple(max_set(menu, rel) for menu in range(size)))


Witness = tuple[str, Menu, Menu]


def satisfies_alpha(choice: QuasiChoice) -> tuple[bool, list[Witness]]:
    """Contraction consistency: x chosen in B stays chosen in any A with x in A, A sub B.

    Returns the complete list of violating triples (x, A, B), ordered by B
    ascending, then A ascending, then element index.
    """
    table = choice.table
    names = choice.ground.names
    witnesses: list[Witness] = []
    for big in range(1, len(table)):
        chosen_big = table[big]
        if not chosen_big:
            continue
        for sub in iter_submasks(big):
            if sub == 0 or sub == big:
                continue
            lost = chosen_big & sub & ~table[sub]
            while lost:
                x = (lost & -lost).bit_length() - 1
                lost &= lost - 1
                witnesses.append((names[x], sub, big))
    return (not witnesses), witnesses


def satisfies_gamma(choice: QuasiChoice) -> tuple[bool, list[Witness]]:
    """Expansion consistency: x chosen in A and in B stays chosen in A union B.

    Returns the complete list of violating triples (x, A, B) over unordered
    menu pairs A < B, ascending.
    """
    table = choice.table
    names = choice.ground.names
    witnesses: list[Witness] = []
    size = len(table)
    for a_menu in range(1, size):
        if not table[a_menu]:
            continue
        for b_menu in range(a_menu + 1, size):
            lost = table[a_menu] & table[b_menu] & ~table[a_menu | b_menu]
            while lost:
                x = (lost & -lost).bit_length() - 1
                lost &= lost - 1
                witnesses.append((names[x], a_menu, b_menu))
    return (not witnesses), witnesses


def is_rationalizable(choice: QuasiChoice) -> tuple[bool, BinaryRelation | None]:
    """Decide rationalizability and, when it holds, return one rationalizer.

    Decision is alpha and gamma. The returned relation is the pairwise-defeat
    relation: a defeats x whenever x is not chosen from {a, x} (with a = x
    this reads: x defeats itself when the singleton choice is empty). The
    construction is re-checked by inducing a quasi-choice from it; a mismatch
    would be an internal error.
    """
    if not (satisfies_alpha(choice)[0] and satisfies_gamma(choice)[0]):
        return False, None
    ground = choice.ground
    pairs = set()
    for a in range(ground.n):
        for x in range(ground.n):
            pair_menu = (1 << a) | (1 << x)
            if not choice.table[pair_menu] >> x & 1:
                pairs.add((a, x))
    rel = BinaryRelation(ground, frozenset(pairs))
    if induced_quasi_choice(rel).table != choice.table:
        raise AssertionError("internal error: constructed rationalizer failed re-induction")
    return True, rel


def revealed_preference(choice: QuasiChoice) -> BinaryRelation:
    """The strict preference revealed by a decisive rationalizable choice.

    x is preferred to y exactly when {x} is chosen from {x, y}. For decisive
    rationalizable input this relation is asymmetric, acyclic, and the unique
    generator of the choice among asymmetric relations.
    """
    if not choice.is_decisive:
        raise NotRationalizable("revealed preference requires a decisive choice")
    ok, _ = is_rationalizable(choice)
    if not ok:
        raise NotRationalizable("choice violates alpha or gamma")
    ground = choice.ground
    pairs = set()
    for a, b in itertools.permutations(range(ground.n), 2):
        if choice.table[(1 << a) | (1 << b)] == 1 << a:
            pairs.add((a, b))
    rel = BinaryRelation(ground, frozenset(pairs))
    if induced_quasi_choice(rel).table != choice.table:
        raise AssertionError("internal error: revealed preference failed re-induction")
    return rel


# --------------------------------------------------------------------------
# benchmark enumeration (memoized per ground-set size, at index level)

_QUASI_TABLES: dict[int, np.ndarray] = {}
_DECISIVE_BENCH: dict[int, tuple[np.ndarray, list[tuple[tuple[int, int], ...]]]] = {}

_ENUM_CHUNK = 1 << 20


def _quasi_benchmark_tables(n: int) -> np.ndarray:
    """Deduplicated induced choice tables of all 2^(n*n) relations, lex sorted."""
    cached = _QUASI_TABLES.get(n)
    if cached is not None:
        return cached
    from . import _kernels

    total = 1 << (n * n)
    parts = []
    for start in range(0, total, _ENUM_CHUNK):
        stop = min(start + _ENUM_CHUNK, total)
        ids = np.arange(start, stop, dtype=np.uint64)
        parts.append(_kernels.dedupe_tables(_kernels.induced_tables(ids, n)))
    tables = parts[0] if len(parts) == 1 else _kernels.dedupe_tables(np.concatenate(parts))
    tables.setflags(write=False)
    _QUASI_TABLES[n] = tables
    return tables


def _acyclic_pairs(n: int, assignment: tuple[int, ...]) -> frozenset[tuple[int, int]] | None:
    """Pairs of an asymmetric relation from a 3-state assignment, or None if cyclic."""
    pairs = []
    rows = [0] * n
    for (i, j), state in zip(itertools.combinations(range(n), 2), assignment):
        if state == 1:
            pairs.append((i, j))
            rows[i] |= 1 << j
        elif state == 2:
            pairs.append((j, i))
            rows[j] |= 1 << i
    # Kahn-style peeling on <= 6 nodes
    alive = (1 << n) - 1
    indeg = [0] * n
    for a, b in pairs:
        indeg[b] += 1
    while alive:
        progress = False
        todo = alive
        while todo:
            v = (todo & -todo).bit_length() - 1
            todo &= todo - 1
            if indeg[v] == 0:
                alive &= ~(1 << v)
                succ = rows[v]
                while succ:
                    w = (succ & -succ).bit_length() - 1
                    succ &= succ - 1
                    indeg[w] -= 1
                rows[v] = 0
                progress = True
        if not progress:
            return None
    return frozenset(pairs)


def _decisive_benchmark(n: int) -> tuple[np.ndarray, list[tuple[tuple[int, int], ...]]]:
    """Choice tables of all asymmetric acyclic relations, sorted by table.

    Returns the (R, 2^n) table array and the aligned list of relation pairs.
    The induced choice determines its generating relation (pair menus reveal
    it), so the enumeration produces no duplicate tables.
    """
    cached = _DECISIVE_BENCH.get(n)
    if cached is not None:
        return cached
    ground = GroundSet(tuple(f"a{i}" for i in range(n)))
    entries: list[tuple[tuple[int, ...], tuple[tuple[int, int], ...]]] = []
    npairs = n * (n - 1) // 2
    for assignment in itertools.product((0, 1, 2), repeat=npairs):
        pairs = _acyclic_pairs(n, assignment)
        if pairs is None:
            continue
        rel = BinaryRelation(ground, pairs)
        table = tuple(max_set(menu, rel) for menu in range(1 << n))
        entries.append((table, tuple(sorted(pairs))))
    entries.sort(key=lambda item: item[0])
    tables = np.array([table for table, _ in entries], dtype=np.uint16)
    tables.setflags(write=False)
    result = (tables, [pairs for _, pairs in entries])
    _DECISIVE_BENCH[n] = result
    return result


class RationalChoice(NamedTuple):
    """A decisive benchmark member with its generating relation."""

    choice: ChoiceCorrespondence
    relation: BinaryRelation


def enumerate_rational_quasi_choices(ground: GroundSet) -> list[QuasiChoice]:
    """All rationalizable quasi-choices, deduplicated, ascending encoding."""
    _require_cap(ground.n)
    tables = _quasi_benchmark_tables(ground.n)
    return [QuasiChoice(ground, tuple(int(v) for v in row)) for row in tables]


def enumerate_rational_choices(ground: GroundSet) -> list[RationalChoice]:
    """All choices rationalized by an asymmetric acyclic relation.

    Each comes paired with its generating relation, which equals its revealed
    preference. Ordered by ascending table encoding.
    """
    _require_cap(ground.n)
    tables, rel_pairs = _decisive_benchmark(ground.n)
    out = []
    for row, pairs in zip(tables, rel_pairs):
        choice = ChoiceCorrespondence(ground, tuple(int(v) for v in row))
        out.append(RationalChoice(choice, BinaryRelation(ground, frozenset(pairs))))
    return out
