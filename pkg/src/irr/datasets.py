"""JSON interchange for choice data, relations, probabilities, and weights.

Menu keys are comma-joined alternative names in declared order ("x,y,z"),
so files round-trip byte for byte through canonical_dumps. Probabilities
and weights travel as strings ("0.5", "1/3") and parse to Fractions;
bare JSON floats are rejected because they silently lose exactness.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from .core import BinaryRelation, GroundSet, Menu, QuasiChoice, nonempty_menus
from .errors import DatasetError
from .irrationality import WeightingMap
from .stochastic import StochasticChoiceFunction


def read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DatasetError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatasetError(
            f"{path} is not valid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})"
        ) from None


def canonical_dumps(payload: Any) -> str:
    """The one serialization used everywhere: sorted keys, two-space indent."""
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def parse_fraction(raw: Any, what: str) -> Fraction:
    """Exact rational from a string like "0.5" or "1/3", or an int."""
    if isinstance(raw, bool) or isinstance(raw, float):
        raise DatasetError(f"{what} must be a string or integer, not {raw!r}")
    try:
        return Fraction(raw)
    except (ValueError, TypeError, ZeroDivisionError):
        raise DatasetError(f"{what} is not a rational number: {raw!r}") from None


def format_fraction(value: Fraction) -> str:
    """Shortest exact rendering: integer, terminating decimal, or p/q."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    d = value.denominator
    twos = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    fives = 0
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{value.numerator}/{value.denominator}"
    places = max(twos, fives)
    scaled = value.numerator * 10**places // value.denominator
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def _ground_from(payload: Any, path: str | Path) -> GroundSet:
    if not isinstance(payload, dict):
        raise DatasetError(f"{path}: top level must be a JSON object")
    names = payload.get("alternatives")
    if not isinstance(names, list) or not all(isinstance(s, str) for s in names):
        raise DatasetError(f"{path}: 'alternatives' must be a list of strings")
    try:
        return GroundSet(tuple(names))
    except DatasetError as exc:
        raise DatasetError(f"{path}: {exc}") from None


def _menu_from_key(ground: GroundSet, key: str, path: str | Path) -> Menu:
    parts = key.split(",")
    try:
        menu = ground.mask_of(parts)
    except DatasetError as exc:
        raise DatasetError(f"{path}: bad menu key {key!r}: {exc}") from None
    if ground.menu_key(menu) != key:
        raise DatasetError(
            f"{path}: menu key {key!r} is not canonical; expected "
            f"{ground.menu_key(menu)!r}"
        )
    return menu


def load_quasi_choice(
    path: str | Path, *, default_empty: bool = False
) -> QuasiChoice:
    """Read {"alternatives": [...], "choices": {"x,y": ["x"], ...}}.

    Every nonempty menu must appear unless default_empty fills the gaps
    with empty choice sets.
    """
    payload = read_json(path)
    ground = _ground_from(payload, path)
    raw = payload.get("choices")
    if not isinstance(raw, dict):
        raise DatasetError(f"{path}: 'choices' must be an object keyed by menus")
    extra = set(payload) - {"alternatives", "choices"}
    if extra:
        raise DatasetError(f"{path}: unknown keys {sorted(extra)}")
    table = [0] * (1 << ground.n)
    seen = set()
    for key, chosen in raw.items():
        menu = _menu_from_key(ground, key, path)
        if menu in seen:
            raise DatasetError(f"{path}: duplicate menu key {key!r}")
        seen.add(menu)
        if not isinstance(chosen, list) or not all(isinstance(s, str) for s in chosen):
            raise DatasetError(f"{path}: choice at {key!r} must be a list of names")
        mask = ground.mask_of(chosen)
        if mask & ~menu:
            raise DatasetError(
                f"{path}: choice at {key!r} includes alternatives outside the menu"
            )
        table[menu] = mask
    if not default_empty:
        missing = [m for m in nonempty_menus(ground) if m not in seen]
        if missing:
            raise DatasetError(
                f"{path}: no choice recorded for menu "
                f"{ground.format_menu(missing[0])} (pass default-empty to allow)"
            )
    return QuasiChoice(ground, tuple(table))


def dump_quasi_choice(choice: QuasiChoice) -> str:
    ground = choice.ground
    choices = {
        ground.menu_key(menu): list(ground.names_of(choice.table[menu]))
        for menu in nonempty_menus(ground)
    }
    return canonical_dumps({"alternatives": list(ground.names), "choices": choices})


def load_relation(path: str | Path) -> BinaryRelation:
    """Read {"alternatives": [...], "pairs": [["x", "y"], ...]}."""
    payload = read_json(path)
    ground = _ground_from(payload, path)
    raw = payload.get("pairs")
    if not isinstance(raw, list):
        raise DatasetError(f"{path}: 'pairs' must be a list of two-element lists")
    extra = set(payload) - {"alternatives", "pairs"}
    if extra:
        raise DatasetError(f"{path}: unknown keys {sorted(extra)}")
    pairs = []
    for entry in raw:
        if not isinstance(entry, list) or len(entry) != 2:
            raise DatasetError(f"{path}: pair {entry!r} must be a two-element list")
        a, b = entry
        pairs.append((a, b))
    try:
        return BinaryRelation.from_names(ground, pairs)
    except DatasetError as exc:
        raise DatasetError(f"{path}: {exc}") from None


def load_stochastic(path: str | Path) -> StochasticChoiceFunction:
    """Read {"alternatives": [...], "p": {"x,y": {"x": "0.5", ...}, ...}}."""
    payload = read_json(path)
    ground = _ground_from(payload, path)
    raw = payload.get("p")
    if not isinstance(raw, dict):
        raise DatasetError(f"{path}: 'p' must be an object keyed by menus")
    extra = set(payload) - {"alternatives", "p"}
    if extra:
        raise DatasetError(f"{path}: unknown keys {sorted(extra)}")
    rows: dict[Menu, dict[str, Fraction]] = {}
    for key, row in raw.items():
        menu = _menu_from_key(ground, key, path)
        if menu in rows:
            raise DatasetError(f"{path}: duplicate menu key {key!r}")
        if not isinstance(row, dict):
            raise DatasetError(f"{path}: row at {key!r} must be an object")
        rows[menu] = {
            name: parse_fraction(value, f"{path}: p({name}, {{{key}}})")
            for name, value in row.items()
        }
    try:
        return StochasticChoiceFunction.from_menu_rows(ground, rows)
    except DatasetError as exc:
        raise DatasetError(f"{path}: {exc}") from None


def dump_stochastic(scf: StochasticChoiceFunction) -> str:
    ground = scf.ground
    p: dict[str, dict[str, str]] = {}
    for menu in nonempty_menus(ground):
        p[ground.menu_key(menu)] = {
            name: format_fraction(scf.table[menu][ground.index(name)])
            for name in ground.names_of(menu)
        }
    return canonical_dumps({"alternatives": list(ground.names), "p": p})


def load_weights(path: str | Path) -> WeightingMap:
    """Read {"weights": {"1": "0.6", ...}, "epsilon": "0.5"}."""
    payload = read_json(path)
    if not isinstance(payload, dict):
        raise DatasetError(f"{path}: top level must be a JSON object")
    raw = payload.get("weights")
    if not isinstance(raw, dict):
        raise DatasetError(f"{path}: 'weights' must be an object keyed '1'..'9'")
    extra = set(payload) - {"weights", "epsilon"}
    if extra:
        raise DatasetError(f"{path}: unknown keys {sorted(extra)}")
    weights: dict[int, Fraction] = {}
    for key, value in raw.items():
        try:
            rank = int(key)
        except (TypeError, ValueError):
            raise DatasetError(f"{path}: weight key {key!r} is not an integer") from None
        weights[rank] = parse_fraction(value, f"{path}: weight for rank {key}")
    epsilon = parse_fraction(payload.get("epsilon", "0"), f"{path}: epsilon")
    try:
        return WeightingMap(weights, epsilon)
    except DatasetError as exc:
        raise DatasetError(f"{path}: {exc}") from None


def dump_weights(weighting: WeightingMap) -> str:
    payload = {
        "weights": {
            str(rank): format_fraction(weighting.weights[rank])
            for rank in sorted(weighting.weights)
        },
        "epsilon": format_fraction(weighting.epsilon),
    }
    return canonical_dumps(payload)


def relation_payload(rel: BinaryRelation) -> Mapping[str, Any]:
    return {
        "alternatives": list(rel.ground.names),
        "pairs": [list(pair) for pair in rel.named_pairs],
    }
