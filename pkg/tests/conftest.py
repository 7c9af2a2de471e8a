"""Shared builders for the suite.

Choice tables in tests are written as menu-key maps over declared names;
singletons default to self-choice unless overridden, mirroring how the
worked examples print only the informative menus.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest

from irr import GroundSet, QuasiChoice, StochasticChoiceFunction

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

G2 = GroundSet(("x", "y"))
G3 = GroundSet(("x", "y", "z"))
G4 = GroundSet(("x", "y", "z", "w"))


def qc(ground: GroundSet, mapping: dict[str, list[str]]) -> QuasiChoice:
    """Quasi-choice from menu-key rows; unlisted singletons choose themselves."""
    table = [0] * (1 << ground.n)
    for menu in range(1, 1 << ground.n):
        if menu.bit_count() == 1:
            table[menu] = menu
    for key, chosen in mapping.items():
        table[ground.mask_of(key.split(","))] = ground.mask_of(chosen)
    return QuasiChoice(ground, tuple(table))


def scf(ground: GroundSet, rows: dict[str, dict[str, str]]) -> StochasticChoiceFunction:
    """Stochastic choice from single-letter menu keys and string probabilities."""
    menu_rows = {}
    for key, row in rows.items():
        menu_rows[ground.mask_of(list(key))] = {
            name: Fraction(value) for name, value in row.items()
        }
    return StochasticChoiceFunction.from_menu_rows(ground, menu_rows)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


# the three n=3 choice functions compared throughout: identical on pairs,
# rationalizable only when the full menu picks the pairwise winner
EX31 = {
    "c1": {"x,y": ["x"], "x,z": ["x"], "y,z": ["y"], "x,y,z": ["x"]},
    "c2": {"x,y": ["x"], "x,z": ["x"], "y,z": ["y"], "x,y,z": ["y"]},
    "c3": {"x,y": ["x"], "x,z": ["x"], "y,z": ["y"], "x,y,z": ["z"]},
}

# the four n=4 choice correspondences sharing every menu except {x,y,z} and X
EX32_COMMON = {
    "x,y": ["x", "y"], "x,z": ["x"], "x,w": ["x"], "y,z": ["y", "z"],
    "y,w": ["y"], "z,w": ["z"], "x,y,w": ["x", "y"], "x,z,w": ["x"],
    "y,z,w": ["y", "z"],
}
EX32_VARIANTS = {
    "c1": {"x,y,z": ["x", "y"], "x,y,z,w": ["x", "y"]},
    "c2": {"x,y,z": ["x", "z"], "x,y,z,w": ["x", "z"]},
    "c3": {"x,y,z": ["y", "z"], "x,y,z,w": ["y", "w"]},
    "c4": {"x,y,z": ["y"], "x,y,z,w": ["w"]},
}


def ex31(name: str) -> QuasiChoice:
    return qc(G3, EX31[name])


def ex32(name: str) -> QuasiChoice:
    return qc(G4, dict(EX32_COMMON, **EX32_VARIANTS[name]))


# stochastic grids: the two n=4 tables and the n=3 comparison family
TABLE1_P1 = {
    "x": {"x": "1"}, "y": {"y": "1"}, "z": {"z": "1"}, "w": {"w": "1"},
    "xy": {"x": "0.5", "y": "0.5"}, "xz": {"x": "0.4", "z": "0.6"},
    "xw": {"x": "0.9", "w": "0.1"}, "yz": {"y": "0.5", "z": "0.5"},
    "yw": {"y": "0.7", "w": "0.3"}, "zw": {"z": "0.6", "w": "0.4"},
    "xyz": {"x": "0.6", "y": "0.3", "z": "0.1"},
    "xyw": {"x": "0.7", "y": "0.1", "w": "0.2"},
    "xzw": {"x": "0.4", "z": "0.5", "w": "0.1"},
    "yzw": {"y": "0.4", "z": "0.4", "w": "0.2"},
    "xyzw": {"x": "0.4", "y": "0.2", "z": "0.2", "w": "0.2"},
}
TABLE2_P2 = {
    "x": {"x": "1"}, "y": {"y": "1"}, "z": {"z": "1"}, "w": {"w": "1"},
    "xy": {"x": "0.6", "y": "0.4"}, "xz": {"x": "0.5", "z": "0.5"},
    "xw": {"x": "0.8", "w": "0.2"}, "yz": {"y": "0.4", "z": "0.6"},
    "yw": {"y": "0.7", "w": "0.3"}, "zw": {"z": "0.6", "w": "0.4"},
    "xyz": {"x": "0.5", "y": "0.3", "z": "0.2"},
    "xyw": {"x": "0.6", "y": "0.2", "w": "0.2"},
    "xzw": {"x": "0.5", "z": "0.4", "w": "0.1"},
    "yzw": {"y": "0.4", "z": "0.4", "w": "0.2"},
    "xyzw": {"x": "0.5", "y": "0.2", "z": "0.2", "w": "0.1"},
}
UNIFORM3 = {
    "x": {"x": "1"}, "y": {"y": "1"}, "z": {"z": "1"},
    "xy": {"x": "1/2", "y": "1/2"}, "xz": {"x": "1/2", "z": "1/2"},
    "yz": {"y": "1/2", "z": "1/2"},
    "xyz": {"x": "1/3", "y": "1/3", "z": "1/3"},
}
EX53_P1 = dict(UNIFORM3, xyz={"x": "0.6", "y": "0.2", "z": "0.2"})
EX53_P2 = {
    "x": {"x": "1"}, "y": {"y": "1"}, "z": {"z": "1"},
    "xy": {"x": "0.7", "y": "0.3"}, "xz": {"x": "0.3", "z": "0.7"},
    "yz": {"y": "0.5", "z": "0.5"},
    "xyz": {"x": "0.6", "y": "0.3", "z": "0.1"},
}
EX54_P3 = {
    "x": {"x": "1"}, "y": {"y": "1"}, "z": {"z": "1"},
    "xy": {"x": "0.7", "y": "0.3"}, "xz": {"x": "0.3", "z": "0.7"},
    "yz": {"y": "0.7", "z": "0.3"},
    "xyz": {"x": "1/3", "y": "1/3", "z": "1/3"},
}
