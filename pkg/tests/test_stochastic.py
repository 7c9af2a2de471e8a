"""Block-Marschak polynomials, RUM tests, and irrationality comparison."""

import itertools
import math
import random
from fractions import Fraction

import pytest

from irr import (
    DatasetError,
    GroundMismatch,
    GroundSet,
    ItemNotInMenu,
    NotABijection,
    NotADistribution,
    StochasticChoiceFunction,
    Verdict,
    apply_permutation,
    are_isomorphic,
    bm_polynomial,
    bm_table,
    compare_irrationality,
    is_monotonic,
    is_rum,
    kl_divergence,
    negativity_vector,
    sample_rum,
    total_variation,
)

from .conftest import (
    EX53_P1,
    EX53_P2,
    EX54_P3,
    G3,
    G4,
    TABLE1_P1,
    TABLE2_P2,
    UNIFORM3,
    scf,
)

# expected polynomial values, one row per menu, items in name order
TABLE1_Q = {
    "x": {"x": "0.5"}, "y": {"y": "-0.1"}, "z": {"z": "0.1"}, "w": {"w": "0.5"},
    "xy": {"x": "-0.4", "y": "0.3"}, "xz": {"x": "-0.2", "z": "0.2"},
    "xw": {"x": "0.2", "w": "0"}, "yz": {"y": "0", "z": "0.2"},
    "yw": {"y": "0.4", "w": "0.1"}, "zw": {"z": "-0.1", "w": "0.3"},
    "xyz": {"x": "0.2", "y": "0.1", "z": "-0.1"},
    "xyw": {"x": "0.3", "y": "-0.1", "w": "0"},
    "xzw": {"x": "0", "z": "0.3", "w": "-0.1"},
    "yzw": {"y": "0.2", "z": "0.2", "w": "0"},
    "xyzw": {"x": "0.4", "y": "0.2", "z": "0.2", "w": "0.2"},
}
TABLE2_Q = {
    "x": {"x": "0.2"}, "y": {"y": "0.2"}, "z": {"z": "0.1"}, "w": {"w": "0.5"},
    "xy": {"x": "0", "y": "0.1"}, "xz": {"x": "0", "z": "0.1"},
    "xw": {"x": "0.2", "w": "0"}, "yz": {"y": "-0.1", "z": "0.2"},
    "yw": {"y": "0.3", "w": "0"}, "zw": {"z": "0", "w": "0.2"},
    "xyz": {"x": "0", "y": "0.1", "z": "0"},
    "xyw": {"x": "0.1", "y": "0", "w": "0.1"},
    "xzw": {"x": "0", "z": "0.2", "w": "0"},
    "yzw": {"y": "0.2", "z": "0.2", "w": "0.1"},
    "xyzw": {"x": "0.5", "y": "0.2", "z": "0.2", "w": "0.1"},
}


@pytest.fixture(scope="module")
def p1():
    return scf(G4, TABLE1_P1)


@pytest.fixture(scope="module")
def p2():
    return scf(G4, TABLE2_P2)


@pytest.fixture(scope="module")
def trio():
    return {
        "p": scf(G3, UNIFORM3),
        "p1": scf(G3, EX53_P1),
        "p2": scf(G3, EX53_P2),
        "p3": scf(G3, EX54_P3),
    }


def random_orders_distribution(ground, rng, support=4):
    orders = [tuple(p) for p in itertools.permutations(ground.names)]
    picked = rng.sample(orders, support)
    cuts = sorted(rng.randint(1, 99) for _ in range(support - 1))
    edges = [0] + cuts + [100]
    return {
        order: Fraction(edges[i + 1] - edges[i], 100) for i, order in enumerate(picked)
    }


class TestValidation:
    def test_row_sum_must_be_exactly_one(self):
        rows = dict(UNIFORM3, xy={"x": "0.5", "y": "0.49"})
        with pytest.raises(DatasetError) as info:
            scf(G3, rows)
        assert "sum to" in str(info.value)

    def test_off_menu_mass_rejected(self):
        table = [[Fraction(0)] * 3 for _ in range(8)]
        for menu in range(1, 8):
            first = next(i for i in range(3) if menu >> i & 1)
            table[menu][first] = Fraction(1)
        table[1][1] = Fraction(1, 2)  # y-mass on the menu {x}
        table[1][0] = Fraction(1, 2)
        with pytest.raises(DatasetError) as info:
            StochasticChoiceFunction(G3, tuple(tuple(r) for r in table))
        assert "outside" in str(info.value)

    def test_floats_rejected(self):
        table = [tuple([Fraction(0)] * 3)] * 8
        bad = list(table)
        bad[1] = (0.5, Fraction(0), Fraction(0))
        with pytest.raises(DatasetError):
            StochasticChoiceFunction(G3, tuple(bad))

    def test_from_menu_rows_requires_every_menu(self):
        rows = dict(UNIFORM3)
        del rows["xy"]
        with pytest.raises(DatasetError) as info:
            scf(G3, rows)
        assert "missing" in str(info.value)

    def test_from_menu_rows_rejects_foreign_and_omitted_names(self):
        with pytest.raises(DatasetError):
            scf(G3, dict(UNIFORM3, xy={"x": "0.5", "z": "0.5"}))
        with pytest.raises(DatasetError):
            scf(G3, dict(UNIFORM3, xy={"x": "1"}))

    def test_value_lookup(self, trio):
        assert trio["p2"].value("x", G3.mask_of(("x", "y"))) == Fraction(7, 10)
        assert trio["p2"].value("z", G3.mask_of(("x", "y"))) == 0


class TestBMPolynomials:
    @pytest.mark.parametrize(
        "grid,expected", [(TABLE1_P1, TABLE1_Q), (TABLE2_P2, TABLE2_Q)],
        ids=["table1", "table2"],
    )
    def test_every_entry_matches(self, grid, expected):
        p = scf(G4, grid)
        table = bm_table(p)
        seen = 0
        for key, row in expected.items():
            menu = G4.mask_of(list(key))
            for item, value in row.items():
                assert table.q[(item, menu)] == Fraction(value), (item, key)
                seen += 1
        assert seen == 32
        assert len(table.q) == 32

    def test_full_menu_polynomial_is_the_probability(self, p1, p2):
        for p in (p1, p2):
            for name in G4.names:
                assert bm_polynomial(p, name, G4.full_mask) == p.value(
                    name, G4.full_mask
                )

    def test_moebius_inversion_recovers_probabilities(self, p1, p2, trio):
        # summing polynomials over supersets gives back the original table
        for p in (p1, p2, trio["p3"]):
            ground = p.ground
            table = bm_table(p)
            for menu in range(1, 1 << ground.n):
                rest = ground.full_mask & ~menu
                for name in ground.names_of(menu):
                    total = Fraction(0)
                    extra = rest
                    while True:
                        total += table.q[(name, menu | extra)]
                        if extra == 0:
                            break
                        extra = (extra - 1) & rest
                    assert total == p.value(name, menu)

    def test_item_must_be_in_menu(self, p1):
        with pytest.raises(ItemNotInMenu):
            bm_polynomial(p1, "w", G4.mask_of(("x", "y")))


class TestRUM:
    def test_first_table_has_seven_negatives(self, p1):
        verdict, negatives = is_rum(p1)
        assert not verdict
        got = {(item, menu) for item, menu, _ in negatives}
        assert got == {
            ("y", G4.mask_of(("y",))),
            ("x", G4.mask_of(("x", "y"))),
            ("x", G4.mask_of(("x", "z"))),
            ("z", G4.mask_of(("z", "w"))),
            ("z", G4.mask_of(("x", "y", "z"))),
            ("y", G4.mask_of(("x", "y", "w"))),
            ("w", G4.mask_of(("x", "z", "w"))),
        }

    def test_second_table_has_one_negative(self, p2):
        verdict, negatives = is_rum(p2)
        assert not verdict
        assert negatives == [("y", G4.mask_of(("y", "z")), Fraction(-1, 10))]

    def test_negativity_vectors(self, p1, p2):
        assert negativity_vector(p1).as_tuple() == (
            Fraction(3, 5), Fraction(1, 5), Fraction(1, 5), Fraction(1, 10),
        )
        assert negativity_vector(p2).as_tuple() == (
            Fraction(0), Fraction(1, 10), Fraction(0), Fraction(0),
        )

    def test_uniform_is_rum(self, trio):
        verdict, negatives = is_rum(trio["p"])
        assert verdict and negatives == []

    def test_comparison_family_vectors(self, trio):
        assert negativity_vector(trio["p1"]).as_tuple() == (
            Fraction(1, 5), Fraction(0), Fraction(0),
        )
        assert negativity_vector(trio["p2"]).as_tuple() == (
            Fraction(3, 10), Fraction(0), Fraction(1, 10),
        )
        # one negative polynomial per item, each 0.3 - 1/3 = -1/30
        assert negativity_vector(trio["p3"]).as_tuple() == (
            Fraction(1, 30), Fraction(1, 30), Fraction(1, 30),
        )
        assert negativity_vector(trio["p3"]).as_tuple() != (
            Fraction("0.03"),) * 3


class TestSampleRUM:
    def test_uniform_mixture_gives_uniform_choice(self, trio):
        orders = {order: Fraction(1, 6) for order in itertools.permutations(G3.names)}
        assert sample_rum(G3, orders).table == trio["p"].table

    def test_single_order_is_deterministic(self):
        p = sample_rum(G3, {("y", "x", "z"): Fraction(1)})
        assert p.value("y", G3.full_mask) == 1
        assert p.value("x", G3.mask_of(("x", "z"))) == 1
        assert p.value("x", G3.mask_of(("x", "y"))) == 0

    def test_mixtures_are_rum(self):
        rng = random.Random(7)
        for ground in (G3, G4):
            for _ in range(20):
                p = sample_rum(ground, random_orders_distribution(ground, rng))
                verdict, _ = is_rum(p)
                assert verdict

    def test_rejects_bad_distributions(self):
        with pytest.raises(NotADistribution):
            sample_rum(G3, {("x", "y", "z"): Fraction(1, 2)})
        with pytest.raises(NotADistribution):
            sample_rum(G3, {("x", "y", "z"): Fraction(3, 2),
                            ("y", "x", "z"): Fraction(-1, 2)})
        with pytest.raises(NotADistribution):
            sample_rum(G3, {("x", "x", "z"): Fraction(1)})
        with pytest.raises(NotADistribution):
            sample_rum(G3, {("x", "y"): Fraction(1)})
        with pytest.raises(NotADistribution):
            sample_rum(G3, {("x", "y", "z"): "0.5oops"})
        with pytest.raises(DatasetError):
            sample_rum(G3, {("x", "y", "q"): Fraction(1)})


class TestComparison:
    def test_moderate_table_less_irrational(self, p1, p2):
        report = compare_irrationality(p1, p2)
        assert report.verdict is Verdict.RIGHT_LESS
        assert report.left_to_right is None
        sigma = report.right_to_left
        lv, rv = negativity_vector(p1), negativity_vector(p2)
        for name in G4.names:
            assert rv.v[name] <= lv.v[sigma[name]]

    def test_uniform_background_ordering(self, trio):
        report = compare_irrationality(trio["p1"], trio["p2"])
        assert report.verdict is Verdict.LEFT_LESS
        assert report.left_to_right == {"x": "x", "y": "y", "z": "z"}
        assert report.right_to_left is None

    def test_symmetric_family_is_incomparable(self, trio):
        for other in ("p1", "p2"):
            report = compare_irrationality(trio["p3"], trio[other])
            assert report.verdict is Verdict.INCOMPARABLE
            assert report.left_to_right is None
            assert report.right_to_left is None

    def test_self_comparison_is_equality(self, p1):
        report = compare_irrationality(p1, p1)
        assert report.verdict is Verdict.EQUALLY_IRRATIONAL
        assert report.left_to_right is not None
        assert report.right_to_left is not None

    def test_relabeled_copy_is_equally_irrational(self, trio):
        sigma = {"x": "z", "y": "x", "z": "y"}
        relabeled = apply_permutation(trio["p2"], sigma)
        report = compare_irrationality(trio["p2"], relabeled)
        assert report.verdict is Verdict.EQUALLY_IRRATIONAL

    def test_ground_mismatch(self, p1, trio):
        with pytest.raises(GroundMismatch):
            compare_irrationality(p1, trio["p"])


class TestPermutations:
    def test_values_transported(self, trio):
        sigma = {"x": "y", "y": "z", "z": "x"}
        moved = apply_permutation(trio["p2"], sigma)
        for menu in range(1, 8):
            image = 0
            for i in range(3):
                if menu >> i & 1:
                    image |= 1 << G3.index(sigma[G3.names[i]])
            for name in G3.names_of(menu):
                assert moved.value(sigma[name], image) == trio["p2"].value(name, menu)

    def test_negativity_is_equivariant(self, trio):
        sigma = {"x": "y", "y": "z", "z": "x"}
        base = negativity_vector(trio["p3"])
        moved = negativity_vector(apply_permutation(trio["p3"], sigma))
        for name in G3.names:
            assert moved.v[sigma[name]] == base.v[name]

    def test_rejects_non_bijections(self, trio):
        with pytest.raises(NotABijection):
            apply_permutation(trio["p"], {"x": "y", "y": "y", "z": "x"})
        with pytest.raises(NotABijection):
            apply_permutation(trio["p"], {"x": "y", "y": "x"})

    def test_isomorphism_search(self, p1, p2, trio):
        sigma = {"x": "z", "y": "x", "z": "y"}
        relabeled = apply_permutation(trio["p2"], sigma)
        found, witness = are_isomorphic(trio["p2"], relabeled)
        assert found
        assert apply_permutation(trio["p2"], witness).table == relabeled.table
        assert are_isomorphic(p1, p2) == (False, None)


class TestDistances:
    def test_total_variation_to_uniform(self, trio):
        assert total_variation(trio["p"], trio["p1"]) == Fraction(4, 15)
        assert total_variation(trio["p"], trio["p2"]) == Fraction(4, 15)

    def test_total_variation_laws(self, trio):
        assert total_variation(trio["p1"], trio["p1"]) == 0
        assert total_variation(trio["p1"], trio["p2"]) == total_variation(
            trio["p2"], trio["p1"]
        )

    def test_kl_ordering_against_uniform(self, trio):
        p = trio["p"]
        low = kl_divergence(trio["p1"], p)
        mid = kl_divergence(trio["p3"], p)
        high = kl_divergence(trio["p2"], p)
        assert low + 1e-9 < mid < high - 1e-9
        assert low == pytest.approx(0.1483417494348751, abs=1e-12)
        assert mid == pytest.approx(0.2468486355151553, abs=1e-12)
        assert high == pytest.approx(0.3652323208214335, abs=1e-12)

    def test_kl_conventions(self, trio):
        assert kl_divergence(trio["p"], trio["p"]) == 0.0
        deterministic = sample_rum(G3, {("x", "y", "z"): Fraction(1)})
        # zero-probability terms on the left are skipped
        finite = kl_divergence(deterministic, trio["p"])
        assert math.isclose(finite, 3 * math.log(2) + math.log(3))
        # mass against a zero cell blows up
        assert kl_divergence(trio["p"], deterministic) == math.inf


class TestMonotonicity:
    def test_first_table_violations(self, p1):
        verdict, witnesses = is_monotonic(p1)
        assert not verdict
        xy, xz, xw = (G4.mask_of(k) for k in (("x", "y"), ("x", "z"), ("x", "w")))
        xyz, xyw, xzw = (
            G4.mask_of(k)
            for k in (("x", "y", "z"), ("x", "y", "w"), ("x", "z", "w"))
        )
        full = G4.full_mask
        assert witnesses == [
            ("x", xy, xyz),
            ("x", xz, xyz),
            ("x", xy, xyw),
            ("w", xw, xyw),
            ("z", xyz, full),
            ("w", xw, full),
            ("y", xyw, full),
            ("w", xzw, full),
        ]

    def test_second_table_is_monotonic(self, p2):
        assert is_monotonic(p2) == (True, [])

    def test_rum_samples_are_monotonic(self):
        rng = random.Random(21)
        for _ in range(10):
            p = sample_rum(G4, random_orders_distribution(G4, rng))
            assert is_monotonic(p)[0]
