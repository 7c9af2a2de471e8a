"""Ground sets, relations, quasi-choices, rationalizability, enumeration."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irr import (
    BinaryRelation,
    ChoiceCorrespondence,
    DatasetError,
    GroundSet,
    GroundSetTooLarge,
    NotRationalizable,
    QuasiChoice,
    enumerate_rational_choices,
    enumerate_rational_quasi_choices,
    induced_quasi_choice,
    is_rationalizable,
    iter_submasks,
    max_set,
    revealed_preference,
    satisfies_alpha,
    satisfies_gamma,
)
from irr.core import enumeration_cap

from .conftest import G2, G3, G4, ex31, qc


def all_quasi_choices(ground):
    options = [list(iter_submasks(menu)) for menu in range(1 << ground.n)]
    for combo in itertools.product(*options):
        yield QuasiChoice(ground, combo)


def all_relations(ground):
    cells = list(itertools.product(range(ground.n), repeat=2))
    for bits in range(1 << len(cells)):
        yield BinaryRelation(
            ground, frozenset(c for i, c in enumerate(cells) if bits >> i & 1)
        )


class TestGroundSet:
    def test_validation(self):
        with pytest.raises(DatasetError):
            GroundSet(("x",))
        with pytest.raises(DatasetError):
            GroundSet(("x", "x"))
        with pytest.raises(DatasetError):
            GroundSet(("x", "a,b"))
        with pytest.raises(DatasetError):
            GroundSet(("x", ""))

    def test_menu_helpers(self):
        assert G3.mask_of(["x", "z"]) == 0b101
        assert G3.names_of(0b101) == ("x", "z")
        assert G3.menu_key(0b110) == "y,z"
        assert G3.format_menu(0b111) == "{x,y,z}"
        assert G3.full_mask == 7
        with pytest.raises(DatasetError):
            G3.mask_of(["x", "x"])
        with pytest.raises(DatasetError):
            G3.index("q")

    def test_iter_submasks_ascending(self):
        subs = list(iter_submasks(0b101))
        assert subs == [0, 1, 4, 5]


class TestRelationPredicates:
    def test_asymmetry_implies_irreflexivity(self):
        for rel in all_relations(G2):
            if rel.is_asymmetric():
                assert rel.is_irreflexive()

    def test_acyclic_detects_two_cycle(self):
        rel = BinaryRelation.from_names(G3, [("x", "y"), ("y", "x")])
        assert not rel.is_acyclic()
        assert not rel.is_asymmetric()

    def test_transitivity(self):
        chain = BinaryRelation.from_names(G3, [("x", "y"), ("y", "z")])
        assert not chain.is_transitive()
        closed = BinaryRelation.from_names(G3, [("x", "y"), ("y", "z"), ("x", "z")])
        assert closed.is_transitive()
        assert closed.is_negatively_transitive()

    def test_max_set(self):
        rel = BinaryRelation.from_names(G3, [("x", "y")])
        assert max_set(0b011, rel) == 0b001
        assert max_set(0b110, rel) == 0b110
        loop = BinaryRelation.from_names(G2, [("x", "x")])
        assert max_set(0b01, loop) == 0
        cycle = BinaryRelation.from_names(G2, [("x", "y"), ("y", "x")])
        assert max_set(0b11, cycle) == 0


class TestQuasiChoice:
    def test_table_validation(self):
        with pytest.raises(DatasetError):
            QuasiChoice(G2, (0, 1, 2))
        with pytest.raises(DatasetError):
            QuasiChoice(G2, (0, 2, 2, 3))

    def test_decisiveness(self):
        full = QuasiChoice(G2, (0, 1, 2, 3))
        assert full.is_decisive
        assert isinstance(full.as_choice_correspondence(), ChoiceCorrespondence)
        gap = QuasiChoice(G2, (0, 1, 2, 0))
        assert not gap.is_decisive
        with pytest.raises(DatasetError):
            ChoiceCorrespondence(G2, (0, 1, 2, 0))
        with pytest.raises(DatasetError):
            gap.as_choice_correspondence()

    def test_encoding_orders_menu_zero_first(self):
        a = QuasiChoice(G2, (0, 0, 0, 1))
        b = QuasiChoice(G2, (0, 1, 0, 0))
        # an earlier menu dominates the encoding comparison
        assert b.encoding() > a.encoding()

    def test_relabel_roundtrip(self):
        choice = ex31("c2")
        perm = (2, 0, 1)
        inverse = tuple(perm.index(i) for i in range(3))
        assert choice.relabel(perm).relabel(inverse).table == choice.table


class TestAlphaGamma:
    def test_ex31_c2_witnesses(self):
        ok, witnesses = satisfies_alpha(ex31("c2"))
        assert not ok
        assert witnesses == [("y", G3.mask_of(["x", "y"]), G3.full_mask)]
        ok, witnesses = satisfies_gamma(ex31("c2"))
        assert not ok
        assert witnesses == [("x", G3.mask_of(["x", "y"]), G3.mask_of(["x", "z"]))]

    def test_ex31_c1_clean(self):
        assert satisfies_alpha(ex31("c1")) == (True, [])
        assert satisfies_gamma(ex31("c1")) == (True, [])

    def test_witness_lists_are_complete(self):
        # flipping any witness element back in repairs that particular triple
        choice = ex31("c3")
        ok, witnesses = satisfies_alpha(choice)
        assert not ok
        for name, sub, big in witnesses:
            i = G3.index(name)
            assert choice.table[big] >> i & 1
            assert not choice.table[sub] >> i & 1


class TestRationalizability:
    def test_sen_oracle_exhaustive_n2(self):
        inducible = {induced_quasi_choice(r).table for r in all_relations(G2)}
        for choice in all_quasi_choices(G2):
            ok, rationalizer = is_rationalizable(choice)
            assert ok == (choice.table in inducible)
            if ok:
                assert induced_quasi_choice(rationalizer).table == choice.table

    def test_sen_oracle_sampled_n3(self):
        inducible = {induced_quasi_choice(r).table for r in all_relations(G3)}
        rng = random.Random(5)
        submask_options = [list(iter_submasks(m)) for m in range(8)]
        for _ in range(300):
            table = tuple(rng.choice(submask_options[m]) for m in range(8))
            choice = QuasiChoice(G3, table)
            ok, rationalizer = is_rationalizable(choice)
            assert ok == (choice.table in inducible)
            if ok:
                assert induced_quasi_choice(rationalizer).table == choice.table

    def test_empty_singleton_needs_self_loop(self):
        choice = QuasiChoice(G2, (0, 0, 2, 2))
        ok, rationalizer = is_rationalizable(choice)
        assert ok
        assert (0, 0) in rationalizer.pairs

    def test_revealed_preference_ex42_c3prime(self):
        c3p = qc(G3, {"x,y": ["x"], "x,z": ["z"], "y,z": ["y", "z"], "x,y,z": ["z"]})
        rel = revealed_preference(c3p)
        assert rel.named_pairs == (("x", "y"), ("z", "x"))

    def test_revealed_preference_rejects(self):
        with pytest.raises(NotRationalizable):
            revealed_preference(ex31("c2"))
        indecisive = QuasiChoice(G2, (0, 0, 2, 2))
        with pytest.raises(NotRationalizable):
            revealed_preference(indecisive)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=(1 << 9) - 1))
def test_induction_roundtrip_n3(bits):
    # every relation induces a rationalizable quasi-choice; re-deciding it
    # recovers a relation inducing the same table
    cells = list(itertools.product(range(3), repeat=2))
    rel = BinaryRelation(G3, frozenset(c for i, c in enumerate(cells) if bits >> i & 1))
    choice = induced_quasi_choice(rel)
    ok, rationalizer = is_rationalizable(choice)
    assert ok
    assert induced_quasi_choice(rationalizer).table == choice.table


class TestEnumeration:
    def test_quasi_counts(self):
        assert len(enumerate_rational_quasi_choices(G2)) == 9
        assert len(enumerate_rational_quasi_choices(G3)) == 125

    def test_decisive_counts(self):
        assert len(enumerate_rational_choices(G2)) == 3
        assert len(enumerate_rational_choices(G3)) == 25

    def test_n4_counts(self):
        assert len(enumerate_rational_quasi_choices(G4)) == 6561
        assert len(enumerate_rational_choices(G4)) == 543

    def test_members_deduplicated_and_sorted(self):
        members = enumerate_rational_quasi_choices(G3)
        encodings = [m.encoding() for m in members]
        assert encodings == sorted(set(encodings))

    def test_decisive_members_verify(self):
        for member in enumerate_rational_choices(G3):
            assert member.choice.is_decisive
            assert member.relation.is_asymmetric()
            assert member.relation.is_acyclic()
            assert induced_quasi_choice(member.relation).table == member.choice.table

    def test_quasi_members_are_rationalizable(self):
        for member in enumerate_rational_quasi_choices(G2):
            assert is_rationalizable(member)[0]

    def test_cap_enforced(self, monkeypatch):
        monkeypatch.setenv("IRR_MAX_N", "4")
        assert enumeration_cap() == 4
        g5 = GroundSet(("a", "b", "c", "d", "e"))
        with pytest.raises(GroundSetTooLarge):
            enumerate_rational_quasi_choices(g5)

    def test_cap_env_clamped(self, monkeypatch):
        monkeypatch.setenv("IRR_MAX_N", "99")
        assert enumeration_cap() == 6
        monkeypatch.setenv("IRR_MAX_N", "1")
        assert enumeration_cap() == 2
        monkeypatch.setenv("IRR_MAX_N", "never")
        with pytest.raises(DatasetError):
            enumeration_cap()
