"""Mean-generator closure: single passes, fixpoints, traces, confluence."""

import json

import pytest

from diapason.exact import FIVE_LIMIT, ONE, THREE_LIMIT, Ratio
from diapason.generator import (
    ClosureTrace,
    GeneratorConfig,
    Witness,
    closure_order_independence,
    generate_means,
    mean_closure,
)
from diapason.means import MeanKind
from diapason.scales import Scale, canonical

AH = frozenset({MeanKind.ARITHMETIC, MeanKind.HARMONIC})


class TestConfig:
    def test_defaults(self):
        cfg = GeneratorConfig()
        assert cfg.kinds == frozenset({MeanKind.ARITHMETIC})
        assert cfg.restriction == FIVE_LIMIT
        assert cfg.max_generations == 64
        assert cfg.keep_within_diapason

    def test_kinds_validated(self):
        with pytest.raises(ValueError):
            GeneratorConfig(kinds=frozenset())

    def test_cap_validated(self):
        with pytest.raises(ValueError):
            GeneratorConfig(max_generations=0)

    def test_kinds_frozen(self):
        cfg = GeneratorConfig(kinds={MeanKind.HARMONIC})
        assert isinstance(cfg.kinds, frozenset)


class TestGenerateMeans:
    def test_tavoletta_single_pass(self):
        got = generate_means(canonical("T"), GeneratorConfig())
        assert got == {Ratio(5, 4), Ratio(3, 2), Ratio(5, 3)}

    def test_members_already_present_still_reported(self):
        # 3/2 is in the seed and is also the arithmetic mean of (1, 2)
        got = generate_means(canonical("T"), GeneratorConfig())
        assert Ratio(3, 2) in got

    def test_tavoletta_both_kinds_three_limit(self):
        cfg = GeneratorConfig(kinds=AH, restriction=THREE_LIMIT)
        assert generate_means(canonical("T"), cfg) == {Ratio(4, 3), Ratio(3, 2)}

    def test_limit_filters(self):
        cfg = GeneratorConfig(restriction=THREE_LIMIT)
        # under {2,3} the tavoletta contributes only its own 3/2
        assert generate_means(canonical("T"), cfg) == {Ratio(3, 2)}

    def test_needs_two_tones(self):
        with pytest.raises(ValueError):
            generate_means(Scale("solo", [Ratio(3, 2)]), GeneratorConfig())


class TestClosureFromTavoletta:
    def test_reaches_first_natural_sound_set(self):
        trace = mean_closure(canonical("T"))
        assert trace.fixpoint_reached
        assert list(trace.final) == list(canonical("SN1"))
        assert trace.final.name == "T-closure"

    def test_generation_structure(self):
        trace = mean_closure(canonical("T"))
        assert [[str(t) for t in g.added] for g in trace.generations] == [
            ["5/4", "5/3"],
            ["9/8"],
            ["25/16"],
            ["45/32"],
            ["81/64"],
        ]

    def test_witnesses_are_smallest_parents(self):
        trace = mean_closure(canonical("T"))
        flat = [
            (str(w.tone), str(w.a), str(w.b), w.kind.value)
            for g in trace.generations
            for w in g.witnesses
        ]
        assert flat == [
            ("5/4", "1/1", "3/2", "A"),
            ("5/3", "4/3", "2/1", "A"),
            ("9/8", "1/1", "5/4", "A"),
            ("25/16", "9/8", "2/1", "A"),
            ("45/32", "5/4", "25/16", "A"),
            ("81/64", "9/8", "45/32", "A"),
        ]

    def test_added_tones_follow_generation_order(self):
        trace = mean_closure(canonical("T"))
        added = trace.added_tones()
        assert [str(t) for t in added] == ["5/4", "5/3", "9/8", "25/16", "45/32", "81/64"]
        assert sorted(str(t) for t in set(canonical("SN1")) - set(canonical("T"))) == sorted(
            str(t) for t in added
        )


class TestClosureFromNatural:
    def test_reaches_second_natural_sound_set(self):
        trace = mean_closure(canonical("NATURAL"))
        assert trace.fixpoint_reached
        assert list(trace.final) == list(canonical("SN2"))
        assert [[str(t) for t in g.added] for g in trace.generations] == [
            ["25/16", "27/16"],
            ["45/32"],
            ["81/64"],
        ]

    def test_first_generation_witnesses(self):
        trace = mean_closure(canonical("NATURAL"))
        got = [
            (str(w.tone), str(w.a), str(w.b)) for w in trace.generations[0].witnesses
        ]
        assert got == [("25/16", "9/8", "2/1"), ("27/16", "3/2", "15/8")]


class TestOtherSeeds:
    def test_pythagorean_is_closed_in_its_own_limit(self):
        cfg = GeneratorConfig(restriction=THREE_LIMIT)
        trace = mean_closure(canonical("PYTHAGOREAN"), cfg)
        assert trace.fixpoint_reached
        assert trace.generations == ()
        assert list(trace.final) == list(canonical("PYTHAGOREAN"))

    def test_pythagorean_grows_in_five_limit(self):
        trace = mean_closure(canonical("PYTHAGOREAN"))
        assert trace.fixpoint_reached
        assert len(trace.final) == 14
        assert [[str(t) for t in g.added] for g in trace.generations] == [
            ["5/4", "45/32", "25/16", "405/256", "5/3"],
            ["729/512"],
        ]

    def test_five_part_division_closes_to_sn1(self):
        trace = mean_closure(canonical("T5"))
        assert list(trace.final) == list(canonical("SN1"))
        assert len(trace.generations) == 4

    def test_both_sound_sets_are_fixpoints(self):
        for name in ("SN1", "SN2"):
            trace = mean_closure(canonical(name))
            assert trace.fixpoint_reached
            assert trace.generations == ()
            assert list(trace.final) == list(canonical(name))

    def test_modal_sets_are_fixpoints(self):
        for name in ("FINALES", "HEXACHORD_NATURAL"):
            trace = mean_closure(canonical(name))
            assert trace.fixpoint_reached
            assert trace.generations == ()

    def test_two_kinds_terminate_at_twenty_four(self):
        trace = mean_closure(canonical("T"), GeneratorConfig(kinds=AH))
        assert trace.fixpoint_reached
        assert len(trace.final) == 24
        assert [len(g.added) for g in trace.generations] == [4, 6, 4, 4, 2]
        # the Senario thirds and sixths show up only under the harmonic kind
        assert Ratio(6, 5) in trace.final
        assert Ratio(8, 5) in trace.final


class TestCap:
    def test_cap_stops_early(self):
        trace = mean_closure(canonical("T"), GeneratorConfig(max_generations=1))
        assert not trace.fixpoint_reached
        assert len(trace.generations) == 1
        assert len(trace.final) == 6

    def test_capped_final_is_partial(self):
        trace = mean_closure(canonical("T"), GeneratorConfig(max_generations=2))
        assert [str(t) for t in trace.final] == [
            "1/1", "9/8", "5/4", "4/3", "3/2", "5/3", "2/1",
        ]


class TestTrace:
    def test_json_shape(self):
        trace = mean_closure(canonical("T"))
        data = trace.to_json_dict()
        assert sorted(data.keys()) == ["final", "fixpoint", "generations", "seed"]
        assert data["seed"] == ["1/1", "4/3", "3/2", "2/1"]
        assert data["fixpoint"] is True
        assert data["final"] == [str(t) for t in canonical("SN1")]
        first = data["generations"][0]
        assert first["added"] == ["5/4", "5/3"]
        assert first["witnesses"][0] == {
            "tone": "5/4", "a": "1/1", "b": "3/2", "kind": "A",
        }

    def test_json_serializable(self):
        trace = mean_closure(canonical("NATURAL"))
        text = json.dumps(trace.to_json_dict())
        assert json.loads(text)["fixpoint"] is True

    def test_deterministic(self):
        a = mean_closure(canonical("T")).to_json_dict()
        b = mean_closure(canonical("T")).to_json_dict()
        assert json.dumps(a) == json.dumps(b)


class TestConfluence:
    def test_insertion_order_does_not_matter(self):
        assert closure_order_independence(canonical("T"), GeneratorConfig(), trials=20)
        assert closure_order_independence(
            canonical("NATURAL"), GeneratorConfig(), trials=20
        )

    def test_requires_a_terminating_config(self):
        with pytest.raises(ValueError):
            closure_order_independence(
                canonical("T"), GeneratorConfig(max_generations=1), trials=3
            )

    def test_seeded_runs_repeat(self):
        cfg = GeneratorConfig(kinds=AH)
        a = closure_order_independence(canonical("T"), cfg, trials=10, rng_seed=7)
        b = closure_order_independence(canonical("T"), cfg, trials=10, rng_seed=7)
        assert a is True and b is True


def test_fold_flag_is_inert_for_scale_input():
    """Means of tones inside [1,2] already live inside [1,2]."""
    folded = mean_closure(canonical("T"), GeneratorConfig(keep_within_diapason=True))
    raw = mean_closure(canonical("T"), GeneratorConfig(keep_within_diapason=False))
    assert list(folded.final) == list(raw.final)


class TestClosureInvariants:
    def test_seed_always_included(self):
        for name in ("T", "T5", "NATURAL", "PYTHAGOREAN"):
            trace = mean_closure(canonical(name))
            assert set(canonical(name)) <= set(trace.final)

    def test_fixpoint_really_is_closed(self):
        for name in ("T", "NATURAL"):
            trace = mean_closure(canonical(name))
            assert trace.fixpoint_reached
            assert generate_means(trace.final, GeneratorConfig()) <= set(trace.final)

    def test_smoothness_preserved(self):
        from diapason.exact import is_smooth

        trace = mean_closure(canonical("T"), GeneratorConfig(kinds=AH))
        for tone in trace.final:
            assert is_smooth(tone, FIVE_LIMIT)

    def test_generations_grow_the_set(self):
        trace = mean_closure(canonical("T"))
        seen = set(canonical("T"))
        for generation in trace.generations:
            assert generation.added  # productive generations only
            assert not (set(generation.added) & seen)
            seen |= set(generation.added)
