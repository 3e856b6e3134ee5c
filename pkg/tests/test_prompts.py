import random

import pytest

from graphcall import prompts
from graphcall.errors import SlotUnfillable, TooFewPairs
from graphcall.runtime import Runtime
from graphcall.templates import TASK_TEMPLATES, default_templates


@pytest.fixture(scope="module")
def runtime():
    return Runtime()


def template_named(task, name):
    return next(t for t in default_templates(task) if t.name == name)


class TestBank:
    def test_every_template_has_at_least_four_variants(self):
        for task, group in TASK_TEMPLATES.items():
            for template in group:
                assert len(template.variants) >= 4, (task, template.name)

    def test_unknown_family(self):
        with pytest.raises(KeyError):
            default_templates("nonsense")


class TestExpansion:
    def test_topic_three_nodes_four_variants(self, runtime):
        template = template_named("topic", "topic")
        pairs = prompts.expand_templates(runtime, [template], "cora", limit=3, seed=0)
        assert len(pairs) == 12

    def test_lollipop_order_pair(self, runtime):
        template = template_named("property", "order")
        pairs = prompts.expand_templates(runtime, [template], "gpr", seed=0)
        lollipop = [p for p in pairs if "lollipop" in p.output]
        assert lollipop
        for pair in lollipop:
            assert '[GR(GL("gpr", {"lollipop_graph"}), "toolx:order")-->r]' in pair.output
            assert pair.reasoning_result == "10"
            assert "10 " in pair.input or pair.input.endswith("10.")

    def test_qa_radius_declarative_output(self, runtime):
        template = template_named("qa_property", "radius")
        pairs = prompts.expand_templates(runtime, [template], "gpr", limit=None, seed=0)
        question = next(p for p in pairs if p.input == "What is the radius of the lollipop graph?")
        assert question.output == (
            'The radius of the lollipop graph is '
            '[GR(GL("gpr", {"lollipop_graph"}), "toolx:radius")-->r].'
        )
        assert question.reasoning_result == "4"

    def test_inputs_carry_ground_truth(self, runtime):
        template = template_named("topic", "topic")
        pairs = prompts.expand_templates(runtime, [template], "cora", limit=2, seed=0)
        for pair in pairs:
            assert pair.reasoning_result in pair.input

    def test_loading_templates_have_no_result(self, runtime):
        pairs = prompts.expand_templates(runtime, default_templates("loading"), "gpr", seed=0)
        assert pairs
        for pair in pairs:
            assert pair.reasoning_result is None
            assert '[GL("gpr")]' in pair.output

    def test_wrong_dataset_kind(self, runtime):
        with pytest.raises(SlotUnfillable):
            prompts.expand_templates(runtime, default_templates("property"), "cora", seed=0)

    def test_deterministic_same_seed(self, runtime, tmp_path):
        templates = default_templates("qa_property") + default_templates("loading")
        a = prompts.expand_templates(runtime, templates, "gpr", limit=5, seed=7)
        b = prompts.expand_templates(runtime, templates, "gpr", limit=5, seed=7)
        assert a == b
        path_a, path_b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        prompts.write_pairs(path_a, a)
        prompts.write_pairs(path_b, b)
        assert path_a.read_bytes() == path_b.read_bytes()

    def test_round_trip_file(self, runtime, tmp_path):
        pairs = prompts.expand_templates(
            runtime, [template_named("property", "radius")], "gpr", limit=3, seed=0
        )
        path = tmp_path / "pairs.jsonl"
        prompts.write_pairs(path, pairs)
        assert prompts.read_pairs(path) == pairs


class TestValidation:
    def test_pristine_batch_keeps_everything(self, runtime):
        pairs = prompts.expand_templates(
            runtime, default_templates("property"), "gpr", limit=3, seed=0
        )
        kept, dropped = prompts.validate_pairs(runtime, pairs)
        assert dropped == []
        assert kept == pairs
        # Validation is a fixpoint: re-validating the kept set drops nothing.
        kept2, dropped2 = prompts.validate_pairs(runtime, kept)
        assert kept2 == kept and dropped2 == []

    def test_corrupted_results_dropped_exactly(self, runtime):
        pairs = prompts.expand_templates(
            runtime, default_templates("property") + default_templates("qa_property"), "gpr", limit=3, seed=0
        )[:200]
        assert len(pairs) == 200
        rng = random.Random(5)
        corrupt_idx = set(rng.sample(range(len(pairs)), 20))
        batch = [
            prompts.PromptPair(p.input, p.output, "corrupted-value") if i in corrupt_idx else p
            for i, p in enumerate(pairs)
        ]
        kept, dropped = prompts.validate_pairs(runtime, batch)
        assert len(dropped) == 20
        assert {id(batch[i]) for i in corrupt_idx} == {id(d.pair) for d in dropped}
        assert all("result mismatch" in d.reason for d in dropped)
        assert len(kept) == 180

    def test_not_runnable_dropped(self, runtime):
        bad = prompts.PromptPair(
            input="The order is 3.",
            output='The order is [GR(GL("gpr", {"bull_graph"}), "toolx:nope")-->r].',
            reasoning_result="3",
        )
        kept, dropped = prompts.validate_pairs(runtime, [bad])
        assert kept == []
        assert dropped[0].reason == "not runnable: unknown_function"

    def test_unparseable_output_dropped(self, runtime):
        bad = prompts.PromptPair(input="x", output="broken [GR(GL( span", reasoning_result=None)
        kept, dropped = prompts.validate_pairs(runtime, [bad])
        assert kept == []
        assert "not runnable" in dropped[0].reason


class TestSplit:
    @pytest.mark.parametrize(
        "n,expected_train",
        [(161, 1), (500, 340), (1760, 1600), (2802, 1600)],
    )
    def test_sizes(self, n, expected_train):
        pairs = [prompts.PromptPair(f"in{i}", f"out{i}") for i in range(n)]
        train, test = prompts.split(pairs, seed=0)
        assert len(test) == 160
        assert len(train) == expected_train
        train_keys = {p.input for p in train}
        test_keys = {p.input for p in test}
        assert not train_keys & test_keys

    def test_deterministic(self):
        pairs = [prompts.PromptPair(f"in{i}", f"out{i}") for i in range(500)]
        a = prompts.split(pairs, seed=3)
        b = prompts.split(pairs, seed=3)
        assert a == b
        c = prompts.split(pairs, seed=4)
        assert c != a

    def test_too_few(self):
        pairs = [prompts.PromptPair(f"in{i}", f"out{i}") for i in range(150)]
        with pytest.raises(TooFewPairs):
            prompts.split(pairs, seed=0)
        with pytest.raises(TooFewPairs):
            prompts.split([prompts.PromptPair("a", "b")] * 160, seed=0)
