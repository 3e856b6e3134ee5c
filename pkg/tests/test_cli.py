import json

import numpy as np

from helpers import mock_endpoint
from graphcall import cli, prompts
from graphcall.config import load_config
from graphcall.kg import TransEEmbedder

ORDER_STATEMENT = 'There exist [GR(GL("gpr", {"lollipop_graph"}), "toolx:order")-->r] nodes in the lollipop graph.'


class TestReason:
    def test_order_statement(self, capsys):
        assert cli.main(["reason", ORDER_STATEMENT]) == 0
        assert capsys.readouterr().out.strip() == "There exist 10 nodes in the lollipop graph."

    def test_plain_text_echoed(self, capsys):
        assert cli.main(["reason", "Plain prose stays as it is."]) == 0
        assert capsys.readouterr().out.strip() == "Plain prose stays as it is."

    def test_unknown_dataset_exits_4(self, capsys):
        code = cli.main(["reason", 'x [GR(GL("no_such_data"), "toolx:order")-->r] y'])
        assert code == 4

    def test_parse_failure_exits_2(self):
        assert cli.main(["reason", "bad [GR(GL( bracket"]) == 2

    def test_execution_failure_exits_3(self):
        assert cli.main(["reason", 'x [GR(GL("gpr", {"bull_graph"}), "toolx:nope")-->r] y']) == 3

    def test_tolerant_exits_0(self, capsys):
        assert cli.main(["reason", "bad [GR(GL( bracket", "--tolerant"]) == 0
        err = capsys.readouterr().err
        assert "parse_error" in err

    def test_strict_mode(self):
        assert cli.main(["reason", "bad [GR(GL( bracket", "--strict"]) == 2


class TestInfer:
    def test_full_loop(self, capsys):
        with mock_endpoint([(200, {"text": ORDER_STATEMENT})]) as (url, _):
            assert cli.main(["infer", "How many nodes does the lollipop graph have?", "--endpoint", url]) == 0
        captured = capsys.readouterr()
        assert captured.out.strip() == "There exist 10 nodes in the lollipop graph."
        assert "annotated:" in captured.err

    def test_unparseable_annotation_exits_2(self, capsys):
        with mock_endpoint([(200, {"text": "garbage [GR(GL( text"})]) as (url, _):
            code = cli.main(["infer", "whatever", "--endpoint", url])
        assert code == 2
        assert "parse_error" in capsys.readouterr().err

    def test_endpoint_down_exits_3(self):
        assert cli.main(["infer", "x", "--endpoint", "http://127.0.0.1:1/nope"]) == 3


class TestLoadAndCatalog:
    def test_load_profile(self, capsys):
        assert cli.main(["load", "gpr"]) == 0
        profile = json.loads(capsys.readouterr().out)
        assert profile["graph_number"] == 37
        assert profile["kind"] == "graph_set"

    def test_load_missing(self):
        assert cli.main(["load", "missing_data"]) == 4

    def test_catalog(self, capsys):
        assert cli.main(["catalog"]) == 0
        catalog = json.loads(capsys.readouterr().out)
        assert any(entry["name"] == "transe:tail_entity" for entry in catalog)


class TestPromptPipeline:
    def test_prompt_gen_and_split(self, tmp_path, capsys):
        out = tmp_path / "pairs.jsonl"
        assert cli.main([
            "prompt-gen", "--dataset", "gpr", "--task", "property",
            "--limit", "5", "--seed", "0", "--out", str(out), "--validate",
        ]) == 0
        pairs = prompts.read_pairs(out)
        assert len(pairs) == 11 * 5 * 4  # templates x instances x variants

    def test_split_sizes(self, tmp_path):
        source = tmp_path / "source.jsonl"
        prompts.write_pairs(source, [prompts.PromptPair(f"i{k}", f"o{k}") for k in range(2802)])
        train_out = tmp_path / "train.jsonl"
        test_out = tmp_path / "test.jsonl"
        assert cli.main([
            "split", "--input", str(source), "--train-out", str(train_out),
            "--test-out", str(test_out), "--n-test", "160", "--seed", "1",
        ]) == 0
        assert len(train_out.read_text().splitlines()) == 1600
        assert len(test_out.read_text().splitlines()) == 160


class TestTrain:
    def test_zero_epoch_checkpoint_equals_initialization(self, tmp_path):
        out = tmp_path / "transe.json"
        assert cli.main([
            "train", "transe", "--dataset", "wordnet", "--out", str(out),
            "--epochs", "0", "--seed", "5",
        ]) == 0
        saved = TransEEmbedder.load(out)
        rng = np.random.default_rng(5)
        bound = 6.0 / np.sqrt(saved.dim)
        entities = rng.uniform(-bound, bound, size=saved.entity_factors_.shape)
        relations = rng.uniform(-bound, bound, size=saved.relation_factors_.shape)
        entities /= np.linalg.norm(entities, axis=1, keepdims=True)
        assert np.allclose(saved.entity_factors_, entities)
        assert np.allclose(saved.relation_factors_, relations)

    def test_runs_are_reproducible(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for out in (a, b):
            assert cli.main([
                "train", "bpr", "--dataset", "movielens", "--out", str(out),
                "--epochs", "3", "--seed", "2",
            ]) == 0
        assert a.read_bytes() == b.read_bytes()


class TestConfig:
    def test_file_env_flag_precedence(self, tmp_path, monkeypatch):
        config_path = tmp_path / "config.json"
        config_path.write_text(json.dumps({"memory_capacity": 7, "seed": 1}))
        cfg = load_config(str(config_path), env={})
        assert cfg.memory_capacity == 7 and cfg.seed == 1
        cfg = load_config(str(config_path), env={"GRAPHCALL_MEMORY_CAPACITY": "9"})
        assert cfg.memory_capacity == 9
        monkeypatch.setenv("GRAPHCALL_CONFIG", str(config_path))
        cfg = load_config()
        assert cfg.memory_capacity == 7

    def test_registry_extension(self, tmp_path):
        from graphcall.store import dataset_to_doc
        from helpers import make_graph
        from graphcall.runtime import Runtime
        from graphcall.config import Config

        path = tmp_path / "mini.json"
        path.write_text(json.dumps(dataset_to_doc(make_graph([(0, 1)], name="mini"))))
        runtime = Runtime.from_config(Config(datasets={"mini": str(path)}))
        assert runtime.store.load("mini").profile.order == 2
        result = runtime.reason('Order: [GR(GL("mini"), "toolx:order")-->r].')
        assert result.text == "Order: 2."
