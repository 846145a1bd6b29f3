"""Command-line pipeline: artifacts, determinism, error handling."""

import json

import pytest

from sengraph.cli import main


@pytest.fixture
def work(tmp_path, small_planted_file):
    return {"corpus": str(small_planted_file), "root": tmp_path}


def run(args):
    return main([str(a) for a in args])


def train_args(work, variant, out, **kw):
    args = [
        "train",
        "--variant",
        variant,
        "--corpus",
        work["corpus"],
        "--min-count",
        "1",
        "--dim",
        "6",
        "--epochs",
        "4",
        "--subsample-t",
        "0",
        "--seed",
        "7",
        "--out",
        out,
    ]
    for k, v in kw.items():
        args += [f"--{k.replace('_', '-')}", str(v)]
    return args


class TestTrainCommand:
    def test_dbow_writes_artifacts(self, work):
        out = work["root"] / "dbow"
        assert run(train_args(work, "s2v-dbow", out)) == 0
        assert (out / "vectors.txt").exists()
        assert (out / "meta.json").exists()
        assert (out / "config.json").exists()
        meta = json.loads((out / "meta.json").read_text())
        assert meta["variant"] == "s2v-dbow"

    def test_missing_graph_names_flag(self, work, capsys):
        out = work["root"] / "itw"
        rc = run(
            [
                "train",
                "--variant",
                "it-w",
                "--priors",
                str(work["root"] / "nope.txt"),
                "--out",
                out,
            ]
        )
        assert rc == 2
        assert "--graph" in capsys.readouterr().err

    def test_missing_priors_names_flag(self, work, capsys):
        out = work["root"] / "n2vi"
        graph = work["root"] / "g.edges"
        graph.write_text("0\t1\t1.0\n")
        rc = run(["train", "--variant", "n2v-i", "--graph", graph, "--out", out])
        assert rc == 2
        assert "--priors" in capsys.readouterr().err

    def test_fixed_seed_digest_stable(self, work):
        out1 = work["root"] / "r1"
        out2 = work["root"] / "r2"
        assert run(train_args(work, "s2v-dbow", out1)) == 0
        assert run(train_args(work, "s2v-dbow", out2)) == 0
        assert (out1 / "vectors.txt").read_bytes() == (out2 / "vectors.txt").read_bytes()
        d1 = json.loads((out1 / "config.json").read_text())["digest"]
        d2 = json.loads((out2 / "config.json").read_text())["digest"]
        assert d1 == d2

    def test_reg_beta_zero_matches_dbow(self, work):
        dbow_out = work["root"] / "dbow0"
        assert run(train_args(work, "s2v-dbow", dbow_out)) == 0
        graph_out = work["root"] / "g0"
        assert (
            run(
                [
                    "build-graph",
                    "--corpus",
                    work["corpus"],
                    "--min-count",
                    "1",
                    "--vectors",
                    dbow_out / "vectors.txt",
                    "--out",
                    graph_out,
                ]
            )
            == 0
        )
        reg_out = work["root"] / "reg0"
        assert (
            run(
                train_args(
                    work, "reg-uw", reg_out, beta=0, graph=graph_out / "graph.edges"
                )
            )
            == 0
        )
        assert (reg_out / "vectors.txt").read_bytes() == (dbow_out / "vectors.txt").read_bytes()


class TestConfigFile:
    def test_unknown_key_rejected(self, work, capsys):
        cfg_file = work["root"] / "c.json"
        cfg_file.write_text(json.dumps({"no_such_key": 1}))
        rc = run(
            train_args(work, "s2v-dbow", work["root"] / "x")
            + ["--config", str(cfg_file)]
        )
        assert rc == 2
        assert "no_such_key" in capsys.readouterr().err

    def test_cli_overrides_file(self, work):
        cfg_file = work["root"] / "c.json"
        cfg_file.write_text(json.dumps({"epochs": 2, "dim": 3}))
        out = work["root"] / "ovr"
        assert run(train_args(work, "s2v-dbow", out) + ["--config", str(cfg_file)]) == 0
        effective = json.loads((out / "config.json").read_text())["config"]
        assert effective["dim"] == 6  # flag wins
        assert effective["epochs"] == 4


class TestPipeline:
    def test_full_pipeline_exit_codes(self, work):
        root = work["root"]
        assert run(train_args(work, "s2v", root / "s2v", epochs=6)) == 0
        assert (
            run(
                [
                    "build-graph",
                    "--corpus",
                    work["corpus"],
                    "--min-count",
                    "1",
                    "--vectors",
                    root / "s2v/vectors.txt",
                    "--intra-thresh",
                    "0.3",
                    "--across-thresh",
                    "0.5",
                    "--out",
                    root / "graph",
                ]
            )
            == 0
        )
        assert (
            run(
                train_args(
                    work,
                    "it-uw",
                    root / "ituw",
                    graph=root / "graph/graph.edges",
                    priors=root / "s2v/vectors.txt",
                )
            )
            == 0
        )
        assert (
            run(
                [
                    "annotate",
                    "--corpus",
                    work["corpus"],
                    "--min-count",
                    "1",
                    "--vectors",
                    root / "s2v/vectors.txt",
                    "--p-percent",
                    "100",
                    "--out",
                    root / "ann",
                ]
            )
            == 0
        )
        assert (
            run(
                [
                    "evaluate",
                    "--task",
                    "clustering",
                    "--corpus",
                    work["corpus"],
                    "--min-count",
                    "1",
                    "--vectors",
                    root / "ituw/vectors.txt",
                    "--gold",
                    root / "ann/labels.tsv",
                    "--out",
                    root / "eval",
                ]
            )
            == 0
        )
        report = (root / "eval/report.tsv").read_text()
        assert "ami" in report

    def test_variant_coverage_and_determinism(self, work):
        """Every variant trains and is byte-deterministic at fixed seed."""
        root = work["root"]
        assert run(train_args(work, "s2v", root / "pri", epochs=3)) == 0
        assert (
            run(
                [
                    "build-graph",
                    "--corpus",
                    work["corpus"],
                    "--min-count",
                    "1",
                    "--vectors",
                    root / "pri/vectors.txt",
                    "--intra-thresh",
                    "0.3",
                    "--across-thresh",
                    "0.5",
                    "--out",
                    root / "g",
                ]
            )
            == 0
        )
        graph = root / "g/graph.edges"
        priors = root / "pri/vectors.txt"

        lex = root / "lex.edges"
        lex.write_text("0\t1\t1.0\n")
        lex_map = root / "lex.tsv"
        corpus_words = ["t0w0", "t0w1"]
        lex_map.write_text("".join(f"{w}\t{i}\n" for i, w in enumerate(corpus_words)))

        extras = {
            "s2v-dbow": {},
            "s2v-dm": {},
            "s2v": {},
            "n2v": {"graph": graph, "walk_length": 6, "walks_per_node": 2, "window": 2},
            "n2v-i": {
                "graph": graph,
                "priors": priors,
                "walk_length": 6,
                "walks_per_node": 2,
                "window": 2,
            },
            "n2v-r": {
                "graph": graph,
                "priors": priors,
                "walk_length": 6,
                "walks_per_node": 2,
                "window": 2,
                "beta": 0.6,
            },
            "it-w": {"graph": graph, "priors": priors},
            "it-uw": {"graph": graph, "priors": priors},
            "reg-w": {"graph": graph, "beta": 0.6},
            "reg-uw": {"graph": graph, "beta": 0.6},
            "dictreg-w": {"graph": graph, "lexicon": lex, "lexicon_map": lex_map, "beta": 0.6},
            "dictreg-uw": {"graph": graph, "lexicon": lex, "lexicon_map": lex_map, "beta": 0.6},
        }
        for variant, kw in extras.items():
            o1 = root / f"{variant}-a"
            o2 = root / f"{variant}-b"
            assert run(train_args(work, variant, o1, epochs=2, **kw)) == 0, variant
            assert run(train_args(work, variant, o2, epochs=2, **kw)) == 0, variant
            assert (o1 / "vectors.txt").read_bytes() == (o2 / "vectors.txt").read_bytes(), variant

    def test_summarize_single_sentence_budget(self, tmp_path):
        corpus = tmp_path / "one.jsonl"
        corpus.write_text(json.dumps({"doc_id": "d", "text": "only one sentence here."}) + "\n")
        out = tmp_path / "s2v"
        assert (
            run(
                [
                    "train",
                    "--variant",
                    "s2v-dbow",
                    "--corpus",
                    corpus,
                    "--min-count",
                    "1",
                    "--dim",
                    "4",
                    "--epochs",
                    "2",
                    "--out",
                    out,
                ]
            )
            == 0
        )
        assert (
            run(
                [
                    "summarize",
                    "--corpus",
                    corpus,
                    "--min-count",
                    "1",
                    "--vectors",
                    out / "vectors.txt",
                    "--budget",
                    "10",
                    "--out",
                    tmp_path / "summ",
                ]
            )
            == 0
        )
        text = (tmp_path / "summ/summaries/d.txt").read_text()
        assert text.strip() == "only one sentence here."


class TestEvaluate:
    def _setup(self, work):
        root = work["root"]
        run(train_args(work, "s2v-dbow", root / "v", epochs=8))
        run(
            [
                "annotate",
                "--corpus",
                work["corpus"],
                "--min-count",
                "1",
                "--vectors",
                root / "v/vectors.txt",
                "--p-percent",
                "100",
                "--out",
                root / "ann",
            ]
        )
        return root / "v/vectors.txt", root / "ann/labels.tsv"

    def test_classification_report(self, work, capsys):
        vectors, gold = self._setup(work)
        rc = run(
            [
                "evaluate",
                "--task",
                "classification",
                "--corpus",
                work["corpus"],
                "--min-count",
                "1",
                "--vectors",
                vectors,
                "--gold",
                gold,
                "--out",
                work["root"] / "cls",
            ]
        )
        assert rc == 0
        report = (work["root"] / "cls/report.tsv").read_text()
        for metric in ("accuracy", "f1", "kappa", "precision", "recall"):
            assert metric in report

    def test_runs_averaging_reports_std(self, work):
        vectors, gold = self._setup(work)
        rc = run(
            [
                "evaluate",
                "--task",
                "clustering",
                "--corpus",
                work["corpus"],
                "--min-count",
                "1",
                "--vectors",
                vectors,
                "--gold",
                gold,
                "--runs",
                "3",
                "--out",
                work["root"] / "avg",
            ]
        )
        assert rc == 0
        report = (work["root"] / "avg/report.tsv").read_text()
        assert "ami_std" in report

    def test_missing_gold_errors(self, work, capsys):
        vectors, _ = self._setup(work)
        rc = run(
            [
                "evaluate",
                "--task",
                "clustering",
                "--corpus",
                work["corpus"],
                "--min-count",
                "1",
                "--vectors",
                vectors,
                "--out",
                work["root"] / "x",
            ]
        )
        assert rc == 2
        assert "--gold" in capsys.readouterr().err


class TestSweep:
    def test_clustering_sweep_reports_all_points(self, work):
        root = work["root"]
        run(train_args(work, "s2v-dbow", root / "v", epochs=6))
        run(
            [
                "build-graph",
                "--corpus",
                work["corpus"],
                "--min-count",
                "1",
                "--vectors",
                root / "v/vectors.txt",
                "--intra-thresh",
                "0.3",
                "--across-thresh",
                "0.5",
                "--out",
                root / "g",
            ]
        )
        run(
            [
                "annotate",
                "--corpus",
                work["corpus"],
                "--min-count",
                "1",
                "--vectors",
                root / "v/vectors.txt",
                "--p-percent",
                "100",
                "--out",
                root / "ann",
            ]
        )
        rc = run(
            [
                "sweep",
                "--task",
                "clustering",
                "--variant",
                "reg-uw",
                "--param",
                "beta",
                "--grid",
                "0.3,0.6,0.8,1.0",
                "--corpus",
                work["corpus"],
                "--min-count",
                "1",
                "--dim",
                "6",
                "--epochs",
                "3",
                "--subsample-t",
                "0",
                "--seed",
                "7",
                "--graph",
                root / "g/graph.edges",
                "--gold",
                root / "ann/labels.tsv",
                "--out",
                root / "sweep",
            ]
        )
        assert rc == 0
        data = json.loads((root / "sweep/sweep.json").read_text())
        assert data["grid"] == [0.3, 0.6, 0.8, 1.0]
        assert len(data["scores"]) == 4
        assert data["best"] in data["grid"]

    def test_single_point_grid(self, work):
        root = work["root"]
        run(train_args(work, "s2v-dbow", root / "v", epochs=4))
        run(
            [
                "annotate",
                "--corpus",
                work["corpus"],
                "--min-count",
                "1",
                "--vectors",
                root / "v/vectors.txt",
                "--p-percent",
                "100",
                "--out",
                root / "ann",
            ]
        )
        rc = run(
            [
                "sweep",
                "--task",
                "clustering",
                "--variant",
                "s2v-dbow",
                "--param",
                "dim",
                "--grid",
                "6",
                "--corpus",
                work["corpus"],
                "--min-count",
                "1",
                "--epochs",
                "3",
                "--subsample-t",
                "0",
                "--gold",
                root / "ann/labels.tsv",
                "--out",
                root / "sw1",
            ]
        )
        assert rc == 0
        data = json.loads((root / "sw1/sweep.json").read_text())
        assert data["best"] == 6

    def test_same_seed_same_report(self, work):
        root = work["root"]
        run(train_args(work, "s2v-dbow", root / "v", epochs=4))
        run(
            [
                "annotate",
                "--corpus",
                work["corpus"],
                "--min-count",
                "1",
                "--vectors",
                root / "v/vectors.txt",
                "--p-percent",
                "100",
                "--out",
                root / "ann",
            ]
        )
        outs = []
        for name in ("sa", "sb"):
            rc = run(
                [
                    "sweep",
                    "--task",
                    "clustering",
                    "--variant",
                    "s2v-dbow",
                    "--param",
                    "dim",
                    "--grid",
                    "4,6",
                    "--corpus",
                    work["corpus"],
                    "--min-count",
                    "1",
                    "--epochs",
                    "3",
                    "--subsample-t",
                    "0",
                    "--seed",
                    "5",
                    "--gold",
                    root / "ann/labels.tsv",
                    "--out",
                    root / name,
                ]
            )
            assert rc == 0
            outs.append((root / name / "sweep.tsv").read_bytes())
        assert outs[0] == outs[1]


class TestRankingEvaluate:
    def test_rouge_against_reference_dir(self, tmp_path):
        corpus = tmp_path / "c.jsonl"
        corpus.write_text(
            json.dumps(
                {
                    "doc_id": "doc1",
                    "text": "rockets launch into orbit today. cats nap in warm sun. rockets carry crew to orbit.",
                }
            )
            + "\n"
        )
        refs = tmp_path / "refs"
        refs.mkdir()
        (refs / "doc1.1.txt").write_text("rockets launch crew orbit\n")
        out = tmp_path / "v"
        assert (
            run(
                [
                    "train",
                    "--variant",
                    "s2v-dbow",
                    "--corpus",
                    corpus,
                    "--min-count",
                    "1",
                    "--dim",
                    "4",
                    "--epochs",
                    "4",
                    "--out",
                    out,
                ]
            )
            == 0
        )
        rc = run(
            [
                "evaluate",
                "--task",
                "ranking",
                "--corpus",
                corpus,
                "--min-count",
                "1",
                "--vectors",
                out / "vectors.txt",
                "--refs",
                refs,
                "--budget",
                "10",
                "--out",
                tmp_path / "rank",
            ]
        )
        assert rc == 0
        assert "rouge_1" in (tmp_path / "rank/report.tsv").read_text()


def test_dump_walks_artifact(work):
    root = work["root"]
    assert run(train_args(work, "s2v-dbow", root / "pri2", epochs=2)) == 0
    assert (
        run(
            [
                "build-graph",
                "--corpus",
                work["corpus"],
                "--min-count",
                "1",
                "--vectors",
                root / "pri2/vectors.txt",
                "--intra-thresh",
                "0.3",
                "--across-thresh",
                "0.5",
                "--out",
                root / "g2",
            ]
        )
        == 0
    )
    assert (
        run(
            train_args(
                work,
                "n2v",
                root / "n2vdump",
                graph=root / "g2/graph.edges",
                walk_length=5,
                walks_per_node=2,
                window=2,
            )
            + ["--dump-walks"]
        )
        == 0
    )
    walks = (root / "n2vdump/walks.txt").read_text().splitlines()
    n_sents = 48
    assert len(walks) == 2 * n_sents
    for line in walks:
        assert all(tok.isdigit() for tok in line.split())


def test_perfect_vectors_give_ami_one(tmp_path, small_planted_file):
    # vectors separable by topic: k-means recovers the gold labels and
    # the report shows ami = 1.0
    from sengraph.corpus import build_vocab, ingest
    from sengraph.embedding import save_vectors
    from sengraph.corpus import write_labels
    import numpy as np

    corpus = ingest(small_planted_file, "jsonl")
    build_vocab(corpus, min_count=1)
    topics = sorted({d.label for d in corpus.documents})
    vectors = np.zeros((corpus.n_sentences, len(topics)))
    gold = {}
    for sent in corpus.sentences:
        label = corpus.doc_index[sent.doc_id].label
        vectors[sent.sent_id, topics.index(label)] = 1.0
        gold[sent.sent_id] = label
    save_vectors(tmp_path / "v.txt", vectors)
    write_labels(tmp_path / "gold.tsv", gold)
    rc = run(
        [
            "evaluate",
            "--task",
            "clustering",
            "--corpus",
            small_planted_file,
            "--min-count",
            "1",
            "--vectors",
            tmp_path / "v.txt",
            "--gold",
            tmp_path / "gold.tsv",
            "--out",
            tmp_path / "eval",
        ]
    )
    assert rc == 0
    assert "model\tami\t1.000000" in (tmp_path / "eval/report.tsv").read_text()
