"""Command-line frontend.

Subcommands: ``train``, ``build-graph``, ``annotate``, ``summarize``,
``evaluate``, ``sweep``. Every command takes ``--config FILE`` (JSON)
plus flag overrides, rejects unknown config keys, and echoes the
effective configuration with a digest into the output directory, so a
run is reproducible from its output alone.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import kernels
from .corpus import Corpus, build_vocab, ingest, read_labels, tokenize, write_labels
from .downstream import SoftmaxRegression, kmeans, split_indices
from .embedding import TrainConfig, load_vectors, save_vectors
from .errors import SengraphError
from .graph import GraphBuildConfig, build_discourse_graph, load_edge_list, save_edge_list
from .metrics import MetricsReport, classification_metrics, clustering_metrics, rouge_1
from .node2vec import WalkConfig, save_walks, train_node2vec
from .ranker import RankConfig, annotate_top_sentences, extract_summary
from .regularized import RegConfig, lexicon_to_vocab_graph, train_dictreg, train_regularized
from .retrofit import RetrofitConfig, retrofit_jacobi, retrofit_n2v
from .sen2vec import concat_s2v, train_dbow, train_dm

VARIANTS = (
    "s2v-dbow",
    "s2v-dm",
    "s2v",
    "n2v",
    "n2v-i",
    "n2v-r",
    "it-w",
    "it-uw",
    "reg-w",
    "reg-uw",
    "dictreg-w",
    "dictreg-uw",
)

DEFAULTS = {
    "format": "jsonl",
    "dim": 10,
    "epochs": 5,
    "learning_rate": 0.025,
    "beta": 1.0,
    "alpha": 1.0,
    "word_beta": None,
    "negative": 5,
    "window": None,  # 5 for s2v-dm, 10 for walk-based variants
    "walk_length": 80,
    "walks_per_node": 10,
    "return_param": 1.0,
    "forward_param": 1.0,
    "intra_thresh": 0.5,
    "across_thresh": 0.8,
    "top_k": 20,
    "damping": 0.85,
    "edge_min": 0.10,
    "p_percent": 2.0,
    "min_count": 5,
    "subsample_t": 1e-5,
    "noise": "unigram_075",
    "seed": 1,
    "workers": 1,
    "dump_walks": False,
    "budget": 100,
    "runs": 1,
    "variant_name": "model",
    "test_fraction": 0.2,
}

TRAIN_KEYS = [
    "corpus",
    "format",
    "graph",
    "lexicon",
    "lexicon_map",
    "priors",
    "dim",
    "epochs",
    "learning_rate",
    "beta",
    "alpha",
    "word_beta",
    "negative",
    "window",
    "walk_length",
    "walks_per_node",
    "return_param",
    "forward_param",
    "min_count",
    "subsample_t",
    "noise",
    "seed",
    "workers",
    "dump_walks",
    "out",
]


def _add_common(p: argparse.ArgumentParser, *keys: str) -> None:
    specs = {
        "corpus": dict(type=str, help="corpus file (jsonl) or directory"),
        "format": dict(type=str, choices=["jsonl", "dir"], help="corpus format"),
        "graph": dict(type=str, help="edge-list file of the discourse graph"),
        "lexicon": dict(type=str, help="edge-list file of the word lexicon graph"),
        "lexicon_map": dict(type=str, help="word<TAB>index sidecar for --lexicon"),
        "priors": dict(type=str, help="vector table of pretrained sentence vectors"),
        "vectors": dict(type=str, help="vector table file"),
        "gold": dict(type=str, help="sentence label file (sent_id<TAB>label)"),
        "refs": dict(type=str, help="directory of reference summaries (<doc_id>*.txt)"),
        "dim": dict(type=int),
        "epochs": dict(type=int),
        "learning_rate": dict(type=float),
        "beta": dict(type=float),
        "alpha": dict(type=float),
        "word_beta": dict(type=float),
        "negative": dict(type=int, help="number of noise samples per instance"),
        "window": dict(type=int, help="context half-width"),
        "walk_length": dict(type=int),
        "walks_per_node": dict(type=int),
        "return_param": dict(type=float),
        "forward_param": dict(type=float),
        "intra_thresh": dict(type=float),
        "across_thresh": dict(type=float),
        "top_k": dict(type=int),
        "damping": dict(type=float),
        "edge_min": dict(type=float),
        "p_percent": dict(type=float),
        "min_count": dict(type=int),
        "subsample_t": dict(type=float),
        "noise": dict(type=str, choices=["uniform", "unigram", "unigram_075"]),
        "seed": dict(type=int),
        "workers": dict(type=int),
        "dump_walks": dict(action="store_true", default=None, help="write walks.txt (one walk per line)"),
        "budget": dict(type=int, help="summary word budget (10 or 100)"),
        "runs": dict(type=int, help="repeat evaluation with seeds seed..seed+runs-1"),
        "variant_name": dict(type=str, help="row label used in reports"),
        "test_fraction": dict(type=float),
        "out": dict(type=str, required=True, help="output directory"),
    }
    p.add_argument("--config", type=str, default=None, help="JSON config file")
    for key in keys:
        spec = dict(specs[key])
        required = spec.pop("required", False)
        default = spec.pop("default", None)
        p.add_argument(
            f"--{key.replace('_', '-')}", dest=key, default=default, required=required, **spec
        )


def _effective_config(args: argparse.Namespace, keys: list[str]) -> dict:
    cfg = {k: DEFAULTS.get(k) for k in keys}
    if args.config:
        try:
            loaded = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except OSError as exc:
            raise SengraphError(f"cannot read config file: {exc}") from exc
        for k, v in loaded.items():
            if k not in keys:
                raise SengraphError(f"unknown config key {k!r}")
            cfg[k] = v
    for k in keys:
        v = getattr(args, k, None)
        if v is not None:
            cfg[k] = v
    return cfg


def _write_config(cfg: dict, out: Path, command: str) -> str:
    # the digest identifies the computation; the output location is not
    # part of it
    hashed = {k: v for k, v in cfg.items() if k != "out"}
    payload = json.dumps({"command": command, **hashed}, sort_keys=True)
    digest = hashlib.sha256(payload.encode("utf-8")).hexdigest()
    out.mkdir(parents=True, exist_ok=True)
    (out / "config.json").write_text(
        json.dumps({"command": command, "config": cfg, "digest": digest}, indent=2, sort_keys=True)
        + "\n",
        encoding="utf-8",
    )
    return digest


def _require(cfg: dict, key: str, variant: str | None = None) -> str:
    if cfg.get(key) is None:
        what = f"variant {variant!r}" if variant else "this command"
        raise SengraphError(f"{what} requires --{key.replace('_', '-')}")
    return cfg[key]


def _load_corpus(cfg: dict) -> Corpus:
    corpus = ingest(_require(cfg, "corpus"), cfg["format"])
    build_vocab(corpus, min_count=cfg["min_count"])
    return corpus


def _train_config(cfg: dict) -> TrainConfig:
    return TrainConfig(
        dim=cfg["dim"],
        epochs=cfg["epochs"],
        learning_rate=cfg["learning_rate"],
        negative_samples=cfg["negative"],
        seed=cfg["seed"],
        parallel_workers=cfg["workers"],
        subsample_t=cfg["subsample_t"],
        noise_kind=cfg["noise"],
    )


def _walk_config(cfg: dict) -> WalkConfig:
    window = cfg["window"] if cfg["window"] is not None else 10
    return WalkConfig(
        return_param=cfg["return_param"],
        forward_param=cfg["forward_param"],
        walk_length=cfg["walk_length"],
        walks_per_node=cfg["walks_per_node"],
        context_window=window,
    )


def _load_lexicon(cfg: dict, corpus: Corpus, variant: str):
    lex_path = _require(cfg, "lexicon", variant)
    map_path = _require(cfg, "lexicon_map", variant)
    raw = load_edge_list(lex_path)
    index_to_word: dict[int, str] = {}
    with Path(map_path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 2:
                raise SengraphError(f"{map_path}:{lineno}: expected word<TAB>index")
            index_to_word[int(parts[1])] = parts[0]
    return lexicon_to_vocab_graph(raw, index_to_word, corpus)


def train_variant(variant: str, cfg: dict) -> tuple[np.ndarray, dict]:
    """Train one model variant and return (sentence vectors, metadata)."""
    if variant not in VARIANTS:
        raise SengraphError(f"unknown variant {variant!r}")
    meta: dict = {"variant": variant, "backend": kernels.get_backend()}
    train_cfg = _train_config(cfg)

    needs_corpus = variant.startswith(("s2v", "reg", "dictreg"))
    corpus = _load_corpus(cfg) if needs_corpus else None

    graph = None
    if variant in ("n2v", "n2v-i", "n2v-r", "it-w", "it-uw") or variant.startswith(("reg", "dictreg")):
        graph_path = _require(cfg, "graph", variant)
        if not Path(graph_path).exists():
            raise SengraphError(f"--graph file not found: {graph_path}")
        node_count = corpus.n_sentences if corpus is not None else None
        graph = load_edge_list(graph_path, node_count=node_count)

    priors = None
    if variant in ("n2v-i", "n2v-r", "it-w", "it-uw"):
        priors_path = _require(cfg, "priors", variant)
        if not Path(priors_path).exists():
            raise SengraphError(f"--priors file not found: {priors_path}")
        priors = load_vectors(priors_path)
        if cfg["dim"] != priors.shape[1]:
            meta["dim_from_priors"] = priors.shape[1]
        train_cfg.dim = priors.shape[1]
        if graph is not None and graph.node_count < priors.shape[0]:
            # edge list may omit isolated high-id nodes
            padded = load_edge_list(cfg["graph"], node_count=priors.shape[0])
            graph = padded

    if variant == "s2v-dbow":
        model = train_dbow(corpus, train_cfg)
        vectors = model.sentence_vectors
        meta["epoch_losses"] = model.epoch_losses
    elif variant == "s2v-dm":
        window = cfg["window"] if cfg["window"] is not None else 5
        model = train_dm(corpus, train_cfg, window=window)
        vectors = model.sentence_vectors
        meta["epoch_losses"] = model.epoch_losses
    elif variant == "s2v":
        window = cfg["window"] if cfg["window"] is not None else 5
        dbow = train_dbow(corpus, train_cfg)
        dm = train_dm(corpus, train_cfg, window=window)
        vectors = concat_s2v(dbow, dm)
        meta["components"] = {"dbow": dbow.epoch_losses, "dm": dm.epoch_losses}
    elif variant in ("n2v", "n2v-i"):
        model = train_node2vec(graph, _walk_config(cfg), train_cfg, init=priors)
        vectors = model.vectors
        meta["epoch_losses"] = model.epoch_losses
        meta["n_walks"] = len(model.walks)
        if cfg.get("dump_walks"):
            save_walks(model.walks, Path(cfg["out"]) / "walks.txt")
    elif variant == "n2v-r":
        table = retrofit_n2v(priors, graph, _walk_config(cfg), cfg["alpha"], cfg["beta"], train_cfg)
        vectors = table.input_vectors
    elif variant in ("it-w", "it-uw"):
        rcfg = RetrofitConfig(alpha=cfg["alpha"], beta=cfg["beta"], weighted=variant == "it-w")
        vectors = retrofit_jacobi(priors, graph, rcfg)
    elif variant in ("reg-w", "reg-uw"):
        rcfg = RegConfig(beta=cfg["beta"], weighted=variant == "reg-w")
        model = train_regularized(corpus, graph, rcfg, train_cfg)
        vectors = model.sentence_vectors
        meta["epoch_losses"] = model.epoch_losses
    else:  # dictreg-w / dictreg-uw
        lexicon = _load_lexicon(cfg, corpus, variant)
        rcfg = RegConfig(beta=cfg["beta"], word_beta=cfg["word_beta"], weighted=variant == "dictreg-w")
        model = train_dictreg(corpus, graph, lexicon, rcfg, train_cfg)
        vectors = model.sentence_vectors
        meta["epoch_losses"] = model.epoch_losses
        meta["lexicon_edges"] = lexicon.n_edges()
    return np.asarray(vectors, dtype=np.float64), meta


def cmd_train(args) -> int:
    cfg = _effective_config(args, TRAIN_KEYS + ["variant"])
    cfg["variant"] = args.variant
    out = Path(_require(cfg, "out"))
    digest = _write_config(cfg, out, "train")
    vectors, meta = train_variant(cfg["variant"], cfg)
    save_vectors(out / "vectors.txt", vectors)
    meta["config_digest"] = digest
    meta["n_vectors"], meta["dim"] = vectors.shape
    (out / "meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {out / 'vectors.txt'} ({meta['n_vectors']} x {meta['dim']})")
    return 0


def cmd_build_graph(args) -> int:
    keys = ["corpus", "format", "vectors", "min_count", "intra_thresh", "across_thresh", "top_k", "out"]
    cfg = _effective_config(args, keys)
    out = Path(_require(cfg, "out"))
    _write_config(cfg, out, "build-graph")
    corpus = _load_corpus(cfg)
    vectors = load_vectors(_require(cfg, "vectors"))
    gcfg = GraphBuildConfig(
        intra_threshold=cfg["intra_thresh"],
        across_threshold=cfg["across_thresh"],
        top_k=cfg["top_k"],
    )
    graph = build_discourse_graph(vectors, corpus, gcfg)
    save_edge_list(graph, out / "graph.edges")
    print(f"wrote {out / 'graph.edges'} ({graph.n_edges()} edges, {graph.n_components()} components)")
    return 0


def cmd_annotate(args) -> int:
    keys = ["corpus", "format", "vectors", "min_count", "p_percent", "edge_min", "damping", "out"]
    cfg = _effective_config(args, keys)
    out = Path(_require(cfg, "out"))
    _write_config(cfg, out, "annotate")
    corpus = _load_corpus(cfg)
    vectors = load_vectors(_require(cfg, "vectors"))
    rcfg = RankConfig(edge_min_weight=cfg["edge_min"], damping=cfg["damping"])
    labels = annotate_top_sentences(corpus, vectors, cfg["p_percent"], rcfg)
    write_labels(out / "labels.tsv", labels)
    print(f"wrote {out / 'labels.tsv'} ({len(labels)} labelled sentences)")
    return 0


def cmd_summarize(args) -> int:
    keys = ["corpus", "format", "vectors", "min_count", "budget", "edge_min", "damping", "out"]
    cfg = _effective_config(args, keys)
    out = Path(_require(cfg, "out"))
    _write_config(cfg, out, "summarize")
    corpus = _load_corpus(cfg)
    vectors = load_vectors(_require(cfg, "vectors"))
    rcfg = RankConfig(edge_min_weight=cfg["edge_min"], damping=cfg["damping"])
    summaries = out / "summaries"
    summaries.mkdir(parents=True, exist_ok=True)
    for doc in corpus.documents:
        chosen = extract_summary(doc, corpus, vectors, rcfg, word_budget=cfg["budget"])
        (summaries / f"{doc.doc_id}.txt").write_text(
            "".join(s.text + "\n" for s in chosen), encoding="utf-8"
        )
    print(f"wrote {len(corpus.documents)} summaries to {summaries}")
    return 0


def _load_references(refs_dir: Path, doc_id: str) -> list[list[str]]:
    refs = []
    for path in sorted(refs_dir.glob(f"{doc_id}*.txt")):
        tokens = tokenize(path.read_text(encoding="utf-8"))
        if tokens:
            refs.append(tokens)
    return refs


def evaluate_once(task: str, corpus: Corpus, vectors: np.ndarray, cfg: dict, seed: int) -> dict:
    if task == "classification":
        gold = read_labels(_require(cfg, "gold"))
        ids = sorted(gold)
        X = vectors[ids]
        y = [gold[i] for i in ids]
        train_idx, test_idx = split_indices(len(ids), cfg["test_fraction"], seed)
        clf = SoftmaxRegression().fit(X[train_idx], [y[i] for i in train_idx])
        predicted = clf.predict(X[test_idx])
        return classification_metrics([y[i] for i in test_idx], predicted)
    if task == "clustering":
        gold = read_labels(_require(cfg, "gold"))
        ids = sorted(gold)
        X = vectors[ids]
        y = [gold[i] for i in ids]
        labels = kmeans(X, k=len(set(y)), seed=seed)
        return clustering_metrics(y, list(labels))
    if task == "ranking":
        refs_dir = Path(_require(cfg, "refs"))
        rcfg = RankConfig(edge_min_weight=cfg["edge_min"], damping=cfg["damping"])
        scores = []
        for doc in corpus.documents:
            refs = _load_references(refs_dir, doc.doc_id)
            if not refs:
                continue
            chosen = extract_summary(doc, corpus, vectors, rcfg, word_budget=cfg["budget"])
            candidate = [w for s in chosen for w in s.words]
            scores.append(rouge_1(candidate, refs, word_limit=cfg["budget"]))
        if not scores:
            raise SengraphError(f"no reference summaries found in {refs_dir}")
        return {"rouge_1": float(np.mean(scores))}
    raise SengraphError(f"unknown task {task!r}")


def cmd_evaluate(args) -> int:
    keys = [
        "corpus",
        "format",
        "vectors",
        "gold",
        "refs",
        "min_count",
        "budget",
        "edge_min",
        "damping",
        "seed",
        "runs",
        "test_fraction",
        "variant_name",
        "out",
    ]
    cfg = _effective_config(args, keys)
    out = Path(_require(cfg, "out"))
    digest = _write_config(cfg, out, "evaluate")
    corpus = _load_corpus(cfg)
    vectors = load_vectors(_require(cfg, "vectors"))
    task = args.task
    if task in ("classification", "clustering") and cfg.get("gold") is None:
        raise SengraphError(f"task {task!r} requires --gold")

    runs = [evaluate_once(task, corpus, vectors, cfg, cfg["seed"] + i) for i in range(cfg["runs"])]
    report = MetricsReport(metadata={"task": task, "seed": cfg["seed"], "runs": cfg["runs"], "config_digest": digest})
    merged: dict[str, float] = {}
    for metric in runs[0]:
        values = [r[metric] for r in runs]
        merged[metric] = float(np.mean(values))
        if cfg["runs"] > 1:
            merged[f"{metric}_std"] = float(np.std(values))
    report.add(cfg["variant_name"], merged)
    report.save(out / "report")
    print(report.to_tsv(), end="")
    return 0


TASK_METRIC = {"classification": "f1", "clustering": "ami", "ranking": "rouge_1"}


def cmd_sweep(args) -> int:
    keys = TRAIN_KEYS + ["gold", "refs", "budget", "edge_min", "damping", "variant"]
    cfg = _effective_config(args, keys)
    cfg["variant"] = args.variant
    out = Path(_require(cfg, "out"))
    _write_config(cfg, out, "sweep")
    task = args.task
    param = args.param
    grid = [float(x) if param != "dim" else int(x) for x in args.grid.split(",")]
    if not grid:
        raise SengraphError("empty grid")
    metric = TASK_METRIC[task]

    corpus = _load_corpus(cfg)
    n_docs = len(corpus.documents)
    train_docs, val_docs = split_indices(n_docs, 0.2, cfg["seed"])
    val_doc_ids = {corpus.documents[i].doc_id for i in val_docs}
    val_sentences = {
        sid for i in val_docs for sid in corpus.documents[i].sentence_ids
    }

    scores = []
    for value in grid:
        point = dict(cfg)
        point[param] = value
        vectors, _ = train_variant(cfg["variant"], point)
        if task == "classification":
            gold = read_labels(_require(cfg, "gold"))
            train_ids = sorted(i for i in gold if i not in val_sentences)
            val_ids = sorted(i for i in gold if i in val_sentences)
            if not train_ids or not val_ids:
                raise SengraphError("validation split left no labelled sentences on one side")
            clf = SoftmaxRegression().fit(vectors[train_ids], [gold[i] for i in train_ids])
            predicted = clf.predict(vectors[val_ids])
            score = classification_metrics([gold[i] for i in val_ids], predicted)[metric]
        elif task == "clustering":
            gold = read_labels(_require(cfg, "gold"))
            val_ids = sorted(i for i in gold if i in val_sentences)
            if not val_ids:
                raise SengraphError("no labelled sentences in the validation split")
            y = [gold[i] for i in val_ids]
            labels = kmeans(vectors[val_ids], k=len(set(y)), seed=cfg["seed"])
            score = clustering_metrics(y, list(labels))[metric]
        else:
            refs_dir = Path(_require(cfg, "refs"))
            rcfg = RankConfig(edge_min_weight=cfg["edge_min"], damping=cfg["damping"])
            vals = []
            for doc in corpus.documents:
                if doc.doc_id not in val_doc_ids:
                    continue
                refs = _load_references(refs_dir, doc.doc_id)
                if not refs:
                    continue
                chosen = extract_summary(doc, corpus, vectors, rcfg, word_budget=cfg["budget"])
                vals.append(rouge_1([w for s in chosen for w in s.words], refs, word_limit=cfg["budget"]))
            if not vals:
                raise SengraphError("no validation document has reference summaries")
            score = float(np.mean(vals))
        scores.append(score)

    best_idx = max(range(len(grid)), key=lambda i: (scores[i], -i))
    lines = [f"{param}={grid[i]}\t{metric}\t{scores[i]:.6f}" for i in range(len(grid))]
    lines.append(f"best\t{param}\t{grid[best_idx]}")
    (out / "sweep.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    (out / "sweep.json").write_text(
        json.dumps(
            {
                "task": task,
                "param": param,
                "grid": grid,
                "scores": scores,
                "best": grid[best_idx],
                "metric": metric,
            },
            indent=2,
        )
        + "\n",
        encoding="utf-8",
    )
    print("\n".join(lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sengraph", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a model variant and write its vector table")
    p.add_argument("--variant", required=True, choices=VARIANTS)
    _add_common(
        p,
        "corpus",
        "format",
        "graph",
        "lexicon",
        "lexicon_map",
        "priors",
        "dim",
        "epochs",
        "learning_rate",
        "beta",
        "alpha",
        "word_beta",
        "negative",
        "window",
        "walk_length",
        "walks_per_node",
        "return_param",
        "forward_param",
        "min_count",
        "subsample_t",
        "noise",
        "seed",
        "workers",
        "dump_walks",
        "out",
    )
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("build-graph", help="build the discourse graph from sentence vectors")
    _add_common(p, "corpus", "format", "vectors", "min_count", "intra_thresh", "across_thresh", "top_k", "out")
    p.set_defaults(func=cmd_build_graph)

    p = sub.add_parser("annotate", help="label top-ranked sentences with document topics")
    _add_common(p, "corpus", "format", "vectors", "min_count", "p_percent", "edge_min", "damping", "out")
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("summarize", help="write extractive summaries per document")
    _add_common(p, "corpus", "format", "vectors", "min_count", "budget", "edge_min", "damping", "out")
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("evaluate", help="evaluate a vector table on a task")
    p.add_argument("--task", required=True, choices=["classification", "clustering", "ranking"])
    _add_common(
        p,
        "corpus",
        "format",
        "vectors",
        "gold",
        "refs",
        "min_count",
        "budget",
        "edge_min",
        "damping",
        "seed",
        "runs",
        "test_fraction",
        "variant_name",
        "out",
    )
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep", help="grid-search one parameter on a validation split")
    p.add_argument("--task", required=True, choices=["classification", "clustering", "ranking"])
    p.add_argument("--variant", required=True, choices=VARIANTS)
    p.add_argument("--param", required=True, help="config key to sweep, e.g. beta")
    p.add_argument("--grid", required=True, help="comma-separated values, e.g. 0.3,0.6,0.8,1.0")
    _add_common(
        p,
        "corpus",
        "format",
        "graph",
        "lexicon",
        "lexicon_map",
        "priors",
        "gold",
        "refs",
        "dim",
        "epochs",
        "learning_rate",
        "beta",
        "alpha",
        "word_beta",
        "negative",
        "window",
        "walk_length",
        "walks_per_node",
        "return_param",
        "forward_param",
        "min_count",
        "subsample_t",
        "noise",
        "seed",
        "workers",
        "budget",
        "edge_min",
        "damping",
        "out",
    )
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SengraphError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
