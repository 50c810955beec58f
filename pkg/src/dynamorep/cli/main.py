"""Command-line pipeline: generate, featurize, evaluate, report, all.

Stages communicate only through files in the output directory, so each
subcommand can rerun independently and a fixed configuration produces
byte-identical artifacts regardless of worker count. Worker processes
receive the configuration once at pool start; every task writes its own
file, so no two writers share a path.
"""

import argparse
import json
import multiprocessing
import sys
import time
from pathlib import Path

import numpy as np

from .. import __version__
from ..bbob import make_instance, write_manifest
from ..ela import ELA_FEATURE_NAMES, ela_features
from ..experiments import (
    N_PROBLEM_CLASSES,
    importance_report,
    setting_one,
    setting_two,
    summarize,
)
from ..features import (
    STATISTICS,
    FeatureTable,
    feature_names,
    read_feature_csv,
    trajectory_features,
    write_feature_csv,
)
from ..optimizers import read_trajectory_csv, run_trajectory, write_trajectory_csv
from .config import FEATURE_KINDS, ExperimentConfig, load_config
from .store import OutputStore, write_atomic

_STATE = {}


def _worker_init(config_dict):
    config = ExperimentConfig(**config_dict)
    _STATE["config"] = config
    _STATE["store"] = OutputStore(config)
    _STATE["tables"] = {}


def _run_tasks(task_fn, tasks, config, chunksize=1):
    """Map ``task_fn`` over ``tasks``, in-process or on a pool."""
    if config.workers <= 1 or len(tasks) <= 1:
        _worker_init(config.to_dict())
        yield from map(task_fn, tasks)
        return
    with multiprocessing.Pool(
        processes=min(config.workers, len(tasks)),
        initializer=_worker_init,
        initargs=(config.to_dict(),),
    ) as pool:
        yield from pool.imap_unordered(task_fn, tasks, chunksize=chunksize)


def _run_grid(config):
    return [
        (algorithm, problem_id, instance_id, seed)
        for algorithm in config.algorithms
        for problem_id in range(1, N_PROBLEM_CLASSES + 1)
        for instance_id in range(1, config.instances + 1)
        for seed in config.seeds
    ]


# -- generate ----------------------------------------------------------


def _generate_one(task):
    algorithm, problem_id, instance_id, seed = task
    config = _STATE["config"]
    store = _STATE["store"]
    instance = make_instance(problem_id, instance_id, config.dimension)
    trajectory = run_trajectory(
        algorithm,
        instance,
        seed,
        population=config.population,
        iterations=config.iterations,
    )
    path = store.trajectory_path(algorithm, problem_id, instance_id, seed)
    tmp = path.with_name(path.name + ".tmp")
    write_trajectory_csv(tmp, trajectory, stamp=config.stamp)
    tmp.replace(path)
    return 1


def cmd_generate(config):
    store = OutputStore(config)
    started = time.perf_counter()
    try:
        store.ensure_dirs(
            *(store.trajectory_path(a, 1, 1, config.seeds[0]).parent
              for a in config.algorithms)
        )
    except OSError as exc:
        raise SystemExit(f"generate: cannot create output directory: {exc}")

    grid = _run_grid(config)
    tasks = [
        t for t in grid if not store.trajectory_complete(store.trajectory_path(*t))
    ]
    for _ in _run_tasks(_generate_one, tasks, config, chunksize=16):
        pass

    manifest = store.root / "manifest.csv"
    if not manifest.is_file():
        write_manifest(
            manifest,
            range(1, N_PROBLEM_CLASSES + 1),
            range(1, config.instances + 1),
            config.dimension,
            stamp=config.stamp,
        )
    elapsed = time.perf_counter() - started
    store.record_timing("generate", elapsed)
    print(
        f"generate: {len(tasks)} runs written, {len(grid) - len(tasks)} "
        f"resumed, {len(config.algorithms)} algorithms, {elapsed:.1f} s"
    )


# -- featurize ---------------------------------------------------------


def _featurize_one(task):
    algorithm, problem_id, instance_id, seed = task
    config = _STATE["config"]
    store = _STATE["store"]
    trajectory = read_trajectory_csv(
        store.trajectory_path(algorithm, problem_id, instance_id, seed)
    )
    if config.feature_kind == "dynamorep":
        vector = trajectory_features(trajectory)
    else:
        vector = ela_features(trajectory.x, trajectory.y)
    return problem_id, instance_id, seed, vector


def _kind_feature_names(config):
    if config.feature_kind == "dynamorep":
        return tuple(feature_names(config.dimension, config.iterations))
    return tuple(ELA_FEATURE_NAMES)


def cmd_featurize(config):
    store = OutputStore(config)
    started = time.perf_counter()
    names = _kind_feature_names(config)
    store.ensure_dirs(store.root / "features")

    written = 0
    for algorithm in config.algorithms:
        out = store.features_path(config.feature_kind, algorithm)
        if store.feature_table_complete(out, len(names)):
            continue
        tasks = [
            (algorithm, problem_id, instance_id, seed)
            for (a, problem_id, instance_id, seed) in _run_grid(config)
            if a == algorithm
        ]
        for task in tasks:
            path = store.trajectory_path(*task)
            if not store.trajectory_complete(path):
                raise SystemExit(
                    f"featurize: trajectory file missing or incomplete: "
                    f"{path}; run the generate stage first"
                )
        rows = list(_run_tasks(_featurize_one, tasks, config, chunksize=16))
        table = FeatureTable.from_rows(algorithm, names, rows)
        tmp = out.with_name(out.name + ".tmp")
        write_feature_csv(tmp, table, stamp=config.stamp)
        tmp.replace(out)
        written += 1

    elapsed = time.perf_counter() - started
    store.record_timing(f"featurize:{config.feature_kind}", elapsed)
    print(
        f"featurize: {written} {config.feature_kind} tables written, "
        f"{len(config.algorithms) - written} resumed, {elapsed:.1f} s"
    )


# -- evaluate ----------------------------------------------------------


def _evaluate_one(task):
    kind, algorithm, setting, anchor_seed = task
    config = _STATE["config"]
    store = _STATE["store"]
    key = (kind, algorithm)
    table = _STATE["tables"].get(key)
    if table is None:
        table = read_feature_csv(store.features_path(*key))
        # single-entry cache: workers hold at most one table at a time
        _STATE["tables"] = {key: table}

    run = setting_one if setting == 1 else setting_two
    report = run(
        table,
        anchor_seed,
        forest_seed=config.forest_seed,
        eliminate=(kind == "ela"),
        feature_kind=kind,
    )
    doc = {
        "config_hash": config.config_hash,
        "version": __version__,
        **report.to_dict(),
    }
    path = store.report_path(kind, algorithm, setting, anchor_seed)
    write_atomic(path, json.dumps(doc, indent=2) + "\n")
    return path.name


def cmd_evaluate(config):
    store = OutputStore(config)
    started = time.perf_counter()
    kind = config.feature_kind
    store.ensure_dirs(store.root / "reports")

    for algorithm in config.algorithms:
        path = store.features_path(kind, algorithm)
        if not path.is_file():
            raise SystemExit(
                f"evaluate: feature table not found: {path}; "
                f"run the featurize stage first"
            )

    tasks = [
        (kind, algorithm, setting, anchor_seed)
        for algorithm in config.algorithms
        for setting in config.settings
        for anchor_seed in config.seeds
        if not store.report_complete(
            store.report_path(kind, algorithm, setting, anchor_seed)
        )
    ]
    n_total = len(config.algorithms) * len(config.settings) * len(config.seeds)
    for _ in _run_tasks(_evaluate_one, tasks, config, chunksize=1):
        pass

    elapsed = time.perf_counter() - started
    store.record_timing(f"evaluate:{kind}", elapsed)
    print(
        f"evaluate: {len(tasks)} reports written, {n_total - len(tasks)} "
        f"resumed, {elapsed:.1f} s"
    )


# -- report ------------------------------------------------------------


def _collect_reports(config, store):
    """Load every evaluation report present; insist on the configured scope."""
    docs = {}
    for kind in FEATURE_KINDS:
        for algorithm in config.algorithms:
            for setting in (1, 2):
                for anchor_seed in config.seeds:
                    path = store.report_path(kind, algorithm, setting, anchor_seed)
                    if path.is_file():
                        docs[(kind, algorithm, setting, anchor_seed)] = json.loads(
                            path.read_text()
                        )
                    elif kind == config.feature_kind and setting in config.settings:
                        raise SystemExit(
                            f"report: evaluation report not found: {path}; "
                            f"run the evaluate stage first"
                        )
    return docs


def _generalization_accuracies(doc):
    return [
        f["accuracy"] for f in doc["per_fold"] if f["generalization"]
    ]


def _emit_fig1(config, store):
    algorithm = "DE" if "DE" in config.algorithms else config.algorithms[0]
    src = store.features_path("dynamorep", algorithm)
    if not src.is_file():
        if config.feature_kind == "dynamorep":
            raise SystemExit(
                f"report: feature table not found: {src}; "
                f"run the featurize stage first"
            )
        return False
    table = read_feature_csv(src)
    seed = 0 if 0 in config.seeds else config.seeds[0]
    components = [f"x{j}" for j in range(config.dimension)] + ["y"]
    lines = [
        f"# {config.stamp}",
        "algorithm,problem_id,instance_id,seed,iteration,statistic,"
        + ",".join(components),
    ]
    for problem_id in (1, 2):
        for instance_id in (1, 2):
            if instance_id > config.instances:
                continue
            mask = (
                (table.problem_ids == problem_id)
                & (table.instance_ids == instance_id)
                & (table.seeds == seed)
            )
            if not mask.any():
                continue
            blocks = table.values[mask][0].reshape(
                config.iterations, len(STATISTICS), config.dimension + 1
            )
            for t in range(config.iterations):
                for s, statistic in enumerate(STATISTICS):
                    values = ",".join(repr(float(v)) for v in blocks[t, s])
                    lines.append(
                        f"{algorithm},{problem_id},{instance_id},{seed},"
                        f"{t},{statistic},{values}"
                    )
    write_atomic(store.summary_path("fig1_features.csv"), "\n".join(lines) + "\n")
    return True


def _emit_table1(config, store, docs):
    groups = {}
    for (kind, algorithm, setting, _anchor), doc in docs.items():
        groups.setdefault((kind, algorithm, setting), []).extend(
            _generalization_accuracies(doc)
        )
    lines = [
        f"# {config.stamp}",
        "algorithm,setting,feature_kind,mean,median,std,n_values",
    ]
    for kind in FEATURE_KINDS:
        for algorithm in config.algorithms:
            for setting in (1, 2):
                accuracies = groups.get((kind, algorithm, setting))
                if not accuracies:
                    continue
                stats = summarize(accuracies)
                lines.append(
                    f"{algorithm},{setting},{kind},{stats['mean']!r},"
                    f"{stats['median']!r},{stats['std']!r},{len(accuracies)}"
                )
    write_atomic(store.summary_path("table1_summary.csv"), "\n".join(lines) + "\n")


def _emit_confusions(config, store, docs):
    emitted = 0
    for algorithm in config.algorithms:
        total = np.zeros((N_PROBLEM_CLASSES, N_PROBLEM_CLASSES), dtype=np.int64)
        found = False
        for anchor_seed in config.seeds:
            doc = docs.get(("dynamorep", algorithm, 2, anchor_seed))
            if doc is not None:
                total += np.asarray(doc["confusion"], dtype=np.int64)
                found = True
        if not found:
            continue
        lines = [f"# {config.stamp}"]
        lines += [",".join(str(v) for v in row) for row in total]
        write_atomic(
            store.summary_path(f"confusion_{algorithm}.csv"),
            "\n".join(lines) + "\n",
        )
        emitted += 1
    return emitted


def _emit_importance(config, store, docs, top_k=30):
    rows = []
    names = None
    for algorithm in config.algorithms:
        for anchor_seed in config.seeds:
            doc = docs.get(("dynamorep", algorithm, 2, anchor_seed))
            if doc is None:
                continue
            names = tuple(doc["feature_names"])
            for model_row in doc["importances"]:
                rows.append(
                    [np.nan if v is None else v for v in model_row]
                )
    if not rows:
        return False
    report = importance_report(np.asarray(rows), names, top_k=top_k)
    lines = [f"# {config.stamp}", "feature,median,q25,q75"]
    for entry in report:
        lines.append(
            f"{entry['feature']},{entry['median']!r},"
            f"{entry['q25']!r},{entry['q75']!r}"
        )
    write_atomic(
        store.summary_path(f"importance_top{top_k}.csv"), "\n".join(lines) + "\n"
    )
    return True


def cmd_report(config):
    store = OutputStore(config)
    started = time.perf_counter()
    store.ensure_dirs(store.root / "report")
    docs = _collect_reports(config, store)
    emitted = 0
    emitted += _emit_fig1(config, store)
    _emit_table1(config, store, docs)
    emitted += 1
    emitted += _emit_confusions(config, store, docs)
    emitted += _emit_importance(config, store, docs)
    elapsed = time.perf_counter() - started
    store.record_timing("report", elapsed)
    print(f"report: {emitted} summary files, {elapsed:.1f} s")


def cmd_all(config):
    started = time.perf_counter()
    cmd_generate(config)
    cmd_featurize(config)
    cmd_evaluate(config)
    cmd_report(config)
    OutputStore(config).record_timing("all", time.perf_counter() - started)


# -- entry point -------------------------------------------------------

_COMMANDS = {
    "generate": cmd_generate,
    "featurize": cmd_featurize,
    "evaluate": cmd_evaluate,
    "report": cmd_report,
    "all": cmd_all,
}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="dynamorep",
        description=(
            "Trajectory-based classification pipeline: run optimizers on "
            "the 24-class benchmark suite, extract per-iteration features, "
            "train and evaluate random-forest classifiers."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name, help=f"run the {name} stage")
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--output-dir", dest="output_dir")
        p.add_argument("--workers", type=int)
        p.add_argument("--dimension", type=int)
        p.add_argument("--instances", type=int, help="instances per class")
        p.add_argument("--seeds", help="comma-separated, e.g. 0,1,2,3,4")
        p.add_argument("--algorithms", help="comma-separated, e.g. DE,GA")
        p.add_argument("--iterations", type=int)
        p.add_argument("--population", type=int)
        p.add_argument("--feature-kind", dest="feature_kind",
                       choices=FEATURE_KINDS)
        p.add_argument("--settings", help="comma-separated subset of 1,2")
        p.add_argument("--forest-seed", dest="forest_seed", type=int)
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    overrides = {
        k: v
        for k, v in vars(args).items()
        if k not in ("command", "config") and v is not None
    }
    try:
        config = load_config(args.config, overrides)
    except (OSError, ValueError) as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return 2
    try:
        _COMMANDS[args.command](config)
    except SystemExit as exc:
        if exc.code and not isinstance(exc.code, int):
            print(exc.code, file=sys.stderr)
            return 1
        raise
    return 0


if __name__ == "__main__":
    sys.exit(main())
