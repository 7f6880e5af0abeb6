"""Entry point for building, querying and clustering Baire bin indexes."""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Optional, Sequence

from src.clustering.grid_cluster import grid_cluster
from src.configs.logging_config import configure_logging, get_logger
from src.configs.settings import Config, RunConfig
from src.encoding.codec import encode, encode_many, normalize
from src.errors import DataError, ParameterError, UsageError
from src.evaluation.benchmark import format_table, scaling_benchmark
from src.evaluation.kmeans import kmeans
from src.evaluation.scoring import rand_index
from src.indexing.madic_index import MadicIndex, ProbeCounter
from src.ingestion.csv_reader import Dataset, read_records
from src.projection.random_projection import (
    ProjectionSpec,
    fit_pipeline_bounds,
    make_spec,
    project,
    project_many,
    to_unit_interval,
)
from src.storage.local_store import PROJECTION_SUFFIX, LocalStore

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


class CliArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that reports bad arguments as UsageError instead of exiting."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def _comma_list(text: str) -> tuple[str, ...]:
    items = tuple(item.strip() for item in text.split(",") if item.strip())
    if not items:
        raise ParameterError(f"expected a comma-separated list, got {text!r}")
    return items


def _parse_vector(text: str) -> list[float]:
    values = []
    for item in text.split(","):
        try:
            value = float(item)
        except ValueError:
            raise ParameterError(f"malformed value vector {text!r}: {item!r} is not a number") from None
        if math.isnan(value) or math.isinf(value):
            raise ParameterError(f"malformed value vector {text!r}: {item!r} is not finite")
        values.append(value)
    return values


def _parse_sizes(text: str) -> list[int]:
    try:
        return [int(item) for item in _comma_list(text)]
    except ValueError:
        raise ParameterError(f"--sizes expects comma-separated integers, got {text!r}") from None


def _store() -> LocalStore:
    return LocalStore(directory=Config.OUTPUT_DIR)


def _spec_name(index_path: str, spec_path: Optional[str]) -> str:
    return spec_path or str(Path(index_path).with_suffix(PROJECTION_SUFFIX))


# ----------------------------------------------------------------------
# Pipeline
# ----------------------------------------------------------------------
def project_dataset(dataset: Dataset, config: RunConfig) -> tuple[ProjectionSpec, list[float]]:
    """Project, fit bounds and normalize a dataset onto [0, 1]."""
    if dataset.dimension == 1:
        spec = ProjectionSpec.identity()
    else:
        spec = make_spec(dataset.dimension, config.axis_count, config.seed)
    projected = project_many(dataset.values, spec)
    spec = fit_pipeline_bounds(spec, projected)
    assert spec.bounds is not None
    return spec, normalize(projected, spec.bounds)


def build_index(config: RunConfig) -> tuple[MadicIndex, ProjectionSpec]:
    """Ingest, project, encode and index the records named by ``config``."""
    dataset = read_records(config.input_path, config.id_column, config.value_columns)
    spec, unit_values = project_dataset(dataset, config)
    codes = encode_many(unit_values, config.base, config.precision)
    index = MadicIndex.build(zip(dataset.ids, codes), base=config.base, precision=config.precision)
    return index, spec


# ----------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------
def cmd_build(args: argparse.Namespace) -> dict:
    config = RunConfig(
        input_path=Path(args.input),
        id_column=args.id_column,
        value_columns=args.value_columns or (),
        base=args.base,
        precision=args.precision,
        seed=args.seed,
        axis_count=args.axis_count,
        index_path=Path(args.index) if args.index else None,
        spec_path=Path(args.spec) if args.spec else None,
    )
    index, spec = build_index(config)

    store = _store()
    index_path = store.save_index(index, str(config.resolved_index_path))
    spec_path = store.save_projection(spec, str(config.resolved_spec_path))
    return {
        "count": index.count,
        "base": index.base,
        "precision": index.precision,
        "index": str(index_path),
        "spec": str(spec_path),
        "depth": index.depth_stats().as_dict(),
        "levels": index.level_summary(),
    }


def _nn_for_id(index: MadicIndex, record_id: str) -> dict:
    counter = ProbeCounter()
    neighbor = index.nearest_neighbor(record_id, counter)
    return {
        "id": record_id,
        "neighbor": neighbor.record_id,
        **neighbor.proximity.as_dict(),
        "probes": counter.probes,
    }


def cmd_query(args: argparse.Namespace) -> dict:
    store = _store()
    index = store.load_index(args.index)

    if args.query == "nn":
        if args.value is not None:
            spec = store.load_projection(_spec_name(args.index, args.spec))
            vector = _parse_vector(args.value)
            unit_value = to_unit_interval([project(vector, spec)], spec)[0]
            code = encode(unit_value, index.base, index.precision)
            counter = ProbeCounter()
            neighbor = index.nearest_neighbor(code, counter)
            return {
                "value": vector,
                "code": code.key(),
                "neighbor": neighbor.record_id,
                **neighbor.proximity.as_dict(),
                "probes": counter.probes,
            }
        if len(args.id) == 1:
            return _nn_for_id(index, args.id[0])
        with ThreadPoolExecutor(max_workers=max(1, Config.QUERY_WORKERS)) as pool:
            results = list(pool.map(lambda record_id: _nn_for_id(index, record_id), args.id))
        return {"results": results}

    if args.query == "dist":
        if len(args.id) != 2:
            raise ParameterError(f"dist needs exactly two --id flags, got {len(args.id)}")
        id_a, id_b = args.id
        proximity = index.um_distance(id_a, id_b)
        return {"ids": [id_a, id_b], **proximity.as_dict()}

    if args.query == "bins":
        cells = index.bins_at_level(args.level)
        return {
            "level": args.level,
            "bins": [{**cell.as_dict(), "density": cell.density} for cell in cells],
        }

    return {
        "count": index.count,
        "base": index.base,
        "precision": index.precision,
        "depth": index.depth_stats().as_dict(),
        "levels": index.level_summary(),
    }


def cmd_cluster(args: argparse.Namespace) -> dict:
    store = _store()
    index = store.load_index(args.index)
    labeling = grid_cluster(index, args.level, args.min_density)
    # save_labeling swaps the trailing ".json" for ".tsv" on the second file
    out = args.out or str(Path(args.index).with_suffix("")) + f".level{args.level}.json"
    json_path, tsv_path = store.save_labeling(labeling, out)
    return {
        "level": labeling.level,
        "cluster_count": labeling.cluster_count,
        "noise_count": labeling.noise_count,
        "json": str(json_path),
        "tsv": str(tsv_path),
    }


def cmd_compare(args: argparse.Namespace) -> dict:
    index = _store().load_index(args.index)
    dataset = read_records(args.input, args.id_column, args.value_columns or ())
    if not 1 <= args.k <= len(dataset):
        raise ParameterError(f"k must lie in [1, {len(dataset)}], got {args.k}")

    labeling = grid_cluster(index, args.level, args.min_density)
    reference = kmeans(dataset.values, args.k, seed=args.seed)
    score = rand_index(labeling.labels, dict(zip(dataset.ids, (int(v) for v in reference))))
    return {
        "level": args.level,
        "min_density": args.min_density,
        "k": args.k,
        "cluster_count": labeling.cluster_count,
        "noise_count": labeling.noise_count,
        **score.as_dict(),
    }


def cmd_truncate(args: argparse.Namespace) -> dict:
    store = _store()
    index = store.load_index(args.index)
    coarse = index.truncated(args.precision)
    path = store.save_index(coarse, args.out)
    return {"count": coarse.count, "precision": coarse.precision, "index": str(path)}


def cmd_bench(args: argparse.Namespace) -> Any:
    table = scaling_benchmark(_parse_sizes(args.sizes), args.base, args.precision, args.seed)
    if args.out:
        _store().save_table(table, args.out)
    text = format_table(table)
    if args.format == "text":
        return text
    print(text, file=sys.stderr)
    return {"rows": json.loads(table.to_json(orient="records"))}


# ----------------------------------------------------------------------
# Argument parsing
# ----------------------------------------------------------------------
def _add_column_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--id-column", help="Id column name or index (default: row number).")
    parser.add_argument(
        "--value-columns",
        type=_comma_list,
        help="Comma-separated value column names or indexes (default: all but the id column).",
    )


def build_parser() -> CliArgumentParser:
    parser = CliArgumentParser(
        prog="baire-bins",
        description="Linear-time hierarchical clustering with Baire (longest common prefix) bins.",
    )
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default=Config.LOG_LEVEL,
        help="Logging level (default: INFO).",
    )
    parser.add_argument("--log-file", help="Also write logs to this file.")
    verbs = parser.add_subparsers(dest="command", required=True)

    build = verbs.add_parser("build", help="Ingest a CSV file and write an index and projection spec.")
    build.add_argument("--input", required=True, help="CSV file of numeric records.")
    _add_column_flags(build)
    build.add_argument("--base", type=int, default=Config.BASE)
    build.add_argument("--precision", type=int, default=Config.PRECISION)
    build.add_argument("--seed", type=int, default=Config.SEED)
    build.add_argument("--axis-count", type=int, default=Config.AXIS_COUNT)
    build.add_argument("--index", help="Index file to write (default: <input>.madic).")
    build.add_argument("--spec", help="Projection spec to write (default: <index>.proj).")
    build.set_defaults(handler=cmd_build)

    query = verbs.add_parser("query", help="Answer nn, dist, bins or stats queries from an index.")
    query.add_argument("query", choices=["nn", "dist", "bins", "stats"])
    query.add_argument("--index", required=True)
    query.add_argument("--spec", help="Projection spec for --value (default: <index>.proj).")
    query.add_argument("--id", action="append", default=[], help="Record id; repeat for several.")
    query.add_argument("--value", help="External record as v1,...,vd.")
    query.add_argument("--level", type=int, default=1)
    query.set_defaults(handler=cmd_query)

    cluster = verbs.add_parser("cluster", help="Grid-cluster the bins of one level.")
    cluster.add_argument("--index", required=True)
    cluster.add_argument("--level", type=int, required=True)
    cluster.add_argument("--min-density", type=int, required=True)
    cluster.add_argument("--out", help="Stem of the JSON and TSV labeling files.")
    cluster.set_defaults(handler=cmd_cluster)

    compare = verbs.add_parser("compare", help="Rand index of a bin labeling against k-means.")
    compare.add_argument("--index", required=True)
    compare.add_argument("--input", required=True, help="The CSV file the index was built from.")
    _add_column_flags(compare)
    compare.add_argument("--level", type=int, required=True)
    compare.add_argument("--min-density", type=int, required=True)
    compare.add_argument("--k", type=int, required=True)
    compare.add_argument("--seed", type=int, default=Config.SEED)
    compare.set_defaults(handler=cmd_compare)

    bench = verbs.add_parser("bench", help="Time index builds over increasing sizes.")
    bench.add_argument("--sizes", default="1000,10000,100000")
    bench.add_argument("--base", type=int, default=Config.BASE)
    bench.add_argument("--precision", type=int, default=Config.PRECISION)
    bench.add_argument("--seed", type=int, default=Config.SEED)
    bench.add_argument(
        "--format", choices=["json", "text"], default="json",
        help="json prints the table as JSON on stdout and as aligned text on stderr; text prints only the text.",
    )
    bench.add_argument("--out", help="Also save the table (CSV) under this name.")
    bench.set_defaults(handler=cmd_bench)

    truncate = verbs.add_parser("truncate", help="Re-encode an index at a lower precision.")
    truncate.add_argument("--index", required=True)
    truncate.add_argument("--precision", type=int, required=True)
    truncate.add_argument("--out", required=True)
    truncate.set_defaults(handler=cmd_truncate)

    return parser


def _validate(args: argparse.Namespace) -> None:
    if args.command == "query":
        if args.query == "nn" and bool(args.id) == (args.value is not None):
            raise ParameterError("nn needs either --id (repeatable) or --value, not both")
        if args.query == "dist" and args.value is not None:
            raise ParameterError("dist takes two --id flags, not --value")


def _emit(result: Any) -> None:
    if isinstance(result, str):
        print(result)
    else:
        print(json.dumps(result, indent=2))


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command. Returns 0 on success, 1 usage, 2 data, 3 internal error."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code or 0)

    configure_logging(level=args.log_level, log_file=Path(args.log_file) if args.log_file else None)
    logger.debug("Running %s", args.command)
    try:
        result = args.handler(args)
    except UsageError as exc:
        logger.error("Usage error: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        logger.error("Data error: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001
        logger.exception("Internal error while running %s", args.command)
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL

    _emit(result)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
