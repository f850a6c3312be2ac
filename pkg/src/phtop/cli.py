"""Command-line pipeline driver.

Subcommands: featurize (structures -> feature CSV), diagram (structure ->
diagram JSON), betti (Betti numbers at a scale or as a sampled curve),
distance (between two diagram files), oracle (brute-force Betti check).
Exit codes: 0 success, 1 any per-file failure, 2 usage error.
"""

import csv
import io as _io
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click

from .errors import PhtopError
from .geometry import distance_matrix
from .io import (
    DatasetManifest,
    parse_coords_csv,
    parse_xyz,
    read_diagram_json,
    write_diagram_json,
)
from .metrics import bottleneck_distance, wasserstein_distance
from .oracle import betti_at
from .persistence import betti_curve, compute_persistence
from .rips import build_rips
from .vectorize import ImageParams, feature_names, featurize

_EXTENSIONS = {"xyz": ".xyz", "csv": ".csv"}


def _fmt(x):
    return format(float(x) + 0.0, ".12g")  # +0.0 folds negative zero


def _parse_threshold(ctx, param, value):
    if value.lower() == "auto":
        return "auto"
    try:
        thr = float(value)
    except ValueError:
        raise click.BadParameter(f"expected a number or 'auto', got {value!r}")
    if not thr >= 0 or not math.isfinite(thr):
        raise click.BadParameter("threshold must be nonnegative and finite")
    return thr


_threshold_option = click.option(
    "--threshold",
    default="auto",
    callback=_parse_threshold,
    show_default=True,
    help="Filtration cutoff in Angstrom, or 'auto' for the cloud diameter.",
)
_max_dim_option = click.option(
    "--max-dim",
    type=click.IntRange(0, 2),
    default=2,
    show_default=True,
    help="Highest homology dimension (simplices go one higher).",
)
_format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(["xyz", "csv"]),
    default=None,
    help="Structure format; default is inferred from the file suffix.",
)


def _load_cloud(path, fmt):
    path = Path(path)
    if fmt is None:
        fmt = "csv" if path.suffix.lower() == ".csv" else "xyz"
    data = path.read_bytes()
    return parse_xyz(data) if fmt == "xyz" else parse_coords_csv(data)


def _diagram_for(cloud, threshold, max_dim):
    fc = build_rips(distance_matrix(cloud), threshold, max_dim + 1)
    return compute_persistence(fc)


@click.group()
def main():
    """Persistent-homology features for 3-D point clouds."""


@main.command("featurize")
@click.option(
    "--input",
    "inputs",
    multiple=True,
    type=click.Path(path_type=Path),
    help="Structure file or directory of them; repeatable, order preserved.",
)
@click.option(
    "--manifest",
    type=click.Path(exists=True, path_type=Path),
    default=None,
    help="Two-column CSV `id,path` naming structures.",
)
@_format_option
@_threshold_option
@_max_dim_option
@click.option("--layout", type=click.Choice(["paper18", "full"]), default="paper18", show_default=True)
@click.option("--resolution", type=click.IntRange(min=1), default=5, show_default=True,
              help="Persistence image resolution for the full layout.")
@click.option("--sigma", type=float, default=0.1, show_default=True,
              help="Persistence image Gaussian bandwidth (Angstrom).")
@click.option("--log-base", type=click.Choice(["2", "e"]), default="2", show_default=True,
              help="Logarithm base for persistence entropy.")
@click.option("--order", type=float, default=2.0, show_default=True,
              help="Wasserstein amplitude order p.")
@click.option("--output", type=click.Path(path_type=Path), required=True)
@click.option("--resume", is_flag=True, help="Skip ids already present in the output file.")
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True,
              help="Number of concurrent workers; output order is unaffected.")
def cmd_featurize(inputs, manifest, fmt, threshold, max_dim, layout, resolution,
                  sigma, log_base, order, output, resume, jobs):
    """Featurize structures into one CSV row per input."""
    if sigma <= 0:
        raise click.BadParameter("--sigma must be positive")
    if order < 1:
        raise click.BadParameter("--order must be >= 1")
    base = 2.0 if log_base == "2" else math.e
    params = ImageParams(resolution=resolution, sigma=sigma)
    names = feature_names(layout, resolution=resolution)
    header = ["id", *names]

    tasks = []
    failures = 0
    for path in inputs:
        if path.is_dir():
            ext = _EXTENSIONS[fmt] if fmt else None
            entries = sorted(
                p for p in path.iterdir()
                if p.is_file() and (p.suffix.lower() == ext if ext else p.suffix.lower() in (".xyz", ".csv"))
            )
            tasks.extend((p.stem, p) for p in entries)
        else:
            tasks.append((path.stem, path))
    if manifest is not None:
        try:
            tasks.extend(DatasetManifest.load(manifest).entries)
        except PhtopError as exc:
            click.echo(f"error: {manifest}: {exc}", err=True)
            sys.exit(1)

    done_ids = set()
    existing_text = ""
    if resume and output.exists():
        existing_text = output.read_text()
        rows = list(csv.reader(_io.StringIO(existing_text)))
        if not rows or rows[0] != header:
            click.echo(f"error: {output}: existing header does not match this layout", err=True)
            sys.exit(1)
        done_ids = {row[0] for row in rows[1:] if row}
        tasks = [(rid, p) for rid, p in tasks if rid not in done_ids]

    def work(task):
        rid, path = task
        cloud = _load_cloud(path, fmt)
        diag = _diagram_for(cloud, threshold, max_dim)
        return featurize(diag, len(cloud), layout=layout, params=params,
                         log_base=base, wasserstein_order=order)

    results = []
    if jobs == 1:
        runs = ((task, _try(work, task)) for task in tasks)
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [(task, pool.submit(work, task)) for task in tasks]
            runs = ((task, _try(fut.result)) for task, fut in futures)
    for (rid, path), outcome in runs:
        ok, value = outcome
        if ok:
            results.append((rid, value))
        else:
            failures += 1
            click.echo(f"error: {path}: {value}", err=True)

    out = _io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    if not existing_text:
        writer.writerow(header)
    for rid, vec in results:
        writer.writerow([rid, *(_fmt(v) for v in vec.values)])
    output.parent.mkdir(parents=True, exist_ok=True)
    with open(output, "w") as fh:
        fh.write(existing_text)
        fh.write(out.getvalue())
    sys.exit(1 if failures else 0)


def _try(fn, *args):
    try:
        return True, fn(*args)
    except (PhtopError, OSError) as exc:
        return False, exc


@main.command("diagram")
@click.option("--input", "input_path", type=click.Path(path_type=Path), required=True)
@click.option("--output", type=click.Path(path_type=Path), required=True)
@_format_option
@_threshold_option
@_max_dim_option
def cmd_diagram(input_path, output, fmt, threshold, max_dim):
    """Compute a persistence diagram and write it as JSON."""
    ok, value = _try(lambda: _diagram_for(_load_cloud(input_path, fmt), threshold, max_dim))
    if not ok:
        click.echo(f"error: {input_path}: {value}", err=True)
        sys.exit(1)
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_bytes(write_diagram_json(value))


@main.command("betti")
@click.option("--input", "input_path", type=click.Path(path_type=Path), required=True)
@click.option("--at", "at_t", type=float, default=None, help="Scale to evaluate at.")
@click.option("--curve", is_flag=True, help="Emit a sampled curve instead.")
@click.option("--samples", type=click.IntRange(min=2), default=100, show_default=True)
@_format_option
@_threshold_option
@_max_dim_option
def cmd_betti(input_path, at_t, curve, samples, fmt, threshold, max_dim):
    """Print Betti numbers: `b0,b1,b2` at a scale, or a sampled CSV curve."""
    if (at_t is None) == (not curve):
        raise click.UsageError("exactly one of --at or --curve is required")
    if at_t is not None and at_t < 0:
        raise click.BadParameter("--at must be nonnegative")

    def run():
        cloud = _load_cloud(input_path, fmt)
        fc = build_rips(distance_matrix(cloud), threshold, max_dim + 1)
        return len(cloud), fc

    ok, value = _try(run)
    if not ok:
        click.echo(f"error: {input_path}: {value}", err=True)
        sys.exit(1)
    n, fc = value
    bc = betti_curve(compute_persistence(fc), n)
    if at_t is not None:
        click.echo(",".join(str(v) for v in bc(at_t)))
    else:
        click.echo("threshold,beta0,beta1,beta2")
        top = fc.threshold
        for i in range(samples):
            t = top * i / (samples - 1)
            b0, b1, b2 = bc(t)
            click.echo(f"{_fmt(t)},{b0},{b1},{b2}")


@main.command("distance")
@click.option("--a", "path_a", type=click.Path(path_type=Path), required=True)
@click.option("--b", "path_b", type=click.Path(path_type=Path), required=True)
@click.option("--metric", type=click.Choice(["bottleneck", "wasserstein"]), required=True)
@click.option("--dim", type=click.IntRange(0, 2), default=0, show_default=True)
@click.option("--order", type=float, default=2.0, show_default=True,
              help="Order p for the Wasserstein metric.")
def cmd_distance(path_a, path_b, metric, dim, order):
    """Print the distance between two diagram JSON files."""
    if metric == "wasserstein" and order < 1:
        raise click.BadParameter("--order must be >= 1")

    def run():
        da = read_diagram_json(path_a.read_bytes())
        db = read_diagram_json(path_b.read_bytes())
        if metric == "bottleneck":
            return bottleneck_distance(da, db, dim)
        return wasserstein_distance(da, db, dim, order)

    ok, value = _try(run)
    if not ok:
        click.echo(f"error: {value}", err=True)
        sys.exit(1)
    click.echo(_fmt(value))


@main.command("oracle")
@click.option("--input", "input_path", type=click.Path(path_type=Path), required=True)
@click.option("--at", "at_t", type=float, required=True)
@_format_option
def cmd_oracle(input_path, at_t, fmt):
    """Print brute-force Betti numbers `b0,b1,b2` at a scale."""
    if at_t < 0:
        raise click.BadParameter("--at must be nonnegative")
    ok, value = _try(lambda: betti_at(_load_cloud(input_path, fmt), at_t))
    if not ok:
        click.echo(f"error: {input_path}: {value}", err=True)
        sys.exit(1)
    click.echo(",".join(str(v) for v in value))


if __name__ == "__main__":
    main()
