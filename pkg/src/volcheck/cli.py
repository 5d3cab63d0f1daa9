"""volcheck command line: run the threefold test, summarize, cross-check shapes."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import mpmath

from . import dilog
from .census import CensusError, load_census, shape_residual
from .pipeline import REPORT_FILENAME, RunConfig, run_pipeline


@click.group()
def main():
    """Volume-conjecture verification over a cusped-manifold census."""


@main.command()
@click.option("--census", "census_path", required=True, type=click.Path(exists=True))
@click.option("--only", default=None, help="comma-separated manifold names")
@click.option("--up-to-stage", type=click.IntRange(1, 3), default=3)
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
@click.option("--out", "out_dir", default="out", type=click.Path())
@click.option("--resume", is_flag=True, default=False)
def run(census_path, only, up_to_stage, config_path, out_dir, resume):
    """Run tests 1 -> 2 -> 3 over a census file (JSONL, optionally .gz)."""
    try:
        census = load_census(census_path)
    except (CensusError, OSError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)
    cfg = RunConfig.from_file(config_path) if config_path else RunConfig()
    if up_to_stage != cfg.up_to_stage:
        cfg = RunConfig(**{**cfg.__dict__, "up_to_stage": up_to_stage})
    names = set(only.split(",")) if only else None

    def progress(obj):
        click.echo(
            f"{obj['name']}: stage {obj['stage']} {obj['verdict']}"
            + (f" (k={obj['k']})" if "k" in obj else "")
        )

    summary = run_pipeline(
        census, cfg, out_dir, only=names, resume=resume, progress=progress
    )
    click.echo(f"total {summary.total}, counts {summary.counts}")


@main.command()
@click.option("--out", "out_dir", default="out", type=click.Path())
def summary(out_dir):
    """Print the summary block of an existing report."""
    path = Path(out_dir) / REPORT_FILENAME
    try:
        with open(path, encoding="utf-8") as fh:
            rep = json.load(fh)
    except OSError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)
    click.echo(json.dumps({
        "summary": rep["summary"],
        "paper_comparison": rep["paper_comparison"],
    }, indent=1, sort_keys=True))


@main.command("check-shapes")
@click.option("--census", "census_path", required=True, type=click.Path(exists=True))
@click.option("--tol", default="1e-9", help="volume agreement tolerance")
def check_shapes(census_path, tol):
    """For records with shapes: residuals of the gluing polynomials and the
    dilogarithm-sum volume against the recorded volume."""
    try:
        census = load_census(census_path)
    except (CensusError, OSError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)
    tol = mpmath.mpf(tol)
    bad = 0
    checked = 0
    for rec in census:
        if rec.shapes is None:
            continue
        checked += 1
        res = shape_residual(rec)
        vol = dilog.rep_volume(rec.shapes_mpc()).value
        dv = abs(vol - rec.volume_mpf())
        ok = res < mpmath.mpf("1e-9") and dv < tol
        if not ok:
            bad += 1
        click.echo(
            f"{rec.name}: gluing residual {mpmath.nstr(res, 3)}, "
            f"|sum D - V| {mpmath.nstr(dv, 3)} {'ok' if ok else 'MISMATCH'}"
        )
    click.echo(f"checked {checked} records with shapes, {bad} mismatches")


if __name__ == "__main__":
    main()
