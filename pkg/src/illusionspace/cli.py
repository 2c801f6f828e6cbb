"""Command-line front end.

Exit codes: 0 success; 1 unreadable input or invalid arguments; 2 the fit ran
but some rows had issues (the model entry is still written); 3 a query needed
angle incongruence for a 0-degree physical object.
"""

from __future__ import annotations

import io
import json
import os
import sys
import warnings
from pathlib import Path

import click

from .documents import (
    canonical_json,
    check_document,
    fit_report_document,
    inverse_document,
    schedule_document,
    space_document,
)
from .errors import (
    ExtrapolationWarning,
    FormatError,
    IllusionSpaceError,
    ZeroAngleUnsupportedError,
)
from .model import GridSpec, build_illusion_space, contains, inverse_query
from .pipeline import fit_study
from .store import ModelStore, input_digest
from .study import ObjectSpec, ProtocolEntry, generate_conditions, parse_trials

EXIT_DATA_ISSUES = 2
EXIT_ZERO_ANGLE = 3

DEFAULT_STORE = "illusion-store"


def _resolve_store(store_dir: str) -> str:
    # the environment variable wins over the flag so deployments can pin a store
    return os.environ.get("ILLUSION_STORE") or store_dir


def _fail(err: IllusionSpaceError, exit_code: int) -> None:
    click.echo(f"error: {err.code}: {err}", err=True)
    sys.exit(exit_code)


def _echo_doc(doc: dict) -> None:
    click.echo(canonical_json(doc))


@click.group()
@click.version_option(package_name="illusionspace")
def main():
    """Psychometric thresholds and illusion-space geometry for VR grasping."""


@main.command()
@click.argument("trials", type=click.Path(dir_okay=False, path_type=Path))
@click.argument("model_id")
@click.option(
    "--store",
    "store_dir",
    default=DEFAULT_STORE,
    show_default=True,
    help="Model store directory (the ILLUSION_STORE environment variable overrides this).",
)
def fit(trials: Path, model_id: str, store_dir: str):
    """Fit thresholds from a trial CSV and append the model to the store."""
    try:
        raw = trials.read_bytes()
    except OSError as err:
        click.echo(f"error: unreadable input: {err}", err=True)
        sys.exit(1)
    try:
        records, issues = parse_trials(io.StringIO(raw.decode("utf-8")))
    except (FormatError, UnicodeDecodeError) as err:
        click.echo(f"error: format_error: {err}", err=True)
        sys.exit(1)
    if not records:
        click.echo("error: empty_dataset: no valid trials in the file", err=True)
        sys.exit(1)

    report = fit_study(records)
    digest = input_digest(raw)
    store = ModelStore(_resolve_store(store_dir))
    try:
        entry = fit_report_document(
            report, model_id, digest, issues, len(records), rounded=False
        )
        store.write(model_id, entry)
    except (IllusionSpaceError, ValueError) as err:
        click.echo(f"error: {getattr(err, 'code', 'invalid_argument')}: {err}", err=True)
        sys.exit(1)

    _echo_doc(fit_report_document(report, model_id, digest, issues, len(records)))
    if issues:
        sys.exit(EXIT_DATA_ISSUES)


def _space_csv(doc: dict) -> str:
    lines = ["vertex,size_incongruence,angle_incongruence,virtual_size_cm,virtual_angle_deg"]
    for label in sorted(doc["vertices"]):
        v = doc["vertices"][label]
        lines.append(
            f"{label},{v['size_incongruence']!r},{v['angle_incongruence']!r},"
            f"{v['virtual_size_cm']!r},{v['virtual_angle_deg']!r}"
        )
    return "\n".join(lines)


@main.command()
@click.argument("s_p", type=float)
@click.argument("a_p", type=float)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json",
              show_default=True)
def space(s_p: float, a_p: float, fmt: str):
    """Print the illusion-space quadrilateral of a physical object."""
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ExtrapolationWarning)
            doc = space_document(build_illusion_space(s_p, a_p))
    except ZeroAngleUnsupportedError as err:
        _fail(err, EXIT_ZERO_ANGLE)
    except (IllusionSpaceError, ValueError) as err:
        click.echo(f"error: {getattr(err, 'code', 'invalid_argument')}: {err}", err=True)
        sys.exit(1)
    if fmt == "csv":
        click.echo(_space_csv(doc))
    else:
        _echo_doc(doc)


@main.command()
@click.argument("s_p", type=float)
@click.argument("a_p", type=float)
@click.argument("virtual_size", type=float)
@click.argument("virtual_angle", type=float)
def check(s_p: float, a_p: float, virtual_size: float, virtual_angle: float):
    """Check whether a virtual shape sits inside a physical object's space."""
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ExtrapolationWarning)
            report = contains(s_p, a_p, virtual_size, virtual_angle)
    except ZeroAngleUnsupportedError as err:
        _fail(err, EXIT_ZERO_ANGLE)
    except (IllusionSpaceError, ValueError) as err:
        click.echo(f"error: {getattr(err, 'code', 'invalid_argument')}: {err}", err=True)
        sys.exit(1)
    _echo_doc(check_document(report, s_p, a_p, virtual_size, virtual_angle))


@main.command()
@click.argument("virtual_size", type=float)
@click.argument("virtual_angle", type=float)
@click.option("--grid-step-size", type=float, default=0.1, show_default=True,
              help="Physical-size grid resolution in cm.")
@click.option("--grid-step-angle", type=float, default=0.25, show_default=True,
              help="Physical-angle grid resolution in degrees.")
@click.option("--size-min", type=float, default=3.0, show_default=True)
@click.option("--size-max", type=float, default=9.0, show_default=True)
@click.option("--angle-min", type=float, default=0.0, show_default=True,
              help="Lower angle edge; non-positive angles are excluded from the grid.")
@click.option("--angle-max", type=float, default=16.0, show_default=True)
def inverse(virtual_size, virtual_angle, grid_step_size, grid_step_angle,
            size_min, size_max, angle_min, angle_max):
    """List physical objects whose illusion space contains a virtual shape."""
    grid = GridSpec(size_min, size_max, grid_step_size, angle_min, angle_max, grid_step_angle)
    try:
        region = inverse_query(virtual_size, virtual_angle, grid)
    except (IllusionSpaceError, ValueError) as err:
        click.echo(f"error: {getattr(err, 'code', 'invalid_argument')}: {err}", err=True)
        sys.exit(1)
    _echo_doc(inverse_document(region))


def _load_protocol(path: Path) -> list[ProtocolEntry]:
    data = json.loads(path.read_text(encoding="utf-8"))
    entries = []
    for raw in data["objects"]:
        entries.append(
            ProtocolEntry(
                raw["object_id"],
                ObjectSpec(float(raw["physical_size_cm"]), float(raw["physical_angle_deg"])),
                tuple(float(s) for s in raw["virtual_sizes_cm"]),
                tuple(float(a) for a in raw["virtual_angles_deg"]),
            )
        )
    return entries


@main.command()
@click.argument("config", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--seed", type=int, required=True, help="Shuffle seed; same seed, same schedule.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Write the schedule here instead of stdout.")
def conditions(config: Path, seed: int, out_path: Path | None):
    """Generate a seeded condition schedule from a protocol config."""
    try:
        entries = _load_protocol(config)
        schedule = generate_conditions(entries, seed)
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as err:
        click.echo(f"error: invalid_config: {err}", err=True)
        sys.exit(1)
    text = canonical_json(schedule_document(schedule))
    if out_path is None:
        click.echo(text)
    else:
        out_path.write_text(text + "\n", encoding="utf-8")
        click.echo(f"wrote {len(schedule.conditions)} conditions to {out_path}")


@main.command()
@click.option("--bind", default="127.0.0.1:8000", show_default=True, help="host:port to listen on.")
@click.option(
    "--store",
    "store_dir",
    default=DEFAULT_STORE,
    show_default=True,
    help="Model store directory (the ILLUSION_STORE environment variable overrides this).",
)
@click.option("--assets", type=click.Path(file_okay=False, path_type=Path), default=None,
              help="Directory with the built explorer UI; served at /.")
def serve(bind: str, store_dir: str, assets: Path | None):
    """Serve the HTTP API (and, if built, the explorer UI)."""
    import uvicorn

    from .api import create_app

    host, _, port_text = bind.rpartition(":")
    if not host or not port_text.isdigit():
        click.echo(f"error: invalid_argument: --bind must look like host:port, got {bind!r}",
                   err=True)
        sys.exit(1)
    app = create_app(store_root=_resolve_store(store_dir), assets_dir=assets)
    uvicorn.run(app, host=host, port=int(port_text))


if __name__ == "__main__":
    main()
