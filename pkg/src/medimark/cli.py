"""Command-line interface.

Exit codes: 0 success / clean verification, 1 tamper detected,
2 usage, I/O or format error.
"""

from __future__ import annotations

import json
import logging
import os
import re
import sys
from pathlib import Path
from typing import Optional

import click

from . import bench as bench_mod
from .attacks import CONSTANT_OVERWRITE, CROSS_CHANNEL_COPY, TamperSpec, apply_tamper, random_tamper
from .crypto import PatientRecord
from .embedder import BitPlane, embed
from .errors import MedimarkError
from .files import PLANE_TEXT_KEY, atomic_write_bytes, output_format, read_image, save_image
from .metrics import quality_report
from .verifier import verify

log = logging.getLogger("medimark")

EXIT_OK = 0
EXIT_TAMPERED = 1
EXIT_ERROR = 2

_BLOCK = re.compile(r"^\s*(\d+)\s*[xX*]\s*(\d+)\s*$")
_CORPUS_SUFFIXES = {".png", ".bmp", ".tif", ".tiff", ".ppm", ".jpg", ".jpeg"}


class CliError(click.ClickException):
    exit_code = EXIT_ERROR


def _setup_logging() -> None:
    level = os.environ.get("MEDIMARK_LOG", "WARNING").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _parse_plane(ctx, param, value):
    if value is None:
        return None
    try:
        return BitPlane.parse(value)
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from None


def _parse_block(ctx, param, value):
    if value is None:
        return None
    m = _BLOCK.match(value)
    if not m or int(m.group(1)) < 1 or int(m.group(2)) < 1:
        raise click.BadParameter(f"expected RxC with positive integers, got {value!r}")
    return int(m.group(1)), int(m.group(2))


def _read_record(path: Path) -> PatientRecord:
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read patient file {path}: {exc}") from exc
    if not data:
        log.warning("patient file %s is empty; the watermark key carries no patient information", path)
    return PatientRecord(data)


def _load(path: Path):
    try:
        return read_image(path)
    except MedimarkError as exc:
        raise CliError(str(exc)) from exc


def _check_output(path: Path) -> None:
    try:
        output_format(path)
    except MedimarkError as exc:
        raise CliError(str(exc)) from exc
    if not path.parent.exists():
        raise CliError(f"output directory {path.parent} does not exist")


def _save(image, path: Path, plane_label: Optional[str] = None) -> None:
    try:
        save_image(image, path, plane_label)
    except (MedimarkError, OSError) as exc:
        raise CliError(f"cannot write {path}: {exc}") from exc


_input = click.option("--input", "input_path", required=True,
                      type=click.Path(exists=True, dir_okay=False, path_type=Path), help="Input image.")
_patient = click.option("--patient-file", required=True,
                        type=click.Path(exists=True, dir_okay=False, path_type=Path),
                        help="File whose raw bytes are the patient record.")
_report = click.option("--report", "report_format", type=click.Choice(["json", "table"]),
                       default="table", show_default=True, help="Report format on stdout.")


def _plane_option(default: Optional[str]):
    return click.option("--bit-plane", "plane", callback=_parse_plane, default=default,
                        show_default=default is not None, metavar="{lsb|bit2|bit3}",
                        help="Bit-plane of the red channel that carries the watermark.")


@click.group()
def cli():
    """Fragile watermarking and tamper localization for RGB medical images."""
    _setup_logging()


@cli.command("embed")
@_input
@click.option("--output", "output_path", required=True, type=click.Path(dir_okay=False, path_type=Path),
              help="Watermarked image (.png, .bmp, .tif, .ppm).")
@_patient
@_plane_option("lsb")
@_report
def cmd_embed(input_path, output_path, patient_file, plane, report_format):
    """Embed the patient-keyed watermark into an image."""
    _check_output(output_path)
    record = _read_record(patient_file)
    image, _ = _load(input_path)
    marked = embed(image, record, plane).image
    _save(marked, output_path, plane.label)
    log.info("embedded %s watermark into %s -> %s", plane.label, input_path, output_path)

    report = quality_report(image, marked)
    if report_format == "json":
        click.echo(json.dumps({"bit_plane": plane.label, "quality": report.to_dict()}, indent=2))
    else:
        click.echo(f"bit-plane: {plane.label}")
        click.echo(report.to_table())


@cli.command("verify")
@_input
@_patient
@_plane_option(None)
@click.option("--map", "map_path", type=click.Path(dir_okay=False, path_type=Path),
              help="Write the mismatch map as a 1-bit PNG (white = mismatch).")
@_report
@click.pass_context
def cmd_verify(ctx, input_path, patient_file, plane, map_path, report_format):
    """Check an image for tampering. Exit 0 when clean, 1 when tampered."""
    if map_path is not None and map_path.suffix.lower() != ".png":
        raise CliError(f"{map_path}: mismatch map must be written as .png")
    record = _read_record(patient_file)
    image, info = _load(input_path)
    if plane is None:
        stored = info.get(PLANE_TEXT_KEY)
        plane = BitPlane.parse(stored) if stored in {"lsb", "bit2", "bit3"} else BitPlane.LSB
        log.info("using bit-plane %s (%s)", plane.label, "from file metadata" if stored else "default")

    report = verify(image, record, plane)
    if map_path is not None:
        try:
            atomic_write_bytes(map_path, report.to_png_bytes())
        except OSError as exc:
            raise CliError(f"cannot write {map_path}: {exc}") from exc

    if report_format == "json":
        click.echo(json.dumps({"bit_plane": plane.label, **report.to_dict()}, indent=2))
    else:
        status = "TAMPERED" if report.tampered else "OK"
        click.echo(f"{status}: {report.mismatch_count} of {report.total_pixels} pixels mismatch "
                   f"({100 * report.mismatch_fraction:.4f}%), bit-plane {plane.label}")
        for box in report.bounding_boxes[:20]:
            click.echo("  region rows {}-{} cols {}-{}".format(box[0], box[2], box[1], box[3]))
        if len(report.bounding_boxes) > 20:
            click.echo(f"  ... {len(report.bounding_boxes) - 20} more regions")
    ctx.exit(EXIT_TAMPERED if report.tampered else EXIT_OK)


@cli.command("attack")
@_input
@click.option("--output", "output_path", required=True, type=click.Path(dir_okay=False, path_type=Path))
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True,
              help="Seed for a random attack (ignored with --region).")
@click.option("--block", callback=_parse_block, default="2x2", show_default=True, metavar="RxC",
              help="Random attack block size.")
@click.option("--region", help="Explicit region ROW,COL,ROWS,COLS (disables random placement).")
@click.option("--kind", type=click.Choice([CONSTANT_OVERWRITE, CROSS_CHANNEL_COPY]))
@click.option("--target", type=click.Choice(list("RGB")))
@click.option("--source", type=click.Choice(list("RGB")))
@click.option("--value", type=click.IntRange(0, 255))
def cmd_attack(input_path, output_path, seed, block, region, kind, target, source, value):
    """Apply a simulated tamper and print its description as JSON."""
    _check_output(output_path)
    image, _ = _load(input_path)
    try:
        if region is not None:
            try:
                coords = tuple(int(v) for v in region.split(","))
            except ValueError:
                coords = ()
            if len(coords) != 4:
                raise click.BadParameter("expected ROW,COL,ROWS,COLS", param_hint="--region")
            if kind is None or target is None:
                raise click.UsageError("--region requires --kind and --target")
            spec = TamperSpec(kind, target, coords, source_channel=source, value=value)
            tampered = apply_tamper(image, spec)
        else:
            tampered, spec = random_tamper(image, block, seed)
    except (MedimarkError, ValueError) as exc:
        raise CliError(str(exc)) from exc
    _save(tampered, output_path)
    click.echo(spec.to_json())


@cli.command("metrics")
@_input
@click.option("--other", "other_path", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Image to compare against --input.")
@_report
def cmd_metrics(input_path, other_path, report_format):
    """Quality measures of --other against the reference --input."""
    reference, _ = _load(input_path)
    other, _ = _load(other_path)
    if reference.dims != other.dims:
        raise CliError(f"image sizes differ: {reference.dims} vs {other.dims}")
    report = quality_report(reference, other)
    click.echo(report.to_json() if report_format == "json" else report.to_table())


@cli.command("bench")
@click.option("--corpus", required=True, type=click.Path(exists=True, file_okay=False, path_type=Path),
              help="Directory of images.")
@click.option("--patient-file", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Patient record (default: a fixed built-in record).")
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--block", callback=_parse_block, default="4x4", show_default=True, metavar="RxC")
@click.option("--trials", type=click.IntRange(min=0), default=25, show_default=True,
              help="Seeded tampers per image and bit-plane.")
@click.option("--output", "output_path", type=click.Path(dir_okay=False, path_type=Path),
              help="Write the results grid as CSV.")
@_report
def cmd_bench(corpus, patient_file, seed, block, trials, output_path, report_format):
    """Quality grid for every bit-plane variant and a forgery-detection run over a corpus."""
    files = sorted(p for p in corpus.iterdir() if p.is_file() and p.suffix.lower() in _CORPUS_SUFFIXES)
    if not files:
        raise CliError(f"no images found in {corpus}")
    record = _read_record(patient_file) if patient_file else PatientRecord(b"medimark-bench")
    images = [(p.stem, _load(p)[0]) for p in files]

    rows = bench_mod.run_bench(images, record, seed=seed, block=block, trials=trials)
    if output_path is not None:
        try:
            atomic_write_bytes(output_path, bench_mod.to_csv(rows).encode("utf-8"))
        except OSError as exc:
            raise CliError(f"cannot write {output_path}: {exc}") from exc
    if report_format == "json":
        click.echo(json.dumps([r.to_dict() for r in rows], indent=2))
    else:
        click.echo(bench_mod.to_tables(rows))


def main(argv=None) -> None:
    try:
        cli.main(args=argv, prog_name="medimark")
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else (0 if exc.code is None else EXIT_ERROR)
        sys.exit(code if code in (EXIT_OK, EXIT_TAMPERED, EXIT_ERROR) else EXIT_ERROR)
    except Exception as exc:  # noqa: BLE001
        log.debug("unhandled error", exc_info=True)
        click.echo(f"Error: {exc}", err=True)
        sys.exit(EXIT_ERROR)


if __name__ == "__main__":
    main()
