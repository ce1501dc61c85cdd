"""Corpus benchmark: distortion of each embedding variant plus a seeded forgery-detection run."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .attacks import random_tamper
from .crypto import PatientRecord
from .embedder import BitPlane, embed
from .imagecore import RgbImage
from .metrics import QualityReport, format_grid, quality_report
from .verifier import fdr_assess, verify

CSV_COLUMNS = [
    "image", "height", "width", "plane",
    "mae", "mse", "ssim", "uiqi", "psnr_db", "entropy_bits",
    "trials", "block_rows", "block_cols", "detected", "detection_rate",
    "correlation_min", "correlation_mean", "tbsi_fraction", "tbsi_percent",
]


@dataclass(frozen=True)
class BenchRow:
    image: str
    height: int
    width: int
    plane: BitPlane
    quality: QualityReport
    trials: int
    block: tuple[int, int]
    detected: int
    correlation_min: float
    correlation_mean: float
    tbsi_fraction: float

    @property
    def detection_rate(self) -> float:
        return self.detected / self.trials if self.trials else math.nan

    def to_dict(self) -> dict:
        return {
            "image": self.image,
            "height": self.height,
            "width": self.width,
            "plane": self.plane.label,
            **self.quality.to_dict(),
            "trials": self.trials,
            "block_rows": self.block[0],
            "block_cols": self.block[1],
            "detected": self.detected,
            "detection_rate": self.detection_rate,
            "correlation_min": self.correlation_min,
            "correlation_mean": self.correlation_mean,
            "tbsi_fraction": self.tbsi_fraction,
            "tbsi_percent": 100.0 * self.tbsi_fraction,
        }


def trial_seeds(seed: int, image_index: int, plane: BitPlane, trials: int) -> list[int]:
    state = np.random.SeedSequence([seed, image_index, plane.bit_index]).generate_state(trials)
    return [int(s) for s in state]


def bench_image(name: str, image: RgbImage, index: int, record: PatientRecord,
                plane: BitPlane, seed: int, block: tuple[int, int], trials: int) -> BenchRow:
    marked = embed(image, record, plane).image
    quality = quality_report(image, marked)

    detected = 0
    correlations = []
    for s in trial_seeds(seed, index, plane, trials):
        suspect, spec = random_tamper(marked, block, s)
        if verify(suspect, record, plane).tampered:
            detected += 1
        correlations.append(fdr_assess(marked, suspect, spec.area).correlation)
    return BenchRow(
        image=name, height=image.height, width=image.width, plane=plane, quality=quality,
        trials=trials, block=block, detected=detected,
        correlation_min=min(correlations) if correlations else math.nan,
        correlation_mean=float(np.mean(correlations)) if correlations else math.nan,
        tbsi_fraction=block[0] * block[1] / (image.height * image.width),
    )


def run_bench(corpus: list[tuple[str, RgbImage]], record: PatientRecord, seed: int = 0,
              block: tuple[int, int] = (4, 4), trials: int = 25) -> list[BenchRow]:
    rows = []
    for index, (name, image) in enumerate(corpus):
        for plane in BitPlane:
            rows.append(bench_image(name, image, index, record, plane, seed, block, trials))
    return rows


def _cell(value) -> str:
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return "inf" if math.isinf(value) else f"{value:.10f}"
    return "" if value is None else str(value)


def to_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        d = row.to_dict()
        writer.writerow([_cell(d[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def to_tables(rows: list[BenchRow]) -> str:
    """Text tables in the per-metric layout: rows are images, columns are variants."""
    columns = [p.label for p in BitPlane]
    sections = []
    metrics = [
        ("Mean absolute error", lambda r: r.quality.mae, ".4f"),
        ("Mean square error", lambda r: r.quality.mse, ".9f"),
        ("SSIM", lambda r: r.quality.ssim, ".9f"),
        ("UIQI", lambda r: r.quality.uiqi, ".9f"),
        ("Peak signal to noise ratio (dB)", lambda r: r.quality.psnr_db, ".8f"),
        ("Detection rate", lambda r: r.detection_rate, ".4f"),
        ("Minimum correlation vs untampered", lambda r: r.correlation_min, ".10f"),
    ]
    for title, getter, fmt in metrics:
        grid: dict[str, dict[str, float]] = {}
        for r in rows:
            grid.setdefault(f"{r.image}/{r.width}*{r.height}", {})[r.plane.label] = getter(r)
        sections.append(format_grid(title, grid, columns, fmt))
    return "\n\n".join(sections)
