"""Image quality measures between a reference and a distorted image.

Every measure pools all samples of all three channels. SSIM and UIQI use
global image statistics (no sliding window); variances and covariance are
population estimates (divide by N).
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import DegenerateInput, DimensionMismatch
from .imagecore import RgbImage

PEAK = 255.0
SSIM_C1 = (0.01 * PEAK) ** 2
SSIM_C2 = (0.03 * PEAK) ** 2


def _pair(x: RgbImage, v: RgbImage) -> tuple[np.ndarray, np.ndarray]:
    if x.dims != v.dims:
        raise DimensionMismatch(f"image dimensions differ: {x.dims} vs {v.dims}")
    return x.pixels.ravel().astype(np.float64), v.pixels.ravel().astype(np.float64)


def _moments(a: np.ndarray, b: np.ndarray):
    ma, mb = a.mean(), b.mean()
    da, db = a - ma, b - mb
    return ma, mb, np.mean(da * da), np.mean(db * db), np.mean(da * db)


def mse(x: RgbImage, v: RgbImage) -> float:
    a, b = _pair(x, v)
    d = a - b
    return float(np.mean(d * d))


def mae(x: RgbImage, v: RgbImage) -> float:
    a, b = _pair(x, v)
    return float(np.mean(np.abs(a - b)))


def ssim(x: RgbImage, v: RgbImage) -> float:
    a, b = _pair(x, v)
    mx, mv, vx, vv, cxv = _moments(a, b)
    num = (2 * mx * mv + SSIM_C1) * (2 * cxv + SSIM_C2)
    den = (mx * mx + mv * mv + SSIM_C1) * (vx + vv + SSIM_C2)
    return float(num / den)


def uiqi(x: RgbImage, v: RgbImage) -> float:
    """Universal image quality index: correlation x luminance x contrast."""
    a, b = _pair(x, v)
    mx, mv, vx, vv, cxv = _moments(a, b)
    if vx == 0 or vv == 0:
        raise DegenerateInput("UIQI is undefined for a constant image")
    if mx * mx + mv * mv == 0:
        raise DegenerateInput("UIQI is undefined when both means are zero")
    sx, sv = math.sqrt(vx), math.sqrt(vv)
    correlation = cxv / (sx * sv)
    luminance = 2 * mx * mv / (mx * mx + mv * mv)
    contrast = 2 * sx * sv / (vx + vv)
    return float(correlation * luminance * contrast)


def psnr(x: RgbImage, v: RgbImage) -> float:
    """Peak signal-to-noise ratio in dB; ``inf`` for identical images."""
    return psnr_from_mse(mse(x, v))


def psnr_from_mse(value: float) -> float:
    if value == 0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / value)


def entropy(x: RgbImage) -> float:
    """Shannon entropy in bits of the 256-bin histogram of all samples."""
    counts = np.bincount(x.pixels.ravel(), minlength=256)
    p = counts[counts > 0] / x.pixels.size
    return float(-np.sum(p * np.log2(p))) + 0.0


@dataclass(frozen=True)
class QualityReport:
    mse: float
    mae: float
    ssim: float
    uiqi: float
    psnr_db: float
    entropy_bits: float

    def to_dict(self) -> dict:
        # JSON has no infinity or NaN literal
        d = asdict(self)
        if math.isinf(d["psnr_db"]):
            d["psnr_db"] = "inf"
        if math.isnan(d["uiqi"]):
            d["uiqi"] = None
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_table(self) -> str:
        rows = [
            ("MSE", f"{self.mse:.9f}"),
            ("MAE", f"{self.mae:.9f}"),
            ("SSIM", f"{self.ssim:.9f}"),
            ("UIQI", f"{self.uiqi:.9f}"),
            ("PSNR (dB)", "inf" if math.isinf(self.psnr_db) else f"{self.psnr_db:.7f}"),
            ("Entropy (bits)", f"{self.entropy_bits:.6f}"),
        ]
        width = max(len(name) for name, _ in rows)
        return "\n".join(f"{name:<{width}}  {value}" for name, value in rows)


def quality_report(x: RgbImage, v: RgbImage) -> QualityReport:
    """All measures of ``v`` against reference ``x``; entropy is that of ``v``.

    UIQI is reported as NaN when it is undefined for the inputs.
    """
    try:
        q = uiqi(x, v)
    except DegenerateInput:
        q = math.nan
    m = mse(x, v)
    return QualityReport(
        mse=m, mae=mae(x, v), ssim=ssim(x, v), uiqi=q,
        psnr_db=psnr_from_mse(m), entropy_bits=entropy(v),
    )


def format_grid(title: str, grid: dict[str, dict[str, float]], columns: list[str], fmt: str = ".9f") -> str:
    """Aligned text table: one row per image, one column per embedding variant."""
    header = ["Image"] + columns
    body = []
    for name, row in grid.items():
        cells = [name]
        for col in columns:
            value = row.get(col, math.nan)
            cells.append("inf" if math.isinf(value) else format(value, fmt))
        body.append(cells)
    widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
    lines = [title, "  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.ljust(w) for c, w in zip(cells, widths)) for cells in body]
    return "\n".join(lines)
