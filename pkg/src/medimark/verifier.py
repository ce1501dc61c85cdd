"""Tamper detection and localization.

Green never enters the key, the cipher or the embedding, so edits to the
green channel are invisible to :func:`verify`. :func:`fdr_assess` still
reports them when the original is available.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field

import numpy as np
from PIL import Image
from scipy import ndimage

from .crypto import PatientRecord, derive_key
from .embedder import BitPlane, watermark_cipher
from .errors import DegenerateInput, DimensionMismatch
from .imagecore import Channel, RgbImage, decompose

BoundingBox = tuple[int, int, int, int]

# 4-connectivity
_STRUCTURE = ndimage.generate_binary_structure(2, 1)


@dataclass(frozen=True, eq=False)
class MismatchReport:
    map: np.ndarray
    bounding_boxes: list[BoundingBox] = field(default_factory=list)

    @property
    def mismatch_count(self) -> int:
        return int(np.count_nonzero(self.map))

    @property
    def total_pixels(self) -> int:
        return int(self.map.size)

    @property
    def tampered(self) -> bool:
        return self.mismatch_count > 0

    @property
    def mismatch_fraction(self) -> float:
        return self.mismatch_count / self.total_pixels

    def to_dict(self) -> dict:
        rows, cols = self.map.shape
        return {
            "tampered": self.tampered,
            "mismatch_count": self.mismatch_count,
            "total_pixels": self.total_pixels,
            "mismatch_fraction": self.mismatch_fraction,
            "height": rows,
            "width": cols,
            "bounding_boxes": [list(box) for box in self.bounding_boxes],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_image(self) -> Image.Image:
        """1-bit image, white where the watermark bit disagrees."""
        return Image.fromarray(self.map).convert("1")

    def to_png_bytes(self) -> bytes:
        buf = io.BytesIO()
        self.to_image().save(buf, format="PNG")
        return buf.getvalue()


@dataclass(frozen=True)
class FdrResult:
    correlation: float
    detected: bool
    tampered_block_ratio: float

    @property
    def tampered_block_percent(self) -> float:
        return 100.0 * self.tampered_block_ratio

    def to_dict(self) -> dict:
        return {
            "correlation": self.correlation,
            "detected": self.detected,
            "tbsi_fraction": self.tampered_block_ratio,
            "tbsi_percent": self.tampered_block_percent,
        }


def extract_bitplane(c: Channel, plane: BitPlane) -> np.ndarray:
    return ((c.data >> plane.bit_index) & 1).astype(bool)


def bounding_boxes(mask: np.ndarray) -> list[BoundingBox]:
    """Inclusive (row_min, col_min, row_max, col_max) of each 4-connected region, in label order."""
    labels, count = ndimage.label(mask, structure=_STRUCTURE)
    boxes = []
    for rows, cols in ndimage.find_objects(labels)[:count]:
        boxes.append((rows.start, cols.start, rows.stop - 1, cols.stop - 1))
    return boxes


def verify(image: RgbImage, record: PatientRecord, plane: BitPlane = BitPlane.LSB) -> MismatchReport:
    """Rebuild the watermark from the received blue channel and compare it with the red bit-plane."""
    red, _, blue = decompose(image)
    cipher = watermark_cipher(blue, derive_key(record))
    mismatch = extract_bitplane(red, plane) != extract_bitplane(cipher, plane)
    mismatch.setflags(write=False)
    return MismatchReport(mismatch, bounding_boxes(mismatch))


def pearson_correlation(a: RgbImage, b: RgbImage) -> float:
    """Pearson correlation over all samples of all three channels."""
    if a.dims != b.dims:
        raise DimensionMismatch(f"image dimensions differ: {a.dims} vs {b.dims}")
    x = a.pixels.ravel().astype(np.float64)
    y = b.pixels.ravel().astype(np.float64)
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = np.dot(dx, dx)
    syy = np.dot(dy, dy)
    if sxx == 0 or syy == 0:
        raise DegenerateInput("correlation is undefined for a constant image")
    r = float(np.dot(dx, dy) / np.sqrt(sxx * syy))
    return max(-1.0, min(1.0, r))


def fdr_assess(original: RgbImage, suspect: RgbImage, block_area: int) -> FdrResult:
    """Correlation-based forgery assessment against a known original."""
    correlation = pearson_correlation(original, suspect)
    ratio = block_area / (original.width * original.height)
    if not 0 <= ratio <= 1:
        raise ValueError(f"block area {block_area} outside [0, image area]")
    detected = not np.array_equal(original.pixels, suspect.pixels)
    return FdrResult(correlation, detected, ratio)
