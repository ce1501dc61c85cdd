"""Tamper simulation.

Two attack kinds are modelled: overwriting a rectangular region of one
channel with a constant, and copying the same region from another channel.
:func:`random_tamper` draws from the four patterns seen in practice
(red <- blue, blue <- green, red := 1, red := 255) with a seeded generator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import RegionOutOfBounds
from .imagecore import RgbImage

CONSTANT_OVERWRITE = "constant_overwrite"
CROSS_CHANNEL_COPY = "cross_channel_copy"
CHANNELS = "RGB"

# (kind, target, source, value)
PATTERNS = (
    (CROSS_CHANNEL_COPY, "R", "B", None),
    (CROSS_CHANNEL_COPY, "B", "G", None),
    (CONSTANT_OVERWRITE, "R", None, 1),
    (CONSTANT_OVERWRITE, "R", None, 255),
)


@dataclass(frozen=True)
class TamperSpec:
    kind: str
    target_channel: str
    region: tuple[int, int, int, int]  # row_start, col_start, rows, cols
    source_channel: Optional[str] = None
    value: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "region", tuple(int(v) for v in self.region))
        if self.target_channel not in CHANNELS:
            raise ValueError(f"target channel must be one of R, G, B, got {self.target_channel!r}")
        if self.kind == CONSTANT_OVERWRITE:
            if self.value is None or not 0 <= self.value <= 255:
                raise ValueError(f"constant overwrite needs a value in [0, 255], got {self.value!r}")
        elif self.kind == CROSS_CHANNEL_COPY:
            if self.source_channel not in CHANNELS:
                raise ValueError(f"source channel must be one of R, G, B, got {self.source_channel!r}")
            if self.source_channel == self.target_channel:
                raise ValueError("source and target channel must differ")
        else:
            raise ValueError(f"unknown tamper kind {self.kind!r}")
        if self.region[2] < 1 or self.region[3] < 1:
            raise ValueError(f"region must be at least 1x1, got {self.region}")

    @property
    def area(self) -> int:
        return self.region[2] * self.region[3]

    def check_bounds(self, image: RgbImage) -> None:
        r0, c0, rows, cols = self.region
        if r0 < 0 or c0 < 0 or r0 + rows > image.height or c0 + cols > image.width:
            raise RegionOutOfBounds(
                f"region {self.region} does not fit a {image.height}x{image.width} image"
            )

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "target_channel": self.target_channel, "region": list(self.region)}
        if self.kind == CONSTANT_OVERWRITE:
            d["value"] = self.value
        else:
            d["source_channel"] = self.source_channel
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "TamperSpec":
        return cls(
            kind=d["kind"],
            target_channel=d["target_channel"],
            region=tuple(d["region"]),
            source_channel=d.get("source_channel"),
            value=d.get("value"),
        )


def apply_tamper(image: RgbImage, spec: TamperSpec) -> RgbImage:
    spec.check_bounds(image)
    r0, c0, rows, cols = spec.region
    window = (slice(r0, r0 + rows), slice(c0, c0 + cols))
    target = CHANNELS.index(spec.target_channel)
    out = image.pixels.copy()
    if spec.kind == CONSTANT_OVERWRITE:
        out[window + (target,)] = spec.value
    else:
        out[window + (target,)] = image.pixels[window + (CHANNELS.index(spec.source_channel),)]
    return RgbImage(out)


def random_spec(height: int, width: int, block: tuple[int, int], rng: np.random.Generator) -> TamperSpec:
    rows, cols = block
    if rows < 1 or cols < 1 or rows > height or cols > width:
        raise RegionOutOfBounds(f"block {rows}x{cols} does not fit a {height}x{width} image")
    r0 = int(rng.integers(0, height - rows + 1))
    c0 = int(rng.integers(0, width - cols + 1))
    kind, target, source, value = PATTERNS[int(rng.integers(len(PATTERNS)))]
    return TamperSpec(kind, target, (r0, c0, rows, cols), source_channel=source, value=value)


def random_tamper(image: RgbImage, block: tuple[int, int], seed: int) -> tuple[RgbImage, TamperSpec]:
    """Apply one randomly placed attack of a random kind; deterministic in ``seed``."""
    spec = random_spec(image.height, image.width, block, np.random.default_rng(seed))
    return apply_tamper(image, spec), spec
