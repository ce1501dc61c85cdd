"""Watermark synthesis and bit-plane embedding.

The watermark is the AES-128-ECB encryption of the (zero-padded) blue
channel under a key derived from the patient record. One bit-plane of the
cipher, cropped back to the image size, replaces the same bit-plane of the
red channel. Green and blue pass through untouched, so a verifier holding
the record can rebuild the watermark from the received image alone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .crypto import PatientRecord, WatermarkKey, derive_key, encrypt_channel
from .errors import DimensionMismatch
from .imagecore import Channel, RgbImage, compose, crop, decompose, pad_to_multiple_of_8


class BitPlane(enum.Enum):
    LSB = 0
    BIT2 = 1
    BIT3 = 2

    @property
    def bit_index(self) -> int:
        return self.value

    @property
    def label(self) -> str:
        return ("lsb", "bit2", "bit3")[self.value]

    @classmethod
    def parse(cls, name: str) -> "BitPlane":
        """Parse ``lsb``, ``bit2`` or ``bit3`` (case-insensitive)."""
        try:
            return {"lsb": cls.LSB, "bit2": cls.BIT2, "bit3": cls.BIT3}[name.strip().lower()]
        except KeyError:
            raise ValueError(f"unknown bit-plane {name!r}; expected lsb, bit2 or bit3") from None


@dataclass(frozen=True)
class WatermarkedImage:
    image: RgbImage
    plane: BitPlane


def substitute_bitplane(red: Channel, cipher: Channel, plane: BitPlane) -> Channel:
    if red.dims != cipher.dims:
        raise DimensionMismatch(f"red {red.dims} and cipher {cipher.dims} differ")
    mask = np.uint8(1 << plane.bit_index)
    return Channel((red.data & ~mask) | (cipher.data & mask))


def watermark_cipher(blue: Channel, key: WatermarkKey) -> Channel:
    """Encrypt the padded blue channel and crop the result back to the blue channel's size."""
    return crop(encrypt_channel(key, pad_to_multiple_of_8(blue)), blue.dims)


def embed(image: RgbImage, record: PatientRecord, plane: BitPlane = BitPlane.LSB) -> WatermarkedImage:
    red, green, blue = decompose(image)
    cipher = watermark_cipher(blue, derive_key(record))
    marked = compose(substitute_bitplane(red, cipher, plane), green, blue)
    return WatermarkedImage(marked, plane)
