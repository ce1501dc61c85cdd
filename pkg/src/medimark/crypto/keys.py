"""Patient-record key derivation and channel encryption."""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatch
from ..imagecore import Channel
from .aes import BLOCK_SIZE, ecb_encrypt
from .sha1 import sha1

KEY_HEX_CHARS = 16
_HEX_FORM = re.compile(r"[0-9A-F]{16}")


@dataclass(frozen=True)
class PatientRecord:
    """Opaque patient/session identifier; the sole key material."""

    data: bytes

    @classmethod
    def from_text(cls, text: str) -> "PatientRecord":
        return cls(text.encode("utf-8"))


@dataclass(frozen=True)
class WatermarkKey:
    """16 uppercase hex characters, used as 16 ASCII key bytes."""

    hex_form: str

    def __post_init__(self):
        if not _HEX_FORM.fullmatch(self.hex_form):
            raise ValueError(f"key must be 16 uppercase hex characters, got {self.hex_form!r}")

    @property
    def key_bytes(self) -> bytes:
        return self.hex_form.encode("ascii")


def derive_key(record: PatientRecord) -> WatermarkKey:
    return WatermarkKey(sha1(record.data).hex().upper()[:KEY_HEX_CHARS])


def encrypt_channel(key: WatermarkKey, padded: Channel) -> Channel:
    """AES-128-ECB over the row-major samples of ``padded``, reshaped back to its dims."""
    if padded.data.size % BLOCK_SIZE:
        raise DimensionMismatch(
            f"{padded.height}x{padded.width} channel holds {padded.data.size} bytes, "
            f"not a multiple of {BLOCK_SIZE}"
        )
    cipher = ecb_encrypt(key.key_bytes, padded.data)
    return Channel(cipher.reshape(padded.data.shape))
