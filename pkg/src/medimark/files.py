"""Reading and writing raster files.

Only lossless formats are written; a lossy re-encode would destroy the
embedded bit-plane. Writes go through a temporary file in the destination
directory followed by an atomic rename.
"""

from __future__ import annotations

import io
import logging
import os
import tempfile
from pathlib import Path
from typing import Optional

import numpy as np
from PIL import Image, PngImagePlugin

from .errors import MedimarkError
from .imagecore import RgbImage

log = logging.getLogger(__name__)

LOSSLESS_FORMATS = {".png": "PNG", ".bmp": "BMP", ".tif": "TIFF", ".tiff": "TIFF", ".ppm": "PPM"}
LOSSY_SUFFIXES = {".jpg", ".jpeg", ".jpe", ".jfif", ".webp", ".jp2", ".j2k", ".gif", ".heic"}
PLANE_TEXT_KEY = "medimark:bit-plane"


class ImageFormatError(MedimarkError):
    """The file cannot be read as, or written as, a lossless 8-bit RGB raster."""


class LossyFormatError(ImageFormatError):
    """Refused to write a lossy format."""


def read_image(path: os.PathLike) -> tuple[RgbImage, dict]:
    """Decode ``path`` as 8-bit RGB. Returns the image and the file's text metadata."""
    path = Path(path)
    try:
        with Image.open(path) as im:
            im.load()
            if im.mode != "RGB":
                raise ImageFormatError(f"{path}: expected 8-bit RGB, got mode {im.mode!r}")
            fmt = im.format
            info = {k: v for k, v in im.info.items() if isinstance(v, str)}
            pixels = np.asarray(im, dtype=np.uint8)
    except ImageFormatError:
        raise
    except (OSError, ValueError, Image.DecompressionBombError) as exc:
        raise ImageFormatError(f"{path}: cannot decode image ({exc})") from exc
    if fmt in {"JPEG", "WEBP", "JPEG2000"} or path.suffix.lower() in LOSSY_SUFFIXES:
        log.warning("%s is stored in a lossy format; re-encoding it lossily would erase a watermark", path)
    return RgbImage(pixels), info


def load_image(path: os.PathLike) -> RgbImage:
    return read_image(path)[0]


def output_format(path: os.PathLike) -> str:
    suffix = Path(path).suffix.lower()
    if suffix in LOSSY_SUFFIXES:
        raise LossyFormatError(f"{path}: refusing to write lossy format {suffix!r}; use .png or .bmp")
    if suffix not in LOSSLESS_FORMATS:
        raise ImageFormatError(
            f"{path}: unsupported output extension {suffix!r}; use one of {sorted(LOSSLESS_FORMATS)}"
        )
    return LOSSLESS_FORMATS[suffix]


def atomic_write_bytes(path: os.PathLike, data: bytes) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def encode_image(image: RgbImage, fmt: str, plane_label: Optional[str] = None) -> bytes:
    buf = io.BytesIO()
    pil = Image.fromarray(np.array(image.pixels))
    kwargs = {}
    if fmt == "PNG" and plane_label is not None:
        meta = PngImagePlugin.PngInfo()
        meta.add_text(PLANE_TEXT_KEY, plane_label)
        kwargs["pnginfo"] = meta
    pil.save(buf, format=fmt, **kwargs)
    return buf.getvalue()


def save_image(image: RgbImage, path: os.PathLike, plane_label: Optional[str] = None) -> None:
    """Write ``image`` losslessly. ``plane_label`` is recorded in PNG metadata when given."""
    fmt = output_format(path)
    atomic_write_bytes(path, encode_image(image, fmt, plane_label))
