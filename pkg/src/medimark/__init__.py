"""Fragile bit-plane watermarking and tamper localization for RGB medical images."""

from .attacks import TamperSpec, apply_tamper, random_tamper
from .crypto import PatientRecord, WatermarkKey, derive_key, encrypt_channel
from .embedder import BitPlane, WatermarkedImage, embed, substitute_bitplane
from .errors import DegenerateInput, DimensionMismatch, MedimarkError, RegionOutOfBounds, SizeError
from .imagecore import Channel, Dims, RgbImage, compose, crop, decompose, pad_to_multiple_of_8
from .metrics import QualityReport, entropy, mae, mse, psnr, quality_report, ssim, uiqi
from .verifier import FdrResult, MismatchReport, extract_bitplane, fdr_assess, pearson_correlation, verify

__version__ = "0.1.0"

__all__ = [
    "BitPlane", "Channel", "DegenerateInput", "DimensionMismatch", "Dims", "FdrResult",
    "MedimarkError", "MismatchReport", "PatientRecord", "QualityReport", "RegionOutOfBounds",
    "RgbImage", "SizeError", "TamperSpec", "WatermarkKey", "WatermarkedImage",
    "apply_tamper", "compose", "crop", "decompose", "derive_key", "embed", "encrypt_channel",
    "entropy", "extract_bitplane", "fdr_assess", "mae", "mse", "pad_to_multiple_of_8",
    "pearson_correlation", "psnr", "quality_report", "random_tamper", "ssim",
    "substitute_bitplane", "uiqi", "verify",
]
