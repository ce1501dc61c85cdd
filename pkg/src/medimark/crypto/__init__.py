from .aes import aes128_encrypt_block, ecb_encrypt, expand_key
from .keys import PatientRecord, WatermarkKey, derive_key, encrypt_channel
from .sha1 import sha1, sha1_hex

__all__ = [
    "PatientRecord",
    "WatermarkKey",
    "aes128_encrypt_block",
    "derive_key",
    "ecb_encrypt",
    "encrypt_channel",
    "expand_key",
    "sha1",
    "sha1_hex",
]
