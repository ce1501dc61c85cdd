"""AES-128 encryption (FIPS-197).

Two code paths share the key schedule:

* :func:`aes128_encrypt_block` is the textbook byte-oriented cipher
  (SubBytes, ShiftRows, MixColumns, AddRoundKey) for a single block.
* :func:`ecb_encrypt` runs the T-table formulation over many blocks at
  once with numpy. It is what channel encryption uses.

Only encryption is provided.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..errors import SizeError

BLOCK_SIZE = 16
KEY_SIZE = 16
ROUNDS = 10


def _build_sbox() -> list[int]:
    # multiplicative inverse in GF(2^8) followed by the affine map
    exp = [0] * 512
    log = [0] * 256
    x = 1
    for i in range(255):
        exp[i] = x
        log[x] = i
        x ^= _xtime(x)  # multiply by the generator 0x03
    for i in range(255, 512):
        exp[i] = exp[i - 255]

    sbox = []
    for a in range(256):
        inv = 0 if a == 0 else exp[255 - log[a]]
        s = inv
        for shift in range(1, 5):
            s ^= ((inv << shift) | (inv >> (8 - shift))) & 0xFF
        sbox.append(s ^ 0x63)
    return sbox


def _xtime(a: int) -> int:
    a <<= 1
    if a & 0x100:
        a ^= 0x11B
    return a


SBOX = _build_sbox()
RCON = (0x01, 0x02, 0x04, 0x08, 0x10, 0x20, 0x40, 0x80, 0x1B, 0x36)


@lru_cache(maxsize=64)
def expand_key(key: bytes) -> tuple[int, ...]:
    """Return the 44 32-bit words of the AES-128 key schedule."""
    if len(key) != KEY_SIZE:
        raise SizeError(f"AES-128 key must be {KEY_SIZE} bytes, got {len(key)}")
    words = [int.from_bytes(key[i:i + 4], "big") for i in range(0, KEY_SIZE, 4)]
    for i in range(4, 4 * (ROUNDS + 1)):
        temp = words[i - 1]
        if i % 4 == 0:
            temp = ((temp << 8) | (temp >> 24)) & 0xFFFFFFFF
            temp = (
                (SBOX[temp >> 24] << 24)
                | (SBOX[(temp >> 16) & 0xFF] << 16)
                | (SBOX[(temp >> 8) & 0xFF] << 8)
                | SBOX[temp & 0xFF]
            )
            temp ^= RCON[i // 4 - 1] << 24
        words.append(words[i - 4] ^ temp)
    return tuple(words)


def _round_key_bytes(words, rnd: int) -> bytes:
    return b"".join(w.to_bytes(4, "big") for w in words[4 * rnd:4 * rnd + 4])


def _sub_shift(state: list[int]) -> list[int]:
    # state is column-major: byte (row r, col c) lives at index 4c + r
    return [SBOX[state[(4 * (c + r) + r) % 16]] for c in range(4) for r in range(4)]


def _mix_columns(state: list[int]) -> list[int]:
    out = []
    for c in range(4):
        a = state[4 * c:4 * c + 4]
        b = [_xtime(v) & 0xFF for v in a]
        out += [
            b[0] ^ a[3] ^ a[2] ^ b[1] ^ a[1],
            b[1] ^ a[0] ^ a[3] ^ b[2] ^ a[2],
            b[2] ^ a[1] ^ a[0] ^ b[3] ^ a[3],
            b[3] ^ a[2] ^ a[1] ^ b[0] ^ a[0],
        ]
    return out


def aes128_encrypt_block(key: bytes, block: bytes) -> bytes:
    """Encrypt one 16-byte block under a 16-byte key."""
    key, block = bytes(key), bytes(block)
    if len(block) != BLOCK_SIZE:
        raise SizeError(f"AES block must be {BLOCK_SIZE} bytes, got {len(block)}")
    words = expand_key(key)

    state = [b ^ k for b, k in zip(block, _round_key_bytes(words, 0))]
    for rnd in range(1, ROUNDS):
        state = _mix_columns(_sub_shift(state))
        state = [b ^ k for b, k in zip(state, _round_key_bytes(words, rnd))]
    state = _sub_shift(state)
    return bytes(b ^ k for b, k in zip(state, _round_key_bytes(words, ROUNDS)))


def _build_tables() -> tuple[np.ndarray, ...]:
    te0 = np.empty(256, dtype=np.uint32)
    for x, s in enumerate(SBOX):
        s2 = _xtime(s) & 0xFF
        te0[x] = (s2 << 24) | (s << 16) | (s << 8) | (s2 ^ s)
    te1 = (te0 >> 8) | (te0 << 24)
    te2 = (te0 >> 16) | (te0 << 16)
    te3 = (te0 >> 24) | (te0 << 8)
    return te0, te1, te2, te3


_TE0, _TE1, _TE2, _TE3 = _build_tables()
_SBOX_WORDS = np.array(SBOX, dtype=np.uint32)


def ecb_encrypt(key: bytes, data) -> np.ndarray:
    """Encrypt a byte buffer in ECB mode; returns a flat ``uint8`` array.

    The buffer length must be a multiple of 16; no padding is added.
    """
    if isinstance(data, (bytes, bytearray, memoryview)):
        flat = np.frombuffer(bytes(data), dtype=np.uint8)
    else:
        flat = np.ascontiguousarray(data, dtype=np.uint8).ravel()
    if flat.size % BLOCK_SIZE:
        raise SizeError(f"ECB input must be a multiple of {BLOCK_SIZE} bytes, got {flat.size}")
    rk = np.array(expand_key(bytes(key)), dtype=np.uint32)

    cols = flat.view(">u4").astype(np.uint32).reshape(-1, 4)
    s0 = cols[:, 0] ^ rk[0]
    s1 = cols[:, 1] ^ rk[1]
    s2 = cols[:, 2] ^ rk[2]
    s3 = cols[:, 3] ^ rk[3]

    te0, te1, te2, te3 = _TE0, _TE1, _TE2, _TE3
    for rnd in range(1, ROUNDS):
        k = 4 * rnd
        t0 = te0[s0 >> 24] ^ te1[(s1 >> 16) & 0xFF] ^ te2[(s2 >> 8) & 0xFF] ^ te3[s3 & 0xFF] ^ rk[k]
        t1 = te0[s1 >> 24] ^ te1[(s2 >> 16) & 0xFF] ^ te2[(s3 >> 8) & 0xFF] ^ te3[s0 & 0xFF] ^ rk[k + 1]
        t2 = te0[s2 >> 24] ^ te1[(s3 >> 16) & 0xFF] ^ te2[(s0 >> 8) & 0xFF] ^ te3[s1 & 0xFF] ^ rk[k + 2]
        t3 = te0[s3 >> 24] ^ te1[(s0 >> 16) & 0xFF] ^ te2[(s1 >> 8) & 0xFF] ^ te3[s2 & 0xFF] ^ rk[k + 3]
        s0, s1, s2, s3 = t0, t1, t2, t3

    sb = _SBOX_WORDS
    k = 4 * ROUNDS
    out = np.empty((cols.shape[0], 4), dtype=np.uint32)
    quads = (s0, s1, s2, s3)
    for c in range(4):
        a, b, cc, d = quads[c], quads[(c + 1) % 4], quads[(c + 2) % 4], quads[(c + 3) % 4]
        out[:, c] = (
            (sb[a >> 24] << 24)
            ^ (sb[(b >> 16) & 0xFF] << 16)
            ^ (sb[(cc >> 8) & 0xFF] << 8)
            ^ sb[d & 0xFF]
            ^ rk[k + c]
        )
    return out.astype(">u4").view(np.uint8).ravel()
