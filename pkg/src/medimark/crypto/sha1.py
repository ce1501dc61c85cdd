"""SHA-1 message digest (FIPS 180-4)."""

import struct

_H0 = (0x67452301, 0xEFCDAB89, 0x98BADCFE, 0x10325476, 0xC3D2E1F0)
_MASK = 0xFFFFFFFF


def _rotl(x: int, n: int) -> int:
    return ((x << n) | (x >> (32 - n))) & _MASK


def _pad(data: bytes) -> bytes:
    bit_len = (8 * len(data)) & 0xFFFFFFFFFFFFFFFF
    tail = b"\x80" + b"\x00" * ((55 - len(data)) % 64)
    return data + tail + struct.pack(">Q", bit_len)


def _compress(state, chunk):
    w = list(struct.unpack(">16I", chunk))
    for t in range(16, 80):
        w.append(_rotl(w[t - 3] ^ w[t - 8] ^ w[t - 14] ^ w[t - 16], 1))

    a, b, c, d, e = state
    for t in range(80):
        if t < 20:
            f, k = (b & c) | (~b & d), 0x5A827999
        elif t < 40:
            f, k = b ^ c ^ d, 0x6ED9EBA1
        elif t < 60:
            f, k = (b & c) | (b & d) | (c & d), 0x8F1BBCDC
        else:
            f, k = b ^ c ^ d, 0xCA62C1D6
        temp = (_rotl(a, 5) + (f & _MASK) + e + k + w[t]) & _MASK
        a, b, c, d, e = temp, a, _rotl(b, 30), c, d

    return tuple((s + v) & _MASK for s, v in zip(state, (a, b, c, d, e)))


def sha1(data: bytes) -> bytes:
    """Return the 20-byte SHA-1 digest of ``data``."""
    data = bytes(data)
    state = _H0
    padded = _pad(data)
    for offset in range(0, len(padded), 64):
        state = _compress(state, padded[offset:offset + 64])
    return struct.pack(">5I", *state)


def sha1_hex(data: bytes) -> str:
    return sha1(data).hex().upper()
