"""Binary PGM (P5, maxval 255) reading and writing."""

from __future__ import annotations

from os import PathLike

import numpy as np


class PgmError(ValueError):
    pass


class UnsupportedFormatError(PgmError):
    pass


class MalformedHeaderError(PgmError):
    pass


class MaxvalError(PgmError):
    pass


class TruncatedRasterError(PgmError):
    pass


_WHITESPACE = frozenset(b" \t\n\r\v\f")


def _header_tokens(data: bytes, count: int):
    """Pull ``count`` integer tokens after the magic, skipping comments.

    Returns the tokens and the offset of the single whitespace byte that ends
    the last one.
    """
    pos = 2
    tokens = []
    n = len(data)
    while len(tokens) < count:
        if pos >= n:
            raise MalformedHeaderError("header ends before width, height and maxval")
        ch = data[pos]
        if ch in _WHITESPACE:
            pos += 1
        elif ch == ord("#"):
            nl = data.find(b"\n", pos)
            if nl < 0:
                raise MalformedHeaderError("unterminated comment in header")
            pos = nl + 1
        else:
            start = pos
            while pos < n and data[pos] not in _WHITESPACE and data[pos] != ord("#"):
                pos += 1
            tok = data[start:pos]
            if not tok.isdigit():
                raise MalformedHeaderError(f"non-numeric header field {tok!r}")
            tokens.append(int(tok))
    if pos >= n or data[pos] not in _WHITESPACE:
        raise MalformedHeaderError("maxval must be followed by a single whitespace byte")
    return tokens, pos


def parse_pgm(data: bytes) -> np.ndarray:
    if len(data) < 2:
        raise MalformedHeaderError("file too short for a PGM header")
    magic = data[:2]
    if magic != b"P5":
        raise UnsupportedFormatError(f"only binary P5 graymaps are supported, got magic {magic!r}")
    (width, height, maxval), pos = _header_tokens(data, 3)
    if width <= 0 or height <= 0:
        raise MalformedHeaderError(f"invalid dimensions {width}x{height}")
    if maxval != 255:
        raise MaxvalError(f"maxval must be 255, got {maxval}")
    raster = data[pos + 1 : pos + 1 + width * height]
    if len(raster) < width * height:
        raise TruncatedRasterError(f"raster holds {len(raster)} bytes, expected {width * height}")
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width).copy()


def read_pgm(path: str | PathLike) -> np.ndarray:
    with open(path, "rb") as fh:
        return parse_pgm(fh.read())


def format_pgm(image) -> bytes:
    img = np.asarray(image)
    if img.ndim != 2:
        raise ValueError("PGM output needs a 2-D image")
    if img.size and (img.min() < 0 or img.max() > 255):
        raise ValueError("pixels must lie in [0, 255]")
    h, w = img.shape
    return b"P5\n%d %d\n255\n" % (w, h) + img.astype(np.uint8).tobytes()


def write_pgm(image, path: str | PathLike) -> None:
    with open(path, "wb") as fh:
        fh.write(format_pgm(image))
