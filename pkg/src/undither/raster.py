"""Image containers, 8-bit/float conversion and the PGM codec.

Images are plain 2-D numpy arrays indexed ``[row, col]``:

* a *gray image* is ``uint8`` (levels 0..255),
* a *float image* is ``float64`` and may leave [0, 255] while diffusing.

``as_gray`` and ``as_float`` validate and normalize arrays coming from
outside; everything else in the package assumes validated input.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

LEVELS = 256

# Anything beyond this is treated as a corrupt header rather than an
# allocation request.
MAX_PIXELS = 1 << 30


class PgmError(ValueError):
    """Base class for PGM decode failures."""


class PgmMagicError(PgmError):
    pass


class PgmMaxvalError(PgmError):
    pass


class PgmTruncatedError(PgmError):
    pass


class PgmDimensionError(PgmError):
    pass


class PgmValueError(PgmError):
    """An ASCII sample is not an integer in [0, maxval]."""


def as_gray(img) -> np.ndarray:
    """Return ``img`` as a validated 2-D uint8 array (copying only if needed)."""
    arr = np.asarray(img)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-D image, got shape {arr.shape}")
    if arr.dtype == np.uint8:
        return arr
    if arr.dtype.kind not in "iub":
        raise ValueError(f"gray images hold integers, got dtype {arr.dtype}")
    if arr.min() < 0 or arr.max() > 255:
        raise ValueError("gray levels must lie in [0, 255]")
    return arr.astype(np.uint8)


def as_float(img) -> np.ndarray:
    arr = np.asarray(img, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-D image, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("float images must be finite everywhere")
    return arr


def to_float(img) -> np.ndarray:
    return as_gray(img).astype(np.float64)


def to_gray(img) -> np.ndarray:
    """Quantize a float image: round half up, then clamp to [0, 255]."""
    arr = np.asarray(img, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D image, got shape {arr.shape}")
    if np.isnan(arr).any():
        raise ValueError("cannot quantize an image containing NaN")
    return np.clip(np.floor(arr + 0.5), 0, 255).astype(np.uint8)


@dataclass(frozen=True)
class Histogram:
    counts: np.ndarray
    total: int

    @property
    def probabilities(self) -> np.ndarray:
        return self.counts / self.total


def histogram(img) -> Histogram:
    gray = as_gray(img)
    counts = np.bincount(gray.ravel(), minlength=LEVELS).astype(np.int64)
    return Histogram(counts=counts, total=int(gray.size))


# -- PGM codec -------------------------------------------------------------

_WS = b" \t\r\n\v\f"
_TOKEN = re.compile(rb"\S+")


class _HeaderReader:
    """Tokenizer over a PGM header that skips whitespace and '#' comments."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def token(self, what: str) -> bytes:
        data = self.data
        n = len(data)
        while self.pos < n:
            ch = data[self.pos:self.pos + 1]
            if ch in _WS:
                self.pos += 1
            elif ch == b"#":
                eol = data.find(b"\n", self.pos)
                self.pos = n if eol < 0 else eol + 1
            else:
                break
        m = _TOKEN.match(data, self.pos)
        if m is None:
            raise PgmTruncatedError(f"header ends before {what}")
        tok = m.group()
        # a comment may start right after a token without whitespace
        hash_at = tok.find(b"#")
        if hash_at > 0:
            tok = tok[:hash_at]
        self.pos = m.start() + len(tok)
        return tok

    def integer(self, what: str) -> int:
        tok = self.token(what)
        if not tok.isdigit():
            raise PgmDimensionError(f"{what} is not a non-negative integer: {tok!r}")
        return int(tok)


def read_pgm(data: bytes) -> np.ndarray:
    """Decode a P2 or P5 graymap with maxval 255 into a uint8 array."""
    data = bytes(data)
    if len(data) < 2 or data[:2] not in (b"P2", b"P5"):
        raise PgmMagicError(f"not a P2/P5 graymap (magic {data[:2]!r})")
    binary = data[:2] == b"P5"
    hdr = _HeaderReader(data)
    hdr.pos = 2
    if hdr.pos < len(data) and data[hdr.pos:hdr.pos + 1] not in _WS and data[hdr.pos:hdr.pos + 1] != b"#":
        raise PgmMagicError("magic number must be followed by whitespace")

    width = hdr.integer("width")
    height = hdr.integer("height")
    if width < 1 or height < 1 or width * height > MAX_PIXELS:
        raise PgmDimensionError(f"unsupported dimensions {width}x{height}")

    maxval_tok = hdr.token("maxval")
    if not maxval_tok.isdigit() or int(maxval_tok) != 255:
        raise PgmMaxvalError(f"only maxval 255 is supported, got {maxval_tok!r}")

    npix = width * height
    if binary:
        # exactly one whitespace byte separates the header from the raster
        if hdr.pos >= len(data) or data[hdr.pos:hdr.pos + 1] not in _WS:
            raise PgmTruncatedError("missing raster data")
        start = hdr.pos + 1
        raster = data[start:start + npix]
        if len(raster) < npix:
            raise PgmTruncatedError(f"expected {npix} raster bytes, got {len(raster)}")
        pixels = np.frombuffer(raster, dtype=np.uint8).copy()
    else:
        body = re.sub(rb"#[^\n]*", b"", data[hdr.pos:])
        tokens = body.split()
        if len(tokens) < npix:
            raise PgmTruncatedError(f"expected {npix} samples, got {len(tokens)}")
        try:
            values = np.array([int(t) for t in tokens[:npix]], dtype=np.int64)
        except ValueError as exc:
            raise PgmValueError(f"non-integer sample: {exc}") from None
        if values.min() < 0 or values.max() > 255:
            raise PgmValueError("sample outside [0, 255]")
        pixels = values.astype(np.uint8)
    return pixels.reshape(height, width)


def write_pgm(img, binary: bool = True) -> bytes:
    gray = as_gray(img)
    height, width = gray.shape
    if binary:
        return b"P5\n%d %d\n255\n" % (width, height) + gray.tobytes()
    rows = (" ".join(map(str, row)) for row in gray.tolist())
    return (f"P2\n{width} {height}\n255\n" + "\n".join(rows) + "\n").encode("ascii")


def load_pgm(path) -> np.ndarray:
    return read_pgm(Path(path).read_bytes())


def save_pgm(path, img, binary: bool = True) -> None:
    Path(path).write_bytes(write_pgm(img, binary))
