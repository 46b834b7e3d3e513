"""Signal and image file formats: CSV signals, PGM images, raw sidecars.

* Signal CSV: one real per line; lines starting with ``#`` are comments,
  blank lines are skipped.
* PGM: reads P2 (ASCII) and P5 (binary, 8- or 16-bit big-endian); writes P5.
* Raw sidecar: little-endian 64-bit floats, row-major, with a small JSON
  header file (``<name>.json``) recording dtype, shape and order; keeps
  exact values separate from display-normalized images.
"""

import json
from pathlib import Path

import numpy as np

from .errors import FormatError


def read_signal_csv(path) -> np.ndarray:
    """Read a one-value-per-line CSV signal."""
    values = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise FormatError(f"{path}:{lineno}: not a number: {line!r}") from None
    if not values:
        raise FormatError(f"{path}: no samples found")
    return np.array(values, dtype=np.float64)


def write_signal_csv(path, values, header: str | None = None) -> None:
    """Write one value per line; 17 significant digits round-trip exactly."""
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    lines.extend(format(float(v), ".17g") for v in np.asarray(values).ravel())
    Path(path).write_text("\n".join(lines) + "\n")


def _tokenize_pgm_header(data: bytes, count: int) -> tuple[list[int], int]:
    """Read `count` whitespace-separated integer tokens, skipping comments.

    Returns the tokens and the offset just past the single whitespace byte
    that terminates the last token.
    """
    tokens: list[int] = []
    pos = 0
    while len(tokens) < count:
        if pos >= len(data):
            raise FormatError("truncated header")
        ch = data[pos : pos + 1]
        if ch == b"#":
            eol = data.find(b"\n", pos)
            if eol < 0:
                raise FormatError("unterminated comment")
            pos = eol + 1
        elif ch.isspace():
            pos += 1
        else:
            end = pos
            while end < len(data) and not data[end : end + 1].isspace() and data[end : end + 1] != b"#":
                end += 1
            token = data[pos:end]
            if not token.isdigit():
                raise FormatError(f"bad header token {token!r}")
            tokens.append(int(token))
            pos = end
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise FormatError("missing whitespace after header")
    return tokens, pos + 1


def read_pgm(path) -> tuple[np.ndarray, int]:
    """Read a P2 or P5 grayscale image.

    Returns (pixels as float64 h*w array, maxval).
    """
    data = Path(path).read_bytes()
    try:
        magic = data[:2]
        if magic not in (b"P2", b"P5"):
            raise FormatError(f"not a PGM file (magic {magic!r})")
        (width, height, maxval), offset = _tokenize_pgm_header(data[2:], 3)
        offset += 2
        if width < 1 or height < 1 or not 0 < maxval <= 65535:
            raise FormatError(f"bad dimensions {width}x{height} maxval {maxval}")
        count = width * height
        if magic == b"P5":
            dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
            raw = data[offset : offset + count * dtype.itemsize]
            if len(raw) != count * dtype.itemsize:
                raise FormatError("truncated pixel data")
            pixels = np.frombuffer(raw, dtype=dtype).astype(np.float64)
        else:
            fields = data[offset:].split()
            if len(fields) < count:
                raise FormatError(f"expected {count} pixels, found {len(fields)}")
            try:
                pixels = np.array([int(f) for f in fields[:count]], dtype=np.float64)
            except ValueError:
                raise FormatError("non-integer pixel token") from None
        if pixels.max(initial=0.0) > maxval or pixels.min(initial=0.0) < 0:
            raise FormatError("pixel value outside 0..maxval")
        return pixels.reshape(height, width), maxval
    except FormatError as exc:
        raise FormatError(f"{path}: {exc}") from None


def write_pgm(path, pixels, maxval: int = 255) -> None:
    """Write integer pixels as binary P5 (16-bit big-endian when maxval > 255)."""
    arr = np.asarray(pixels)
    if arr.ndim != 2:
        raise FormatError(f"expected a 2-D pixel array, got shape {arr.shape}")
    if not 0 < maxval <= 65535:
        raise FormatError(f"maxval {maxval} outside 1..65535")
    ints = np.rint(arr).astype(np.int64)
    if ints.min() < 0 or ints.max() > maxval:
        raise FormatError("pixel value outside 0..maxval")
    header = f"P5\n{arr.shape[1]} {arr.shape[0]}\n{maxval}\n".encode("ascii")
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
    Path(path).write_bytes(header + ints.astype(dtype).tobytes())


def display_normalize(values) -> tuple[np.ndarray, float, float]:
    """Affine per-image map of real values onto 0..255.

    Returns (uint8 pixels, lo, hi); recording lo/hi makes the mapping
    invertible.  A constant image maps to 0.
    """
    arr = np.asarray(values, dtype=np.float64)
    lo = float(arr.min())
    hi = float(arr.max())
    if hi - lo == 0.0:
        return np.zeros(arr.shape, dtype=np.uint8), lo, hi
    scaled = np.rint((arr - lo) * (255.0 / (hi - lo)))
    return scaled.astype(np.uint8), lo, hi


def write_raw_f64(path, values) -> None:
    """Write row-major little-endian float64 data plus a JSON header file."""
    arr = np.ascontiguousarray(values, dtype="<f8")
    path = Path(path)
    path.write_bytes(arr.tobytes())
    header = {"dtype": "<f8", "shape": list(arr.shape), "order": "C"}
    path.with_name(path.name + ".json").write_text(json.dumps(header) + "\n")


def read_raw_f64(path) -> np.ndarray:
    """Read a raw sidecar written by :func:`write_raw_f64`."""
    path = Path(path)
    header_path = path.with_name(path.name + ".json")
    try:
        header = json.loads(header_path.read_text())
        shape = tuple(int(d) for d in header["shape"])
        if header.get("dtype") != "<f8" or header.get("order") != "C":
            raise FormatError(f"{header_path}: unsupported dtype/order")
    except (OSError, ValueError, KeyError) as exc:
        raise FormatError(f"{header_path}: bad sidecar header ({exc})") from None
    raw = path.read_bytes()
    expected = int(np.prod(shape)) * 8
    if len(raw) != expected:
        raise FormatError(f"{path}: expected {expected} bytes, found {len(raw)}")
    return np.frombuffer(raw, dtype="<f8").astype(np.float64).reshape(shape)
