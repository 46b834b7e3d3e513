"""Filter-bank cache files and the in-memory/on-disk bank cache.

Banks are derived once per (wavelet, size) and cached.  The file format is
binary, little-endian:

* header: magic ``AWTB``, format version u32 = 1, wavelet-name length (u32)
  and UTF-8 bytes, dims count u32 (1 or 2), dims as u64, scale count k u32;
* payload: (k+1) kernels of 64-bit IEEE-754 floats in row-major order, the
  DC kernel first, then scales 1..k;
* trailer: CRC-32 of the payload (u32).

Any structural violation on load raises :class:`CorruptBank`.
"""

import struct
import zlib
from pathlib import Path

import numpy as np

from .errors import CorruptBank
from .filterbank import AwtFilterBank, FilterBank2D, derive_filter_bank, derive_filter_bank_2d
from .wavelets import WaveletSpec

_MAGIC = b"AWTB"
_VERSION = 1


def save_bank(bank: AwtFilterBank | FilterBank2D, path) -> None:
    """Write a bank to ``path`` in the cache file format (lossless)."""
    if isinstance(bank, AwtFilterBank):
        dims = (bank.n,)
        kernels = [bank.dc_filter, *bank.filters]
    else:
        dims = (bank.height, bank.width)
        kernels = [bank.dc_kernel, *bank.kernels]
    name_bytes = bank.wavelet_name.encode("utf-8")
    header = b"".join(
        [
            _MAGIC,
            struct.pack("<I", _VERSION),
            struct.pack("<I", len(name_bytes)),
            name_bytes,
            struct.pack("<I", len(dims)),
            struct.pack(f"<{len(dims)}Q", *dims),
            struct.pack("<I", bank.k),
        ]
    )
    payload = b"".join(
        np.ascontiguousarray(kern, dtype="<f8").tobytes() for kern in kernels
    )
    Path(path).write_bytes(header + payload + struct.pack("<I", zlib.crc32(payload)))


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, count: int) -> bytes:
        if self.pos + count > len(self.data):
            raise CorruptBank("truncated bank file")
        chunk = self.data[self.pos : self.pos + count]
        self.pos += count
        return chunk

    def u32(self) -> int:
        return struct.unpack("<I", self.take(4))[0]

    def u64(self) -> int:
        return struct.unpack("<Q", self.take(8))[0]


def load_bank(
    path,
    expect_dims: tuple[int, ...] | None = None,
    expect_wavelet: str | None = None,
) -> AwtFilterBank | FilterBank2D:
    """Read a bank file, validating structure and optional expectations.

    Raises
    ------
    CorruptBank
        On bad magic/version, truncation, CRC failure, implausible shape
        metadata, or mismatch against ``expect_dims``/``expect_wavelet``.
    """
    r = _Reader(Path(path).read_bytes())
    if r.take(4) != _MAGIC:
        raise CorruptBank(f"{path}: bad magic")
    version = r.u32()
    if version != _VERSION:
        raise CorruptBank(f"{path}: unsupported format version {version}")
    name_len = r.u32()
    try:
        wavelet_name = r.take(name_len).decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorruptBank(f"{path}: invalid wavelet name bytes") from exc
    ndims = r.u32()
    if ndims not in (1, 2):
        raise CorruptBank(f"{path}: dims count must be 1 or 2, got {ndims}")
    dims = tuple(r.u64() for _ in range(ndims))
    k = r.u32()
    if any(d < 2 or d % 2 for d in dims) or k < 1:
        raise CorruptBank(f"{path}: implausible shape metadata dims={dims} k={k}")
    if any(d % (1 << k) for d in dims):
        raise CorruptBank(f"{path}: dims {dims} cannot support {k} scales")
    if expect_dims is not None and dims != tuple(expect_dims):
        raise CorruptBank(f"{path}: bank is for dims {dims}, expected {tuple(expect_dims)}")
    if expect_wavelet is not None and wavelet_name != expect_wavelet:
        raise CorruptBank(f"{path}: bank is for {wavelet_name!r}, expected {expect_wavelet!r}")

    size = int(np.prod(dims))
    payload_len = (k + 1) * size * 8
    payload = r.take(payload_len)
    crc = r.u32()
    if r.pos != len(r.data):
        raise CorruptBank(f"{path}: {len(r.data) - r.pos} trailing bytes")
    if crc != zlib.crc32(payload):
        raise CorruptBank(f"{path}: payload CRC mismatch")

    flat = np.frombuffer(payload, dtype="<f8").astype(np.float64)
    kernels = flat.reshape((k + 1,) + dims)
    if ndims == 1:
        return AwtFilterBank(
            n=dims[0],
            k=k,
            wavelet_name=wavelet_name,
            dc_filter=kernels[0],
            filters=[kernels[i] for i in range(1, k + 1)],
        )
    return FilterBank2D(
        height=dims[0],
        width=dims[1],
        k=k,
        wavelet_name=wavelet_name,
        dc_kernel=kernels[0],
        kernels=[kernels[i] for i in range(1, k + 1)],
    )


class BankCache:
    """Filter banks keyed by (wavelet, dims), backed by an optional directory.

    Banks found on disk are loaded (a corrupt file is an error, not a cache
    miss); absent banks are derived, kept in memory and, when a directory is
    configured, written back.
    """

    def __init__(self, directory=None):
        self.directory = Path(directory) if directory else None
        self._banks: dict[tuple, AwtFilterBank | FilterBank2D] = {}

    def _path(self, wavelet_name: str, dims: tuple[int, ...], k: int | None) -> Path:
        stem = f"{wavelet_name}_" + "x".join(str(d) for d in dims)
        if k is not None:
            stem += f"_k{k}"
        return self.directory / f"{stem}.awtb"

    def _get(self, wavelet: WaveletSpec, dims: tuple[int, ...], levels, derive):
        key = (wavelet.name, dims, levels)
        bank = self._banks.get(key)
        if bank is not None:
            return bank
        if self.directory is not None:
            path = self._path(wavelet.name, dims, levels)
            if path.exists():
                bank = load_bank(path, expect_dims=dims, expect_wavelet=wavelet.name)
                self._banks[key] = bank
                return bank
        bank = derive()
        self._banks[key] = bank
        if self.directory is not None:
            self.directory.mkdir(parents=True, exist_ok=True)
            save_bank(bank, self._path(wavelet.name, dims, levels))
        return bank

    def bank_1d(self, wavelet: WaveletSpec, n: int) -> AwtFilterBank:
        return self._get(wavelet, (int(n),), None, lambda: derive_filter_bank(wavelet, n))

    def bank_2d(
        self, wavelet: WaveletSpec, height: int, width: int, levels: int | None = None
    ) -> FilterBank2D:
        return self._get(
            wavelet,
            (int(height), int(width)),
            levels,
            lambda: derive_filter_bank_2d(wavelet, height, width, levels),
        )
