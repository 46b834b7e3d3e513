"""Command-line client for the decomposition service.

The CLI only handles local files, flags and exit codes; all computation
happens in the HTTP service.  By default an in-process instance of the
service is used (no network); ``--server`` points at a running one instead.

Subcommands: ``decompose``, ``filters``, ``verify``, ``image``.
Exit codes: 0 success/pass, 1 domain error or check failure, 2 I/O or
format error.
"""

import argparse
import json
import sys
from pathlib import Path

import httpx
import numpy as np

from .errors import FormatError
from .formats import (
    display_normalize,
    read_pgm,
    read_signal_csv,
    write_pgm,
    write_raw_f64,
    write_signal_csv,
)

_DEFAULT_TOL_1D = 1e-10
_DEFAULT_TOL_2D = 1e-9


class _ExitError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


def _make_client(args) -> httpx.Client:
    if args.server:
        return httpx.Client(base_url=args.server.rstrip("/"), timeout=None)
    # In-process transport: same endpoints, no socket.
    import warnings

    with warnings.catch_warnings():
        # starlette warns when it falls back from httpx2 to httpx
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service.app import create_app

    return TestClient(create_app(bank_cache_dir=args.bank_cache))


def _request(client: httpx.Client, method: str, path: str, payload=None) -> dict:
    try:
        resp = client.request(method, path, json=payload)
    except httpx.HTTPError as exc:
        raise _ExitError(2, f"service request failed: {exc}") from exc
    if resp.status_code == 200:
        return resp.json()
    try:
        body = resp.json()
    except ValueError:
        raise _ExitError(2, f"service error: HTTP {resp.status_code}") from None
    code = body.get("error")
    detail = body.get("detail", body)
    if code is None:
        raise _ExitError(1, f"request rejected: {detail}")
    raise _ExitError(2 if code == "CorruptBank" else 1, f"{code}: {detail}")


def _parse_scales(text: str | None, k: int) -> list[int]:
    if text is None:
        return list(range(k + 1))
    try:
        scales = sorted({int(tok) for tok in text.split(",") if tok.strip()})
    except ValueError:
        raise _ExitError(1, f"bad --scales value: {text!r}") from None
    if not scales or any(s < 0 or s > k for s in scales):
        raise _ExitError(1, f"--scales must be a subset of 0..{k}, got {text!r}")
    return scales


def _read_input_signal(path: str) -> np.ndarray:
    try:
        return read_signal_csv(path)
    except (FormatError, OSError) as exc:
        raise _ExitError(2, f"cannot read signal: {exc}") from exc


def _out_dir(args) -> Path:
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise _ExitError(2, f"cannot create output directory: {exc}") from exc
    return out


def _write_meta(out: Path, meta: dict) -> None:
    (out / "meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")


def _cmd_decompose(args, client) -> int:
    x = _read_input_signal(args.input)
    body = _request(
        client,
        "POST",
        "/decompose",
        {"samples": x.tolist(), "wavelet": args.wavelet, "method": args.method},
    )
    k = body["k"]
    scales = _parse_scales(args.scales, k)
    tol = args.tolerance if args.tolerance is not None else _DEFAULT_TOL_1D
    residuals = body["residuals"]
    if residuals["reconstruction"] > tol:
        raise _ExitError(
            1,
            f"reconstruction residual {residuals['reconstruction']:.3e} exceeds "
            f"tolerance {tol:.1e}; refusing to write spectra",
        )
    out = _out_dir(args)
    columns = [np.asarray(body["dc"])] + [np.asarray(v) for v in body["spectra"]]
    for s in scales:
        name = "dc.csv" if s == 0 else f"scale_{s}.csv"
        write_signal_csv(out / name, columns[s])
    stacked = [
        " ".join([str(i)] + [format(col[i], ".17g") for col in columns])
        for i in range(body["n"])
    ]
    (out / "spectra.dat").write_text("\n".join(stacked) + "\n")
    _write_meta(
        out,
        {
            "command": "decompose",
            "input": str(args.input),
            "wavelet": body["wavelet"],
            "n": body["n"],
            "k": k,
            "scales": scales,
            "tolerance": tol,
            "residuals": residuals,
        },
    )
    return 0


def _cmd_filters(args, client) -> int:
    size = args.size.lower().split("x")
    try:
        dims = [int(tok) for tok in size]
    except ValueError:
        raise _ExitError(1, f"bad --size value: {args.size!r} (use N or HxW)") from None

    if len(dims) == 1:
        body = _request(
            client, "POST", "/filters", {"wavelet": args.wavelet, "n": dims[0]}
        )
        k = body["k"]
        scales = _parse_scales(args.scales, k)
        out = _out_dir(args)
        n = body["n"]
        kernels = [np.asarray(body["dc_filter"])] + [np.asarray(f) for f in body["filters"]]
        for s in scales:
            name = "filter_dc.csv" if s == 0 else f"filter_scale_{s}.csv"
            # rotate so the kernel origin sits at index n/2 for display
            write_signal_csv(out / name, np.roll(kernels[s], n // 2))
        _write_meta(
            out,
            {
                "command": "filters",
                "wavelet": body["wavelet"],
                "n": n,
                "k": k,
                "scales": scales,
                "centered": True,
            },
        )
        return 0

    if len(dims) != 2:
        raise _ExitError(1, f"bad --size value: {args.size!r} (use N or HxW)")
    body = _request(
        client,
        "POST",
        "/filters2d",
        {
            "wavelet": args.wavelet,
            "height": dims[0],
            "width": dims[1],
            "levels": args.levels,
        },
    )
    k = body["k"]
    scales = _parse_scales(args.scales, k)
    out = _out_dir(args)
    h, w = body["height"], body["width"]
    kernels = [np.asarray(body["dc_kernel"])] + [np.asarray(m) for m in body["kernels"]]
    display = {}
    for s in scales:
        name = "filter_dc" if s == 0 else f"filter_scale_{s}"
        centered = np.roll(kernels[s], (h // 2, w // 2), axis=(0, 1))
        pixels, lo, hi = display_normalize(centered)
        write_pgm(out / f"{name}.pgm", pixels)
        display[name] = {"lo": lo, "hi": hi}
    _write_meta(
        out,
        {
            "command": "filters",
            "wavelet": body["wavelet"],
            "height": h,
            "width": w,
            "k": k,
            "scales": scales,
            "centered": True,
            "display": display,
        },
    )
    return 0


def _cmd_verify(args, client) -> int:
    payload = {"wavelet": args.wavelet, "tolerance": args.tolerance}
    if args.input:
        payload["samples"] = _read_input_signal(args.input).tolist()
    body = _request(client, "POST", "/verify", payload)
    print(body["text"])
    return 0 if body["passed"] else 1


def _cmd_image(args, client) -> int:
    try:
        pixels, maxval = read_pgm(args.input)
    except (FormatError, OSError) as exc:
        raise _ExitError(2, f"cannot read image: {exc}") from exc
    body = _request(
        client,
        "POST",
        "/decompose2d",
        {
            "pixels": pixels.tolist(),
            "wavelet": args.wavelet,
            "method": args.method,
            "levels": args.levels,
        },
    )
    k = body["k"]
    scales = _parse_scales(args.scales, k)
    tol = args.tolerance if args.tolerance is not None else _DEFAULT_TOL_2D
    residuals = body["residuals"]
    if residuals["reconstruction"] > tol:
        raise _ExitError(
            1,
            f"reconstruction residual {residuals['reconstruction']:.3e} exceeds "
            f"tolerance {tol:.1e}; refusing to write spectra",
        )
    out = _out_dir(args)
    write_pgm(out / "original.pgm", pixels, maxval=maxval)
    images = [np.asarray(body["dc"])] + [np.asarray(m) for m in body["spectra"]]
    display = {}
    for s in scales:
        name = "dc" if s == 0 else f"scale_{s}"
        shown, lo, hi = display_normalize(images[s])
        write_pgm(out / f"{name}.pgm", shown)
        write_raw_f64(out / f"{name}.f64", images[s])
        display[name] = {"lo": lo, "hi": hi}
    _write_meta(
        out,
        {
            "command": "image",
            "input": str(args.input),
            "wavelet": body["wavelet"],
            "height": body["height"],
            "width": body["width"],
            "maxval": maxval,
            "k": k,
            "scales": scales,
            "tolerance": tol,
            "residuals": residuals,
            "display": display,
        },
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="awt",
        description="Shift-invariant multiscale decomposition of signals and images.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_out=True):
        p.add_argument("--wavelet", default="haar", help="wavelet name (default: haar)")
        p.add_argument("--scales", default=None, help="comma-separated scales to emit, 0 = DC (default: all)")
        p.add_argument("--tolerance", type=float, default=None, help="residual tolerance override")
        p.add_argument("--bank-cache", default=None, help="directory for the filter-bank cache")
        p.add_argument("--server", default=None, help="base URL of a running service (default: in-process)")
        if with_out:
            p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("decompose", help="decompose a CSV signal into scale spectra")
    p.add_argument("--input", required=True, help="input signal (one value per line)")
    p.add_argument("--method", choices=("fft", "naive"), default="fft")
    common(p)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("filters", help="emit the filter-bank kernels for a size")
    p.add_argument("--size", required=True, help="signal length N, or HxW for 2-D kernels")
    p.add_argument("--levels", type=int, default=None, help="2-D decomposition depth (default: max)")
    common(p)
    p.set_defaults(func=_cmd_filters)

    p = sub.add_parser("verify", help="run the invariant suite and report residuals")
    p.add_argument("--input", default=None, help="signal to verify (default: built-in suite)")
    common(p, with_out=False)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("image", help="decompose a PGM image into scale spectra")
    p.add_argument("--input", required=True, help="input image (PGM, P2 or P5)")
    p.add_argument("--method", choices=("fft", "naive"), default="fft")
    p.add_argument("--levels", type=int, default=None, help="decomposition depth (default: max)")
    common(p)
    p.set_defaults(func=_cmd_image)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with _make_client(args) as client:
            return args.func(args, client)
    except _ExitError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return exc.code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
