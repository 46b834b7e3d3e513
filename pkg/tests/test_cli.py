"""CLI contracts: file outputs, exit codes, determinism.  Runs the thin
client against the in-process service."""

import json

import numpy as np
import pytest

from awt import awt2d_full_naive, wavelet_filters
from awt.cli import main
from awt.formats import read_pgm, read_raw_f64, read_signal_csv, write_pgm, write_signal_csv
from awt.signals import synthetic_image, two_gaussians_step
from conftest import max_abs


@pytest.fixture
def signal_file(tmp_path):
    path = tmp_path / "signal.csv"
    write_signal_csv(path, two_gaussians_step(128))
    return path


def read_stacked(path):
    rows = [line.split() for line in path.read_text().splitlines()]
    return np.array([[float(v) for v in row] for row in rows])


class TestDecompose:
    def test_writes_all_spectra(self, tmp_path, signal_file):
        out = tmp_path / "out"
        assert main(["decompose", "--input", str(signal_file), "--out", str(out)]) == 0
        names = sorted(p.name for p in out.iterdir())
        assert names == [
            "dc.csv",
            "meta.json",
            "scale_1.csv",
            "scale_2.csv",
            "scale_3.csv",
            "scale_4.csv",
            "scale_5.csv",
            "scale_6.csv",
            "scale_7.csv",
            "spectra.dat",
        ]
        stacked = read_stacked(out / "spectra.dat")
        assert stacked.shape == (128, 9)
        x = read_signal_csv(signal_file)
        assert max_abs(np.sum(stacked[:, 1:], axis=1), x) < 1e-10
        meta = json.loads((out / "meta.json").read_text())
        assert meta["n"] == 128 and meta["k"] == 7 and meta["wavelet"] == "haar"
        assert meta["residuals"]["reconstruction"] < 1e-10
        # per-scale files match the stacked columns
        assert max_abs(read_signal_csv(out / "dc.csv"), stacked[:, 1]) == 0.0
        assert max_abs(read_signal_csv(out / "scale_3.csv"), stacked[:, 4]) == 0.0

    def test_shifted_input_shifts_all_columns(self, tmp_path, signal_file):
        x = read_signal_csv(signal_file)
        shifted_file = tmp_path / "shifted.csv"
        write_signal_csv(shifted_file, np.roll(x, 20))
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        assert main(["decompose", "--input", str(signal_file), "--out", str(out_a)]) == 0
        assert main(["decompose", "--input", str(shifted_file), "--out", str(out_b)]) == 0
        base = read_stacked(out_a / "spectra.dat")
        moved = read_stacked(out_b / "spectra.dat")
        for col in range(1, 9):
            assert max_abs(moved[:, col], np.roll(base[:, col], 20)) < 1e-10

    def test_two_sample_signal(self, tmp_path):
        sig = tmp_path / "two.csv"
        write_signal_csv(sig, [3.0, 1.0])
        out = tmp_path / "out"
        assert main(["decompose", "--input", str(sig), "--out", str(out)]) == 0
        assert (out / "dc.csv").exists() and (out / "scale_1.csv").exists()
        assert not (out / "scale_2.csv").exists()

    def test_deterministic_output(self, tmp_path, signal_file):
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        main(["decompose", "--input", str(signal_file), "--out", str(out_a)])
        main(["decompose", "--input", str(signal_file), "--out", str(out_b)])
        for p in sorted(out_a.iterdir()):
            assert p.read_bytes() == (out_b / p.name).read_bytes(), p.name

    def test_scales_selection(self, tmp_path, signal_file):
        out = tmp_path / "out"
        assert (
            main(
                ["decompose", "--input", str(signal_file), "--out", str(out), "--scales", "0,2"]
            )
            == 0
        )
        names = sorted(p.name for p in out.iterdir())
        assert names == ["dc.csv", "meta.json", "scale_2.csv", "spectra.dat"]

    def test_scale_out_of_range(self, tmp_path, signal_file, capsys):
        out = tmp_path / "out"
        assert (
            main(
                ["decompose", "--input", str(signal_file), "--out", str(out), "--scales", "9"]
            )
            == 1
        )
        assert "--scales" in capsys.readouterr().err

    def test_odd_length_is_domain_error(self, tmp_path, capsys):
        sig = tmp_path / "odd.csv"
        write_signal_csv(sig, [1.0, 2.0, 3.0])
        assert main(["decompose", "--input", str(sig), "--out", str(tmp_path / "o")]) == 1
        assert "InvalidLength" in capsys.readouterr().err

    def test_unknown_wavelet(self, tmp_path, signal_file, capsys):
        code = main(
            [
                "decompose",
                "--input",
                str(signal_file),
                "--out",
                str(tmp_path / "o"),
                "--wavelet",
                "sym5",
            ]
        )
        assert code == 1
        assert "UnknownWavelet" in capsys.readouterr().err

    def test_missing_input_is_io_error(self, tmp_path, capsys):
        code = main(
            ["decompose", "--input", str(tmp_path / "nope.csv"), "--out", str(tmp_path / "o")]
        )
        assert code == 2

    def test_malformed_input_is_io_error(self, tmp_path, capsys):
        sig = tmp_path / "bad.csv"
        sig.write_text("1.0\nnot-a-number\n")
        assert main(["decompose", "--input", str(sig), "--out", str(tmp_path / "o")]) == 2

    def test_residual_gate_writes_nothing(self, tmp_path, signal_file, capsys):
        out = tmp_path / "gated"
        code = main(
            [
                "decompose",
                "--input",
                str(signal_file),
                "--out",
                str(out),
                "--tolerance",
                "1e-30",
            ]
        )
        assert code == 1
        assert "refusing to write" in capsys.readouterr().err
        assert not out.exists() or not any(out.iterdir())

    def test_naive_method(self, tmp_path, signal_file):
        sig = tmp_path / "short.csv"
        write_signal_csv(sig, two_gaussians_step(16))
        out = tmp_path / "out"
        assert main(["decompose", "--input", str(sig), "--out", str(out), "--method", "naive"]) == 0
        stacked = read_stacked(out / "spectra.dat")
        assert max_abs(np.sum(stacked[:, 1:], axis=1), read_signal_csv(sig)) < 1e-10


class TestFilters:
    def test_centered_haar_row(self, tmp_path):
        out = tmp_path / "out"
        assert main(["filters", "--size", "32", "--out", str(out)]) == 0
        row = read_signal_csv(out / "filter_scale_1.csv")
        assert abs(row[16] - 0.5) < 1e-12
        assert abs(row[15] + 0.25) < 1e-12
        assert abs(row[17] + 0.25) < 1e-12
        assert max_abs(row[:15]) < 1e-12 and max_abs(row[18:]) < 1e-12
        assert (out / "filter_dc.csv").exists()

    def test_daub8_kernels_symmetric_about_center(self, tmp_path):
        out = tmp_path / "out"
        assert main(["filters", "--size", "128", "--wavelet", "daub8", "--out", str(out)]) == 0
        files = sorted(out.glob("filter_scale_*.csv"))
        assert len(files) == 7
        for path in files:
            row = read_signal_csv(path)
            # centered display: row[c + j] == row[c - j] about c = n/2
            folded = row[1:][::-1]
            assert max_abs(row[1:], folded) < 1e-12

    def test_scale_beyond_k_fails(self, tmp_path, capsys):
        assert (
            main(["filters", "--size", "32", "--out", str(tmp_path / "o"), "--scales", "6"]) == 1
        )

    def test_2d_kernels_as_pgm(self, tmp_path):
        out = tmp_path / "out"
        assert main(["filters", "--size", "16x16", "--out", str(out)]) == 0
        pgms = sorted(out.glob("*.pgm"))
        assert [p.name for p in pgms] == [
            "filter_dc.pgm",
            "filter_scale_1.pgm",
            "filter_scale_2.pgm",
            "filter_scale_3.pgm",
            "filter_scale_4.pgm",
        ]
        pixels, maxval = read_pgm(pgms[1])
        assert pixels.shape == (16, 16) and maxval == 255
        meta = json.loads((out / "meta.json").read_text())
        assert "filter_scale_1" in meta["display"]

    def test_bad_size(self, tmp_path):
        assert main(["filters", "--size", "8x8x8", "--out", str(tmp_path / "o")]) == 1
        assert main(["filters", "--size", "abc", "--out", str(tmp_path / "o")]) == 1


class TestVerify:
    def test_builtin_suite_passes(self, capsys):
        assert main(["verify"]) == 0
        out = capsys.readouterr().out
        assert "overall PASS" in out
        assert "shift_invariance" in out

    def test_input_signal(self, tmp_path, signal_file, capsys):
        assert main(["verify", "--input", str(signal_file), "--wavelet", "daub4"]) == 0
        assert "overall PASS" in capsys.readouterr().out

    def test_impossible_tolerance_fails(self, tmp_path, signal_file, capsys):
        code = main(
            ["verify", "--input", str(signal_file), "--tolerance", "1e-300"]
        )
        assert code == 1
        assert "FAIL" in capsys.readouterr().out

    def test_corrupt_bank_exits_2(self, tmp_path, signal_file, capsys):
        cache = tmp_path / "cache"
        cache.mkdir()
        (cache / "haar_128.awtb").write_bytes(b"deliberately corrupt")
        code = main(
            [
                "verify",
                "--input",
                str(signal_file),
                "--bank-cache",
                str(cache),
            ]
        )
        assert code == 2
        assert "CorruptBank" in capsys.readouterr().err


class TestImage:
    @pytest.fixture
    def image_file(self, tmp_path):
        pixels = np.rint(
            255.0 * (lambda a: (a - a.min()) / (a.max() - a.min()))(synthetic_image(16, 16))
        )
        path = tmp_path / "img.pgm"
        write_pgm(path, pixels, maxval=255)
        return path

    def test_outputs_match_naive_oracle(self, tmp_path, image_file):
        out = tmp_path / "out"
        assert main(["image", "--input", str(image_file), "--out", str(out)]) == 0
        pixels, _ = read_pgm(image_file)
        oracle = awt2d_full_naive(pixels, wavelet_filters("haar"))
        assert max_abs(read_raw_f64(out / "dc.f64"), oracle.dc) < 1e-9
        for s in range(1, 5):
            assert max_abs(read_raw_f64(out / f"scale_{s}.f64"), oracle.spectra[s - 1]) < 1e-9
        total = read_raw_f64(out / "dc.f64").copy()
        for s in range(1, 5):
            total += read_raw_f64(out / f"scale_{s}.f64")
        assert max_abs(total, pixels) < 1e-9

    def test_128_with_six_scales(self, tmp_path):
        pixels = np.rint(
            255.0
            * (lambda a: (a - a.min()) / (a.max() - a.min()))(synthetic_image(128, 128))
        )
        src = tmp_path / "big.pgm"
        write_pgm(src, pixels, maxval=255)
        out = tmp_path / "out"
        assert main(["image", "--input", str(src), "--out", str(out), "--levels", "6"]) == 0
        pgms = sorted(p.name for p in out.glob("*.pgm"))
        assert pgms == [
            "dc.pgm",
            "original.pgm",
            "scale_1.pgm",
            "scale_2.pgm",
            "scale_3.pgm",
            "scale_4.pgm",
            "scale_5.pgm",
            "scale_6.pgm",
        ]
        total = read_raw_f64(out / "dc.f64").copy()
        for s in range(1, 7):
            total += read_raw_f64(out / f"scale_{s}.f64")
        assert max_abs(total, pixels) < 1e-9
        meta = json.loads((out / "meta.json").read_text())
        assert meta["k"] == 6
        assert "dc" in meta["display"] and "lo" in meta["display"]["dc"]
        echoed, maxval = read_pgm(out / "original.pgm")
        assert maxval == 255 and np.array_equal(echoed, pixels)

    def test_odd_dimensions_exit_1(self, tmp_path, capsys):
        src = tmp_path / "odd.pgm"
        write_pgm(src, np.zeros((15, 16)), maxval=255)
        assert main(["image", "--input", str(src), "--out", str(tmp_path / "o")]) == 1
        assert "InvalidLength" in capsys.readouterr().err

    def test_malformed_pgm_exit_2(self, tmp_path, capsys):
        src = tmp_path / "bad.pgm"
        src.write_bytes(b"P5\n4 4\n255\nshort")
        assert main(["image", "--input", str(src), "--out", str(tmp_path / "o")]) == 2
