"""Acceptance suite: one test and one printed verdict line per criterion.

Run with ``pytest -s tests/test_acceptance.py`` to see the verdict lines.
Every expected value is either computed by an independent oracle inside
the test or is an exact closed-form quantity.
"""

import time

import numpy as np
import numpy.polynomial.polynomial as npoly
import pytest

from cycletransfer.cli import cli_main
from cycletransfer.decomposition import (
    PeriodSegmentation,
    scaled_abscissa,
    fit_trend,
    validate_periods,
)
from cycletransfer.errors import SeasonalityNotFoundError
from cycletransfer.seasonality import analyze_series, dominant_frequency, power_spectrum
from cycletransfer.tableio import PoseTable, read_csv, write_csv
from cycletransfer.transfer import (
    STATUS_TRANSFERRED,
    build_phi,
    mean_additive_factor,
    transfer_channel,
)

DENOISE_SEEDS = range(10, 20)


def _verdict(name, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'}: {name}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def _segmentation(lengths, reference_period, start=0):
    starts = [start]
    for length in lengths:
        starts.append(starts[-1] + int(length))
    return PeriodSegmentation(
        period_starts=np.asarray(starts, dtype=int),
        periods=list(zip(starts[:-1], starts[1:])),
        reference_period=float(reference_period),
        alpha=0.8,
    )


def test_reference_period_example():
    x = np.sin(2.0 * np.pi * 5.0 * np.arange(80) / 80.0)
    report = analyze_series(x)
    analyze_series(x)  # warm caches before timing
    elapsed = min(
        _timed(lambda: analyze_series(x)) for _ in range(3)
    )
    ok = report.reference_period == 16.0 and elapsed < 0.010
    _verdict(
        "reference period 80/5 reported as exactly 16",
        ok,
        f"l={report.reference_period}, {elapsed * 1000:.2f} ms",
    )


def _timed(fn):
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def test_dominant_frequency_exactness():
    t = np.arange(80, dtype=float)
    start = time.perf_counter()
    got = [
        dominant_frequency(power_spectrum(np.sin(2.0 * np.pi * c * t / 80.0)))
        for c in range(2, 21)
    ]
    elapsed = time.perf_counter() - start
    ok = got == list(range(2, 21)) and elapsed < 1.0
    _verdict("dominant frequency exact for 2..20 cycles", ok, f"{elapsed:.3f} s")


def test_parseval_energy_identity():
    rng = np.random.Generator(np.random.PCG64(2024))
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(64, 257))
        x = rng.standard_normal(n)
        s = power_spectrum(x)
        if n % 2 == 0:
            total = s[0] + 2.0 * s[1:-1].sum() + s[-1]
        else:
            total = s[0] + 2.0 * s[1:].sum()
        expected = float(np.sum((x - x.mean()) ** 2))
        worst = max(worst, abs(total - expected) / expected)
    _verdict("Parseval sum within 1e-9 relative on 100 series", worst < 1e-9, f"worst {worst:.2e}")


def test_trend_fit_oracle():
    rng = np.random.Generator(np.random.PCG64(77))
    t = scaled_abscissa(100)
    worst = 0.0
    for order in range(1, 6):
        for _ in range(4):
            coef = rng.uniform(-2.0, 2.0, order + 1)
            if abs(coef[order]) < 0.5:
                coef[order] = 0.5 if coef[order] >= 0 else -0.5
            direct = npoly.polyval(t, coef)
            model = fit_trend(direct, 30, 10)
            worst = max(worst, float(np.max(np.abs(model.values - direct))))
    _verdict("exact polynomials of orders 1-5 reproduced", worst < 1e-7, f"worst {worst:.2e}")


def _neighbor_window_oracle(candidates, l, alpha):
    """Independent re-statement of the neighbor-spacing validation."""
    window = (1.0 - alpha) * l
    retained = [
        p
        for p in candidates
        if any(q != p and abs(abs(q - p) - l) < window for q in candidates)
    ]
    periods = [
        (a, b) for a, b in zip(retained, retained[1:]) if abs((b - a) - l) < window
    ]
    if len(retained) < 2 or not periods:
        return None
    return retained, periods


def test_period_validation_oracle():
    rng = np.random.Generator(np.random.PCG64(404))
    checked = 0
    agreements = 0
    for _ in range(200):
        l = float(rng.uniform(8.0, 40.0))
        count = int(rng.integers(2, 15))
        candidates = np.unique(rng.integers(0, int(10 * l), size=count))
        expected = _neighbor_window_oracle([int(c) for c in candidates], l, 0.8)
        checked += 1
        if expected is None:
            try:
                validate_periods(candidates, l, 0.8)
            except SeasonalityNotFoundError:
                agreements += 1
            continue
        seg = validate_periods(candidates, l, 0.8)
        if list(seg.period_starts) == expected[0] and seg.periods == expected[1]:
            agreements += 1
    _verdict(
        "period validation matches exhaustive oracle on 200 sets",
        agreements == checked,
        f"{agreements}/{checked}",
    )


def test_mean_factor_oracle():
    rng = np.random.Generator(np.random.PCG64(606))
    worst = 0.0
    for _ in range(100):
        l_min = int(rng.integers(3, 21))
        k = int(rng.integers(2, 7))
        lengths = rng.integers(l_min, l_min + 7, size=k)
        seg = _segmentation(lengths, float(np.mean(lengths)))
        imap = build_phi(seg, l_min)
        residual = rng.standard_normal(imap.frames.size)
        got = mean_additive_factor(residual, imap)
        expected = np.array(
            [residual[imap.interval == j].mean() for j in range(1, l_min + 1)]
        )
        scale = np.maximum(np.abs(expected), 1e-30)
        worst = max(worst, float(np.max(np.abs(got - expected) / scale)))
    _verdict(
        "mean factor matches group-by oracle on 100 instances",
        worst < 1e-12,
        f"worst {worst:.2e}",
    )


def _denoising_pair(seed):
    t_ref = np.arange(80, dtype=float)
    reference = np.sin(2.0 * np.pi * (t_ref + 0.5) / 16.0)
    t = np.arange(200, dtype=float)
    truth = 0.01 * t + np.sin(2.0 * np.pi * (t + 0.5) / 16.0)
    rng = np.random.Generator(np.random.PCG64(seed))
    noisy = truth + 0.2 * rng.standard_normal(200)
    return reference, truth, noisy


def test_piecewise_constant_transfer():
    ok = True
    details = []
    for seed in DENOISE_SEEDS:
        reference, _, noisy = _denoising_pair(seed)
        refined, diag = transfer_channel(reference, noisy)
        if diag.status != STATUS_TRANSFERRED:
            ok = False
            details.append(f"seed {seed}: {diag.status}")
            continue
        distinct = np.unique(refined.applied_factor[refined.transferred]).size
        if distinct > diag.l_min:
            ok = False
            details.append(f"seed {seed}: {distinct} > l_min {diag.l_min}")
        if not np.array_equal(refined.values, refined.trend + refined.applied_factor):
            ok = False
            details.append(f"seed {seed}: additive split broken")
    _verdict(
        "refined minus trend takes at most l_min distinct values",
        ok,
        "; ".join(details) or f"{len(list(DENOISE_SEEDS))} channels",
    )


def test_end_to_end_denoising():
    improvements = []
    slowest = 0.0
    for seed in DENOISE_SEEDS:
        reference, truth, noisy = _denoising_pair(seed)
        start = time.perf_counter()
        refined, diag = transfer_channel(reference, noisy)
        slowest = max(slowest, time.perf_counter() - start)
        rmse_noisy = float(np.sqrt(np.mean((noisy - truth) ** 2)))
        rmse_refined = float(np.sqrt(np.mean((refined.values - truth) ** 2)))
        improvements.append(1.0 - rmse_refined / rmse_noisy)
    passing = sum(1 for gain in improvements if gain >= 0.30)
    ok = passing >= 9 and slowest < 1.0
    _verdict(
        "RMSE at least 30% lower on 9 of 10 seeds",
        ok,
        f"{passing}/10 seeds, worst gain {min(improvements):.2f}, "
        f"slowest {slowest * 1000:.0f} ms",
    )


def test_csv_round_trip_and_cli_exit_codes(tmp_path, capsys):
    rng = np.random.Generator(np.random.PCG64(909))
    round_trip_ok = True
    for i in range(50):
        n_channels = int(rng.integers(1, 8))
        n_frames = int(rng.integers(1, 60))
        names = [f"ch_{i}_{j}" for j in range(n_channels)]
        table = PoseTable(names, rng.uniform(-10.0, 10.0, size=(n_frames, n_channels)))
        path = tmp_path / f"t{i}.csv"
        write_csv(table, path)
        back = read_csv(path)
        if back.channel_names != table.channel_names:
            round_trip_ok = False
        if not np.allclose(back.values, table.values, atol=1e-8, rtol=0):
            round_trip_ok = False

    ref = tmp_path / "hr.csv"
    tgt = tmp_path / "lr.csv"
    assert cli_main(
        ["synth", "--n", "80", "--period", "16", "--trend-slope", "0",
         "--amplitude", "1", "--noise-sigma", "0", "--seed", "0", "--out", str(ref)]
    ) == 0
    assert cli_main(
        ["synth", "--n", "200", "--period", "16", "--trend-slope", "0.01",
         "--amplitude", "1", "--noise-sigma", "0.2", "--seed", "3", "--out", str(tgt)]
    ) == 0

    smoke = cli_main(
        ["transfer", "--ref", str(ref), "--target", str(tgt),
         "--out", str(tmp_path / "refined.csv")]
    )
    capsys.readouterr()

    usage = cli_main(["transfer", "--ref", str(ref), "--out", str(tmp_path / "o.csv")])
    usage_text = capsys.readouterr().err

    bad = tmp_path / "bad.csv"
    bad.write_text("frame,synth\n0,1.0\n1,abc\n")
    data_err = cli_main(
        ["transfer", "--ref", str(ref), "--target", str(bad),
         "--out", str(tmp_path / "o.csv")]
    )
    data_text = capsys.readouterr().err

    cli_ok = (
        smoke == 0
        and (tmp_path / "refined.csv").exists()
        and usage == 1
        and "usage" in usage_text
        and data_err == 2
        and "line 3" in data_text
    )
    _verdict(
        "CSV round trip within 1e-8 and CLI exit codes 0/1/2",
        round_trip_ok and cli_ok,
        f"round_trip={round_trip_ok}, codes=({smoke},{usage},{data_err})",
    )
