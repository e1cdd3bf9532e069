"""
End-to-end acceptance checks, one test per criterion.

Each test prints a single PASS/FAIL line (also repeated in the pytest terminal
summary) listing the measured quantities next to their tolerances.
"""

import math
import time

import numpy as np

from conftest import record_acceptance
from honeywalk.cli import linear_fit, main
from honeywalk.coin import CoinOperator, CoinPair, check_localization_condition
from honeywalk.haar import RandomStateStream, average_probability, haar_average_exact
from honeywalk.limitmap import LimitMap, compute_F, extremal_states, grover_state, limit_probability
from honeywalk.momentum import (
    evolution_operator_3,
    evolution_operator_4,
    evolution_operator_line,
    fourier_amplitudes,
    step_operator,
)
from honeywalk.walker import init, origin_series, radius_series, step
from oracles import haar_states, path_sum, tail_mean

SQ6 = math.sqrt(6)
OMEGA = np.exp(2j * np.pi / 3)
F_GROVER = np.array([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]) / 6
F_PLUS = np.array([[2, -1, -1, 0], [-1, 2, -1, 0], [-1, -1, 2, 0], [0, 0, 0, 0]]) / 12
F_MINUS = np.array([
    [0.320303, -0.070303, -0.070303, -0.179697],
    [-0.070303, 0.320303, -0.070303, -0.179697],
    [-0.070303, -0.070303, 0.320303, -0.179697],
    [-0.179697, -0.179697, -0.179697, 0.539090],
])
F_LINE = np.array([
    [1, SQ6 - 2, 2 * SQ6 - 5],
    [SQ6 - 2, SQ6 - 2, SQ6 - 2],
    [2 * SQ6 - 5, SQ6 - 2, 1],
]) / SQ6

EVEN_START, ODD_START = 300, 301


class Criterion:
    """Collects named checks and emits one PASS/FAIL line."""

    def __init__(self, number, title):
        self.number = number
        self.title = title
        self.checks = []

    def check(self, label, value, ok):
        self.checks.append((label, value, bool(ok)))

    def finish(self):
        ok = all(c[2] for c in self.checks)
        parts = "; ".join(f"{label} {value}" + ("" if good else " [X]")
                          for label, value, good in self.checks)
        record_acceptance(f"{'PASS' if ok else 'FAIL'}  [{self.number:>2}] {self.title}: {parts}")
        assert ok, f"criterion {self.number} failed: {parts}"


def within(value, target, tol):
    return abs(value - target) <= tol


def test_criterion_01_grover_limit_map(tmp_path):
    c = Criterion(1, "three-state Grover limit map")
    start = time.perf_counter()
    code = main(["limitmap", "--model", "honeycomb3", "--coin", "grover3", "--grid", "1024",
                 "--out", str(tmp_path)])
    elapsed = time.perf_counter() - start
    f = LimitMap.load(tmp_path / "F.json")
    err = np.abs(f.matrix - F_GROVER).max()
    c.check("exit", code, code == 0)
    c.check("max|F - exact| =", f"{err:.2e} (<= 1e-4)", err <= 1e-4)
    c.check("runtime", f"{elapsed:.1f}s (< 30s)", elapsed < 30)
    c.finish()


def test_criterion_02_localization_at_one_sixth(grover_pair):
    c = Criterion(2, "localization at 1/6")
    start = time.perf_counter()
    ts, p = origin_series(3, grover_pair, [1, 0, 0], 400)
    elapsed = time.perf_counter() - start
    tail = p[(ts >= EVEN_START) & (ts % 2 == 0)].mean()
    odd_max = p[1::2].max()
    c.check("even tail", f"{tail:.5f} (1/6 +- 0.01)", within(tail, 1 / 6, 0.01))
    c.check("max odd-t P", f"{odd_max} (== 0)", odd_max == 0.0)
    c.check("runtime", f"{elapsed:.1f}s (< 120s)", elapsed < 120)
    c.finish()


def test_criterion_03_grover_state_delocalizes(grover_pair, F_grover):
    c = Criterion(3, "Grover state delocalizes")
    psi = grover_state(3)
    ts, p = origin_series(3, grover_pair, psi, 400)
    tail = p[(ts >= EVEN_START) & (ts % 2 == 0)].mean()
    amp = np.linalg.norm(F_grover @ psi)
    c.check("even tail", f"{tail:.2e} (<= 0.01)", tail <= 0.01)
    c.check("|F psi| =", f"{amp:.2e} (<= 1e-6)", amp <= 1e-6)
    c.finish()


def test_criterion_04_maximum_quarter(grover_pair, F_grover):
    c = Criterion(4, "maximum 25%")
    psi = np.array([1, OMEGA, OMEGA**2]) / math.sqrt(3)
    ts, p = origin_series(3, grover_pair, psi, 400)
    tail = p[(ts >= EVEN_START) & (ts % 2 == 0)].mean()
    ext = extremal_states(F_grover)
    kernel_ok = ext.zero_states.shape[1] == 1 and within(
        abs(np.vdot(ext.zero_states[:, 0], grover_state(3))), 1.0, 1e-6)
    c.check("even tail", f"{tail:.5f} (0.25 +- 0.01)", within(tail, 0.25, 0.01))
    c.check("max_prob", f"{ext.max_prob:.8f} (0.25 +- 1e-6)", within(ext.max_prob, 0.25, 1e-6))
    c.check("kernel = Grover state", kernel_ok, kernel_ok)
    c.finish()


def test_criterion_05_haar_average_one_sixth(F_grover):
    c = Criterion(5, "Haar average 1/6")
    est = average_probability(F_grover, 10**6, seed=0)
    exact = haar_average_exact(F_grover)
    c.check("MC mean", f"{est.mean:.6f} +- {est.std_error:.1e} (3 sigma of 1/6)",
            within(est.mean, 1 / 6, 3 * est.std_error))
    c.check("tr(F^H F)/3", f"{exact:.8f} (1/6 +- 1e-6)", within(exact, 1 / 6, 1e-6))
    c.finish()


def test_criterion_06_dft_pair_localizes(dft_pair, F_dft, prop_dft, rng):
    c = Criterion(6, "H-coin localization")
    report = check_localization_condition(dft_pair)
    psi = np.array([1, 0, 0], dtype=complex)
    tail = tail_mean(prop_dft, psi, 0, EVEN_START)
    pred = limit_probability(F_dft, psi)
    worst = max(abs(tail_mean(prop_dft, s, 0, EVEN_START) - limit_probability(F_dft, s))
                for s in haar_states(rng, 3, 10))
    c.check("condition holds", report.holds, report.holds)
    c.check("even tail", f"{tail:.5f} (>= 0.02)", tail >= 0.02)
    c.check("|tail - |F_H psi|^2|", f"{abs(tail - pred):.2e} (<= 0.01)", abs(tail - pred) <= 0.01)
    c.check("10 random states, worst", f"{worst:.2e} (<= 0.01)", worst <= 0.01)
    c.finish()


def test_criterion_07_four_state_maps(maps4):
    c = Criterion(7, "four-state maps")
    e_plus = np.abs(maps4["F_plus"].matrix - F_PLUS).max()
    e_minus = np.abs(maps4["F_minus"].matrix - F_MINUS).max()
    even = np.sort(np.linalg.eigvalsh(maps4["F_even"].matrix))
    odd = np.sort(np.linalg.eigvalsh(maps4["F_odd"].matrix))
    e_even = np.abs(even - [0, 0.640606, 0.640606, 0.718787]).max()
    e_odd = np.abs(odd - [-0.718787, -0.140606, -0.140606, 0]).max()
    c.check("F+ err", f"{e_plus:.1e} (<= 1e-4)", e_plus <= 1e-4)
    c.check("F- err", f"{e_minus:.1e} (<= 5e-4)", e_minus <= 5e-4)
    c.check("even eig err", f"{e_even:.1e} (<= 5e-4)", e_even <= 5e-4)
    c.check("odd eig err", f"{e_odd:.1e} (<= 5e-4)", e_odd <= 5e-4)
    c.finish()


def test_criterion_08_four_state_limits(prop_grover4, maps4, rng):
    c = Criterion(8, "four-state limits")
    pair_state = np.array([1, 1, 0, 0]) / math.sqrt(2)
    top = np.array([-1, -1, -1, 3]) / (2 * math.sqrt(3))
    cases = [
        ("[1,1,0,0] even", pair_state, 0, 0.222901),
        ("[1,1,0,0] odd", pair_state, 1, 0.092699),
        ("max-state even", top, 0, 0.516655),
        ("max-state odd", top, 1, 0.516655),
    ]
    for label, psi, parity, target in cases:
        tail = tail_mean(prop_grover4, psi, parity, EVEN_START if parity == 0 else ODD_START)
        c.check(label, f"{tail:.5f} ({target} +- 0.01)", within(tail, target, 0.01))
    g = grover_state(4)
    for parity, name in ((0, "even"), (1, "odd")):
        tail = tail_mean(prop_grover4, g, parity, EVEN_START + parity)
        c.check(f"Grover {name}", f"{tail:.1e} (<= 0.01)", tail <= 0.01)
    worst = 0.0
    for psi in haar_states(rng, 4, 10):
        for parity, key in ((0, "F_even"), (1, "F_odd")):
            tail = tail_mean(prop_grover4, psi, parity, EVEN_START + parity)
            worst = max(worst, abs(tail - limit_probability(maps4[key], psi)))
    c.check("10 random states, worst", f"{worst:.1e} (<= 0.01)", worst <= 0.01)
    c.finish()


def test_criterion_09_four_state_haar_averages(maps4):
    c = Criterion(9, "four-state Haar averages")
    for key, target in (("F_even", 0.334352), ("F_odd", 0.139049)):
        est = average_probability(maps4[key], 10**6, seed=0)
        tol = 3 * est.std_error + 5e-4
        c.check(key, f"{est.mean:.6f} ({target} +- {tol:.1e})", within(est.mean, target, tol))
    c.finish()


def test_criterion_10_line_comparison(F_line, prop_line, rng):
    c = Criterion(10, "one-dimensional comparison")
    err = np.abs(F_line.matrix - F_LINE).max()
    ev = np.sort(np.linalg.eigvalsh(F_line.matrix))
    ev_err = np.abs(ev - [0, SQ6 - 2, 3 - SQ6]).max()
    ext = extremal_states(F_line)
    deloc = np.linalg.norm(F_line @ (np.array([1, -2, 1]) / SQ6))
    est = average_probability(F_line, 10**6, seed=0)
    tol = 3 * est.std_error + 5e-4
    worst = max(abs(tail_mean(prop_line, s, None, 301) - limit_probability(F_line, s))
                for s in haar_states(rng, 3, 10))
    c.check("F' err", f"{err:.1e} (<= 1e-5)", err <= 1e-5)
    c.check("eig err", f"{ev_err:.1e} (<= 1e-6)", ev_err <= 1e-6)
    c.check("max prob", f"{ext.max_prob:.6f} (|3-sqrt6|^2, not 0.202)",
            within(ext.max_prob, (3 - SQ6) ** 2, 1e-6) and not within(ext.max_prob, 0.202, 0.01))
    c.check("|F' [1,-2,1]/sqrt6|", f"{deloc:.1e} (<= 1e-6)", deloc <= 1e-6)
    c.check("MC mean", f"{est.mean:.6f} (0.1684 +- {tol:.1e})", within(est.mean, 0.1684, tol))
    c.check("line simulation, worst", f"{worst:.1e} (<= 0.01)", worst <= 0.01)
    c.finish()


def test_criterion_11_spreading(grover_pair, dft_pair):
    c = Criterion(11, "ballistic spreading")
    slopes = {}
    for name, pair in (("G", grover_pair), ("H", dft_pair)):
        ts, r = radius_series(pair, [1, 0, 0], 400)
        sel = ts >= 50
        slope, _, r2 = linear_fit(ts[sel], r[sel])
        slopes[name] = slope
        c.check(f"{name} slope/R^2", f"{slope:.4f}/{r2:.6f} (R^2 >= 0.999)", r2 >= 0.999)
    rel = abs(slopes["G"] - slopes["H"]) / max(slopes.values())
    c.check("relative slope gap", f"{rel:.1%} (>= 5%)", rel >= 0.05)
    c.finish()


def test_criterion_12_property_suites(grover_pair, dft_pair, grover4_pair, rng):
    c = Criterion(12, "property suites")

    k, l = rng.uniform(-np.pi, np.pi, size=(2, 1000))
    ops = [evolution_operator_3(grover_pair, k, l), evolution_operator_3(dft_pair, k, l),
           evolution_operator_4(k, l), step_operator(dft_pair, k, l), evolution_operator_line(k)]
    unit = max(np.abs(np.conj(np.swapaxes(u, -1, -2)) @ u - np.eye(u.shape[-1])).max() for u in ops)
    c.check("unitarity", f"{unit:.1e} (<= 1e-12)", unit <= 1e-12)

    drift = 0.0
    for pair in (grover_pair, dft_pair, grover4_pair):
        state = init(pair.dim, haar_states(rng, pair.dim, 1)[0], 100)
        prev = 1.0
        for _ in range(100):
            now = step(state, pair).norm()
            drift = max(drift, abs(now - prev))
            prev = now
    c.check("norm drift/step", f"{drift:.1e} (<= 1e-14)", drift <= 1e-14)

    fourier = 0.0
    for pair in (grover_pair, dft_pair, grover4_pair):
        psi = haar_states(rng, pair.dim, 1)[0]
        state = init(pair.dim, psi, 8)
        for t in range(1, 9):
            step(state, pair)
            ref = fourier_amplitudes(pair, psi, t, grid_n=256, half_width=state.window)
            fourier = max(fourier, np.abs(state.amplitudes - ref).max())
    c.check("Fourier vs real space", f"{fourier:.1e} (<= 1e-8)", fourier <= 1e-8)

    paths = 0.0
    for d in (3, 4):
        coins = []
        for _ in range(2):
            q, r = np.linalg.qr(rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
            coins.append(CoinOperator(q))
        pair = CoinPair(*coins)
        psi = haar_states(rng, d, 1)[0]
        state = init(d, psi, 4)
        W = state.window
        for t in range(1, 5):
            step(state, pair)
            ref = np.zeros_like(state.amplitudes)
            for site, vec in path_sum(pair, psi, t).items():
                ref[site.s, :, site.x + W, site.y + W] = vec
            paths = max(paths, np.abs(state.amplitudes - ref).max())
    c.check("path-sum oracle", f"{paths:.1e} (<= 1e-12)", paths <= 1e-12)

    doubling = max(np.abs(compute_F(None, n).matrix - compute_F(None, 2 * n).matrix).max()
                   for n in (128, 256, 512))
    c.check("grid doubling", f"{doubling:.1e} (<= 1e-4)", doubling <= 1e-4)

    marg = 0.0
    for d in (3, 4):
        psi = RandomStateStream(d, seed=12).sample(10**6)
        marg = max(marg, np.abs(np.mean(np.abs(psi) ** 2, axis=0) - 1 / d).max())
    c.check("Haar marginals", f"{marg:.1e} (<= 0.002)", marg <= 0.002)
    c.finish()
