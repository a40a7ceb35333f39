"""Built-in invariant suite: the acceptance checks at reduced sizes.

Each check is a plain function on data so the test suite can re-run it with
deliberately corrupted inputs (negative controls).  ``run_selftest`` wires
them together at sizes small enough for an interactive run and returns one
pass/fail record per check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import theorem_bound, weak_bound_log
from .fourier import Component, build_block_sequence, fourier_coefficient
from .model import ModelParams, symbol_matrices, symbol_singular_values
from .pipeline import compute_series, fit_decay
from .skewlinalg import log_det, pfaffian, pfaffian_brute, singular_values
from .spectral import avram_parter_gap, square_plateau
from .toeplitz import assemble, symbol_norm

#: parameter sets exercised by the full acceptance suite
ACCEPTANCE_SETS = (
    ModelParams(0.5, 0.3, 2.0, 1.0),
    ModelParams(0.5, 0.3, 1.0, 3.0),
    ModelParams(-0.4, 1.7, 2.0, 2.0),
    ModelParams(0.9, 0.0, 4.0, 1.0),
)
CRITICAL_SET = ModelParams(0.0, 0.5, 1.0, 3.0)

#: reduced-size slope margin; the full acceptance gate uses 0.01 on [64, 256]
REDUCED_SLOPE_MARGIN = 0.02


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def midpoint_grid(points: int) -> np.ndarray:
    """Uniform grid offset by half a step: stays clear of the zeros of kappa,
    where the sign(0) = 0 convention makes both singular values collapse to
    phi_beta and the closed-form pair holds only as a one-sided limit."""
    return (np.arange(points) + 0.5) * (2.0 * math.pi / points)


def symbol_svd_deviation(p: ModelParams, xi: np.ndarray, matrices=None) -> float:
    """Max deviation between SVD of the symbol and the closed-form pair."""
    a = symbol_matrices(xi, p) if matrices is None else matrices
    sv = np.linalg.svd(a, compute_uv=False)  # descending along last axis
    lo, hi = symbol_singular_values(xi, p)
    expected = np.stack([hi, lo], axis=-1)
    return float(np.max(np.abs(sv - expected)))


def skew_deviation(entries: np.ndarray) -> float:
    return float(np.max(np.abs(entries + entries.T)))


def pf_det_residual(entries: np.ndarray) -> float:
    pf = pfaffian(entries)
    det = log_det(entries)
    return abs(2.0 * pf.log_abs - det.log_abs)


def coefficient_symmetry_deviation(seq, p: ModelParams, probe_x=(1, 2, 3, 8, 17)) -> float:
    """Worst violation (in units of tol) of the coefficient symmetries.

    Checks app[0] = 0, app purely imaginary, apm purely real, and
    app[-x] = -app[x] with the negative side recomputed by independent
    quadrature for the probe offsets.
    """
    tol = seq.tol
    worst = abs(seq.app[0])
    for x, v in seq.app.items():
        worst = max(worst, abs(v.real))
    for y, v in seq.apm.items():
        worst = max(worst, abs(v.imag))
    for x in probe_x:
        if x >= seq.n_max:
            continue
        indep = fourier_coefficient(-x, Component.PP, p, tol)
        worst = max(worst, abs(indep + seq.app[x]) / 2.0)
    return worst


def run_selftest(verbose: bool = False) -> list[CheckResult]:
    """Run every check at reduced size; print a table if ``verbose``."""
    results: list[CheckResult] = []

    def record(name: str, ok: bool, detail: str):
        results.append(CheckResult(name, bool(ok), detail))
        if verbose:
            print(f"[{'PASS' if ok else 'FAIL'}] {name:<28s} {detail}")

    # symbol singular values vs closed form
    xi = midpoint_grid(1024)
    dev = max(symbol_svd_deviation(p, xi) for p in ACCEPTANCE_SETS)
    record("symbol-singular-values", dev <= 1e-12, f"max dev {dev:.2e} (tol 1e-12)")

    p = ACCEPTANCE_SETS[0]
    seq = build_block_sequence(33, p, 1e-12)

    # coefficient symmetries
    dev = coefficient_symmetry_deviation(seq, p)
    record("coefficient-symmetries", dev <= 2.0 * seq.tol, f"max dev {dev:.2e}")

    # skew-symmetric assembly
    dev = skew_deviation(assemble(16, seq).entries)
    record("skew-assembly", dev <= max(2 * seq.err_estimate, 1e-13), f"max dev {dev:.2e}")

    # Pfaffian squared vs determinant, plus the brute-force oracle
    worst = 0.0
    for n in (1, 2, 4, 8, 16, 32):
        worst = max(worst, pf_det_residual(assemble(n, seq).entries))
    ok = worst <= 1e-6
    brute_dev = 0.0
    for n in (1, 2, 3):
        entries = assemble(n, seq).entries
        ref = pfaffian_brute(entries)
        val = pfaffian(entries).to_value()
        brute_dev = max(brute_dev, abs(val - ref) / abs(ref))
    record(
        "pfaffian-determinant",
        ok and brute_dev <= 1e-10,
        f"residual {worst:.2e}, brute dev {brute_dev:.2e}",
    )

    # norm bound
    bound = symbol_norm(p, grid=1024)
    smax = max(float(singular_values(assemble(n, seq).entries)[-1]) for n in (8, 32))
    record("norm-bound", smax <= bound + 1e-8, f"smax {smax:.6f} <= {bound:.6f}")

    # Avram-Parter with the compact square test function
    g = square_plateau(1.0)
    seq64 = build_block_sequence(64, p, 1e-12)
    gaps = [avram_parter_gap(n, g, seq64, p).gap for n in (16, 64)]
    ok = all(math.isfinite(v) and v > 0 for v in gaps) and gaps[1] <= gaps[0]
    record("avram-parter-gap", ok, f"gap(16)={gaps[0]:.2e} gap(64)={gaps[1]:.2e}")

    # decay-rate bound at reduced size
    series = compute_series(p, n_list=(8, 16, 24, 32, 48, 64, 96), tol=1e-12)
    fit = fit_decay(series, 32, 96)
    rate = series.bound.theorem_rate
    record(
        "decay-rate-bound",
        fit.slope <= rate + REDUCED_SLOPE_MARGIN,
        f"slope {fit.slope:.6f} vs bound {rate:.6f}",
    )

    # all-n determinant bound
    ok = all(
        r.log_abs_det <= weak_bound_log(r.n, p) + 1e-8 for r in series.rows
    )
    record("weak-determinant-bound", ok, f"checked {len(series.rows)} sizes")

    # equilibrium reduction: no temperature difference, no diagonal blocks
    eq = ModelParams(0.5, 0.3, 2.0, 2.0)
    eq_seq = build_block_sequence(8, eq, 1e-12)
    dev = max(abs(v) for v in eq_seq.app.values())
    diag_dev = float(
        np.max(np.abs(symbol_matrices(midpoint_grid(256), eq)[:, [0, 1], [0, 1]]))
    )
    record("equilibrium-reduction", dev == 0.0 and diag_dev == 0.0, f"diag dev {diag_dev:.2e}")

    # rate integral is strictly negative, finite even at criticality
    rates = [theorem_bound(q, 1e-9) for q in (*ACCEPTANCE_SETS, CRITICAL_SET)]
    ok = all(math.isfinite(b) and b < 0 for b in rates)
    record("rate-integral-negative", ok, f"min {min(rates):.4f} max {max(rates):.4f}")

    return results
