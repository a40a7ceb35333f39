"""Truncated block Toeplitz matrices built from a BlockSequence.

The truncation with n block rows is the dense 2n x 2n matrix whose (i, j)
block is a_{i-j}.  Because the blocks satisfy a_{-x} = -a_x^T exactly by
assembly, the truncation is skew-symmetric, which is what makes its Pfaffian
meaningful.  The operator norm of any truncation is bounded by the essential
supremum of the symbol's largest singular value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fourier import BlockSequence
from .model import ModelParams, mu

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class TruncatedToeplitz:
    """Dense truncation with ``n`` block rows (``2n x 2n`` entries)."""

    n: int
    entries: np.ndarray
    source_params: ModelParams
    source_err: float

    @property
    def dim(self) -> int:
        return 2 * self.n


def assemble(n: int, seq: BlockSequence) -> TruncatedToeplitz:
    """Dense truncation of ``n`` block rows from ``seq``.

    The leading 2m x 2m corner equals ``assemble(m, seq).entries``
    bit-for-bit for every m <= n.

    Raises
    ------
    ValueError
        If ``seq`` does not hold enough coefficients (``seq.n_max < n``) or
        if the assembled matrix fails the skew-symmetry check.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if seq.n_max < n:
        raise ValueError(f"sequence holds n_max={seq.n_max} < requested n={n}")
    out = np.empty((2 * n, 2 * n), dtype=complex)
    for i in range(n):
        for j in range(n):
            out[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = seq.blocks[i - j]
    asym = float(np.max(np.abs(out + out.T)))
    scale = float(np.max(np.abs(out))) if out.size else 0.0
    if asym > max(2.0 * seq.err_estimate, 1e-14 * scale):
        raise ValueError(f"assembled truncation is not skew-symmetric (dev {asym:.3e})")
    return TruncatedToeplitz(
        n=int(n), entries=out, source_params=seq.params, source_err=seq.err_estimate
    )


def symbol_norm(p: ModelParams, grid: int = 4096) -> float:
    """Largest singular value of the symbol, maximized over the circle.

    The largest singular value at angle xi is tanh(beta_r*mu(xi)/2) (the
    identity is verified independently in the model tests), so this maximizes
    that expression on a uniform grid and then refines around the best grid
    point by golden-section search.  A grid approximation of the essential
    supremum; strictly below 1 for finite temperatures.
    """
    if grid < 64:
        raise ValueError("grid must be >= 64")

    def top_sv(xi):
        return np.tanh(0.5 * p.beta_r * mu(xi, p))

    xi = np.arange(grid) * (_TWO_PI / grid)
    vals = top_sv(xi)
    k = int(np.argmax(vals))
    lo, hi = xi[k] - _TWO_PI / grid, xi[k] + _TWO_PI / grid
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c, d = b - inv_phi * (b - a), a + inv_phi * (b - a)
    fc, fd = top_sv(c), top_sv(d)
    for _ in range(60):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = top_sv(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = top_sv(d)
    return float(max(vals[k], fc, fd))


def dump_matrix(t: TruncatedToeplitz, path) -> None:
    """Raw binary dump: row-major (re, im) float64 pairs, little-endian."""
    data = np.ascontiguousarray(t.entries.astype("<c16"))
    with open(path, "wb") as fh:
        fh.write(data.tobytes())
