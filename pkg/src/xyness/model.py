"""Physical parameters and momentum-space functions of the XY chain steady state.

The chain couples a finite segment to two infinite reservoirs held at inverse
temperatures ``beta_l`` and ``beta_r``.  All steady-state correlations are
encoded by a 2x2 matrix symbol ``a(xi)`` on the unit circle, built out of two
dispersion functions,

    kappa(xi) = 2*lambda*sin(xi) - (1 - gamma^2)*sin(2*xi)
    mu(xi)    = sqrt((cos(xi) - lambda)^2 + gamma^2*sin(xi)^2)

and the thermal weights

    phi_alpha(xi) = sinh(alpha*mu) / (cosh(beta*mu) + cosh(delta*mu)),

with beta = (beta_r + beta_l)/2 and delta = (beta_r - beta_l)/2.  The two
singular values of ``a(xi)`` are tanh(beta_l*mu/2) and tanh(beta_r*mu/2),
which is the identity everything downstream (decay bounds, spectral limits)
relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit


class DomainError(ValueError):
    """Evaluation requested at a point where the quantity is undefined (mu = 0)."""


class ConsistencyError(RuntimeError):
    """Two independent evaluation routes of the same quantity disagree."""


@dataclass(frozen=True)
class ModelParams:
    """Validated physical parameters of the two-reservoir XY chain.

    Parameters
    ----------
    gamma : float
        Anisotropy of the spin-spin coupling, in (-1, 1).
    lam : float
        External magnetic field.
    beta_l, beta_r : float
        Inverse temperatures of the left and right reservoir, both > 0.

    Notes
    -----
    Reservoir labels are normalized so that ``beta_l <= beta_r`` (i.e.
    ``delta >= 0``); if the inputs arrive the other way round they are
    swapped and ``swapped`` is set.  The correlation magnitudes only depend
    on the unordered pair, so the swap is pure bookkeeping.

    ``critical`` flags parameter sets where ``mu`` has zeros on the circle:
    (gamma = 0, |lam| <= 1) or (gamma != 0, |lam| = 1).
    """

    gamma: float
    lam: float
    beta_l: float
    beta_r: float
    beta: float = field(init=False)
    delta: float = field(init=False)
    critical: bool = field(init=False)
    swapped: bool = field(init=False)

    def __post_init__(self):
        gamma, lam = float(self.gamma), float(self.lam)
        bl, br = float(self.beta_l), float(self.beta_r)
        if not (math.isfinite(gamma) and abs(gamma) < 1):
            raise ValueError(f"gamma must be finite with |gamma| < 1, got {gamma}")
        if not math.isfinite(lam):
            raise ValueError(f"lambda must be finite, got {lam}")
        if not (math.isfinite(bl) and bl > 0):
            raise ValueError(f"beta_l must be finite and > 0, got {bl}")
        if not (math.isfinite(br) and br > 0):
            raise ValueError(f"beta_r must be finite and > 0, got {br}")
        swapped = bl > br
        if swapped:
            bl, br = br, bl
        critical = (gamma == 0.0 and abs(lam) <= 1.0) or (gamma != 0.0 and abs(lam) == 1.0)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "beta_l", bl)
        object.__setattr__(self, "beta_r", br)
        object.__setattr__(self, "beta", 0.5 * (br + bl))
        object.__setattr__(self, "delta", 0.5 * (br - bl))
        object.__setattr__(self, "critical", critical)
        object.__setattr__(self, "swapped", swapped)


@dataclass(frozen=True)
class SymbolValue:
    """Value of the 2x2 matrix symbol at one angle.

    ``entries`` has a real trace-free diagonal and off-diagonal entries of
    equal modulus phi_beta(xi).
    """

    entries: np.ndarray
    xi: float


def kappa(xi, p: ModelParams):
    """Current-direction dispersion 2*lam*sin(xi) - (1 - gamma^2)*sin(2*xi).

    Odd under xi -> -xi; its sign selects which reservoir a momentum mode
    equilibrates to in the steady state.
    """
    xi = np.asarray(xi, dtype=float)
    out = 2.0 * p.lam * np.sin(xi) - (1.0 - p.gamma**2) * np.sin(2.0 * xi)
    return out if out.ndim else float(out)


def mu(xi, p: ModelParams):
    """Quasi-particle energy sqrt((cos(xi) - lam)^2 + gamma^2*sin(xi)^2).

    Nonnegative and even under xi -> -xi; vanishes somewhere on the circle
    only for critical parameters.
    """
    xi = np.asarray(xi, dtype=float)
    out = np.hypot(np.cos(xi) - p.lam, p.gamma * np.sin(xi))
    return out if out.ndim else float(out)


def _phi_from_mu(alpha: float, m, beta: float, delta: float):
    """sinh(alpha*m) / (cosh(beta*m) + cosh(delta*m)), overflow-safe.

    Evaluated in exponent-shifted form so that beta*m up to ~1e308/m is fine;
    the naive sinh/cosh would overflow already at beta*m ~ 710.
    """
    m = np.asarray(m, dtype=float)
    a = abs(alpha)
    shift = max(a, beta, delta)  # all exponents below are <= 0
    num = np.exp((a - shift) * m) * (-np.expm1(-2.0 * a * m))
    den = np.exp((beta - shift) * m) * (1.0 + np.exp(-2.0 * beta * m)) + np.exp(
        (delta - shift) * m
    ) * (1.0 + np.exp(-2.0 * delta * m))
    out = math.copysign(1.0, alpha) * num / den
    return out if out.ndim else float(out)


def phi(alpha: float, xi, p: ModelParams):
    """Thermal weight phi_alpha(xi) = sinh(alpha*mu)/(cosh(beta*mu) + cosh(delta*mu)).

    In practice alpha is ``p.beta`` or ``p.delta``; any finite real is
    accepted.  For delta = 0 and alpha = beta this reduces to
    tanh(beta*mu/2) by the half-angle identity.
    """
    if not math.isfinite(alpha):
        raise ValueError(f"alpha must be finite, got {alpha}")
    return _phi_from_mu(alpha, mu(xi, p), p.beta, p.delta)


def symbol_singular_values(xi, p: ModelParams):
    """The two singular values of a(xi): (tanh(beta_l*mu/2), tanh(beta_r*mu/2)).

    Equal to (phi_beta - phi_delta, phi_beta + phi_delta) by sum-to-product
    hyperbolic identities; this closed form is used for the spectral limit
    integrals and the operator-norm bound.
    """
    m = mu(xi, p)
    return np.tanh(0.5 * p.beta_l * m), np.tanh(0.5 * p.beta_r * m)


def q_factor(xi, p: ModelParams):
    """Unit-modulus factor (cos(xi) - lam - i*gamma*sin(xi)) * e^{i*xi} / mu(xi).

    Raises
    ------
    DomainError
        If mu vanishes at any requested angle (critical parameters only);
        the factor has no limit there.
    """
    xi = np.asarray(xi, dtype=float)
    m = mu(xi, p)
    if np.any(np.asarray(m) == 0.0):
        raise DomainError("q_factor undefined at a zero of mu")
    out = (np.cos(xi) - p.lam - 1j * p.gamma * np.sin(xi)) * np.exp(1j * xi) / m
    return out if out.ndim else complex(out)


def symbol_matrices(xi, p: ModelParams) -> np.ndarray:
    """Stack of symbol values a(xi) with shape (..., 2, 2).

    a(xi) = [[ sign(kappa)*phi_delta, -q*phi_beta          ],
             [ conj(q)*phi_beta,      -sign(kappa)*phi_delta]]

    with sign(0) taken as 0; see :func:`symbol`.
    """
    xi = np.asarray(xi, dtype=float)
    diag = np.sign(kappa(xi, p)) * phi(p.delta, xi, p)
    off = q_factor(xi, p) * phi(p.beta, xi, p)
    out = np.empty(xi.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = diag
    out[..., 0, 1] = -off
    out[..., 1, 0] = np.conj(off)
    out[..., 1, 1] = -diag
    return out


def symbol(xi: float, p: ModelParams) -> SymbolValue:
    """Symbol value a(xi) at one angle.

    At zeros of kappa the diagonal uses sign(0) = 0; these points form a
    measure-zero set and never enter the coefficient integrals because the
    quadrature panels are split exactly there.
    """
    return SymbolValue(entries=symbol_matrices(float(xi), p), xi=float(xi))


def _pauli_direction(xi, p: ModelParams):
    """Unit direction (h2, h3) = (-gamma*sin(xi), cos(xi) - lam)/mu of the 1-particle energy."""
    xi = np.asarray(xi, dtype=float)
    m = mu(xi, p)
    if np.any(np.asarray(m) == 0.0):
        raise DomainError("direction vector undefined at a zero of mu")
    return -p.gamma * np.sin(xi) / m, (np.cos(xi) - p.lam) / m


def two_point_operator(xi: float, p: ModelParams) -> np.ndarray:
    """Steady-state 2-point operator S(xi) as a 2x2 matrix.

    Computed two independent ways and cross-checked entrywise to 1e-10:

    (i) closed-form Fermi inverse, using that the exponent is a scalar shift
        of the 1-particle energy matrix h(xi), which has eigenvalues +-mu;
    (ii) Pauli decomposition
        S = s0*I + s2*sigma2 + s3*sigma3,
        s0 = 1/2 + sign(kappa)*phi_delta/2,
        (s2, s3) = phi_beta/2 * (-gamma*sin(xi), cos(xi) - lam)/mu.

    The sigma1 component is identically zero.  Returns (ii).

    Raises
    ------
    DomainError
        At exact zeros of mu (direction vector undefined).
    ConsistencyError
        If the two routes disagree beyond 1e-10 entrywise.
    """
    xi = float(xi)
    m = mu(xi, p)
    s = float(np.sign(kappa(xi, p)))
    h2, h3 = _pauli_direction(xi, p)

    # route (ii): Pauli decomposition
    s0 = 0.5 + 0.5 * s * phi(p.delta, xi, p)
    pb = phi(p.beta, xi, p)
    s2, s3 = 0.5 * pb * h2, 0.5 * pb * h3
    S_pauli = np.array([[s0 + s3, -1j * s2], [1j * s2, s0 - s3]], dtype=complex)

    # route (i): Fermi weights on the +-mu eigenspaces of h.  The Fermi
    # function is evaluated through expit, which saturates instead of
    # overflowing for large arguments.
    w_plus = expit(p.beta * m + p.delta * s * m)
    w_minus = expit(-p.beta * m + p.delta * s * m)
    hhat = np.array([[h3, -1j * h2], [1j * h2, -h3]], dtype=complex)
    eye = np.eye(2, dtype=complex)
    S_fermi = w_plus * (eye + hhat) / 2 + w_minus * (eye - hhat) / 2

    dev = float(np.max(np.abs(S_pauli - S_fermi)))
    if dev > 1e-10:
        raise ConsistencyError(
            f"two-point operator routes disagree by {dev:.3e} at xi={xi!r}"
        )
    return S_pauli


def mu_sup(p: ModelParams) -> float:
    """Essential supremum of mu over the circle.

    mu^2 is a convex quadratic in cos(xi), so the maximum sits at
    cos(xi) = +-1, giving mu_sup = 1 + |lam| exactly.
    """
    return 1.0 + abs(p.lam)


def mu_min(p: ModelParams) -> float:
    """Minimum of mu over the circle (0 exactly when ``p.critical``)."""
    c_star = p.lam / (1.0 - p.gamma**2)
    if abs(c_star) <= 1.0:
        # interior stationary point of the quadratic in cos(xi)
        val = p.gamma**2 * (1.0 - p.gamma**2 - p.lam**2) / (1.0 - p.gamma**2)
        return math.sqrt(max(val, 0.0))
    return abs(1.0 - abs(p.lam))


def mu_zeros(p: ModelParams) -> np.ndarray:
    """Zeros of mu in [0, 2*pi), sorted; empty unless ``p.critical``."""
    if not p.critical:
        return np.empty(0)
    if p.gamma == 0.0:
        x0 = math.acos(max(-1.0, min(1.0, p.lam)))
        zeros = {x0, 2.0 * math.pi - x0} if 0.0 < x0 < math.pi else {x0}
    else:
        zeros = {0.0} if p.lam == 1.0 else {math.pi}
    return np.array(sorted(z % (2.0 * math.pi) for z in zeros))
