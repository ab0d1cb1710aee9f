"""Exact two-amplitude model of the search dynamics.

Starting from the uniform superposition, every unmarked basis state carries
one common amplitude ``a`` and every marked one a common amplitude ``b``, so
a full iteration reduces to a fixed 2x2 linear map on (a, b). The map is a
rotation in disguise: with the half-angle

    theta = arcsin(sqrt(n2 / n_total))

its eigenvalues are exactly exp(+/- 2i*theta), which yields closed-form
trajectories valid for every instance size, not just asymptotically. The
small-angle stand-in theta ~ sqrt(n2/N) (the usual hand-derivation shortcut)
is kept as a secondary mode for comparison runs.
"""

from __future__ import annotations

import math
import operator
import warnings
from dataclasses import dataclass

import numpy as np

from .params import RegimeWarning, SearchParams

THETA_EXACT = "exact"
THETA_APPROX = "paper"

_POWER_IMAG_TOL = 1e-13


@dataclass(frozen=True)
class TwoLevelState:
    """Shared amplitudes: ``a`` per unmarked basis state, ``b`` per marked one."""

    a: float
    b: float


@dataclass(frozen=True)
class IterationMatrix:
    """The 2x2 map applied to (a, b) by one full iteration.

    entries = [[(n1-n2)/N, -2*n2/N], [2*n1/N, (n1-n2)/N]]; determinant 1.
    """

    entries: np.ndarray


@dataclass(frozen=True)
class Spectral:
    """Eigendecomposition of the iteration matrix.

    ``s_inverse @ T @ s_matrix`` is diag(lambda_plus, lambda_minus), with
    lambda_plus/minus = exp(+/- 2i*theta) on the unit circle.
    """

    lambda_plus: complex
    lambda_minus: complex
    s_matrix: np.ndarray
    s_inverse: np.ndarray
    theta: float


def rotation_angle(params: SearchParams, theta_mode: str = THETA_EXACT) -> float:
    """Half-angle of the per-iteration rotation.

    ``exact`` is arcsin(sqrt(n2/N)), evaluated as atan2(sqrt(n2), sqrt(n1)):
    the same angle, but conditioned well even when n2/N approaches 1, where
    arcsin amplifies the argument rounding. ``paper`` is the small-angle
    stand-in sqrt(n2/N), accurate only for n2 << N.
    """
    if theta_mode == THETA_EXACT:
        return math.atan2(math.sqrt(params.n2), math.sqrt(params.n1))
    if theta_mode == THETA_APPROX:
        return math.sqrt(params.n2 / params.n_total)
    raise ValueError(f"unknown theta_mode {theta_mode!r}, expected 'exact' or 'paper'")


def uniform_state(params: SearchParams) -> TwoLevelState:
    """The starting point a = b = 1/sqrt(N)."""
    amp = 1.0 / math.sqrt(params.n_total)
    return TwoLevelState(amp, amp)


def build_matrix(params: SearchParams) -> IterationMatrix:
    n1, n2, n = params.n1, params.n2, params.n_total
    diag = (n1 - n2) / n
    entries = np.array([[diag, -2.0 * n2 / n], [2.0 * n1 / n, diag]])
    return IterationMatrix(entries)


def step(state: TwoLevelState, params: SearchParams) -> TwoLevelState:
    """One iteration of the recursion: (a, b) <- T (a, b)."""
    n1, n2, n = params.n1, params.n2, params.n_total
    diag = (n1 - n2) / n
    a = diag * state.a - (2.0 * n2 / n) * state.b
    b = (2.0 * n1 / n) * state.a + diag * state.b
    return TwoLevelState(a, b)


def spectral_decompose(params: SearchParams) -> Spectral:
    """Eigenvalues lambda+/- = ((n1-n2) +/- 2i*sqrt(n1*n2))/N and the
    eigenvector matrix S (columns ordered lambda+, lambda-) with its inverse.
    """
    n1, n2, n = params.n1, params.n2, params.n_total
    lam = complex((n1 - n2) / n, 2.0 * math.sqrt(n1 * n2) / n)
    rho = math.sqrt(n1 / n2)
    s = np.array([[1.0, 1.0], [-1j * rho, 1j * rho]], dtype=complex)
    s_inv = 0.5 * np.array([[1.0, 1j / rho], [1.0, -1j / rho]], dtype=complex)
    theta = rotation_angle(params)
    return Spectral(lam, lam.conjugate(), s, s_inv, theta)


def matrix_power(params: SearchParams, n: int) -> np.ndarray:
    """T**n through the spectral form S diag(lam+**n, lam-**n) S^-1.

    Since lam+/- = exp(+/- 2i*theta) exactly, the diagonal powers are
    exp(+/- 2in*theta). The 2x2 products are unrolled; the imaginary parts
    must cancel below ``_POWER_IMAG_TOL`` (a residue above that indicates a
    sign error in S or S^-1) and are discarded after the check.
    """
    n = operator.index(n)
    if n < 0:
        raise ValueError(f"power must be >= 0, got {n}")
    phi = 2.0 * n * rotation_angle(params)
    lam_pow = complex(math.cos(phi), math.sin(phi))
    conj = lam_pow.conjugate()
    rho = math.sqrt(params.n1 / params.n2)
    e00 = 0.5 * (lam_pow + conj)
    e01 = (0.5j / rho) * (lam_pow - conj)
    e10 = (0.5j * rho) * (conj - lam_pow)
    residue = max(abs(e00.imag), abs(e01.imag), abs(e10.imag))
    if residue > _POWER_IMAG_TOL:
        raise ArithmeticError(f"imaginary residue {residue!r} in matrix power")
    return np.array([[e00.real, e01.real], [e10.real, e00.real]])


def closed_form(params: SearchParams, n: int, theta_mode: str = THETA_EXACT) -> TwoLevelState:
    """Amplitudes after n iterations, directly:

    a_n = cos((2n+1) theta) / sqrt(n1),  b_n = sin((2n+1) theta) / sqrt(n2).

    With the exact theta this reproduces the recursion at every n, including
    n = 0 where it gives the uniform start.
    """
    if n < 0:
        raise ValueError(f"iteration count must be >= 0, got {n}")
    phi = (2 * n + 1) * rotation_angle(params, theta_mode)
    return TwoLevelState(
        math.cos(phi) / math.sqrt(params.n1),
        math.sin(phi) / math.sqrt(params.n2),
    )


def success_probability(params: SearchParams, n: int, theta_mode: str = THETA_EXACT) -> float:
    """Probability of measuring a marked state after n iterations.

    Equals n2 * b_n**2 = sin((2n+1) theta)**2.
    """
    b = closed_form(params, n, theta_mode).b
    return params.n2 * b * b


def optimal_iterations(params: SearchParams, theta_mode: str = THETA_EXACT) -> int:
    """Iteration count that maximises the success probability:
    round(pi / (4 theta) - 1/2), nearest integer with ties toward even,
    clamped below at zero.

    Emits ``RegimeWarning`` when n2 > N/4 (the first iteration already
    reverses the collective amplitude, so the peak is low) and in particular
    when n1 == n2, where no iteration count ever beats probability 1/2.
    """
    if params.n1 == params.n2:
        warnings.warn(
            "n1 == n2: success probability is stuck at 1/2, the search is invalid",
            RegimeWarning,
            stacklevel=2,
        )
    elif 4 * params.n2 > params.n_total:
        warnings.warn(
            "n2 > n_total/4: inefficient regime, the optimum is below certainty",
            RegimeWarning,
            stacklevel=2,
        )
    theta = rotation_angle(params, theta_mode)
    return max(0, round(math.pi / (4.0 * theta) - 0.5))
