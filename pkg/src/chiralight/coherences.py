"""First-order coherences of the driven four-level atom.

Steady state of the three coupled coherence equations for the vector
(rho_14, rho_13, rho_12), with unit ground-state population and the
probe fields kept to first order.  Two computation paths exist on
purpose:

* :func:`solve_steady_state` -- the authoritative 3x3 linear solve
  Y = -M^-1 X for each probe drive vector;
* :func:`closed_form_betas` -- the explicit algebraic expressions for
  the same four coefficients.

The two must agree to 1e-10 relative wherever the system matrix is
well conditioned; the test suite enforces this equivalence.

All functions broadcast over numpy arrays of detunings / velocity
shifts, so a full (detuning grid) x (quadrature node) tensor can be
solved in one batched call.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularSystem
from .params import SystemParams, ValidatedConfig

# Frobenius condition number above which the steady-state system is
# treated as singular (double precision leaves ~4 digits of headroom).
COND_LIMIT = 1.0e12


@dataclass(frozen=True)
class ShiftedDetunings:
    """Detunings after the velocity (Doppler) replacement.

    d_p = delta_p + kv, d_b = delta_b + alpha_3*kv,
    d_1 = delta_1 + alpha_1*kv, d_2 = delta_2 + alpha_2*kv.
    Fields may be scalars or broadcast-compatible arrays.
    """

    d_p: object
    d_b: object
    d_1: object
    d_2: object
    kv: object


@dataclass(frozen=True)
class DenominatorTerms:
    """The complex diagonal terms A_1, A_3, A_2 of the coupled system."""

    a1: object
    a2: object
    a3: object


@dataclass(frozen=True)
class CoherenceCoefficients:
    """The four probe-response coefficients.

    rho_14 = omega_p*beta_ee + omega_b*beta_eb and
    rho_13 = omega_p*beta_be + omega_b*beta_bb reconstruct the
    steady-state coherences for any first-order probe amplitudes.
    """

    beta_ee: object
    beta_eb: object
    beta_be: object
    beta_bb: object


def shift_detunings(s: SystemParams, kv, delta_p=None) -> ShiftedDetunings:
    """Apply the velocity replacement at shift(s) ``kv``.

    ``delta_p`` overrides the probe detuning stored in ``s`` (used for
    grid sweeps); both arguments broadcast.
    """
    kv = np.asarray(kv, dtype=float)
    dp = s.delta_p if delta_p is None else np.asarray(delta_p, dtype=float)
    return ShiftedDetunings(
        d_p=dp + kv,
        d_b=s.delta_b + s.alpha_3 * kv,
        d_1=s.delta_1 + s.alpha_1 * kv,
        d_2=s.delta_2 + s.alpha_2 * kv,
        kv=kv,
    )


def denominator_terms(s: SystemParams, sd: ShiftedDetunings) -> DenominatorTerms:
    """Complex diagonal terms of the coupled coherence equations.

    a1 = i*d_p - (g1+g2)/2 and a3 = i*d_b - (g1+g2)/2 carry the
    one-photon widths; the ground-state coherence term
    a2 = i*(d_p - d_2) - (g1+g2+g3+g4)/2 carries the two-photon
    detuning of the rho_12 equation.
    """
    g12 = 0.5 * (s.gamma_1 + s.gamma_2)
    gall = 0.5 * (s.gamma_1 + s.gamma_2 + s.gamma_3 + s.gamma_4)
    a1 = 1j * np.asarray(sd.d_p) - g12
    a3 = 1j * np.asarray(sd.d_b) - g12
    a2 = 1j * (np.asarray(sd.d_p) - np.asarray(sd.d_2)) - gall
    return DenominatorTerms(a1=a1, a2=a2, a3=a3)


def build_system_matrix(p: ValidatedConfig, sd: ShiftedDetunings):
    """Coefficient matrix and probe drive vectors of the steady state.

    Returns (M, X_p, X_b) with M of shape (..., 3, 3) for the unknown
    vector (rho_14, rho_13, rho_12):

        row 0:  A1*rho_14 + (i/2)*O3*e^{+i phi}*rho_13 + (i/2)*O2*rho_12
        row 1:  (i/2)*O3*e^{-i phi}*rho_14 + A3*rho_13 + (i/2)*O1*rho_12
        row 2:  (i/2)*O2*rho_14 - (i/2)*O1*rho_13 + A2*rho_12

    X_p = ((i/2)*omega_p, 0, 0) and X_b = (0, (i/2)*omega_b, 0) are the
    inhomogeneous drives from the unit ground-state population.
    """
    s = p.system
    dt = denominator_terms(s, sd)
    a1, a2, a3 = np.broadcast_arrays(dt.a1, dt.a2, dt.a3)
    shape = a1.shape
    M = np.zeros(shape + (3, 3), dtype=complex)
    c3p = 0.5j * s.omega_3 * np.exp(1j * s.phi)
    c3m = 0.5j * s.omega_3 * np.exp(-1j * s.phi)
    M[..., 0, 0] = a1
    M[..., 0, 1] = c3p
    M[..., 0, 2] = 0.5j * s.omega_2
    M[..., 1, 0] = c3m
    M[..., 1, 1] = a3
    M[..., 1, 2] = 0.5j * s.omega_1
    M[..., 2, 0] = 0.5j * s.omega_2
    M[..., 2, 1] = -0.5j * s.omega_1
    M[..., 2, 2] = a2
    X_p = np.zeros(shape + (3,), dtype=complex)
    X_b = np.zeros(shape + (3,), dtype=complex)
    X_p[..., 0] = 0.5j * s.omega_p
    X_b[..., 1] = 0.5j * s.omega_b
    return M, X_p, X_b


def _det3(M):
    """Closed-form determinant of a (..., 3, 3) stack."""
    a, b, c = M[..., 0, 0], M[..., 0, 1], M[..., 0, 2]
    d, e, f = M[..., 1, 0], M[..., 1, 1], M[..., 1, 2]
    g, h, i = M[..., 2, 0], M[..., 2, 1], M[..., 2, 2]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _cond_frobenius(M):
    """Frobenius condition number ||M||_F * ||M^-1||_F via the adjugate."""
    a, b, c = M[..., 0, 0], M[..., 0, 1], M[..., 0, 2]
    d, e, f = M[..., 1, 0], M[..., 1, 1], M[..., 1, 2]
    g, h, i = M[..., 2, 0], M[..., 2, 1], M[..., 2, 2]
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    cof = np.stack([
        e * i - f * h, f * g - d * i, d * h - e * g,
        c * h - b * i, a * i - c * g, b * g - a * h,
        b * f - c * e, c * d - a * f, a * e - b * d,
    ], axis=-1)
    norm_m = np.sqrt((np.abs(M) ** 2).sum(axis=(-2, -1)))
    norm_adj = np.sqrt((np.abs(cof) ** 2).sum(axis=-1))
    with np.errstate(divide="ignore", invalid="ignore"):
        cond = np.where(det == 0, np.inf, norm_m * norm_adj / np.abs(det))
    return cond


def solve_steady_state(M, X_p, X_b) -> CoherenceCoefficients:
    """Solve Y = -M^-1 X for both drive vectors and normalize to betas.

    The probe amplitudes are read back from the drive vectors
    (X_p[...,0] = (i/2)*omega_p), so the returned coefficients are
    amplitude-independent.  Raises SingularSystem if the Frobenius
    condition number exceeds COND_LIMIT anywhere in the batch.
    """
    M = np.asarray(M, dtype=complex)
    cond = _cond_frobenius(M)
    if np.any(~np.isfinite(cond)) or np.any(cond > COND_LIMIT):
        worst = float(np.max(cond))
        raise SingularSystem(
            f"steady-state matrix condition number {worst:.3e} exceeds "
            f"{COND_LIMIT:.1e} (dark-state degeneracy?)")
    omega_p = np.asarray(X_p)[..., 0] / 0.5j
    omega_b = np.asarray(X_b)[..., 1] / 0.5j
    if np.any(omega_p == 0) or np.any(omega_b == 0):
        raise ValueError("zero probe drive: beta coefficients undefined")
    X = np.stack([np.asarray(X_p), np.asarray(X_b)], axis=-1)
    Y = -np.linalg.solve(M, X)
    return CoherenceCoefficients(
        beta_ee=Y[..., 0, 0] / omega_p,
        beta_be=Y[..., 1, 0] / omega_p,
        beta_eb=Y[..., 0, 1] / omega_b,
        beta_bb=Y[..., 1, 1] / omega_b,
    )


def steady_betas(p: ValidatedConfig, sd: ShiftedDetunings) -> CoherenceCoefficients:
    """Authoritative beta coefficients at the given shifted detunings.

    Same as build_system_matrix + solve_steady_state but with unit
    probe drives, so it stays defined when omega_p/omega_b are zero
    (the betas never depend on them).
    """
    M, X_p, X_b = build_system_matrix(p, sd)
    X_p = X_p.copy()
    X_b = X_b.copy()
    X_p[..., 0] = 0.5j
    X_b[..., 1] = 0.5j
    return solve_steady_state(M, X_p, X_b)


def closed_form_betas(p: ValidatedConfig, sd: ShiftedDetunings) -> CoherenceCoefficients:
    """Cross-check path: explicit algebraic beta coefficients.

    The common denominator is
        D = 2*(O1*O2*O3*sin(phi) - O1^2*A1 + O3^2*A2 + O2^2*A3
             + 4*A1*A2*A3),
    (the three-field interference term carries one power of each
    control field).  The numerators were disambiguated against the
    linear solve once and are locked in by the oracle-equivalence
    tests.
    """
    s = p.system
    dt = denominator_terms(s, sd)
    a1, a2, a3 = np.broadcast_arrays(dt.a1, dt.a2, dt.a3)
    o1, o2, o3, phi = s.omega_1, s.omega_2, s.omega_3, s.phi
    D = 2.0 * (o1 * o2 * o3 * np.sin(phi) - o1 ** 2 * a1 + o3 ** 2 * a2
               + o2 ** 2 * a3 + 4.0 * a1 * a2 * a3)
    scale = 2.0 * (abs(o1 * o2 * o3) + o1 ** 2 * np.abs(a1) + o3 ** 2 * np.abs(a2)
                   + o2 ** 2 * np.abs(a3) + 4.0 * np.abs(a1 * a2 * a3))
    if np.any(np.abs(D) <= 1e-14 * scale):
        raise SingularSystem("closed-form denominator vanishes")
    eip = np.exp(1j * phi)
    return CoherenceCoefficients(
        beta_ee=-1j * (4.0 * a2 * a3 - o1 ** 2) / D,
        beta_eb=-(1j * o1 * o2 + 2.0 * o3 * a2 * eip) / D,
        beta_be=(1j * o1 * o2 - 2.0 * o3 * a2 / eip) / D,
        beta_bb=-1j * (o2 ** 2 + 4.0 * a1 * a2) / D,
    )
