"""Chiral refractive index, group index, group velocity and delay.

The chiral refractive index is

    n = sqrt((1 + chi_e)*(1 + chi_m) - (xi_EH + xi_HE)^2/4)
        + (i/2)*(xi_EH - xi_HE)

with the square-root branch chosen by continuity along the spectrum,
seeded at the grid point farthest from the branch point (maximal
|1 + chi_e|) and anchored so the zero-response limit gives +1.

The group index keeps the complex index all the way through and takes
the real part only at the end:

    N_g = Re[ n + (omega_14 - Delta_p) * dn/dDelta_p ]

with dn/dDelta_p from Richardson-extrapolated central differences.
Group velocity and delay follow definitionally: v_g = c/N_g and
tau = L*(N_g - 1)/c (negative = advance).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import response as response_mod
from .errors import BranchJump, GridTooCoarse, NoCrossoverInRange, NumericalError
from .params import C_LIGHT, ValidatedConfig, with_overrides

# |n_{i+1} - n_i| above this along a spectrum means the branch tracker
# lost continuity.
BRANCH_JUMP_LIMIT = 0.5

# Default detuning step (units of gamma) for the group-index stencil.
DEFAULT_STEP = 1.0e-3

# Richardson error estimate above this fraction of the derivative
# magnitude raises GridTooCoarse.
DERIVATIVE_RTOL = 0.01


@dataclass(frozen=True)
class DispersionPoint:
    """Index and group quantities at one detuning (fields may be arrays).

    n_complex is the full complex index before taking the real part;
    n_r its real part.  v_g*N_g = c and tau = L*(N_g - 1)/c hold by
    construction.
    """

    delta_p: object
    n_complex: object
    n_r: object
    N_g: object
    v_g: object
    tau: object


def _tracked_sqrt(w, seed_idx):
    """Continuity-tracked square root of a complex path w.

    The relative sign between consecutive points is chosen to minimize
    the jump; the overall sign is anchored at seed_idx with Re >= 0
    (Im >= 0 as tie-break), i.e. continuous with the vacuum value +1.
    """
    r = np.sqrt(w)
    if r.ndim == 0 or r.size == 1:
        s = r if np.real(r) >= 0 else -r
        if np.real(s) == 0 and np.imag(s) < 0:
            s = -s
        return s
    keep = np.abs(r[1:] - r[:-1])
    flip = np.abs(r[1:] + r[:-1])
    rel = np.where(flip < keep, -1.0, 1.0)
    sign = np.concatenate(([1.0], rel)).cumprod()
    anchor = sign[seed_idx] * r[seed_idx]
    if anchor.real < 0 or (anchor.real == 0 and anchor.imag < 0):
        sign = -sign
    return sign * r


def refractive_index(resp: response_mod.OpticalResponse):
    """Complex chiral refractive index; branch-tracked for array input."""
    chi_e = np.asarray(resp.chi_e)
    chi_m = np.asarray(resp.chi_m)
    xi_eh = np.asarray(resp.xi_eh)
    xi_he = np.asarray(resp.xi_he)
    w = (1.0 + chi_e) * (1.0 + chi_m) - 0.25 * (xi_eh + xi_he) ** 2
    if w.ndim == 0:
        root = _tracked_sqrt(w, 0)
    else:
        seed = int(np.argmax(np.abs(1.0 + chi_e)))
        root = _tracked_sqrt(w, seed)
        jumps = np.abs(np.diff(root))
        if jumps.size and float(jumps.max()) > BRANCH_JUMP_LIMIT:
            i = int(np.argmax(jumps))
            raise BranchJump(
                f"refractive-index branch discontinuity {jumps.max():.3g} "
                f"(> {BRANCH_JUMP_LIMIT}) between grid points {i} and {i + 1}")
    return root + 0.5j * (xi_eh - xi_he)


def grid_derivative(y, h):
    """Derivative of uniformly sampled y with spacing h.

    Interior points use Richardson-extrapolated central differences
    (error estimate returned alongside); the outermost two points on
    each side fall back to plain central / one-sided second-order
    stencils with no error estimate (nan).
    """
    y = np.asarray(y)
    n = y.shape[0]
    if n < 5:
        raise ValueError("need at least 5 samples for the derivative stencil")
    d = np.empty_like(y)
    err = np.full(n, np.nan)
    d_h = (y[3:-1] - y[1:-3]) / (2 * h)
    d_2h = (y[4:] - y[:-4]) / (4 * h)
    d[2:-2] = (4.0 * d_h - d_2h) / 3.0
    err[2:-2] = np.abs(d_h - d_2h) / 3.0
    d[1] = (y[2] - y[0]) / (2 * h)
    d[-2] = (y[-1] - y[-3]) / (2 * h)
    d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2 * h)
    d[-1] = (3.0 * y[-1] - 4.0 * y[-2] + y[-3]) / (2 * h)
    return d, err


_STENCIL = np.array([-2.0, -1.0, 0.0, 1.0, 2.0])


def _index_on_stencils(cfg, grid, mode, h, quad):
    """Evaluate the complex index on grid +- {0,h,2h} in one tracked pass.

    Returns the (N, 5) stencil of indices, the grid, and the response
    at the grid centers (free by-product, reused by the CLI).
    """
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    pts = (grid[:, None] + h * _STENCIL[None, :]).ravel()
    xs, inverse = np.unique(pts, return_inverse=True)
    resp = response_mod.spectrum(cfg, xs, mode=mode, quad=quad)
    n_xs = refractive_index(resp)
    stencil_idx = inverse.reshape(grid.size, 5)
    center = stencil_idx[:, 2]
    resp_center = response_mod.OpticalResponse(
        *(np.asarray(c)[center] for c in resp.components()))
    return n_xs[stencil_idx], grid, resp_center


def group_index_curve(cfg: ValidatedConfig, grid, mode: str = "cold",
                      h: float = DEFAULT_STEP, quad=None,
                      return_response: bool = False):
    """Dispersion quantities on a detuning grid (array-valued point).

    The derivative at each grid point comes from a dedicated local
    five-point stencil of spacing h, so the output grid may be as
    coarse as desired without degrading N_g.  Raises GridTooCoarse if
    the Richardson error estimate exceeds 1% of the derivative.  With
    return_response=True also returns the OpticalResponse at the grid
    centers.
    """
    n5, grid, resp_center = _index_on_stencils(cfg, grid, mode, h, quad)
    d_h = (n5[:, 3] - n5[:, 1]) / (2 * h)
    d_2h = (n5[:, 4] - n5[:, 0]) / (4 * h)
    deriv = (4.0 * d_h - d_2h) / 3.0
    est = np.abs(d_h - d_2h) / 3.0
    floor = 1e-6 * max(float(np.max(np.abs(deriv))), 1e-300)
    bad = est > DERIVATIVE_RTOL * np.maximum(np.abs(deriv), floor)
    if np.any(bad):
        i = int(np.argmax(est / np.maximum(np.abs(deriv), floor)))
        raise GridTooCoarse(
            f"derivative error estimate {est[i]:.3g} exceeds 1% of "
            f"|dn/dDelta_p|={abs(deriv[i]):.3g} at Delta_p={grid[i]:g} "
            f"(step h={h:g})")
    n_c = n5[:, 2]
    n_g = np.real(n_c + (cfg.medium.omega_14 - grid) * deriv)
    with np.errstate(divide="ignore"):
        v_g = C_LIGHT / n_g
    tau = cfg.medium.length_L * (n_g - 1.0) / C_LIGHT
    curve = DispersionPoint(delta_p=grid, n_complex=n_c, n_r=np.real(n_c),
                            N_g=n_g, v_g=v_g, tau=tau)
    if return_response:
        return curve, resp_center
    return curve


def group_index_at(cfg: ValidatedConfig, delta_p: float, mode: str = "cold",
                   h: float = DEFAULT_STEP, quad=None) -> DispersionPoint:
    """Dispersion quantities at a single detuning (scalar fields)."""
    curve = group_index_curve(cfg, [delta_p], mode=mode, h=h, quad=quad)
    return DispersionPoint(*(np.asarray(getattr(curve, f.name))[0].item()
                             for f in curve.__dataclass_fields__.values()))


def group_index(grid, n_complex, omega_14):
    """Group index from a precomputed complex-index spectrum.

    Differentiates the supplied uniform grid directly (Richardson in
    the interior); used when the index does not come from this
    package's response model (e.g. synthetic spectra).
    """
    grid = np.asarray(grid, dtype=float)
    h = grid[1] - grid[0]
    deriv, _ = grid_derivative(np.asarray(n_complex), h)
    return np.real(np.asarray(n_complex) + (omega_14 - grid) * deriv)


def delay_table(scenarios, h: float = DEFAULT_STEP, quad=None) -> list:
    """Evaluate named scenarios into (N_g, v_g, tau) rows.

    scenarios is an iterable of (name, cfg, mode) with the probe
    detuning taken from each cfg.  Numerical failures annotate the row
    instead of aborting the table.
    """
    rows = []
    for name, cfg, mode in scenarios:
        row = {"scenario": name, "mode": mode, "n_g": None, "v_g": None,
               "tau_ns": None, "error": None}
        try:
            pt = group_index_at(cfg, cfg.system.delta_p, mode=mode, h=h, quad=quad)
            row.update(n_g=pt.N_g, v_g=pt.v_g, tau_ns=pt.tau * 1e9)
        except NumericalError as exc:
            row["error"] = f"{type(exc).__name__}: {exc}"
        rows.append(row)
    return rows


def superluminal_crossover(cfg: ValidatedConfig, omega3_lo: float,
                           omega3_hi: float, xtol: float = 1.0e-3,
                           h: float = DEFAULT_STEP, quad=None,
                           ng_pair=None) -> float:
    """Control-field strength where cold and hot group indices cross.

    Bisects N_g_cold(omega_3) - N_g_hot(omega_3) at the probe detuning
    stored in cfg.  ng_pair may inject an alternative
    omega_3 -> (N_g_cold, N_g_hot) evaluator (used by tests with
    synthetic dispersions).
    """
    if ng_pair is None:
        def ng_pair(o3):
            c = with_overrides(cfg, system={"omega_3": float(o3)})
            cold = group_index_at(c, c.system.delta_p, mode="cold", h=h).N_g
            hot = group_index_at(c, c.system.delta_p, mode="hot", h=h, quad=quad).N_g
            return cold, hot

    def gap(o3):
        cold, hot = ng_pair(o3)
        return cold - hot

    g_lo, g_hi = gap(omega3_lo), gap(omega3_hi)
    if np.sign(g_lo) == np.sign(g_hi):
        raise NoCrossoverInRange(
            f"N_g_cold - N_g_hot has the same sign ({g_lo:.3g}, {g_hi:.3g}) "
            f"at both ends of [{omega3_lo:g}, {omega3_hi:g}]")
    return float(brentq(gap, omega3_lo, omega3_hi, xtol=xtol))
