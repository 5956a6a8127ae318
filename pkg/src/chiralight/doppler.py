"""Maxwellian velocity averaging for the hot medium.

The average of a response component f over the thermal velocity
distribution is

    <f> = (1/(V_D sqrt(pi))) * integral f(kv) exp(-(kv)^2/V_D^2) d(kv)

After u = kv/V_D this weight is exactly the Gauss-Hermite weight, so
Gauss-Hermite quadrature (with automatic node doubling until two
consecutive refinements agree) is the default method.  An adaptive
trapezoid rule on a truncated window is kept as an independent
verification path -- the two must agree to 1e-8 on the acceptance
parameter sets, and the test suite checks that they do.

Reductions use numpy's pairwise summation on nodes in a fixed order,
so results are deterministic for a given QuadratureSpec.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.special import roots_hermite

from . import response as response_mod
from .errors import PoleInSupport, QuadratureNotConverged, SingularSystem
from .params import ValidatedConfig

# Below this Doppler width the weight is effectively a delta function
# and the average returns the kv = 0 value exactly.
COLD_WIDTH = 1.0e-6

# Points x nodes budget per batched evaluation when averaging over a
# detuning grid (keeps the (grid, node, 3, 3) solve tensors in memory).
_CHUNK_BUDGET = 1_000_000


@dataclass(frozen=True)
class QuadratureSpec:
    """Velocity-average discretization parameters.

    node_count is the starting Gauss-Hermite node count (or starting
    panel count for the adaptive method); refinement doubles it until
    two consecutive levels agree to rel_tol or max_nodes is exceeded.
    truncation is the half-window of the adaptive method in units of
    V_D.
    """

    method: str = "gauss-hermite"
    node_count: int = 64
    truncation: float = 4.0
    rel_tol: float = 1.0e-8
    max_nodes: int = 16384

    def __post_init__(self):
        if self.node_count < 8:
            raise ValueError("node_count must be >= 8")
        if self.truncation <= 0 or self.rel_tol <= 0:
            raise ValueError("truncation and rel_tol must be > 0")


_hermite_cache: dict = {}


def _hermite(n: int):
    if n not in _hermite_cache:
        _hermite_cache[n] = roots_hermite(n)
    return _hermite_cache[n]


def _as_stack(values):
    """Normalize f's output (array or tuple of arrays) to one stack."""
    if isinstance(values, (tuple, list)):
        return np.stack([np.asarray(v, dtype=complex) for v in values]), True
    return np.asarray(values, dtype=complex)[None, ...], False


def _rel_change(new, old, floor=None):
    """Max over components of point-wise change relative to component scale.

    floor (per component) anchors the scale to the L1 average of the
    integrand, so results that vanish by cancellation (odd integrands)
    still register as converged.
    """
    err = 0.0
    for i, (c_new, c_old) in enumerate(zip(new, old)):
        scale = float(np.max(np.abs(c_new)))
        if floor is not None:
            scale = max(scale, float(floor[i]))
        scale = max(scale, 1e-300)
        err = max(err, float(np.max(np.abs(c_new - c_old))) / scale)
    return err


def _gauss_hermite_average(f, v_d, spec):
    prev = None
    n = spec.node_count
    while n <= spec.max_nodes:
        x, w = _hermite(n)
        vals, was_tuple = _as_stack(f(v_d * x))
        cur = (vals * w).sum(axis=-1) / np.sqrt(np.pi)
        floor = [(np.abs(c) * w).sum(axis=-1).max() / np.sqrt(np.pi) for c in vals]
        if prev is not None and _rel_change(cur, prev, floor) < spec.rel_tol:
            return cur, was_tuple
        prev = cur
        n *= 2
    raise QuadratureNotConverged(
        f"Gauss-Hermite average not converged to {spec.rel_tol:g} "
        f"within {spec.max_nodes} nodes")


def _trapezoid_average(f, v_d, spec, shift=0.0):
    """Adaptive trapezoid on [-T, T] (+shift), doubling panels with
    midpoint reuse until two levels agree to rel_tol."""
    T = spec.truncation * v_d
    lo, hi = -T + shift, T + shift

    def weighted(kv):
        vals, was_tuple = _as_stack(f(kv))
        return vals * np.exp(-(kv / v_d) ** 2), was_tuple

    n = max(spec.node_count, 16)
    kv = np.linspace(lo, hi, n + 1)
    g, was_tuple = weighted(kv)
    h = (hi - lo) / n

    def trap(arr):
        return h * (arr[..., 1:-1].sum(axis=-1) + 0.5 * (arr[..., 0] + arr[..., -1]))

    S, A = trap(g), trap(np.abs(g))
    while n <= spec.max_nodes:
        mids = lo + (np.arange(n) + 0.5) * h
        gm, _ = weighted(mids)
        S_new = 0.5 * S + 0.5 * h * gm.sum(axis=-1)
        A = 0.5 * A + 0.5 * h * np.abs(gm).sum(axis=-1)
        n *= 2
        h *= 0.5
        norm = v_d * np.sqrt(np.pi)
        floor = [c.max() / norm for c in A]
        if _rel_change(S_new / norm, S / norm, floor) < spec.rel_tol:
            return S_new / norm, was_tuple
        S = S_new
    raise QuadratureNotConverged(
        f"adaptive trapezoid not converged to {spec.rel_tol:g} "
        f"within {spec.max_nodes} panels")


def doppler_average(f, v_d: float, spec: QuadratureSpec = QuadratureSpec()):
    """Average f(kv) over the Maxwellian weight of width v_d.

    f maps an array of kv samples to one complex array (last axis =
    kv) or to a tuple of such arrays, which are averaged together in
    one pass.  For v_d below the cold threshold the kv = 0 value is
    returned exactly.

    If f raises SingularSystem at a Gauss-Hermite node the method
    falls back to the adaptive rule; if the adaptive rule hits the
    pole as well (after re-staggering its nodes once) the pole is
    real-axis exact and PoleInSupport is raised.
    """
    if v_d < COLD_WIDTH:
        vals, was_tuple = _as_stack(f(np.zeros(1)))
        out = vals[..., 0]
        return tuple(out) if was_tuple else out[0]

    if spec.method == "gauss-hermite":
        try:
            out, was_tuple = _gauss_hermite_average(f, v_d, spec)
        except SingularSystem:
            out, was_tuple = _trapezoid_fallback(f, v_d, spec)
    elif spec.method == "adaptive-trapezoid":
        out, was_tuple = _trapezoid_fallback(f, v_d, spec)
    else:
        raise ValueError(f"unknown quadrature method {spec.method!r}")
    return tuple(out) if was_tuple else out[0]


def _trapezoid_fallback(f, v_d, spec):
    spec = replace(spec, method="adaptive-trapezoid")
    try:
        return _trapezoid_average(f, v_d, spec)
    except SingularSystem:
        pass
    # Stagger the whole node set by an irrational-ish fraction of the
    # panel width; only an exactly real-axis pole survives both grids.
    try:
        return _trapezoid_average(f, v_d, spec, shift=0.37 * v_d / spec.node_count)
    except SingularSystem as exc:
        raise PoleInSupport(
            "response pole on the real velocity axis inside the "
            f"integration window: {exc}") from exc


def hot_response(cfg: ValidatedConfig, delta_p,
                 quad: QuadratureSpec | None = None) -> response_mod.OpticalResponse:
    """Doppler-averaged response at probe detuning(s) delta_p.

    Each component is averaged with the full shifted-detuning rule
    (all alpha_i signs) applied at every quadrature node.  Grids are
    processed in chunks to bound the size of the batched 3x3 solves.
    """
    quad = quad or QuadratureSpec()
    v_d = cfg.medium.v_doppler
    delta_p = np.asarray(delta_p, dtype=float)
    scalar_in = delta_p.ndim == 0
    grid = np.atleast_1d(delta_p)

    if v_d < COLD_WIDTH:
        out = response_mod.response_at(cfg, 0.0, delta_p=grid)
    else:
        chunk = max(1, _CHUNK_BUDGET // max(quad.max_nodes, 1))
        parts = []
        for start in range(0, grid.size, chunk):
            sub = grid[start:start + chunk]

            def f(kv, _sub=sub):
                r = response_mod.response_at(cfg, kv[None, :], delta_p=_sub[:, None])
                return r.components()

            parts.append(doppler_average(f, v_d, quad))
        comps = [np.concatenate([p[i] for p in parts]) for i in range(4)]
        out = response_mod.OpticalResponse(*comps)

    if scalar_in:
        out = response_mod.OpticalResponse(*(c[0] for c in out.components()))
    return out
