"""Search for minimum conditional entropy over measurements.

Projective case: dense (theta, phi) grid over the sphere plus the two
axis candidates, then pattern-search refinement.

3-element case: Monte-Carlo sampling over the admissible weight region
and Euler cube, then derivative-free pattern search over the five
effective coordinates (mu1, mu2, psi, theta, phi) from the best
candidates. Steps are reset to their initial size a few times after
each convergence so the search can escape curved valleys; weight
iterates leaving the admissible region are projected back inside.

Global sampling and grid scans run through a vectorized batch kernel;
refinement uses a scalar kernel. Both implement the same closed-form
objective and agree to rounding error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entropy import LogBase, _plogp
from .povm import TRIANGLE_MARGIN, EulerAngles, PovmWeights
from .qstate import XState, bloch_params

N_REFINE_CANDIDATES = 10
N_PROJ_REFINE_CANDIDATES = 3
RESET_ROUNDS = 3
PHI_GRID_POINTS = 16
ORIENT_GRID = 24
NEAR_PROJECTIVE_MU3 = 1e-6
PROB_FLOOR = 1e-12

# projection box sits 1e-12 inside the admissible margins so weight
# triples at its corners still validate strictly
PROJ_LO = TRIANGLE_MARGIN + 1e-12
PROJ_HI = (1.0 - TRIANGLE_MARGIN) / 2.0 - 1e-12

TWO_PI = 2.0 * math.pi
LN2 = math.log(2.0)

# moves must improve the objective by more than floating-point noise,
# otherwise rounding jitter along flat directions stalls step halving
IMPROVE_EPS = 1e-15


@dataclass(frozen=True)
class SearchConfig:
    """Budgets and seed for the measurement search."""

    seed: int = 7
    n_global_samples: int = 20000
    n_refine_iters: int = 400
    refine_tol: float = 1e-10
    angle_grid: int = 181

    def __post_init__(self):
        if self.n_global_samples < 1 or self.n_refine_iters < 1 or self.angle_grid < 2:
            raise ValueError(f"counts too small in {self}")
        if not self.refine_tol > 0.0:
            raise ValueError(f"refine_tol must be positive, got {self.refine_tol!r}")


@dataclass(frozen=True)
class OptResult:
    """Outcome of a measurement search.

    best_value is the minimum conditional entropy found; the witness is
    (best_weights, best_euler) for the 3-element case and
    best_direction for the projective case. converged reports whether
    the refinement that produced best_value shrank its steps below
    refine_tol (other, dominated starts may stop at the sweep budget).
    """

    best_value: float
    n_evals: int
    converged: bool
    best_weights: PovmWeights | None = None
    best_euler: EulerAngles | None = None
    best_direction: tuple[float, float, float] | None = None


@dataclass(frozen=True)
class PhiAuditReport:
    """Refined conditional entropy along a phi sweep at fixed weights."""

    phi_values: tuple[float, ...]
    ce_values: tuple[float, ...]
    spread: float
    weights: PovmWeights
    base: LogBase


def _scale(base: LogBase) -> float:
    return 1.0 / LN2 if base is LogBase.BITS else 1.0


def _h_nats(e: float) -> float:
    p = (1.0 + e) / 2.0
    q = (1.0 - e) / 2.0
    out = 0.0
    if p > 0.0:
        out -= p * math.log(p)
    if q > 0.0:
        out -= q * math.log(q)
    return out


def _ce_raw(bpt, m1, m2, m3, psi, theta, phi, scale):
    """Scalar 3-POVM conditional entropy from the closed-form directions."""
    A, B, t1, t2, t3 = bpt
    c12 = (m3 * m3 - m1 * m1 - m2 * m2) / (2.0 * m1 * m2)
    c13 = (m2 * m2 - m1 * m1 - m3 * m3) / (2.0 * m1 * m3)
    t12 = math.acos(min(max(c12, -1.0), 1.0))
    t13 = math.acos(min(max(c13, -1.0), 1.0))
    cps, sps = math.cos(psi), math.sin(psi)
    cth, sth = math.cos(theta), math.sin(theta)
    tot = 0.0
    for mu, ang in ((m1, 0.0), (m2, t12), (m3, -t13)):
        beta = ang + phi
        cb, sb = math.cos(beta), math.sin(beta)
        mx = cb * cps + sb * sps * sth
        my = sb * cth
        mz = sb * cps * sth - cb * sps
        den = 1.0 + A * mz
        if den <= PROB_FLOOR:
            continue
        e = math.sqrt((t1 * mx) ** 2 + (t2 * my) ** 2 + (t3 * mz + B) ** 2) / den
        tot += mu * den * _h_nats(min(e, 1.0))
    return tot * scale


def _ce_batch(bpt, mus, eulers, scale):
    """Vectorized counterpart of _ce_raw over candidate rows."""
    A, B, t1, t2, t3 = bpt
    m1, m2, m3 = mus[:, 0], mus[:, 1], mus[:, 2]
    c12 = np.clip((m3 * m3 - m1 * m1 - m2 * m2) / (2.0 * m1 * m2), -1.0, 1.0)
    c13 = np.clip((m2 * m2 - m1 * m1 - m3 * m3) / (2.0 * m1 * m3), -1.0, 1.0)
    t12, t13 = np.arccos(c12), np.arccos(c13)
    cps, sps = np.cos(eulers[:, 0]), np.sin(eulers[:, 0])
    cth, sth = np.cos(eulers[:, 1]), np.sin(eulers[:, 1])
    phs = eulers[:, 2]
    tot = np.zeros(len(mus))
    for mu, ang in ((m1, 0.0), (m2, t12), (m3, -t13)):
        beta = ang + phs
        cb, sb = np.cos(beta), np.sin(beta)
        mx = cb * cps + sb * sps * sth
        my = sb * cth
        mz = sb * cps * sth - cb * sps
        den = 1.0 + A * mz
        live = den > PROB_FLOOR
        e = np.zeros_like(den)
        e[live] = (
            np.sqrt(
                (t1 * mx[live]) ** 2
                + (t2 * my[live]) ** 2
                + (t3 * mz[live] + B) ** 2
            )
            / den[live]
        )
        e = np.clip(e, 0.0, 1.0)
        h = -(_plogp((1.0 + e) / 2.0) + _plogp((1.0 - e) / 2.0))
        tot += np.where(live, mu * den * h, 0.0)
    return tot * scale


def _ce_proj_raw(bpt, theta, phi, scale):
    """Scalar projective conditional entropy at direction (theta, phi)."""
    A, B, t1, t2, t3 = bpt
    sth = math.sin(theta)
    nx, ny, nz = sth * math.cos(phi), sth * math.sin(phi), math.cos(theta)
    tot = 0.0
    for sgn in (1.0, -1.0):
        den = 1.0 + A * sgn * nz
        if den <= PROB_FLOOR:
            continue
        e = math.sqrt((t1 * nx) ** 2 + (t2 * ny) ** 2 + (t3 * sgn * nz + B) ** 2) / den
        tot += 0.5 * den * _h_nats(min(e, 1.0))
    return tot * scale


def _ce_proj_batch(bpt, thetas, phis, scale):
    A, B, t1, t2, t3 = bpt
    sth = np.sin(thetas)
    nx, ny, nz = sth * np.cos(phis), sth * np.sin(phis), np.cos(thetas)
    tot = np.zeros(len(thetas))
    for sgn in (1.0, -1.0):
        den = 1.0 + A * sgn * nz
        live = den > PROB_FLOOR
        e = np.zeros_like(den)
        e[live] = (
            np.sqrt(
                (t1 * nx[live]) ** 2
                + (t2 * ny[live]) ** 2
                + (t3 * sgn * nz[live] + B) ** 2
            )
            / den[live]
        )
        e = np.clip(e, 0.0, 1.0)
        h = -(_plogp((1.0 + e) / 2.0) + _plogp((1.0 - e) / 2.0))
        tot += np.where(live, 0.5 * den * h, 0.0)
    return tot * scale


def _project_weights(m1, m2):
    """Nearest point of (m1, m2, 1-m1-m2) inside the box-constrained simplex."""
    v = (m1, m2, 1.0 - m1 - m2)
    if all(PROJ_LO <= x <= PROJ_HI for x in v):
        return m1, m2
    lo_l, hi_l = min(v) - 2.0, max(v) + 2.0
    for _ in range(100):
        lam = (lo_l + hi_l) / 2.0
        s = sum(min(max(x - lam, PROJ_LO), PROJ_HI) for x in v)
        if s > 1.0:
            lo_l = lam
        else:
            hi_l = lam
    lam = (lo_l + hi_l) / 2.0
    w1 = min(max(v[0] - lam, PROJ_LO), PROJ_HI)
    w2 = min(max(v[1] - lam, PROJ_LO), PROJ_HI)
    return w1, w2


class _EvalCounter:
    __slots__ = ("n",)

    def __init__(self):
        self.n = 0


def _pattern_search(f, x0, steps0, cfg, counter, project=None):
    """Greedy coordinate pattern search with step-reset rounds.

    Accepts any strict improvement along a coordinate step; halves all
    steps when a full sweep yields none. After converging, steps reset
    to their initial size and the search repeats, which lets the
    iterate continue along valleys not aligned with the axes.
    """
    x = list(x0)
    fx = f(x)
    counter.n += 1
    converged = False
    for _ in range(RESET_ROUNDS):
        steps = list(steps0)
        sweeps = 0
        while max(steps) > cfg.refine_tol and sweeps < cfg.n_refine_iters:
            moved = False
            for i in range(len(x)):
                for sgn in (1.0, -1.0):
                    trial = x.copy()
                    trial[i] += sgn * steps[i]
                    if project is not None:
                        trial = project(trial)
                    ft = f(trial)
                    counter.n += 1
                    if ft < fx - IMPROVE_EPS * max(1.0, abs(fx)):
                        x, fx = trial, ft
                        moved = True
            if not moved:
                steps = [s / 2.0 for s in steps]
            sweeps += 1
        converged = max(steps) <= cfg.refine_tol
    return x, fx, converged


def minimize_projective(
    s: XState, cfg: SearchConfig = SearchConfig(), base: LogBase = LogBase.BITS
) -> OptResult:
    """Minimum projective conditional entropy over the unit sphere.

    Deterministic: a (theta, phi) grid of resolution angle_grid seeded
    with the two axis candidates, then refinement of the best cells.
    """
    bpt = _bloch_tuple(s)
    scale = _scale(base)
    thetas = np.linspace(0.0, math.pi, cfg.angle_grid)
    phis = np.linspace(0.0, TWO_PI, 2 * cfg.angle_grid, endpoint=False)
    tg, pg = np.meshgrid(thetas, phis, indexing="ij")
    tg, pg = tg.ravel(), pg.ravel()
    vals = _ce_proj_batch(bpt, tg, pg, scale)
    counter = _EvalCounter()
    counter.n += len(vals)

    order = np.argsort(vals, kind="stable")[:N_PROJ_REFINE_CANDIDATES]
    starts = [(float(tg[i]), float(pg[i])) for i in order]
    starts.append((0.0, 0.0))  # z axis
    starts.append((math.pi / 2.0, 0.0))  # x axis

    def f(x):
        return _ce_proj_raw(bpt, x[0], x[1], scale)

    best_x, best_f, best_conv = None, math.inf, False
    for x0 in starts:
        x, fx, conv = _pattern_search(f, x0, (0.05, 0.05), cfg, counter)
        if fx < best_f:
            best_x, best_f, best_conv = x, fx, conv
    th, ph = best_x
    direction = (
        math.sin(th) * math.cos(ph),
        math.sin(th) * math.sin(ph),
        math.cos(th),
    )
    return OptResult(
        best_value=best_f,
        n_evals=counter.n,
        converged=best_conv,
        best_direction=direction,
    )


def _bloch_tuple(s: XState):
    bp = bloch_params(s)
    return (bp.A, bp.B, bp.t1, bp.t2, bp.t3)


def _sample_weights_batch(rng, n):
    """Vectorized rejection sampling of n admissible weight triples."""
    cap = (1.0 - TRIANGLE_MARGIN) / 2.0
    rows = []
    have = 0
    while have < n:
        u = rng.uniform(0.0, 1.0, size=(2 * n, 2))
        lo = u.min(axis=1)
        hi = u.max(axis=1)
        mus = np.column_stack([lo, hi - lo, 1.0 - hi])
        ok = mus.max(axis=1) <= cap
        rows.append(mus[ok])
        have += int(ok.sum())
    return np.concatenate(rows)[:n]


def _near_projective_start(s, cfg, base):
    """Candidate mimicking the best projective measurement.

    Two weights sit just inside the half cap and the first direction is
    aligned with the optimal projective axis, so refinement starts from
    (almost) the projective optimum and can only improve on it.
    """
    proj = minimize_projective(s, cfg, base)
    nx, ny, nz = proj.best_direction
    snorm = math.hypot(ny, nz)
    phi = math.atan2(snorm, nx)
    theta = math.atan2(nz, ny) if snorm > 0.0 else 0.0
    c = (1.0 - NEAR_PROJECTIVE_MU3) / 2.0
    return (c, c, 0.0, theta, phi)


def _povm3_project(trial):
    w1, w2 = _project_weights(trial[0], trial[1])
    return [w1, w2, trial[2], trial[3], trial[4]]


def minimize_povm3(
    s: XState, cfg: SearchConfig = SearchConfig(), base: LogBase = LogBase.BITS
) -> OptResult:
    """Minimum 3-element POVM conditional entropy.

    Monte-Carlo over (weights, Euler angles), then pattern-search
    refinement of the best candidates plus a near-projective start.
    Deterministic for a fixed config.
    """
    bpt = _bloch_tuple(s)
    scale = _scale(base)
    rng = np.random.default_rng(cfg.seed)
    mus = _sample_weights_batch(rng, cfg.n_global_samples)
    eulers = rng.uniform(0.0, TWO_PI, size=(cfg.n_global_samples, 3))
    vals = _ce_batch(bpt, mus, eulers, scale)
    counter = _EvalCounter()
    counter.n += len(vals)

    order = np.argsort(vals, kind="stable")[:N_REFINE_CANDIDATES]
    starts = [
        (float(mus[i, 0]), float(mus[i, 1]),
         float(eulers[i, 0]), float(eulers[i, 1]), float(eulers[i, 2]))
        for i in order
    ]
    starts.append(_near_projective_start(s, cfg, base))

    def f(x):
        return _ce_raw(bpt, x[0], x[1], 1.0 - x[0] - x[1], x[2], x[3], x[4], scale)

    best_x, best_f, best_conv = None, math.inf, False
    for x0 in starts:
        x, fx, conv = _pattern_search(
            f, x0, (0.02, 0.02, 0.1, 0.1, 0.1), cfg, counter, project=_povm3_project
        )
        if fx < best_f:
            best_x, best_f, best_conv = x, fx, conv
    weights = PovmWeights(best_x[0], best_x[1], 1.0 - best_x[0] - best_x[1])
    euler = EulerAngles(best_x[2], best_x[3], best_x[4])
    return OptResult(
        best_value=best_f,
        n_evals=counter.n,
        converged=best_conv,
        best_weights=weights,
        best_euler=euler,
    )


def phi_invariance_audit(
    s: XState, cfg: SearchConfig = SearchConfig(), base: LogBase = LogBase.BITS
) -> PhiAuditReport:
    """Check that the refined minimum does not depend on phi.

    Holds the optimizer's best weights fixed, sweeps phi over a grid,
    and re-minimizes over (psi, theta) at each point: a coarse
    orientation grid plus the incumbent, refined by pattern search.
    Reports max - min of the refined conditional entropies.
    """
    best = minimize_povm3(s, cfg, base)
    bpt = _bloch_tuple(s)
    scale = _scale(base)
    w = best.best_weights
    m1, m2, m3 = w.mu1, w.mu2, w.mu3
    psi0, th0 = best.best_euler.psi, best.best_euler.theta
    counter = _EvalCounter()

    g = np.linspace(0.0, TWO_PI, ORIENT_GRID, endpoint=False)
    gp, gt = np.meshgrid(g, g, indexing="ij")
    grid_mus = np.tile([m1, m2, m3], (gp.size, 1))

    phi_values, ce_values = [], []
    for phi in np.linspace(0.0, TWO_PI, PHI_GRID_POINTS, endpoint=False):
        eulers = np.column_stack([gp.ravel(), gt.ravel(), np.full(gp.size, phi)])
        vals = _ce_batch(bpt, grid_mus, eulers, scale)
        counter.n += len(vals)
        i = int(np.argmin(vals))
        cands = [(gp.ravel()[i], gt.ravel()[i]), (psi0, th0)]

        def f(x, phi=phi):
            return _ce_raw(bpt, m1, m2, m3, x[0], x[1], phi, scale)

        fx_best = math.inf
        for x0 in cands:
            _, fx, _ = _pattern_search(f, x0, (0.2, 0.2), cfg, counter)
            fx_best = min(fx_best, fx)
        phi_values.append(float(phi))
        ce_values.append(fx_best)
    spread = max(ce_values) - min(ce_values)
    return PhiAuditReport(
        phi_values=tuple(phi_values),
        ce_values=tuple(ce_values),
        spread=spread,
        weights=w,
        base=base,
    )
