"""Invariant suites and the comparison of published closed forms with recomputed ones.

Every suite returns a :class:`SuiteResult` whose rows carry the worst
residual of one check and the tolerance it is held to.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List

import numpy as np

from . import curvature, geodesics, klein, models, zermelo
from .core import BOUNDARY_MARGIN, dot, norm_sq, sample_tangent
from .klein import R, S

#: Outer radius of the sampled part of the Klein unit disc.
SAMPLE_RADIUS = R - 1e-3
#: The S oracle differentiates the numeric spray once more; roundoff grows towards the rim.
S_SAMPLE_RADIUS = R - 3e-3
#: The Riemann oracle differentiates the numeric spray twice more; it needs more room still.
RIEMANN_SAMPLE_RADIUS = R - 2e-2
#: Sampling radius on the whole unit disc; 1 - |x|^2 loses digits right at the rim.
WHOLE_RADIUS = 1.0 - 1e-3


@dataclass(frozen=True)
class Residual:
    label: str
    value: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.tol)


@dataclass
class SuiteResult:
    name: str
    rows: List[Residual] = field(default_factory=list)

    def add(self, label, value, tol):
        self.rows.append(Residual(label, float(value), tol))

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)


@dataclass(frozen=True)
class LedgerEntry:
    """A published closed form set against an independent recomputation."""

    item: str
    printed: str
    recomputed: str
    deviation: float
    consistent: bool
    note: str = ""


def _rel(got, ref):
    got, ref = np.asarray(got), np.asarray(ref)
    return float(np.max(np.abs(got - ref) / np.maximum(np.abs(ref), 1e-300)))


# -- suites -------------------------------------------------------------------


def check_isometries(samples=1000, seed=42) -> SuiteResult:
    out = SuiteResult("isometries")
    out.add(
        "g: Klein -> upper half-plane (numeric Jacobian, |x| < R)",
        models.isometry_check(models.KLEIN_TO_UPPER, klein.KLEIN, models.UPPER_HALF, samples, radius=R, seed=seed),
        1e-9,
    )
    out.add(
        "f: Poincare -> Klein (numeric Jacobian, |x| < tanh 1/2)",
        models.isometry_check(
            models.POINCARE_TO_KLEIN, models.POINCARE, klein.KLEIN, samples, radius=models.R_POINCARE, seed=seed
        ),
        1e-9,
    )
    out.add(
        "g: Klein -> upper half-plane (closed Jacobian, |x| < 1 - 1e-3)",
        models.isometry_check(
            models.KLEIN_TO_UPPER, klein.KLEIN, models.UPPER_HALF, samples, radius=WHOLE_RADIUS, seed=seed, numeric_jacobian=False
        ),
        1e-9,
    )
    out.add(
        "f: Poincare -> Klein (closed Jacobian, |x| < 1 - 1e-3)",
        models.isometry_check(
            models.POINCARE_TO_KLEIN, models.POINCARE, klein.KLEIN, samples, radius=WHOLE_RADIUS, seed=seed, numeric_jacobian=False
        ),
        1e-9,
    )
    out.add(
        "f*F = funk_poincare",
        models.isometry_check(
            models.POINCARE_TO_KLEIN,
            models.FUNK_POINCARE,
            models.FUNK_AMBIENT,
            samples,
            radius=models.R_POINCARE,
            seed=seed,
            numeric_jacobian=False,
        ),
        1e-9,
    )
    return out


def check_pullbacks(samples=1000, seed=42) -> SuiteResult:
    out = SuiteResult("pullbacks")
    rng = np.random.default_rng(seed)
    x, xi = sample_tangent(rng, samples, SAMPLE_RADIUS)
    ref = klein.funk_metric(x, xi)
    out.add("eta*F_L = F", _rel(models.pullback(models.HYPERBOLOID, models.LORENTZ_RANDERS, x, xi), ref), 1e-9)
    out.add("Psi*F_+ = F", _rel(models.pullback(models.HEMISPHERE, models.HEMISPHERE_RANDERS, x, xi), ref), 1e-9)
    # finite-difference Jacobians lose accuracy where eta blows up; sample away from the rim
    x, xi = sample_tangent(rng, samples, 0.9 * R)
    ref = klein.funk_metric(x, xi)
    out.add(
        "eta*F_L = F (numeric Jacobian, |x| < 0.9R)",
        _rel(models.pullback(models.HYPERBOLOID, models.LORENTZ_RANDERS, x, xi, numeric_jacobian=True), ref),
        1e-9,
    )
    out.add(
        "Psi*F_+ = F (numeric Jacobian, |x| < 0.9R)",
        _rel(models.pullback(models.HEMISPHERE, models.HEMISPHERE_RANDERS, x, xi, numeric_jacobian=True), ref),
        1e-9,
    )
    return out


def check_oracles(samples=1000, seed=42) -> SuiteResult:
    out = SuiteResult("oracles")
    rng = np.random.default_rng(seed)
    x, xi = sample_tangent(rng, samples, SAMPLE_RADIUS)
    out.add("coth definition = Randers form", _rel(klein.funk_metric_cothdef(x, xi), klein.funk_metric(x, xi)), 1e-9)
    out.add(
        "numeric spray = closed spray",
        _rel_vec(geodesics.spray_numeric(klein.FUNK, x, xi), geodesics.spray_closed(x, xi)),
        1e-5,
    )
    xs, xis = sample_tangent(rng, samples, S_SAMPLE_RADIUS)
    s_num = curvature.s_curvature_numeric(klein.FUNK, curvature.funk_bh_density, xs, xis)
    s_ref = curvature.s_curvature_closed(xs, xis)
    out.add("numeric S = closed S (relative to max(1, |S|))", s_error(s_num, s_ref), 1e-4)
    n = min(samples, 100)
    xr, xir = sample_tangent(rng, n, RIEMANN_SAMPLE_RADIUS)
    Rn = curvature.riemann_numeric(klein.FUNK, xr, xir)
    Rc = curvature.riemann_closed(xr, xir).R
    out.add(
        "numeric Riemann = closed Riemann (relative to |R|)",
        float(np.max(np.abs(Rn - Rc).max(axis=(-2, -1)) / np.linalg.norm(Rc, axis=(-2, -1)))),
        1e-3,
    )
    y = sample_tangent(rng, n, SAMPLE_RADIUS)[0]
    d = klein.funk_distance(x[:n], y)
    lengths = np.array([geodesics.segment_length(klein.FUNK, a, b) for a, b in zip(x[:n], y)])
    out.add("funk_distance = segment length", float(np.max(np.abs(lengths - d))), 1e-6)
    return out


def s_error(got, ref):
    """S error relative to ``max(1, |S|)``: absolute where S is small, relative where it is large."""
    got, ref = np.asarray(got), np.asarray(ref)
    return float(np.max(np.abs(got - ref) / np.maximum(1.0, np.abs(ref))))


def _rel_vec(got, ref):
    return float(np.max(np.linalg.norm(got - ref, axis=-1) / np.linalg.norm(ref, axis=-1)))


def check_zermelo(samples=1000, seed=42) -> SuiteResult:
    out = SuiteResult("zermelo")
    rng = np.random.default_rng(seed)
    x, xi = sample_tangent(rng, samples, SAMPLE_RADIUS)
    nav = zermelo.to_navigation(x, verify=True)
    out.add("from_navigation o to_navigation = F", _rel(zermelo.from_navigation(nav, xi), klein.funk_metric(x, xi)), 1e-10)
    out.add(
        "||W||_h^2 = ||beta||_alpha^2",
        float(np.max(np.abs(nav.wind_norm_sq - klein.randers_data_at(x).beta_norm_sq))),
        1e-10,
    )
    out.add("h positive definite (min eigenvalue below 0 fails)", float(-np.min(np.linalg.eigvalsh(nav.h))), 0.0)
    return out


def check_geodesics(samples=1000, seed=42) -> SuiteResult:
    out = SuiteResult("geodesics")
    rng = np.random.default_rng(seed)
    n = min(samples, 50)
    x, xi = sample_tangent(rng, n, 0.9 * R)
    v = xi / np.asarray(klein.funk_metric(x, xi))[:, None]
    traces = geodesics.integrate_geodesics(
        klein.FUNK, x, v, 12.0, 1e-3, spray=geodesics.spray_closed, stop_radius=SAMPLE_RADIUS
    )
    out.add("collinearity residual", max(geodesics.collinearity_residual(t) for t in traces), 1e-6)
    out.add("Finsler speed drift", max(geodesics.speed_drift(klein.FUNK, t) for t in traces), 1e-6)
    return out


def check_curvature(samples=1000, seed=42) -> SuiteResult:
    out = SuiteResult("curvature")
    rng = np.random.default_rng(seed)
    x, xi = sample_tangent(rng, samples, SAMPLE_RADIUS)
    rep = curvature.riemann_closed(x, xi)
    F = np.asarray(klein.funk_metric(x, xi))
    out.add("Ric = trace R", float(np.max(np.abs(np.trace(rep.R, axis1=-2, axis2=-1) - rep.Ric) / F**2)), 1e-9)
    scale = np.sqrt(norm_sq(rep.tau) * norm_sq(xi))
    out.add("tau_k xi^k = 0 (relative to |tau||xi|)", float(np.max(np.abs(dot(rep.tau, xi)) / np.maximum(scale, 1e-300))), 1e-12)
    out.add("K < 0 (max K)", float(np.max(rep.K)), 0.0)
    k0 = -(1 - 0.75 * S**2)
    out.add("K(0, xi) closed", abs(curvature.riemann_closed((0.0, 0.0), (1.0, 0.0)).K - k0), 1e-9)
    data = curvature.covariant_data(x)
    out.add("Douglas: max |s_ij|", float(np.max(np.abs(data.s))), 1e-10)
    out.add("non-Berwald: -min max|b_i|j| (negative passes)", -float(np.min(np.abs(data.db).max(axis=(-2, -1)))), 0.0)
    return out


def check_typo_ledger(samples=200, seed=42) -> SuiteResult:
    """The ledger as a suite: deviations are reported, nothing can fail."""
    out = SuiteResult("typo-ledger")
    for entry in typo_ledger(samples, seed):
        out.add(f"{entry.item}: {'consistent' if entry.consistent else 'INCONSISTENT'}", entry.deviation, math.inf)
    return out


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "isometries": check_isometries,
    "pullbacks": check_pullbacks,
    "oracles": check_oracles,
    "zermelo": check_zermelo,
    "geodesics": check_geodesics,
    "curvature": check_curvature,
    "typo-ledger": check_typo_ledger,
}


def run_suite(name: str, samples=1000, seed=42) -> List[SuiteResult]:
    """Run one suite by name, or every suite but the ledger for ``all``."""
    if name == "all":
        return [fn(samples, seed) for key, fn in SUITES.items() if key != "typo-ledger"]
    if name not in SUITES:
        raise KeyError(name)
    return [SUITES[name](samples, seed)]


# -- published closed forms ---------------------------------------------------


def beta_upper_squared(x, xi):
    """The published 1-form on the upper half-plane with ``(4 + |x|^2)`` squared in the denominator."""
    x = np.asarray(x, float)
    xi = np.asarray(xi, float)
    x1, x2 = x[..., 0], x[..., 1]
    n = norm_sq(x)
    bracket = x1 * xi[..., 0] * (4 + n) - (4 - n + 2 * x1**2) * dot(x, xi)
    return S * (4 + n) * bracket / (x2**2 * (16 * x2**2 - S * (4 + n) ** 2))


def _g_inv_inner(x, xi, cube_base):
    x1 = x[..., 0]
    n = norm_sq(x)
    return 16 * (x1 * xi[..., 0] * (4 + n) - (4 - n + 2 * x1**2) * dot(x, xi)) / (cube_base + n) ** 3


def typo_ledger(samples=200, seed=42) -> List[LedgerEntry]:
    """Compare each suspect published expression with an independent recomputation.

    ``deviation`` is the largest relative difference over seeded samples
    (against ``max(1, |S|)`` for the S-curvature, absolute for scalars).
    Entries are diagnostic: nothing is asserted.
    """
    rng = np.random.default_rng(seed)
    entries = []

    x, xi = sample_tangent(rng, samples, models.R_POINCARE - 1e-3)
    dev = _rel(models.funk_poincare(x, xi), models.funk_poincare_pullback(x, xi))
    entries.append(LedgerEntry("F_P on the Poincare disc", "closed (alpha_P, beta_P)", "f^* F", dev, dev < 1e-9))

    x, xi = sample_tangent(rng, samples, models.R_UPPER - 1e-3, models.UPPER_CENTER)
    a_p, b_p = models.funk_upper_parts(x, xi)
    a_r, b_r = models.funk_upper_pullback_parts(x, xi)
    dev = _rel(a_p, a_r)
    entries.append(LedgerEntry("alpha_U on the upper half-plane", "closed alpha_U", "(g^-1)^* alpha_F", dev, dev < 1e-9))
    dev = _rel(models.funk_upper(x, xi), models.funk_upper_pullback(x, xi))
    dev_sq = _rel(beta_upper_squared(x, xi), b_r)
    entries.append(
        LedgerEntry(
            "beta_U on the upper half-plane",
            "S (4+|x|^2)[...] / ((x^2)^2 (16 (x^2)^2 - S (4+|x|^2)))",
            "(g^-1)^* beta_F",
            dev,
            dev < 1e-9,
            f"F_U deviates by {dev:.3g} (relative); with (4+|x|^2)^2 in the denominator "
            f"beta_U matches to {dev_sq:.2g}",
        )
    )
    jac = models.UPPER_TO_KLEIN.jacobian(x)
    v = np.einsum("...ij,...j->...i", jac, xi)
    ref = dot(models.UPPER_TO_KLEIN(x), v)
    dev = _rel(_g_inv_inner(x, xi, 1.0), ref)
    dev_fix = _rel(_g_inv_inner(x, xi, 4.0), ref)
    entries.append(
        LedgerEntry(
            "<g^-1(x), dg^-1(xi)>",
            "16[...] / (1+|x|^2)^3",
            "direct product with the closed Jacobian",
            dev,
            dev < 1e-9,
            f"with (4+|x|^2)^3 the expression matches to {dev_fix:.2g}",
        )
    )

    x, xi = sample_tangent(rng, samples, SAMPLE_RADIUS)
    nav = zermelo.to_navigation(x)
    dev = _rel(zermelo.printed_wind_norm_sq(x[norm_sq(x) > 1e-6]), nav.wind_norm_sq[norm_sq(x) > 1e-6])
    entries.append(
        LedgerEntry(
            "||W||_h^2",
            "|x|^2 S^2 / (R^2 (R^2-|x|^2)^2)",
            "W^T h W from the navigation data",
            dev,
            dev < 1e-9,
            "the recomputed value equals ||beta||_alpha^2 = |x|^2 S^2 / (R^2 (1-|x|^2)^2)",
        )
    )
    keep = norm_sq(x) > 1e-6
    printed = zermelo.printed_wind(x[keep])
    dev = _rel_vec(printed, nav.W[keep])
    entries.append(
        LedgerEntry(
            "wind W",
            "+S (1-|x|^2) / (1-R^2|x|^2) x",
            "-b^sharp / eps",
            dev,
            dev < 1e-9,
            "same magnitude, opposite direction; the round trip to F needs the inward wind",
        )
    )
    x, xi = sample_tangent(rng, samples, S_SAMPLE_RADIUS)
    s_ref = curvature.s_curvature_numeric(klein.FUNK, curvature.funk_bh_density, x, xi)
    # S changes sign, so errors are taken relative to max(1, |S|)
    dev = s_error(curvature.s_curvature_printed(x, xi), s_ref)
    dev_fix = s_error(curvature.s_curvature_closed(x, xi), s_ref)
    entries.append(
        LedgerEntry(
            "S-curvature",
            "3P - 3<x,xi> S^2 (1+|x|^2) / (...)",
            "spray divergence minus volume transport (numeric)",
            dev,
            dev < 1e-4,
            f"with + before the second term the formula matches to {dev_fix:.2g}",
        )
    )
    e2 = math.e**2
    printed_k0 = -(1 - 0.75 * (4 * e2 / (e2 + 1)) ** 2)
    k0 = float(curvature.riemann_closed((0.0, 0.0), (1.0, 0.0)).K)
    entries.append(
        LedgerEntry(
            "K(0, xi) in terms of e",
            "-(1 - 3/4 (4e^2/(e^2+1))^2)",
            "-(1 - 3/4 (1-R^2)^2)",
            abs(printed_k0 - k0),
            abs(printed_k0 - k0) < 1e-9,
            f"printed value {printed_k0:.6f} is positive; 1-R^2 = 4e^2/(e^2+1)^2 gives {k0:.6f}",
        )
    )
    return entries


def format_ledger(entries) -> str:
    lines = []
    for e in entries:
        verdict = "consistent" if e.consistent else "INCONSISTENT"
        lines.append(f"{e.item}: {verdict} (max deviation {e.deviation:.3e})")
        lines.append(f"    printed:    {e.printed}")
        lines.append(f"    recomputed: {e.recomputed}")
        if e.note:
            lines.append(f"    note:       {e.note}")
    return "\n".join(lines)


__all__ = [
    "BOUNDARY_MARGIN",
    "LedgerEntry",
    "Residual",
    "SuiteResult",
    "SUITES",
    "run_suite",
    "typo_ledger",
    "format_ledger",
    "beta_upper_squared",
]
