"""Floating-point verification of the closed-form quadric geometry.

The affine quadric Z = {z in C^4 : sum z_j^2 = 1} is identified with
T*S^3 = {(u, v) : |u| = 1, u.v = 0} by

    mu(x + iy) = (x/|x|, -|x| y),
    mu_inv(u, v) = f(|v|) u - i f(|v|)^{-1} v,
    f(s) = sqrt((1 + sqrt(1 + 4 s^2)) / 2),

which pulls the canonical one-form sum(-v_j du_j) back to sum(y_j dx_j).
The great-circle slices are parameterized by

    sigma(e, f, theta, lam)
        = ((cos(theta) e, sin(theta) f), lam (-sin(theta) e, cos(theta) f))

and the quadratic P(z) = z1^2 + z2^2 - z3^2 - z4^2 maps the slice to the
confocal ellipse

    P(mu_inv(sigma(e, f, theta, lam)))
        = sqrt(1 + 4 lam^2) cos(2 theta) + 2 i lam sin(2 theta)

independently of e, f.  Over a simply connected region avoiding +-1
the fibration P trivializes holomorphically via

    Phi(z) = (lam, alpha(lam) (z1, z2), beta(lam) (z3, z4)),
    alpha = sqrt(2/(1 + lam)), beta = sqrt(2/(1 - lam)),

with principal square roots on the plane slit along lam <= -1 and
lam >= 1 respectively.

This module is strictly segregated from the exact category pipeline:
no numeric value flows into any presentation.

Tolerances: 1e-12 for construction invariants, 1e-10 for round trips,
1e-6 for finite-difference checks with step 1e-5.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import BranchCutProximity, DomainViolation, ZeroArgument

CONSTRUCTION_TOL = 1e-12
ROUNDTRIP_TOL = 1e-10
FD_TOL = 1e-6
FD_STEP = 1e-5
BRANCH_TOL = 1e-8


@dataclass(frozen=True)
class CotangentPoint:
    """(u, v) in R^4 x R^4 with |u| = 1 and u.v = 0, checked to 1e-12."""

    u: tuple[float, float, float, float]
    v: tuple[float, float, float, float]

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        v = np.asarray(self.v, dtype=float)
        if abs(np.linalg.norm(u) - 1.0) > CONSTRUCTION_TOL:
            raise DomainViolation("|u| differs from 1 beyond tolerance")
        if abs(float(u @ v)) > CONSTRUCTION_TOL:
            raise DomainViolation("u.v differs from 0 beyond tolerance")

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return (np.asarray(self.u, dtype=float),
                np.asarray(self.v, dtype=float))


@dataclass(frozen=True)
class QuadricPoint:
    """z in C^4 with sum z_j^2 = 1, checked to 1e-12."""

    z: tuple[complex, complex, complex, complex]

    def __post_init__(self):
        z = np.asarray(self.z, dtype=complex)
        if abs(np.sum(z * z) - 1.0) > CONSTRUCTION_TOL:
            raise DomainViolation("sum z_j^2 differs from 1 beyond tolerance")

    def array(self) -> np.ndarray:
        return np.asarray(self.z, dtype=complex)


def _f(s: float) -> float:
    return math.sqrt((1.0 + math.sqrt(1.0 + 4.0 * s * s)) / 2.0)


def mu(point: QuadricPoint) -> CotangentPoint:
    z = point.array()
    x = z.real
    y = z.imag
    norm_x = float(np.linalg.norm(x))
    return CotangentPoint(tuple(x / norm_x), tuple(-norm_x * y))


def mu_inv(point: CotangentPoint) -> QuadricPoint:
    u, v = point.arrays()
    fv = _f(float(np.linalg.norm(v)))
    z = fv * u - 1j * (v / fv)
    return QuadricPoint(tuple(z))


def sigma(e, f, theta: float, lam: float) -> CotangentPoint:
    """Great-circle slice point; e and f are unit vectors in R^2."""
    e = np.asarray(e, dtype=float)
    f = np.asarray(f, dtype=float)
    for w, name in ((e, "e"), (f, "f")):
        if w.shape != (2,) or abs(np.linalg.norm(w) - 1.0) > CONSTRUCTION_TOL:
            raise DomainViolation("%s must be a unit 2-vector" % name)
    c, s = math.cos(theta), math.sin(theta)
    u = (c * e[0], c * e[1], s * f[0], s * f[1])
    v = (-lam * s * e[0], -lam * s * e[1], lam * c * f[0], lam * c * f[1])
    return CotangentPoint(u, v)


def quadratic(z) -> complex:
    """P(z) = z1^2 + z2^2 - z3^2 - z4^2."""
    z = np.asarray(z, dtype=complex)
    return complex(z[0] ** 2 + z[1] ** 2 - z[2] ** 2 - z[3] ** 2)


def p_image(theta: float, lam: float) -> complex:
    """Closed form of P(mu_inv(sigma(e, f, theta, lam)))."""
    return (math.sqrt(1.0 + 4.0 * lam * lam) * math.cos(2.0 * theta)
            + 2j * lam * math.sin(2.0 * theta))


def ellipse_axes(lam: float) -> tuple[float, float]:
    """Semi-axes (sqrt(1 + 4 lam^2), 2 lam) of the constant-lam image."""
    return math.sqrt(1.0 + 4.0 * lam * lam), 2.0 * lam


def _checked_root(w: complex) -> complex:
    return cmath.sqrt(w)


def trivialization(point: QuadricPoint, region_check: bool = True,
                   allow_any_branch: bool = False
                   ) -> tuple[complex, tuple[complex, complex],
                              tuple[complex, complex]]:
    """Fiberwise splitting (lam, alpha (z1, z2), beta (z3, z4)).

    Both output pairs satisfy w1^2 + w2^2 = 1.  Raises
    BranchCutProximity within 1e-8 of the branch points +-1 or on the
    slit rays unless allow_any_branch is set; region_check additionally
    insists on Im(lam) >= -1e-8 (the trivialized region lies in the
    closed upper half-plane).
    """
    z = point.array()
    lam = quadratic(z)
    if abs(lam - 1.0) < BRANCH_TOL or abs(lam + 1.0) < BRANCH_TOL:
        raise BranchCutProximity("lam = %r is within 1e-8 of a branch point"
                                 % (lam,))
    if not allow_any_branch:
        if abs(lam.imag) < BRANCH_TOL and abs(lam.real) > 1.0:
            raise BranchCutProximity(
                "lam = %r lies on a square-root branch cut; pass "
                "allow_any_branch to override" % (lam,))
    if region_check and lam.imag < -BRANCH_TOL:
        raise BranchCutProximity(
            "lam = %r is outside the upper half-plane region" % (lam,))
    alpha = _checked_root(2.0 / (1.0 + lam))
    beta = _checked_root(2.0 / (1.0 - lam))
    first = (alpha * z[0], alpha * z[1])
    second = (beta * z[2], beta * z[3])
    return lam, first, second


def rho(e, f, zeta: complex) -> QuadricPoint:
    """Cylinder parameterization of the slice quadric, normalized so the
    defining equation holds exactly:

        z1 = (zeta + 1/zeta)/2,  z2 = -i (zeta - 1/zeta)/2,
        rho(e, f, zeta) = (z1 e, z2 f).
    """
    if abs(zeta) < 1e-300:
        raise ZeroArgument("rho is undefined at zeta = 0")
    e = np.asarray(e, dtype=float)
    f = np.asarray(f, dtype=float)
    z1 = (zeta + 1.0 / zeta) / 2.0
    z2 = -1j * (zeta - 1.0 / zeta) / 2.0
    return QuadricPoint((complex(z1 * e[0]), complex(z1 * e[1]),
                         complex(z2 * f[0]), complex(z2 * f[1])))


# --------------------------------------------------------------------------
# randomized checks
# --------------------------------------------------------------------------

def random_cotangent_point(rng: np.random.Generator,
                           scale: float = 1.0) -> CotangentPoint:
    u = rng.standard_normal(4)
    u /= np.linalg.norm(u)
    v = rng.standard_normal(4) * scale
    v -= (v @ u) * u
    return CotangentPoint(tuple(u), tuple(v))


def random_quadric_point(rng: np.random.Generator,
                         scale: float = 1.0) -> QuadricPoint:
    while True:
        p = (rng.standard_normal(4) * scale
             + 1j * rng.standard_normal(4) * scale)
        s = np.sum(p * p)
        if abs(s) > 1e-3:
            return QuadricPoint(tuple(p / np.sqrt(s)))


def random_unit2(rng: np.random.Generator) -> np.ndarray:
    ang = rng.uniform(0.0, 2.0 * math.pi)
    return np.array([math.cos(ang), math.sin(ang)])


def roundtrip_errors(rng: np.random.Generator, samples: int
                     ) -> tuple[float, float]:
    """Max componentwise errors of mu_inv(mu(z)) and mu(mu_inv(p))."""
    worst_z = 0.0
    worst_p = 0.0
    for _ in range(samples):
        z = random_quadric_point(rng)
        back = mu_inv(mu(z)).array()
        worst_z = max(worst_z, float(np.max(np.abs(back - z.array()))))
        p = random_cotangent_point(rng, scale=2.0)
        q = mu(mu_inv(p))
        u0, v0 = p.arrays()
        u1, v1 = q.arrays()
        worst_p = max(worst_p,
                      float(np.max(np.abs(u1 - u0))),
                      float(np.max(np.abs(v1 - v0))))
    return worst_z, worst_p


def p_image_errors(rng: np.random.Generator, grid_thetas: int = 48,
                   lam_max: float = 2.0, lam_steps: int = 21,
                   ef_samples: int = 100) -> float:
    """Max |P(mu_inv(sigma(e,f,theta,lam))) - p_image(theta,lam)| over a
    grid crossed with random unit pairs (e, f)."""
    worst = 0.0
    pairs = [(random_unit2(rng), random_unit2(rng))
             for _ in range(ef_samples)]
    for it in range(grid_thetas):
        theta = 2.0 * math.pi * it / grid_thetas
        for il in range(lam_steps):
            lam = -lam_max + 2.0 * lam_max * il / (lam_steps - 1)
            expected = p_image(theta, lam)
            for e, f in pairs:
                z = mu_inv(sigma(e, f, theta, lam)).array()
                worst = max(worst, abs(quadratic(z) - expected))
    return worst


def sigma_invariance_spread(rng: np.random.Generator, theta: float,
                            lam: float, samples: int = 100) -> float:
    """Spread of P(mu_inv(sigma(e, f, theta, lam))) over random (e, f)."""
    values = []
    for _ in range(samples):
        e, f = random_unit2(rng), random_unit2(rng)
        values.append(quadratic(mu_inv(sigma(e, f, theta, lam)).array()))
    values = np.asarray(values)
    return float(np.max(np.abs(values - values[0])))


def _tangent_curve(rng: np.random.Generator):
    """A curve t -> z(t) on the quadric and its direction, via
    normalizing a random affine line."""
    p0 = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    dp = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    if abs(np.sum(p0 * p0)) < 1e-2:
        return _tangent_curve(rng)

    def curve(t: float) -> np.ndarray:
        p = p0 + t * dp
        return p / np.sqrt(np.sum(p * p))

    return curve


def symplectic_pullback_error(rng: np.random.Generator,
                              samples: int = 100,
                              step: float = FD_STEP) -> float:
    """Finite-difference check that mu pulls sum(-v_j du_j) back to
    sum(y_j dx_j); returns the worst relative error."""
    worst = 0.0
    for _ in range(samples):
        curve = _tangent_curve(rng)
        z0 = curve(0.0)
        u0, v0 = mu(QuadricPoint(tuple(z0))).arrays()

        up = mu(QuadricPoint(tuple(curve(step)))).arrays()[0]
        um = mu(QuadricPoint(tuple(curve(-step)))).arrays()[0]
        du = (up - um) / (2.0 * step)
        lhs = float(-(v0 @ du))

        zp = curve(step)
        zm = curve(-step)
        dx = (zp.real - zm.real) / (2.0 * step)
        rhs = float(z0.imag @ dx)

        scale = max(1.0, abs(lhs), abs(rhs))
        worst = max(worst, abs(lhs - rhs) / scale)
    return worst


def geometry_report(seed: int = 0, samples: int = 200,
                    grid_thetas: int = 48, lam_steps: int = 21,
                    lam_max: float = 2.0, ef_samples: int = 100) -> dict:
    """Run the numeric identity suite; every entry reports the worst
    error and the tolerance it is held to."""
    rng = np.random.default_rng(seed)
    z_err, p_err = roundtrip_errors(rng, samples)
    grid_err = p_image_errors(rng, grid_thetas, lam_max, lam_steps,
                              ef_samples)
    pull_err = symplectic_pullback_error(rng)
    checks = {
        "roundtrip_quadric": (z_err, ROUNDTRIP_TOL),
        "roundtrip_cotangent": (p_err, ROUNDTRIP_TOL),
        "p_image_grid": (grid_err, ROUNDTRIP_TOL),
        "symplectic_pullback": (pull_err, FD_TOL),
    }
    return {
        name: {"error": err, "tolerance": tol, "ok": err < tol}
        for name, (err, tol) in checks.items()
    }


# --------------------------------------------------------------------------
# figure emission
# --------------------------------------------------------------------------

def sample_curve(points: list[tuple[float, float]], per_segment: int = 40
                 ) -> list[tuple[float, float]]:
    """Densely sample a piecewise-linear curve in the (theta, lam) strip."""
    out = []
    for (t0, l0), (t1, l1) in zip(points, points[1:]):
        for i in range(per_segment):
            s = i / per_segment
            out.append((t0 + s * (t1 - t0), l0 + s * (l1 - l0)))
    out.append(tuple(points[-1]))
    return out


def default_figure_curves(loop_points: int = 200) -> dict[str, list]:
    """Three boundary curves whose images qualitatively reproduce the
    triangle-and-bigons figure: the zero section maps onto the segment
    [-1, 1]; two loops centered on either side of theta = pi/4 map to
    closed curves crossing the segment, meeting once above the real
    axis and each cutting a bigon below it."""
    curves: dict[str, list] = {}
    curves["zero_section"] = [(2.0 * math.pi * i / loop_points, 0.0)
                              for i in range(loop_points + 1)]

    def loop(center: float, r_theta: float, r_lam: float):
        pts = []
        for i in range(loop_points + 1):
            t = 2.0 * math.pi * i / loop_points
            pts.append((center + r_theta * math.cos(t),
                        r_lam * math.sin(t)))
        return pts

    curves["upper_sheet"] = loop(math.pi / 4 - 0.12, 0.30, 0.25)
    curves["lower_sheet"] = loop(math.pi / 4 + 0.12, 0.30, 0.25)
    return curves


def figure_rows(curves: dict[str, list]) -> list[tuple]:
    """CSV rows (curve_id, theta, lam, re, im) for the curve images."""
    rows = []
    for name in sorted(curves):
        for theta, lam in curves[name]:
            val = p_image(theta, lam)
            rows.append((name, theta, lam, val.real, val.imag))
    return rows


def figure_svg(curves: dict[str, list], width: int = 640,
               height: int = 480) -> str:
    """A fixed-viewBox SVG with one path per curve image."""
    all_pts = {name: [p_image(t, l) for t, l in pts]
               for name, pts in curves.items()}
    xs = [v.real for pts in all_pts.values() for v in pts]
    ys = [v.imag for pts in all_pts.values() for v in pts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    pad = 0.05 * max(x1 - x0, y1 - y0, 1e-9)
    x0, x1, y0, y1 = x0 - pad, x1 + pad, y0 - pad, y1 + pad

    def to_px(v: complex) -> tuple[float, float]:
        px = (v.real - x0) / (x1 - x0) * width
        py = height - (v.imag - y0) / (y1 - y0) * height
        return px, py

    colors = {"zero_section": "#2a7", "upper_sheet": "#c33",
              "lower_sheet": "#36c"}
    paths = []
    for i, name in enumerate(sorted(all_pts)):
        pts = [to_px(v) for v in all_pts[name]]
        d = "M " + " L ".join("%.2f %.2f" % p for p in pts)
        color = colors.get(name, "#%02x%02x%02x" % (40 * i % 256, 60, 120))
        paths.append('<path d="%s" fill="none" stroke="%s" '
                     'stroke-width="1.5"/>' % (d, color))
    return ('<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 %d %d">\n'
            '%s\n</svg>\n' % (width, height, "\n".join(paths)))
