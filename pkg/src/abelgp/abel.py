"""The two-parameter family A_{c1,c2} of linearisable first-kind Abel equations.

psi_omega = omega(omega-1)(4c1(2omega-1)^2 - c2 omega(omega-1) + 6(2omega-1)^2) psi^3
            - (4c1(2omega-1) + 12omega - 7) psi^2
            - (3omega - c1 - 3)/(omega(omega-1)) psi

Solutions are produced parametrically from a solution w(s) of a linear
second-order equation, either hypergeometric (general solution) or with
constant coefficients (algebraic solutions).  Every parametric map here
accepts a :class:`~abelgp.dual.Dual` parameter and then returns points
with exact s-derivatives attached.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from . import dual
from .dual import Dual
from .errors import (ComplexParamsError, DomainError, GridError, ParameterError,
                     PoleError, SingularParams)
from .invariants import LinCoeffs, omega_psi_from_linear
from .specfun import HgParams, _is_int, hyp2f1


@dataclass(frozen=True)
class AbelParams:
    c1: float
    c2: float

    @property
    def regular(self):
        return self.c1 != Fraction(-3, 2) and self.c2 != 0


@dataclass(frozen=True)
class PhasePoint:
    """A point (omega, psi).  Components may be Dual numbers."""

    omega: float
    psi: float


@dataclass(frozen=True)
class HgSolutionSpec:
    """w = a F(alpha, beta; gamma; s) + b |s|^(1-gamma) F(alpha-gamma+1, beta-gamma+1; 2-gamma; s)."""

    params: HgParams
    a: float = 1.0
    b: float = 0.0

    def __post_init__(self):
        if self.a == 0 and self.b == 0:
            raise ParameterError("(a, b) = (0, 0) is not a solution")


def abel_rhs(ap, pt):
    om, psi = pt.omega, pt.psi
    if float(om) in (0.0, 1.0):
        raise PoleError(f"A_{{c1,c2}} has a pole at omega={float(om)}")
    c1, c2 = float(ap.c1), float(ap.c2)
    u = 2 * om - 1
    f3 = om * (om - 1) * (4 * c1 * u * u - c2 * om * (om - 1) + 6 * u * u)
    f2 = -(4 * c1 * u + 12 * om - 7)
    f1 = -(3 * om - c1 - 3) / (om * (om - 1))
    return ((f3 * psi + f2) * psi + f1) * psi


# --------------------------------------------------------------------------
# hypergeometric linearisations
# --------------------------------------------------------------------------

def _rational(x):
    if isinstance(x, (Fraction, int)):
        return Fraction(x)
    x = float(x)
    approx = Fraction(x).limit_denominator(10 ** 6)
    return approx if float(approx) == x else Fraction(x)


def _exact_sqrt(q):
    """Square root of a non-negative Fraction, exact when it is a rational square."""
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return math.sqrt(q)


def _case_data(c1, c2):
    k = 4 * c1 + 6
    g34 = (c1 + 2) / (2 * c1 + 3)
    return [
        (2, Fraction(1, 2), 1 / k, 1 / (c2 * k)),
        (3, g34, 1 / (2 * c1 + 3), 2 / (c2 * (2 * c1 + 3))),
        (4, g34, 1 / k, 1 / (c2 * k)),
    ]


def linearisation_cases(ap):
    """[(case, HgParams)] for the non-trivial cases 2, 3, 4.

    alpha >= beta within each triple.  Entries are exact Fractions whenever
    (c1, c2) are rational and the discriminant is a rational square.  Cases
    whose gamma is a non-positive integer are skipped.
    """
    c1, c2 = _rational(ap.c1), _rational(ap.c2)
    if c1 == Fraction(-3, 2) or c2 == 0:
        raise SingularParams(f"(c1, c2) = ({ap.c1}, {ap.c2}) is singular")
    out = []
    for case, gam, ssum, prod in _case_data(c1, c2):
        disc = ssum * ssum - 4 * prod
        if disc < 0:
            raise ComplexParamsError(
                f"case {case}: alpha, beta complex (discriminant {float(disc):.6g})")
        root = _exact_sqrt(disc)
        alpha, beta = (ssum + root) / 2, (ssum - root) / 2
        if gam <= 0 and gam.denominator == 1:
            continue
        out.append((case, HgParams(alpha, beta, gam)))
    return out


def hypergeometric_linearisations(ap):
    """Hypergeometric triples (alpha, beta, gamma) linearising A_{c1,c2}."""
    return [p for _, p in linearisation_cases(ap)]


def linearisation_relations(ap, p):
    """Residuals of the three algebraic relations tying (alpha, beta, gamma) to (c1, c2).

    Exact (Fraction) when every input is rational.
    """
    c1, c2 = ap.c1, ap.c2
    g, sm, pr = p.gamma, p.alpha + p.beta, p.alpha * p.beta
    return (
        (4 * c1 + 6) * g * g - (4 * c1 + 7) * g + c1 + 2,
        (4 * c1 + 6) * sm * sm - c2 * pr,
        c2 * pr - (8 * c1 + 12) * sm * g + (4 * c1 + 5) * sm + 2 * g - 1,
    )


def hypergeometric_coeffs(p, s):
    """p, q of the hypergeometric equation in normal form and their s-derivatives."""
    a, b, g = p.as_floats()
    if s == 0 or s == 1:
        raise PoleError(f"hypergeometric coefficients are singular at s={float(s)}")
    d = s * (1 - s)
    d1 = 1 - 2 * s
    n = g - (1 + a + b) * s
    n1 = -(1 + a + b)
    ab = a * b
    pp = n / d
    p_s = (n1 * d - n * d1) / (d * d)
    p_ss = (2 * n - 2 * d1 * p_s * d) / (d * d)
    q = -ab / d
    q_s = ab * d1 / (d * d)
    q_ss = ab * (-2 / (d * d) - 2 * d1 * d1 / (d * d * d))
    return LinCoeffs(p=pp, q=q, p_s=p_s, q_s=q_s, q_ss=q_ss, p_ss=p_ss)


def frobenius_solution(spec, s):
    """(w, w_s) for a spec at a float s."""
    a, b, g = spec.params.as_floats()
    if s >= 1:
        raise DomainError(f"s={s} outside the real branch s < 1")
    w = ws = 0.0
    if spec.a != 0:
        w += spec.a * hyp2f1(a, b, g, s)
        if a * b != 0:
            ws += spec.a * a * b / g * hyp2f1(a + 1, b + 1, g + 1, s)
    if spec.b != 0:
        if _is_int(1 - g):
            raise ParameterError("second Frobenius branch is logarithmic when gamma is an integer")
        if s == 0:
            raise DomainError("|s|^(1-gamma) branch is not differentiable at s=0")
        e = 1 - g
        a2, b2, g2 = a - g + 1, b - g + 1, 2 - g
        f = hyp2f1(a2, b2, g2, s)
        fd = a2 * b2 / g2 * hyp2f1(a2 + 1, b2 + 1, g2 + 1, s) if a2 * b2 != 0 else 0.0
        pw = abs(s) ** e
        w += spec.b * pw * f
        ws += spec.b * pw * (e / s * f + fd)
    return w, ws


def lift_solution(s, w, ws, coeffs):
    """Attach s-derivatives to (w, w_s) using w_ss = -(p w_s + q w).

    ``coeffs`` is the :class:`LinCoeffs` at the float value of s.  For a
    plain float s the inputs are returned unchanged.
    """
    if not isinstance(s, Dual):
        return w, ws
    wss = -(coeffs.p * ws + coeffs.q * w)
    return Dual(w, ws * s.der), Dual(ws, wss * s.der)


def hypergeometric_solution(spec, s):
    """(w, w_s) of the chosen hypergeometric solution; Dual-aware in s."""
    sv = dual.value(s)
    w, ws = frobenius_solution(spec, sv)
    if isinstance(s, Dual):
        return lift_solution(s, w, ws, hypergeometric_coeffs(spec.params, sv))
    return w, ws


def _omega_psi(w, ws, c):
    if float(ws) == 0.0 or float(w) == 0.0:
        raise PoleError("psi is singular where w or w_s vanishes")
    return PhasePoint(*omega_psi_from_linear(w, ws, c))


def parametric_point(spec, s):
    """(omega, psi) of the general solution generated by ``spec`` at parameter s."""
    w, ws = hypergeometric_solution(spec, s)
    return _omega_psi(w, ws, hypergeometric_coeffs(spec.params, s))


def parametric_curve(spec):
    return lambda s: parametric_point(spec, s)


# --------------------------------------------------------------------------
# algebraic solutions: w_ss + w_s + kappa w = 0
# --------------------------------------------------------------------------

def algebraic_kappa(ap):
    if not AbelParams(ap.c1, ap.c2).regular:
        raise SingularParams(f"(c1, c2) = ({ap.c1}, {ap.c2}) is singular")
    return (6 + 4 * float(ap.c1)) / float(ap.c2)


def default_mix(ap):
    """Default (a, b): (0, 1) for a repeated characteristic root, (1, 1) otherwise."""
    disc = 1 - 4 * algebraic_kappa(ap)
    return (0.0, 1.0) if abs(disc) <= 1e-14 else (1.0, 1.0)


def algebraic_solution(ap, s, a=None, b=None):
    """(w, w_s) with w_ss + w_s + kappa w = 0.

    Distinct real roots l1 > l2: w = a e^{l1 s} + b e^{l2 s}.  Repeated root:
    w = (a + b s) e^{-s/2}.  Complex roots -1/2 +- i nu: w = e^{-s/2}(a cos nu s + b sin nu s).
    """
    if a is None or b is None:
        da, db = default_mix(ap)
        a = da if a is None else a
        b = db if b is None else b
    if a == 0 and b == 0:
        raise ParameterError("(a, b) = (0, 0) is not a solution")
    disc = 1 - 4 * algebraic_kappa(ap)
    if abs(disc) <= 1e-14:
        e = dual.exp(-0.5 * s)
        w = (a + b * s) * e
        return w, (b - 0.5 * (a + b * s)) * e
    if disc > 0:
        rt = math.sqrt(disc)
        l1, l2 = 0.5 * (-1 + rt), 0.5 * (-1 - rt)
        e1, e2 = dual.exp(l1 * s), dual.exp(l2 * s)
        return a * e1 + b * e2, a * l1 * e1 + b * l2 * e2
    nu = 0.5 * math.sqrt(-disc)
    e = dual.exp(-0.5 * s)
    cs, sn = dual.cos(nu * s), dual.sin(nu * s)
    w = e * (a * cs + b * sn)
    return w, -0.5 * w + e * nu * (b * cs - a * sn)


def algebraic_point(ap, s, a=None, b=None):
    """(omega, psi) on the algebraic solution of A_{c1,c2} selected by (a, b)."""
    w, ws = algebraic_solution(ap, s, a, b)
    return _omega_psi(w, ws, LinCoeffs(p=1.0, q=algebraic_kappa(ap)))


def algebraic_curve(ap, a=None, b=None):
    return lambda s: algebraic_point(ap, s, a, b)


# --------------------------------------------------------------------------
# residual oracle
# --------------------------------------------------------------------------

_FD_REL_STEP = 1e-6


def _fd5(fun, s):
    h = _FD_REL_STEP * max(1.0, abs(s))
    pts = [fun(s + k * h) for k in (-2, -1, 1, 2)]
    out = []
    for comp in ("omega", "psi"):
        v = [getattr(p, comp) for p in pts]
        out.append((v[0] - 8 * v[1] + 8 * v[2] - v[3]) / (12 * h))
    return out


def residual_max(ap, curve, s_grid):
    """max over the grid of |(dpsi/ds)/(domega/ds) - abel_rhs(omega, psi)|.

    ``curve`` maps s to a :class:`PhasePoint`.  If it accepts a Dual
    argument the derivatives are exact, otherwise they come from 5-point
    central differences.
    """
    grid = [float(s) for s in s_grid]
    if len(grid) < 3:
        raise GridError(f"need at least 3 grid points, got {len(grid)}")
    worst = 0.0
    for s in grid:
        try:
            pt = curve(Dual(s, 1.0))
        except TypeError:
            pt = None
        if pt is not None and isinstance(pt.omega, Dual):
            om, psi = pt.omega.val, dual.value(pt.psi)
            dom, dpsi = pt.omega.der, dual.deriv(pt.psi)
        else:
            p0 = curve(s)
            om, psi = float(p0.omega), float(p0.psi)
            dom, dpsi = _fd5(curve, s)
        if dom == 0:
            raise PoleError(f"domega/ds vanishes at s={s}")
        res = abs(dpsi / dom - abel_rhs(ap, PhasePoint(om, psi)))
        worst = max(worst, res)
    return worst
