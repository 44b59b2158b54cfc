"""The Kudashev equation

    dR/dz = (486R^4 - 171R^2 + 9zR + 5) / (9(54R^3 - 9R + z)(2R + 3z))

together with its general parametric solution through the hypergeometric
equation with (alpha, beta, gamma) = (5/12, -7/12, 1/2), the algebraic
separatrix, the two Kummer separatrices and phase-portrait sampling.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp

from . import dual
from .abel import HgSolutionSpec, frobenius_solution, hypergeometric_coeffs, lift_solution
from .dual import Dual
from .errors import DomainError, IntegratorError, ParameterError, PoleError
from .specfun import HgParams, gamma_fn, hyp2f1

KUDASHEV_PARAMS = HgParams(Fraction(5, 12), Fraction(-7, 12), Fraction(1, 2))

SQ15 = math.sqrt(15.0)
SQ10 = math.sqrt(10.0)

# w = A1 F(5/12, -7/12; 1/2; s) -+ A2 sqrt(-s) F(11/12, -1/12; 3/2; s)
KUMMER_A1 = math.sqrt(math.pi) / (gamma_fn(11 / 12) * gamma_fn(19 / 12))
KUMMER_A2 = 2.0 * math.sqrt(math.pi) / (gamma_fn(5 / 12) * gamma_fn(13 / 12))


@dataclass(frozen=True)
class PhasePointRZ:
    R: float
    z: float


@dataclass(frozen=True)
class Branch:
    """Choice of solution w of the hypergeometric equation plus the sign epsilon.

    ``kummer`` is "w1", "w2" or "generic"; a generic branch carries an
    :class:`HgSolutionSpec` with the (5/12, -7/12, 1/2) triple.  Since
    w -> -w is the same as epsilon -> -epsilon, a generic (a, b) is
    normalised to a^2 + b^2 = 1 with a >= 0 (b > 0 if a = 0), flipping
    epsilon when needed.
    """

    epsilon: int = 1
    kummer: str = "w1"
    spec: Optional[HgSolutionSpec] = None

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise ParameterError("epsilon must be +1 or -1")
        if self.kummer not in ("w1", "w2", "generic"):
            raise ParameterError(f"unknown branch {self.kummer!r}")
        if self.kummer != "generic":
            return
        if self.spec is None:
            raise ParameterError("generic branch needs a spec")
        if tuple(map(float, self.spec.params.as_floats())) != KUDASHEV_PARAMS.as_floats():
            raise ParameterError("the general solution needs the (5/12, -7/12, 1/2) triple")
        a, b = float(self.spec.a), float(self.spec.b)
        n = math.hypot(a, b)
        sign = -1 if (a < 0 or (a == 0 and b < 0)) else 1
        object.__setattr__(self, "spec", HgSolutionSpec(KUDASHEV_PARAMS, sign * a / n, sign * b / n))
        object.__setattr__(self, "epsilon", sign * self.epsilon)


# --------------------------------------------------------------------------
# the equation
# --------------------------------------------------------------------------

def numerator(R, z):
    return 486 * R ** 4 - 171 * R ** 2 + 9 * z * R + 5


def denominator(R, z):
    return 9 * (54 * R ** 3 - 9 * R + z) * (2 * R + 3 * z)


def _den_scale(R, z):
    return 9 * max(abs(54 * R ** 3), abs(9 * R), abs(z), 1e-300) * max(abs(2 * R), abs(3 * z), 1e-300)


def kudashev_rhs(pt):
    R, z = pt.R, pt.z
    den = denominator(R, z)
    if abs(float(den)) <= 1e-14 * _den_scale(float(R), float(z)):
        num = numerator(R, z)
        kind = "equilibrium" if abs(float(num)) <= 1e-12 else "pole curve"
        raise PoleError(f"denominator vanishes at (R, z) = ({float(R)}, {float(z)}) [{kind}]")
    return numerator(R, z) / den


def equilibria():
    """P1..P6 as (R, z) pairs."""
    p1 = PhasePointRZ(-math.sqrt(3) / 3, 2 * math.sqrt(3) / 9)
    p2 = PhasePointRZ(-1 / (3 * math.sqrt(2)), -math.sqrt(2))
    p3 = PhasePointRZ(-math.sqrt(2.5) / 9, 2 * math.sqrt(2.5) / 27)
    neg = lambda p: PhasePointRZ(-p.R, -p.z)
    return [p1, p2, p3, neg(p3), neg(p2), neg(p1)]


def implicit_residual(pt):
    """20(1 - 3R^2)^3 - 27(z + 14R^3 - 4R)^2; zero on the algebraic separatrix."""
    R, z = pt.R, pt.z
    return 20 * (1 - 3 * R * R) ** 3 - 27 * (z + 14 * R ** 3 - 4 * R) ** 2


def cubic_discriminant(pt):
    """Discriminant of C^3 + (15R^2 - 5)C + 70R^3 - 20R + 5z (equals 25 implicit_residual)."""
    R, z = pt.R, pt.z
    p = 15 * R * R - 5
    q = 70 * R ** 3 - 20 * R + 5 * z
    return -4 * p ** 3 - 27 * q * q


def ratio_invariant(pt):
    """(14R^3 - 4R + z)^2 / (1 - 3R^2)^3; equals (20/27) s/(s-1) on the general solution."""
    R, z = pt.R, pt.z
    d = 1 - 3 * R * R
    if float(d) == 0:
        raise PoleError("1 - 3R^2 = 0")
    return (14 * R ** 3 - 4 * R + z) ** 2 / d ** 3


# --------------------------------------------------------------------------
# separatrices
# --------------------------------------------------------------------------

W1_SPEC = HgSolutionSpec(KUDASHEV_PARAMS, KUMMER_A1, -KUMMER_A2)
W2_SPEC = HgSolutionSpec(KUDASHEV_PARAMS, KUMMER_A1, KUMMER_A2)


def kummer_form(s):
    """(-s)^(-5/12) F(5/12, 11/12; 2; 1/s) and its s-derivative, for s < 0."""
    if s >= 0:
        raise DomainError("the Kummer form needs s < 0")
    u = -s
    f = hyp2f1(5 / 12, 11 / 12, 2.0, 1 / s)
    fd = (5 / 12) * (11 / 12) / 2.0 * hyp2f1(17 / 12, 23 / 12, 3.0, 1 / s)
    w = u ** (-5 / 12) * f
    ws = (5 / 12) * u ** (-17 / 12) * f - u ** (-5 / 12) * fd / (s * s)
    return w, ws


def separatrix_w(branch, s):
    """(w, w_s) of the Kummer solution w1 or its counterpart w2, s <= 0.

    w1 is the solution decaying like (-s)^(-5/12) as s -> -inf; w2 differs
    from it in the sign of the sqrt(-s) component.  At s = 0 the derivative
    is infinite and returned as +-inf.
    """
    name = branch.kummer if isinstance(branch, Branch) else branch
    if name not in ("w1", "w2"):
        raise ParameterError(f"not a Kummer branch: {name!r}")
    s = float(s)
    if s > 0:
        raise DomainError(f"separatrix solutions are defined for s <= 0, got {s}")
    if s == 0:
        return KUMMER_A1, (math.inf if name == "w1" else -math.inf)
    if name == "w1" and s < -2.0:
        return kummer_form(s)
    return frobenius_solution(W1_SPEC if name == "w1" else W2_SPEC, s)


def branch_w(br, s):
    """(w, w_s) for a branch; Dual-aware in s."""
    sv = dual.value(s)
    if br.kummer == "generic":
        w, ws = frobenius_solution(br.spec, sv)
    else:
        w, ws = separatrix_w(br.kummer, sv)
    if isinstance(s, Dual):
        return lift_solution(s, w, ws, hypergeometric_coeffs(KUDASHEV_PARAMS, sv))
    return w, ws


def rz_from_w(s, w, ws, epsilon):
    """(R, z) from a solution (w, w_s) of the hypergeometric equation at s."""
    d = 144 * s * (s - 1) * ws * ws + 5 * w * w
    if float(d) <= 0:
        raise DomainError(f"144 s(s-1) w_s^2 + 5 w^2 = {float(d):.3e} <= 0")
    rd = dual.sqrt(d)
    R = epsilon * SQ15 * w / (3 * rd)
    num = 144 * s * s * (s - 1) * ws ** 3 - 72 * s * (s - 1) * w * ws * ws + (5 / 12) * w ** 3
    z = -8 * epsilon * SQ15 * num / (3 * d * rd)
    return PhasePointRZ(R, z)


def general_solution_point(br, s):
    w, ws = branch_w(br, s)
    return rz_from_w(s, w, ws, br.epsilon)


def general_solution_curve(br):
    return lambda s: general_solution_point(br, s)


def curve_residual_max(curve, s_grid):
    """max |(dR/ds)/(dz/ds) - rhs(R, z)| along a Dual-aware curve s -> PhasePointRZ."""
    worst = 0.0
    for s in s_grid:
        pt = curve(Dual(float(s), 1.0))
        R, z = pt.R, pt.z
        rhs = kudashev_rhs(PhasePointRZ(R.val, z.val))
        worst = max(worst, abs(R.der / z.der - rhs))
    return worst


def from_omega_psi(pt, epsilon):
    """Point transformation from A_{-3,24/35} to the Kudashev equation."""
    om, psi = pt.omega, pt.psi
    if float(om) == 1 or float(psi) == 0:
        raise PoleError("omega = 1 or psi = 0")
    if float(6 * om + 1) == 0:
        raise PoleError("omega = -1/6")
    ratio = (1 - om) / (3 * (6 * om + 1))
    if float(ratio) < 0:
        raise DomainError(f"(1 - omega)/(6 omega + 1) < 0 at omega={float(om)}")
    root = dual.sqrt(ratio)
    R = epsilon * root
    z = -(epsilon / 6) * root * (2 * (1 - om) * (576 * om * om - 333 * om + 2) * psi + 245) / (
        (om - 1) ** 2 * (6 * om + 1) * psi)
    return PhasePointRZ(R, z)


def algebraic_solution_point(epsilon, sigma):
    q = 9 * sigma * sigma - 10 * sigma + 5
    rq = dual.sqrt(q)
    R = epsilon * SQ10 * (sigma + 1) / (6 * rq)
    z = -epsilon * SQ10 * (sigma - 1) * (sigma * sigma - 10 * sigma + 5) / (q * rq)
    return PhasePointRZ(R, z)


def explicit_separatrix_z(R, sign):
    """z on the upper/lower (sign = +-1) branch of the algebraic separatrix."""
    t = 1 - 3 * R * R
    if t < 0:
        if t > -1e-15:
            t = 0.0
        else:
            raise DomainError(f"3R^2 > 1 at R={R}")
    return -(2 / 9) * t * sign * math.sqrt(15 * t) - 2 * R * (7 * R * R - 2)


# --------------------------------------------------------------------------
# phase portrait
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Window:
    R_min: float = -0.8
    R_max: float = 0.8
    z_min: float = -2.0
    z_max: float = 2.0

    def __post_init__(self):
        if not (self.R_min < self.R_max and self.z_min < self.z_max):
            raise ParameterError("empty window")

    def contains(self, R, z):
        return self.R_min <= R <= self.R_max and self.z_min <= z <= self.z_max


@dataclass
class Trajectory:
    seed: PhasePointRZ
    R: np.ndarray
    z: np.ndarray
    stops: tuple = field(default=("", ""))  # reasons at the backward / forward ends


def _field(_, y):
    R, z = y
    n = numerator(R, z)
    d = denominator(R, z)
    h = math.hypot(n, d)
    if h == 0.0:
        return [0.0, 0.0]
    return [n / h, d / h]


def default_seeds(window=None, n_R=7, n_z=9):
    """Seed grid symmetric under (R, z) -> (-R, -z)."""
    w = window or Window()
    Rs = np.linspace(w.R_min, w.R_max, n_R + 2)[1:-1]
    zs = np.linspace(w.z_min, w.z_max, n_z + 2)[1:-1]
    return [PhasePointRZ(float(R), float(z)) for R in Rs for z in zs]


def _integrate(seed, direction, window, rtol, span, event_tol):
    y0 = [seed.R, seed.z]

    def pole(t, y):
        return denominator(y[0], y[1])
    pole.terminal = True

    def leave(t, y):
        R, z = y
        return min(R - window.R_min, window.R_max - R, z - window.z_min, window.z_max - z)
    leave.terminal = True

    def rest(t, y):
        return math.hypot(numerator(*y), denominator(*y)) - 1e-9
    rest.terminal = True

    sol = solve_ivp(_field, (0.0, direction * span), y0, method="DOP853", rtol=rtol,
                    atol=rtol * 1e-2, events=(pole, leave, rest), dense_output=False,
                    max_step=0.02)
    if sol.status == -1:
        raise IntegratorError(sol.message)
    R, z = sol.y
    reason = "span"
    for name, te in zip(("pole", "window", "equilibrium"), sol.t_events):
        if len(te):
            reason = name
    if reason == "pole":
        Re, ze = R[-1], z[-1]
        if abs(denominator(Re, ze)) > event_tol * (1 + abs(Re) ** 3 + abs(ze)):
            raise IntegratorError("pole-curve event not resolved")
    return R, z, reason


def trajectory(seed, window=None, rtol=1e-10, span=10.0, event_tol=1e-9):
    """Integral curve through ``seed`` in both directions of the flow.

    The flow is parametrised by arclength of the planar field (N, D) so
    that vertical tangencies cause no trouble; each end stops on the pole
    curve (sign change of the denominator), on leaving the window, near an
    equilibrium, or after ``span`` arclength.
    """
    window = window or Window()
    if not window.contains(seed.R, seed.z):
        raise DomainError("seed outside the window")
    Rb, zb, rb = _integrate(seed, -1.0, window, rtol, span, event_tol)
    Rf, zf, rf = _integrate(seed, 1.0, window, rtol, span, event_tol)
    R = np.concatenate([Rb[::-1], Rf[1:]])
    z = np.concatenate([zb[::-1], zf[1:]])
    return Trajectory(seed, R, z, (rb, rf))


def phase_portrait(seeds=None, window=None, rtol=1e-10, span=10.0, event_tol=1e-9):
    """Trajectories through every seed, in seed order."""
    window = window or Window()
    if seeds is None:
        seeds = default_seeds(window)
    out = []
    for sd in seeds:
        if denominator(sd.R, sd.z) == 0:
            continue
        out.append(trajectory(sd, window, rtol, span, event_tol))
    return out
