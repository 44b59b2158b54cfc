"""Leading term of the large-time expansion of the Gurevich-Pitaevskii solution.

The oscillatory zone is described by

    v = 3C/(2 - r) dn^2(K(sqrt r) phi / pi, sqrt r) - C - R,

with the modulus r = k^2 in (0, 1) serving as the parameter along the
special separatrix of the Kudashev equation (epsilon = -1).  The separatrix
is generated by one solution w(r) of the hypergeometric equation written in
r through

    s(r) = -(2 - r)^2 (1 - 2r)^2 (1 + r)^2 / (27 r^2 (1 - r)^2).

For r < 1/2 this is the Kummer solution w1 (decaying as s -> -inf); for
r > 1/2 the same analytic expression continues into w2.  Both halves are
produced by one formula, smooth through r = 1/2 (s = 0).
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import dual
from .dual import Dual
from .errors import DomainError, InversionError, ParameterError, PoleError
from .kudashev import (KUMMER_A1, KUMMER_A2, PhasePointRZ, algebraic_solution_point,
                       kummer_form, rz_from_w, W2_SPEC)
from .abel import frobenius_solution
from .specfun import complete_elliptic_K, hyp2f1, jacobi_sncndn

SQ15 = math.sqrt(15.0)
SQ27 = math.sqrt(27.0)


@dataclass(frozen=True)
class GpConstants:
    mu: float = 2.0 ** (-7 / 6) * 3.0 ** (-9 / 4)
    c: float = -(2.0 ** 9) * 3.0 ** (11 / 4) * 5.0 ** (3 / 4) / 7
    bq_soliton: float = -(2.0 ** (5 / 4)) * 3.0 ** (-3 / 2) * 5.0 ** (3 / 4) / 7


CONSTANTS = GpConstants()


@dataclass(frozen=True)
class EllipticCoeffs:
    A: float
    B: float
    C: float
    ksq: float


@dataclass(frozen=True)
class BoreSample:
    t: float
    x: float
    z: float
    phi: float
    v: float
    r: float = math.nan
    u: float = math.nan
    branch: str = ""
    status: str = "ok"


def _check_r(r, lo=0.0, hi=1.0):
    rv = dual.value(r)
    if not lo < rv < hi:
        raise DomainError(f"r={rv} outside ({lo}, {hi})")


def _branch_range(branch):
    if branch == "w1":
        return 0.0, 0.5
    if branch == "w2":
        return 0.5, 1.0
    raise ParameterError(f"unknown branch {branch!r}")


def _check_branch(r, branch):
    _branch_range(branch)
    if branch == "w1" and not 0.0 < r <= 0.5:
        raise DomainError(f"branch w1 needs r in (0, 1/2], got {r}")
    if branch == "w2" and not 0.5 <= r < 1.0:
        raise DomainError(f"branch w2 needs r in [1/2, 1), got {r}")


# --------------------------------------------------------------------------
# r-parametrisation
# --------------------------------------------------------------------------

def _rho(r):
    """(2 - r)(1 - 2r)(1 + r) / (sqrt(27) r (1 - r)); s = -rho^2."""
    return (2 - r) * (1 - 2 * r) * (1 + r) / (SQ27 * r * (1 - r))


def _rho_r(r):
    P = 2 - 3 * r - 3 * r * r + 2 * r ** 3
    P1 = -3 - 6 * r + 6 * r * r
    m = r * (1 - r)
    return (P1 * m - P * (1 - 2 * r)) / (SQ27 * m * m)


def s_of_r(r):
    _check_r(r)
    rho = _rho(r)
    return -rho * rho


def ds_dr(r):
    _check_r(r)
    return -2 * _rho(r) * _rho_r(r)


def w_of_r(r):
    """(w, dw/dr) of the separatrix solution at modulus r in (0, 1)."""
    _check_r(r)
    r = float(r)
    s = s_of_r(r)
    if s < -2.0:
        if r < 0.5:
            w, ws = kummer_form(s)
        else:
            w, ws = frobenius_solution(W2_SPEC, s)
        return w, ws * ds_dr(r)
    # w = A1 F1(s) - A2 rho(r) F2(s) stays smooth where s -> 0
    rho, rho_r, s_r = _rho(r), _rho_r(r), ds_dr(r)
    f1 = hyp2f1(5 / 12, -7 / 12, 0.5, s)
    f1d = (5 / 12) * (-7 / 12) / 0.5 * hyp2f1(17 / 12, 5 / 12, 1.5, s)
    f2 = hyp2f1(11 / 12, -1 / 12, 1.5, s)
    f2d = (11 / 12) * (-1 / 12) / 1.5 * hyp2f1(23 / 12, 11 / 12, 2.5, s)
    w = KUMMER_A1 * f1 - KUMMER_A2 * rho * f2
    wr = KUMMER_A1 * f1d * s_r - KUMMER_A2 * (rho_r * f2 + rho * f2d * s_r)
    return w, wr


def _sqrt3(x):
    return cmath.exp(cmath.log(x) / 3) if x != 0 else 0j


_E1 = cmath.exp(1j * math.pi / 3)
_E2 = cmath.exp(2j * math.pi / 3)
_IMAG_TOL = 1e-10


def _zeta_theta(s):
    sq = 1j * math.sqrt(-s)
    return _sqrt3(sq + 1), _sqrt3(sq - 1), sq


def _real(zc, what):
    if abs(zc.imag) > _IMAG_TOL * max(1.0, abs(zc)):
        raise DomainError(f"{what} is not real (imag {zc.imag:.3e})")
    return zc.real


def modulus_candidates(s):
    """(k2^2, k3^2): the admissible moduli in (0, 1/2] and [1/2, 1) for s <= 0."""
    s = float(s)
    if s > 0:
        raise DomainError(f"s={s} > 0")
    zeta, theta, _ = _zeta_theta(s)
    k2 = _E1 * (zeta - theta) / (zeta - _E2 * theta)
    k3 = (zeta + _E1 * theta) / (theta + _E1 * zeta)
    return _real(k2, "k2^2"), _real(k3, "k3^2")


def cubic_roots_C(s, w, w_s, epsilon):
    """(C1, C2, C3): roots of C^3 + (15R^2 - 5)C + 70R^3 - 20R + 5z for (R, z) given by w.

    Principal complex cube roots are used for zeta, theta and (s - 1)^(1/3);
    the combinations are real up to rounding, which is asserted.
    """
    s = float(s)
    if s >= 0:
        raise DomainError("closed-form roots need s < 0")
    d = 144 * s * (s - 1) * w_s * w_s + 5 * w * w
    if d <= 0:
        raise DomainError(f"144 s(s-1) w_s^2 + 5 w^2 = {d:.3e} <= 0")
    zeta, theta, sq = _zeta_theta(s)
    pref = 4 * epsilon * SQ15 * w_s * _sqrt3(complex(s - 1)) * sq / math.sqrt(d)
    brackets = (_E2 * zeta - _E1 * theta, zeta + theta, _E2 * theta - _E1 * zeta)
    return tuple(_real(pref * b, f"C{i + 1}") for i, b in enumerate(brackets))


def cubic_23d(C, R, z):
    return C ** 3 + (15 * R * R - 5) * C + 70 * R ** 3 - 20 * R + 5 * z


def C_of_r(r, R, z, w=None, w_r=None):
    """C = -3 (r^2 - r + 1)/((1 - 2r)(1 + r)) (14R^3 - 4R + z)/(1 - 3R^2).

    At r = 1/2 the expression is 0/0 on the separatrix; pass (w, w_r) to
    get the limiting value from the w-form instead.
    """
    _check_r(r)
    if abs(1 - 2 * r) < 1e-12:
        if w is None:
            raise PoleError("r = 1/2: pass (w, w_r) for the limiting value")
        return C_R_from_w(r, w, w_r)[0]
    t = 1 - 3 * R * R
    if t == 0:
        raise PoleError("1 - 3R^2 = 0")
    return -3 * (r * r - r + 1) / ((1 - 2 * r) * (1 + r)) * (14 * R ** 3 - 4 * R + z) / t


def _Dr(r, w, wr):
    return 36 * r * r * (1 - r) ** 2 * wr * wr + 5 * (r * r - r + 1) * w * w


def C_R_from_w(r, w, wr):
    """(C, R) in terms of w(r), w_r(r) for epsilon = -1."""
    P = r * r - r + 1
    D = _Dr(r, w, wr)
    C = 2 * SQ15 * r * (1 - r) * (2 - r) * wr / (math.sqrt(D) * math.sqrt(P))
    R = -SQ15 * math.sqrt(P) * w / (3 * math.sqrt(D))
    return C, R


def f_and_z_of_r(r, branch=None, const=CONSTANTS):
    """(f, z) on the separatrix at modulus r (|w_r|^(5/2) keeps f real)."""
    if branch is not None:
        _check_branch(r, branch)
    _check_r(r)
    w, wr = w_of_r(r)
    P = r * r - r + 1
    D = _Dr(r, w, wr)
    m = r * (1 - r)
    f = const.c * 2 ** (2 / 3) * 3 ** (5 / 4) * m ** (10 / 3) * abs(wr) ** 2.5 / (
        16 * D ** 1.75 * P ** 0.75)
    tri = (108 * r ** 3 * (2 - r) * (1 - 2 * r) * (1 + r) * (r - 1) ** 3 * wr ** 3
           - 216 * m * m * P * P * w * wr * wr + 5 * P ** 3 * w ** 3)
    z = 2 * SQ15 * tri / (9 * D ** 1.5 * P ** 1.5)
    return f, z


def f_from_s(s, w, w_s, const=CONSTANTS):
    """f = c |s|^(5/4) |s-1|^(5/6) |w_s|^(5/2) / |144 s(s-1) w_s^2 + 5 w^2|^(7/4)."""
    d = 144 * s * (s - 1) * w_s * w_s + 5 * w * w
    return const.c * abs(s) ** 1.25 * abs(s - 1) ** (5 / 6) * abs(w_s) ** 2.5 / abs(d) ** 1.75


def separatrix_point(r):
    """(R, z) of the epsilon = -1 separatrix through the general-solution formula."""
    w, wr = w_of_r(r)
    s_r = ds_dr(r)
    if s_r == 0:
        # s = 0: w_s is infinite there, the r-form stays finite
        return PhasePointRZ(C_R_from_w(r, w, wr)[1], f_and_z_of_r(r)[1])
    return rz_from_w(s_of_r(r), w, wr / s_r, -1)


@dataclass(frozen=True)
class SlowState:
    """Everything the leading term needs at one modulus r."""

    r: float
    w: float
    w_r: float
    R: float
    z: float
    C: float
    f: float
    Q: float


def slow_state(r, const=CONSTANTS):
    _check_r(r)
    w, wr = w_of_r(r)
    C, R = C_R_from_w(r, w, wr)
    f, z = f_and_z_of_r(r, const=const)
    den = 4 * R + 6 * z
    if den == 0:
        raise PoleError("4R + 6z = 0")
    return SlowState(r, w, wr, R, z, C, f, 7 * f / den)


def elliptic_coeffs(r, const=CONSTANTS):
    st = slow_state(r, const)
    C = st.C
    A = 3 * C / (2 - r)
    B = math.sqrt(C / (4 * (2 - r)))
    return EllipticCoeffs(A, B, C, r)


def coefficient_residuals(ec, R, z):
    """Residuals of A - 12B^2, 4(2-k^2)B^2 - C, 12(k^2-1)AB^2 + 3C^2 + 15R^2 - 5 and the cubic."""
    A, B, C, k2 = ec.A, ec.B, ec.C, ec.ksq
    return (A - 12 * B * B,
            4 * (2 - k2) * B * B - C,
            12 * (k2 - 1) * A * B * B + 3 * C * C + 15 * R * R - 5,
            cubic_23d(C, R, z))


def _v_and_vphi(st, phi):
    r = st.r
    k = math.sqrt(r)
    scale = complete_elliptic_K(k) / math.pi
    sn, cn, dn = jacobi_sncndn(scale * phi, k)
    amp = 3 * st.C / (2 - r)
    v = amp * dn * dn - st.C - st.R
    v_phi = -2 * amp * r * sn * cn * dn * scale
    return v, v_phi


def leading_term_v(r, phi, branch="w1", const=CONSTANTS):
    _check_branch(r, branch)
    return _v_and_vphi(slow_state(r, const), phi)[0]


def first_order_residual(st, phi):
    """Q^2 v_phi^2 + v^3/3 + R v^2 + (6R^2 - 5/3) v + 5R - 18R^3 - 5z/3 at (r, phi)."""
    v, vp = _v_and_vphi(st, phi)
    R, z = st.R, st.z
    return st.Q ** 2 * vp * vp + v ** 3 / 3 + R * v * v + (6 * R * R - 5 / 3) * v + 5 * R - 18 * R ** 3 - 5 * z / 3


def periodicity_lhs(r, const=CONSTANTS):
    w, wr = w_of_r(r)
    P = r * r - r + 1
    num = 3 * r * (1 - r * r) * (2 - r) * (1 - 2 * r) * wr + 7 * P * P * w
    return const.mu * num / ((r * (1 - r)) ** (5 / 6) * P)


def periodicity_residual(r, const=CONSTANTS):
    """|mu (3r(1-r^2)(2-r)(1-2r) w_r + 7(r^2-r+1)^2 w)/((r(1-r))^(5/6)(r^2-r+1)) - F(1/2,1/2;1;r)|."""
    r = float(r)
    if not 0.0 < r <= 0.5:
        raise DomainError(f"r={r} outside (0, 1/2]")
    return abs(periodicity_lhs(r, const) - hyp2f1(0.5, 0.5, 1.0, r))


# --------------------------------------------------------------------------
# bore sampling
# --------------------------------------------------------------------------

R_MIN, R_MAX = 1e-6, 1 - 1e-6
_SCAN_POINTS = 512


def _monotone_pieces(a, b):
    """Split [a, b] into pieces on which z(r) is strictly monotone."""
    rs = np.linspace(a, b, _SCAN_POINTS)
    zs = np.array([f_and_z_of_r(r)[1] for r in rs])
    dz = np.sign(np.diff(zs))
    cuts = [0]
    for i in range(1, len(dz)):
        if dz[i] != dz[i - 1] and dz[i] != 0:
            cuts.append(i)
    cuts.append(len(rs) - 1)
    return [(rs[i], rs[j], zs[i], zs[j]) for i, j in zip(cuts[:-1], cuts[1:])]


_PIECES = {}


def branch_pieces(branch):
    """Monotone pieces (r_lo, r_hi, z_lo, z_hi) of z(r) on the branch interval (cached)."""
    if branch not in _PIECES:
        lo, hi = _branch_range(branch)
        _PIECES[branch] = _monotone_pieces(max(lo, R_MIN), min(hi, R_MAX))
    return _PIECES[branch]


def attainable_z(branch=None):
    brs = (branch,) if branch else ("w1", "w2")
    zs = [z for b in brs for p in branch_pieces(b) for z in p[2:]]
    return float(min(zs)), float(max(zs))


def invert_z(z, branch):
    """r on the branch with z(r) = z, by bisection on the first monotone piece containing z."""
    for r0, r1, z0, z1 in branch_pieces(branch):
        if min(z0, z1) <= z <= max(z0, z1):
            g0 = z0 - z
            for _ in range(200):
                rm = 0.5 * (r0 + r1)
                gm = f_and_z_of_r(rm)[1] - z
                if (gm < 0) == (g0 < 0):
                    r0, g0 = rm, gm
                else:
                    r1 = rm
                if r1 - r0 <= 4e-16 * max(1.0, abs(rm)):
                    break
            return 0.5 * (r0 + r1)
    raise InversionError(f"z={z} outside the attainable range of branch {branch}",
                         attainable_z(branch))


def bore_sample(t, x, const=CONSTANTS, phase_shift=math.pi):
    if t <= 0:
        raise DomainError("t must be positive")
    z = x * t ** -1.5
    last = None
    for branch in ("w1", "w2"):
        try:
            r = invert_z(z, branch)
        except InversionError as exc:
            last = exc
            continue
        st = slow_state(r, const)
        phi = t ** 1.75 * st.f + phase_shift
        v = _v_and_vphi(st, phi)[0]
        return BoreSample(t, x, z, phi, v, r, math.sqrt(t) * v, branch)
    raise InversionError(f"z={z} is not attained on either branch", attainable_z()) from last


def bore_profile(t, x_min, x_max, n, const=CONSTANTS, strict=False):
    """n samples over [x_min, x_max]; unattainable points get status 'inversion' unless strict."""
    if t <= 0:
        raise DomainError("t must be positive")
    out = []
    for x in np.linspace(x_min, x_max, n) if n > 0 else []:
        try:
            out.append(bore_sample(t, float(x), const))
        except InversionError:
            if strict:
                raise
            z = x * t ** -1.5
            out.append(BoreSample(t, float(x), z, math.nan, math.nan, status="inversion"))
    return out


def sample_residual(sample, const=CONSTANTS):
    return first_order_residual(slow_state(sample.r, const), sample.phi)


def attainable_x(t):
    z0, z1 = attainable_z()
    return z0 * t ** 1.5, z1 * t ** 1.5


# --------------------------------------------------------------------------
# soliton limit
# --------------------------------------------------------------------------

def soliton_C(sigma, epsilon):
    """Double root of the cubic on the algebraic solution, -eps sqrt(10)(7 sigma - 5)/(6 sqrt(9 sigma^2 - 10 sigma + 5)).

    Its magnitude is sqrt(5/3 - 5R^2).
    """
    q = 9 * sigma * sigma - 10 * sigma + 5
    return -epsilon * math.sqrt(10) * (7 * sigma - 5) / (6 * math.sqrt(q))


def soliton_profile(sigma, phi, epsilon, const=CONSTANTS):
    """v = 3C sech^2((B/Q) phi) - C - R on the algebraic solution (phase shift 0)."""
    pt = algebraic_solution_point(epsilon, sigma)
    R = pt.R
    if 5 / 3 - 5 * R * R < 0:
        raise DomainError("5/3 - 5R^2 < 0")
    C = soliton_C(sigma, epsilon)
    return 3 * C / math.cosh(const.bq_soliton * phi) ** 2 - C - R


def soliton_far_field(sigma, epsilon):
    """V = -C - R, the limit of v as |phi| -> inf."""
    return -soliton_C(sigma, epsilon) - algebraic_solution_point(epsilon, sigma).R


def soliton_bq(sigma, epsilon):
    """B/Q from B = sqrt(|C|)/2 and Q = df/dz along the algebraic solution (c = 1)."""
    sd = Dual(float(sigma), 1.0)
    q = 9 * sd * sd - 10 * sd + 5
    f = abs(7 * sd - 5) ** 2.5 / q ** 1.75
    z = algebraic_solution_point(epsilon, sd).z
    Q = f.der / z.der
    return math.sqrt(abs(soliton_C(sigma, epsilon))) / 2 / Q
