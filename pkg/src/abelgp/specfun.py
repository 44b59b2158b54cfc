"""Real-valued special functions: Gauss 2F1, Gamma/digamma, K(k), dn(u, k).

All routines are pure functions of their arguments.  Series sums are
accumulated with ``math.fsum`` so that the tail does not lose digits to
cancellation in the running total.
"""

import math
from dataclasses import dataclass

from .errors import DomainError, ParameterError, PoleError

EULER_GAMMA = 0.57721566490153286061

_EPS = 2.220446049250313e-16
_MAX_TERMS = 200_000


@dataclass(frozen=True)
class HgParams:
    """Hypergeometric triple (alpha, beta, gamma) of 2F1(alpha, beta; gamma; x)."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        if _is_nonpositive_int(self.gamma):
            raise ParameterError(f"gamma={self.gamma} is a non-positive integer")

    def as_floats(self):
        return float(self.alpha), float(self.beta), float(self.gamma)


# parameter differences such as 1/2 - 1/3 - 1/6 are integers only up to
# rounding; treat them as exact integers inside this window
_INT_TOL = 1e-10


def _is_int(x):
    x = float(x)
    return abs(x - round(x)) <= _INT_TOL * max(1.0, abs(x))


def _is_nonpositive_int(x):
    return float(x) < 0.5 and _is_int(x)


# --------------------------------------------------------------------------
# Gamma family
# --------------------------------------------------------------------------

def gamma_fn(x):
    """Gamma function on the real line; raises PoleError at 0, -1, -2, ..."""
    x = float(x)
    if _is_nonpositive_int(x):
        raise PoleError(f"Gamma has a pole at {x}")
    return math.gamma(x)


def rgamma(x):
    """1/Gamma(x), entire: zero at the non-positive integers."""
    x = float(x)
    if _is_nonpositive_int(x):
        return 0.0
    if x > 171.0:
        return math.exp(-math.lgamma(x))
    return 1.0 / math.gamma(x)


def digamma(x):
    """psi(x) = Gamma'(x)/Gamma(x)."""
    x = float(x)
    if _is_nonpositive_int(x):
        raise PoleError(f"digamma has a pole at {x}")
    if x < 0.5:
        return digamma(1.0 - x) - math.pi / math.tan(math.pi * x)
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    x2 = 1.0 / (x * x)
    # Bernoulli tail B_2k / (2k x^2k), k = 1..7
    tail = x2 * (1.0 / 12 - x2 * (1.0 / 120 - x2 * (1.0 / 252 - x2 * (
        1.0 / 240 - x2 * (1.0 / 132 - x2 * (691.0 / 32760 - x2 / 12.0))))))
    return acc + math.log(x) - 0.5 / x - tail


def _pochhammer(a, n):
    p = 1.0
    for j in range(n):
        p *= a + j
    return p


# --------------------------------------------------------------------------
# Gauss hypergeometric function
# --------------------------------------------------------------------------

def _series(a, b, c, x):
    """Direct Maclaurin series; caller guarantees |x| < 1."""
    terms = [1.0]
    t = 1.0
    total = 1.0
    small = 0
    for n in range(_MAX_TERMS):
        t *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x
        terms.append(t)
        total += t
        if t == 0.0:
            return math.fsum(terms)
        # terms only shrink monotonically once n exceeds the parameter sizes
        if n > abs(a) + abs(b) + abs(c) and abs(t) <= _EPS * 1e-2 * abs(total):
            small += 1
            if small >= 3:
                return math.fsum(terms)
        else:
            small = 0
    raise DomainError(f"2F1 series did not converge at x={x}")


def _terminating(a, b, c, x):
    n_max = int(round(-a)) if _is_nonpositive_int(a) else int(round(-b))
    if _is_nonpositive_int(c) and -c < n_max:
        raise ParameterError(f"gamma={c} is a non-positive integer")
    terms = [1.0]
    t = 1.0
    for n in range(n_max):
        t *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x
        terms.append(t)
    return math.fsum(terms)


def _one_minus_x(a, b, c, x):
    """Connection formula at x = 1, valid when c - a - b is not an integer."""
    y = 1.0 - x
    d = c - a - b
    g1 = math.gamma(c) * math.gamma(d) * rgamma(c - a) * rgamma(c - b)
    g2 = math.gamma(c) * math.gamma(-d) * rgamma(a) * rgamma(b)
    return (g1 * _series(a, b, 1.0 - d, y)
            + g2 * y ** d * _series(c - a, c - b, 1.0 + d, y))


def _inverse_x(a, b, c, x):
    """Connection formula at infinity for x < -1 (argument 1/x)."""
    if _is_int(a - b):
        if a > b:
            a, b = b, a
        return _inverse_x_log(a, int(round(b - a)), c, x)
    y = 1.0 / x
    mx = -x
    gc = math.gamma(c)
    t1 = gc * math.gamma(b - a) * rgamma(b) * rgamma(c - a) * mx ** (-a)
    t2 = gc * math.gamma(a - b) * rgamma(a) * rgamma(c - b) * mx ** (-b)
    out = 0.0
    if t1 != 0.0:
        out += t1 * hyp2f1(a, a - c + 1.0, a - b + 1.0, y)
    if t2 != 0.0:
        out += t2 * hyp2f1(b, b - c + 1.0, b - a + 1.0, y)
    return out


def _rgamma_and_psi_ratio(x):
    """(1/Gamma(x), psi(x)/Gamma(x)) with the finite limit at the poles."""
    if _is_nonpositive_int(x):
        n = int(round(-x))
        return 0.0, (-1.0) ** (n + 1) * math.factorial(n)
    rg = rgamma(x)
    return rg, digamma(x) * rg


def _inverse_x_log(a, m, c, x):
    """2F1(a, a+m; c; x) for x < -1 when the exponents at infinity differ by
    the integer m >= 0 (logarithmic case)."""
    z = x
    mz = -z
    logmz = math.log(mz)
    x0 = c - a - m
    if _is_int(x0):
        x0 = float(round(x0))

    finite = []
    for k in range(m):
        finite.append(_pochhammer(a, k) * math.factorial(m - k - 1)
                      / math.factorial(k) * rgamma(c - a - k) * z ** (-k))
    s1 = math.fsum(finite) * rgamma(a + m)

    harm_k = 0.0
    harm_mk = math.fsum(1.0 / j for j in range(1, m + 1))
    psi_amk = digamma(a + m)
    coef = 1.0 / math.factorial(m)  # (a+m)_k / (k! (k+m)!)
    zk = z ** (-m)
    terms = []
    total = 0.0
    for k in range(_MAX_TERMS):
        rg, prg = _rgamma_and_psi_ratio(x0 - k)
        bracket = logmz + (harm_mk - EULER_GAMMA) + (harm_k - EULER_GAMMA) - psi_amk
        t = coef * (-1.0) ** k * zk * (rg * bracket - prg)
        terms.append(t)
        total += t
        if k > 2 and abs(t) <= _EPS * 1e-2 * abs(total):
            break
        coef *= (a + m + k) / ((k + 1.0) * (k + m + 1.0))
        zk /= z
        harm_k += 1.0 / (k + 1)
        harm_mk += 1.0 / (k + m + 1)
        psi_amk += 1.0 / (a + m + k)
    else:
        raise DomainError("log-case 2F1 series did not converge")
    s2 = math.fsum(terms) * rgamma(a)
    return math.gamma(c) * mz ** (-a) * (s1 + s2)


def hyp2f1(a, b, c, x):
    """Gauss hypergeometric function 2F1(a, b; c; x) for real x < 1.

    Terminating series are summed exactly for any x.  Otherwise the
    evaluation path is chosen by the argument: direct series on
    [-0.5, 0.9], the x=1 connection formula above 0.9 (Pfaff plus the
    1/x formula when c - a - b is an integer), the Pfaff
    transformation on [-2, -0.5) and the x -> 1/x connection formula
    (with its logarithmic limit when a - b is an integer) below -2.
    """
    a, b, c, x = float(a), float(b), float(c), float(x)
    if math.isnan(x):
        raise DomainError("x is NaN")
    if _is_nonpositive_int(a) or _is_nonpositive_int(b):
        return _terminating(a, b, c, x)
    if _is_nonpositive_int(c):
        raise ParameterError(f"gamma={c} is a non-positive integer")
    if x == 0.0:
        return 1.0
    if x >= 1.0:
        raise DomainError(f"2F1 is not real-analytic at x={x} >= 1")
    if -0.5 <= x <= 0.9:
        return _series(a, b, c, x)
    if x > 0.9:
        if _is_int(c - a - b):
            # degenerate at x = 1: Pfaff maps x to x/(x - 1) <= -9
            return (1.0 - x) ** (-a) * hyp2f1(a, c - b, c, x / (x - 1.0))
        return _one_minus_x(a, b, c, x)
    if x >= -2.0:
        # Pfaff: pick the variant whose series is shorter
        y = x / (x - 1.0)
        if abs(c - b) <= abs(c - a):
            return (1.0 - x) ** (-a) * hyp2f1(a, c - b, c, y)
        return (1.0 - x) ** (-b) * hyp2f1(c - a, b, c, y)
    if math.isinf(x):
        raise DomainError("x is infinite")
    return _inverse_x(a, b, c, x)


def gauss_2f1(p, x):
    """2F1(alpha, beta; gamma; x) for an :class:`HgParams` triple."""
    a, b, c = p.as_floats()
    return hyp2f1(a, b, c, x)


def gauss_2f1_derivative(p, x):
    """d/dx 2F1 = (alpha*beta/gamma) 2F1(alpha+1, beta+1; gamma+1; x)."""
    a, b, c = p.as_floats()
    if a == 0.0 or b == 0.0:
        return 0.0
    return a * b / c * hyp2f1(a + 1.0, b + 1.0, c + 1.0, x)


# --------------------------------------------------------------------------
# Elliptic functions (modulus convention k, not m = k^2)
# --------------------------------------------------------------------------

def _agm(a, b):
    for _ in range(64):
        if abs(a - b) <= 4 * _EPS * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def complete_elliptic_K(k):
    """Complete elliptic integral of the first kind K(k) = pi / (2 AGM(1, k'))."""
    k = float(k)
    if not 0.0 <= k < 1.0:
        raise DomainError(f"K(k) needs 0 <= k < 1, got {k}")
    kp = math.sqrt((1.0 - k) * (1.0 + k))
    return math.pi / (2.0 * _agm(1.0, kp))


def jacobi_sncndn(u, k):
    """Jacobi sn, cn, dn by descending Landen/Gauss transformation (Bulirsch)."""
    u, k = float(u), float(k)
    if not 0.0 <= k <= 1.0:
        raise DomainError(f"modulus must lie in [0, 1], got {k}")
    emc = (1.0 - k) * (1.0 + k)
    if k == 0.0:
        return math.sin(u), math.cos(u), 1.0
    if emc == 0.0:
        cn = 1.0 / math.cosh(u)
        return math.tanh(u), cn, cn
    if abs(u) < 1e-9:
        return u, 1.0 - 0.5 * u * u, 1.0 - 0.5 * k * k * u * u
    a = 1.0
    dn = 1.0
    em, en = [], []
    c = 1.0
    for _ in range(32):
        em.append(a)
        emc = math.sqrt(emc)
        en.append(emc)
        c = 0.5 * (a + emc)
        if abs(a - emc) <= 1e-9 * a:
            break
        emc *= a
        a = c
    u *= c
    sn = math.sin(u)
    cn = math.cos(u)
    if sn != 0.0:
        a = cn / sn
        c *= a
        for b, e in zip(reversed(em), reversed(en)):
            a *= c
            c *= dn
            dn = (e + a) / (b + a)
            a = c / b
        a = 1.0 / math.sqrt(c * c + 1.0)
        sn = a if sn >= 0.0 else -a
        cn = c * sn
    return sn, cn, dn


def jacobi_dn(u, k):
    """Jacobi elliptic function dn(u, k)."""
    return jacobi_sncndn(u, k)[2]
