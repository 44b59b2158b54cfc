"""SL(2, R) differential invariants and the linearisation coefficient maps.

A third-order ODE for g(z) invariant under the projective action is a
relation F(I2, I3) = 0 between the two basic invariants.  Parametrising
g through two solutions of w_ss + p w_s + q w = 0 turns I2, I3 into
explicit expressions in p, q and their derivatives; with an extra gauge
function r(s) the same holds with (p, q) replaced by (p - 2r,
q - p r + r^2 - r_s).

Functions here accept plain floats or :class:`abelgp.dual.Dual` values
where that makes sense, so derivatives along a curve can be propagated.
"""

from dataclasses import dataclass
from typing import Optional

from .errors import SingularCoeffs, SingularJet

_SINGULAR_RTOL = 1e-14


@dataclass(frozen=True)
class Jet3:
    """g and its first three z-derivatives at one point."""

    g: float
    g1: float
    g2: float
    g3: float


@dataclass(frozen=True)
class LinCoeffs:
    """Coefficients of w_ss + p w_s + q w = 0 and their s-derivatives at a point.

    ``p_ss`` is only needed when the coefficients are pushed through a gauge
    transformation and invariants of the result are requested.
    """

    p: float
    q: float
    p_s: float = 0.0
    q_s: float = 0.0
    q_ss: float = 0.0
    p_ss: Optional[float] = None


@dataclass(frozen=True)
class GaugeR:
    """Gauge function r(s) and derivatives.  r_ss / r_sss are optional and
    only required for derivative data of the transformed coefficients."""

    r: float
    r_s: float = 0.0
    r_ss: Optional[float] = None
    r_sss: Optional[float] = None


def _check_denominator(value, *monomials, exc=SingularJet, what="denominator"):
    scale = max(abs(float(m)) for m in monomials)
    if abs(float(value)) <= _SINGULAR_RTOL * scale or float(value) == 0.0:
        raise exc(f"{what} vanishes ({float(value):.3e})")


def invariant_I2(j):
    """(g'' - 6 g g' + 4 g^3)^2 / (g' - g^2)^3."""
    d = j.g1 - j.g ** 2
    _check_denominator(d, j.g1, j.g ** 2, what="g' - g^2")
    n = j.g2 - 6 * j.g * j.g1 + 4 * j.g ** 3
    return n * n / d ** 3


def invariant_I3(j):
    """(g''' - 12 g g'' - 6 g'^2 + 48 g^2 g' - 24 g^4) / (g' - g^2)^2."""
    g, g1, g2, g3 = j.g, j.g1, j.g2, j.g3
    d = g1 - g * g
    _check_denominator(d, g1, g * g, what="g' - g^2")
    n = g3 - 12 * g * g2 - 6 * g1 * g1 + 48 * g * g * g1 - 24 * g ** 4
    return n / d ** 2


def reduce_to_omega_psi(j):
    """Symmetry reduction (g, g', g'') -> (omega, psi).

    omega = g^2 / g',  psi = g'^3 / (g^2 (2 g'^2 - g g'')).
    """
    g, g1, g2 = j.g, j.g1, j.g2
    if g == 0 or g1 == 0:
        raise SingularJet("reduction needs g != 0 and g' != 0")
    d = 2 * g1 * g1 - g * g2
    _check_denominator(d, 2 * g1 * g1, g * g2, what="2 g'^2 - g g''")
    return g * g / g1, g1 ** 3 / (g * g * d)


def linearised_invariants(c):
    """(I2, I3) of the g(z) produced by w_ss + p w_s + q w = 0."""
    p, q = c.p, c.q
    if float(q) == 0.0:
        raise SingularCoeffs("q = 0")
    i2 = -(c.q_s + 2 * p * q) ** 2 / q ** 3
    i3 = -(c.q_ss + 2 * c.p_s * q + 5 * c.q_s * p + 6 * p * p * q) / q ** 2
    return i2, i3


def linear_constraint(c, c1, c2):
    """Residual of I3 + c1 I2 + c2 = 0 cleared of denominators:
    q (q_ss + 2 p_s q + 5 q_s p + 6 p^2 q) + c1 (q_s + 2 p q)^2 - c2 q^3."""
    p, q = c.p, c.q
    return (q * (c.q_ss + 2 * c.p_s * q + 5 * c.q_s * p + 6 * p * p * q)
            + c1 * (c.q_s + 2 * p * q) ** 2 - c2 * q ** 3)


def tilde_coeffs(c, r):
    """Gauge map (p, q) -> (p - 2r, q - p r + r^2 - r_s).

    q~_s needs ``r_ss`` and q~_ss additionally ``r_sss`` and ``p_ss``
    (the latter only when r != 0); fields that cannot be formed are ``None``.
    With r = r_s = 0 and no higher data the map is the identity.
    """
    pt = c.p - 2 * r.r
    qt = c.q - c.p * r.r + r.r ** 2 - r.r_s
    pt_s = c.p_s - 2 * r.r_s
    r_ss = r.r_ss
    r_sss = r.r_sss
    if r.r == 0 and r.r_s == 0 and r_ss is None:
        r_ss = 0.0
        r_sss = 0.0 if r_sss is None else r_sss
    qt_s = qt_ss = None
    if r_ss is not None:
        qt_s = c.q_s - c.p_s * r.r - c.p * r.r_s + 2 * r.r * r.r_s - r_ss
        p_ss_term = 0.0 if r.r == 0 else (None if c.p_ss is None else c.p_ss * r.r)
        if r_sss is not None and p_ss_term is not None:
            qt_ss = (c.q_ss - p_ss_term - 2 * c.p_s * r.r_s - c.p * r_ss
                     + 2 * r.r_s ** 2 + 2 * r.r * r_ss - r_sss)
    return LinCoeffs(p=pt, q=qt, p_s=pt_s, q_s=qt_s, q_ss=qt_ss)


def jet_from_linear(w, w_s, wronskian, c):
    """Jet of g = w w_s / W at a point, via the closed-form invariant numerators.

    Uses g' - g^2 = -q w^4/W^2, g'' - 6gg' + 4g^3 = -(q_s + 2pq) w^6/W^3 and
    the analogous third-order identity; ``wronskian`` is the value of
    W = w~_s w - w_s w~ at the point (any non-zero scale is admissible).
    """
    W = wronskian
    g = w * w_s / W
    g1 = g * g - c.q * w ** 4 / W ** 2
    g2 = 6 * g * g1 - 4 * g ** 3 - (c.q_s + 2 * c.p * c.q) * w ** 6 / W ** 3
    g3 = (12 * g * g2 + 6 * g1 * g1 - 48 * g * g * g1 + 24 * g ** 4
          - (c.q_ss + 2 * c.p_s * c.q + 5 * c.q_s * c.p + 6 * c.p ** 2 * c.q) * w ** 8 / W ** 4)
    return Jet3(g, g1, g2, g3)


def omega_psi_from_linear(w, w_s, c, r=None):
    """(omega, psi) of the reduced equation along a solution w of the linear ODE.

    Without gauge: omega = w_s^2/(w_s^2 - q w^2),
    psi = (w_s^2 - q w^2)^3 / (w^2 w_s^2 (2 q w_s^2 + (q_s + 2pq) w w_s + 2 q^2 w^2)).
    With gauge ``r`` (value ``r.r``), the same with h = w_s/w + r in place of
    w_s/w and the transformed coefficients; ``c`` must then already be the
    transformed set, i.e. the output of :func:`tilde_coeffs`.
    """
    if r is None:
        a = w_s * w_s
        d = a - c.q * w * w
        if float(d) == 0.0:
            raise SingularJet("w_s^2 - q w^2 = 0")
        den = w * w * a * (2 * c.q * a + (c.q_s + 2 * c.p * c.q) * w * w_s + 2 * c.q ** 2 * w * w)
        if float(den) == 0.0:
            raise SingularJet("psi denominator vanishes")
        return a / d, d ** 3 / den
    h = w_s / w + r.r
    h2 = h * h
    d = h2 - c.q
    if float(d) == 0.0 or float(h) == 0.0:
        raise SingularJet("degenerate gauge point")
    den = h2 * (2 * c.q ** 2 + 2 * h2 * c.q + h * (c.q_s + 2 * c.p * c.q))
    if float(den) == 0.0:
        raise SingularJet("psi denominator vanishes")
    return h2 / d, d ** 3 / den
