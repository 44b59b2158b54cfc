"""Residual-based self-checks grouped by module, used by ``abelgp verify``."""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import abel, gp, invariants, kudashev, specfun


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    residual: float
    tol: float

    @property
    def passed(self):
        return math.isfinite(self.residual) and self.residual < self.tol


def _specfun():
    sf = specfun
    yield "K(0) = pi/2", abs(sf.complete_elliptic_K(0.0) - math.pi / 2), 1e-15
    yield "K(k) = (pi/2) F(1/2,1/2;1;k^2)", max(
        abs(sf.complete_elliptic_K(k) - 0.5 * math.pi * sf.hyp2f1(0.5, 0.5, 1.0, k * k))
        for k in np.linspace(0.0, 0.99, 34)), 1e-10
    yield "dn period 2K", max(
        abs(sf.jacobi_dn(u + 2 * sf.complete_elliptic_K(k), k) - sf.jacobi_dn(u, k))
        for k in (0.1, 0.5, 0.9, 0.99) for u in (0.0, 0.4, 1.3)), 1e-9
    yield "dn(u, 1) = sech u", max(abs(sf.jacobi_dn(u, 1.0) - 1 / math.cosh(u)) for u in (0.5, 1, 2)), 1e-14
    p = specfun.HgParams(5 / 12, -7 / 12, 0.5)
    h = 1e-5
    yield "2F1 derivative vs central difference", max(
        abs(sf.gauss_2f1_derivative(p, x) - (sf.gauss_2f1(p, x + h) - sf.gauss_2f1(p, x - h)) / (2 * h))
        for x in np.linspace(-4.5, 0.85, 20)), 1e-7
    yield "Gamma(1/2) = sqrt(pi)", abs(sf.gamma_fn(0.5) - math.sqrt(math.pi)), 1e-15


def _invariants():
    inv = invariants
    p = specfun.HgParams(1 / 12, 1 / 12, 0.5)
    spec = abel.HgSolutionSpec(p, 1.0, 0.0)
    worst2 = worst3 = worst_red = 0.0
    for s in (-3.0, -1.0, -0.4):
        w, ws = abel.hypergeometric_solution(spec, s)
        c = abel.hypergeometric_coeffs(p, s)
        jet = inv.jet_from_linear(w, ws, 1.0, c)
        i2, i3 = inv.linearised_invariants(c)
        worst2 = max(worst2, abs(inv.invariant_I2(jet) / i2 - 1))
        worst3 = max(worst3, abs(inv.invariant_I3(jet) / i3 - 1))
        om, psi = inv.reduce_to_omega_psi(jet)
        ref = inv.omega_psi_from_linear(w, ws, c)
        worst_red = max(worst_red, abs(om - ref[0]) + abs(psi - ref[1]))
    yield "I2 from jet = -(q_s + 2pq)^2/q^3 (relative)", worst2, 1e-9
    yield "I3 from jet (relative)", worst3, 1e-9
    yield "reduction of jet = (omega, psi) from w", worst_red, 1e-9
    c1, c2 = -3.0, 24 / 35
    q = abel.hypergeometric_coeffs(specfun.HgParams(5 / 12, -7 / 12, 0.5), -1.0)
    i2, i3 = inv.linearised_invariants(q)
    yield "I3 + c1 I2 + c2 = 0 for (-3, 24/35)", abs(i3 + c1 * i2 + c2), 1e-10


def _abel():
    param_sets = [(0, 24), (-1, 9), (-1, 8), (-3, Fraction(24, 35))]
    grid = np.linspace(-2.0, -0.1, 100)
    worst = 0.0
    for c1, c2 in param_sets:
        ap = abel.AbelParams(c1, c2)
        p = abel.hypergeometric_linearisations(ap)[0]
        worst = max(worst, abel.residual_max(ap, abel.parametric_curve(abel.HgSolutionSpec(p)), grid))
    yield "hypergeometric curves, case 2, a=1 b=0", worst, 1e-8
    alg_grids = {0: np.linspace(3, 10, 100), 1: np.linspace(0.5, 6, 100),
                 2: np.linspace(3, 10, 100), 3: np.linspace(-0.38, -0.12, 100)}
    worst = max(abel.residual_max(abel.AbelParams(*ex), abel.algebraic_curve(abel.AbelParams(*ex)), alg_grids[i])
                for i, ex in enumerate(param_sets))
    yield "algebraic curves", worst, 1e-8
    bad = 0
    for c1, c2 in param_sets:
        ap = abel.AbelParams(Fraction(c1), Fraction(c2))
        for p in abel.hypergeometric_linearisations(ap):
            bad += sum(1 for v in abel.linearisation_relations(ap, p) if v != 0)
    yield "parameter relations (exact, count of non-zero)", float(bad), 0.5


def _kudashev():
    kd = kudashev
    eq = kd.equilibria()
    yield "equilibria: numerator", max(abs(kd.numerator(p.R, p.z)) for p in eq), 1e-12
    yield "equilibria: denominator", max(abs(kd.denominator(p.R, p.z)) for p in eq), 1e-12
    grid = np.linspace(-100, -0.01, 200)
    worst = max(kd.curve_residual_max(kd.general_solution_curve(kd.Branch(e, k)), grid)
                for e in (1, -1) for k in ("w1", "w2"))
    yield "Kummer branches solve the equation", worst, 1e-8
    worst = 0.0
    for k in ("w1", "w2"):
        br = kd.Branch(-1, k)
        for s in np.linspace(-50, -0.1, 100):
            pt = kd.general_solution_point(br, s)
            worst = max(worst, abs(kd.ratio_invariant(pt) - 20 / 27 * s / (s - 1)))
    yield "ratio identity", worst, 1e-9
    worst = max(abs(kd.implicit_residual(kd.algebraic_solution_point(e, s)))
                for e in (1, -1) for s in np.linspace(-10, 10, 201))
    yield "algebraic solution on the implicit curve", worst, 1e-10
    limits = [(kd.Branch(1, "w1"), eq[4]), (kd.Branch(1, "w2"), eq[3]),
              (kd.Branch(-1, "w1"), eq[1]), (kd.Branch(-1, "w2"), eq[2])]
    worst = max(math.hypot(kd.general_solution_point(b, -1e6).R - p.R, kd.general_solution_point(b, -1e6).z - p.z)
                for b, p in limits)
    yield "Kummer branches approach P5/P4/P2/P3", worst, 1e-3


def _gp():
    yield "periodicity identity at r = 0.25", gp.periodicity_residual(0.25), 1e-8
    yield "periodicity identity on (0, 1/2]", max(gp.periodicity_residual(r) for r in np.linspace(0.005, 0.5, 100)), 1e-8
    worst = 0.0
    for r in (0.05, 0.25, 0.5, 0.75, 0.95):
        st = gp.slow_state(r)
        worst = max(worst, max(abs(x) for x in gp.coefficient_residuals(gp.elliptic_coeffs(r), st.R, st.z)))
        worst = max(worst, max(abs(gp.first_order_residual(st, phi)) for phi in np.linspace(0, 2 * math.pi, 9)))
    yield "coefficient system and first-order equation", worst, 1e-8
    worst = 0.0
    for s in np.concatenate([-np.logspace(-8, 6, 60), [0.0]]):
        k2, k3 = gp.modulus_candidates(s)
        if not (0 < k2 <= 0.5 and 0.5 <= k3 < 1):
            worst = math.inf
        if s < 0:
            worst = max(worst, abs(gp.s_of_r(k2) / s - 1), abs(gp.s_of_r(k3) / s - 1))
    yield "modulus candidates admissible and round-trip", worst, 1e-9
    yield "soliton B/Q constant", max(abs(gp.soliton_bq(s, -1) - gp.CONSTANTS.bq_soliton) for s in (2, 5, -3)), 1e-8
    yield "soliton far field V^3 - V + z", max(
        abs(v ** 3 - v + kudashev.algebraic_solution_point(-1, s).z)
        for s in (2, 5, 50) for v in [gp.soliton_far_field(s, -1)]), 1e-8


SUITES = {
    "specfun": _specfun,
    "invariants": _invariants,
    "abel": _abel,
    "kudashev": _kudashev,
    "gp": _gp,
}


def run_suite(name):
    """Run one suite (or "all") and return the list of :class:`Check` results."""
    names = list(SUITES) if name == "all" else [name]
    out = []
    for n in names:
        for label, res, tol in SUITES[n]():
            out.append(Check(n, label, float(res), tol))
    return out
