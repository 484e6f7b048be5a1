"""Non-archimedean zeta integral: raw sum vs closed L-factor form.

Everything is computed in the formal variable T = q^(-3s).  The left-hand
side is the (truncated) sum

    sum_l B(h(l,0)) * omega_pi(varpi)^-l * omega_tau(varpi)^-l
          * q^(-3l/2) * W^(0)(diag(varpi^l,1)) * q^(3l) * T^l,

assembled from the Bessel coefficients and the newform values with no
case-specific simplification: the collapse to H(y)/Q(y) with the printed
substitution has to emerge from the arithmetic.  The right-hand side is the
quotient of L-factors times the correction factor Y(s), built from entirely
separate formulas.  A verification report compares the routes exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .bessel import (INERT, RAMIFIED, SPLIT, BesselDatum, SatakeParams,
                     bessel_coeffs, sugano_H, sugano_Q)
from .errors import InvalidArgument, UnsupportedCase
from .gl2 import (RAMIFIED_OTHER, RAMIFIED_PS_UNRAM_ALPHA,
                  STEINBERG_UNRAMIFIED, UNRAMIFIED_PS, Gl2Local, newform_value)
from .scalars import QScalar
from .series import (DEFAULT_ORDER, Poly, RatFn, Series, SeriesComparison,
                     poly_series, series_equal)


class LocalInstance:
    """All local data entering one verification run.

    Enforces the shared residue cardinality and the Bessel-model
    compatibility Lambda(varpi) = omega_pi(varpi).
    """

    __slots__ = ("satake", "bessel", "rep", "order", "q")

    def __init__(self, satake: SatakeParams, bessel: BesselDatum,
                 rep: Gl2Local, order: int = DEFAULT_ORDER):
        if not (satake.q == bessel.q == rep.q):
            raise InvalidArgument("components disagree on the residue cardinality")
        if order < 0:
            raise InvalidArgument("order must be >= 0")
        if bessel.lambda_varpi != satake.omega_pi:
            raise InvalidArgument(
                "Bessel-model compatibility requires Lambda(varpi) = omega_pi(varpi)")
        object.__setattr__(self, "satake", satake)
        object.__setattr__(self, "bessel", bessel)
        object.__setattr__(self, "rep", rep)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "q", satake.q)

    def __setattr__(self, name, value):
        raise AttributeError("LocalInstance is immutable")

    def to_json(self):
        return {
            "q": self.q,
            "order": self.order,
            "satake": self.satake.to_json(),
            "bessel": self.bessel.to_json(),
            "rep": self.rep.to_json(),
        }

    @staticmethod
    def from_json(obj) -> "LocalInstance":
        q = obj["q"]
        return LocalInstance(
            SatakeParams.from_json(obj["satake"], q),
            BesselDatum.from_json(obj["bessel"], q),
            Gl2Local.from_json(obj["rep"], q),
            order=obj.get("order", DEFAULT_ORDER),
        )


def zeta_series_lhs(inst: LocalInstance) -> Series:
    """The zeta integral as a series in T, from the m = 0 coset sum."""
    rep = inst.rep
    if rep.kind == UNRAMIFIED_PS:
        raise UnsupportedCase(
            "the m = 0 reduction requires conductor n > 0; "
            "use unramified_closed for the unramified principal series")
    q = inst.q
    B = bessel_coeffs(inst.satake, inst.bessel, inst.order)
    w_unit = (inst.satake.omega_pi * rep.omega_tau_varpi).inverse() \
        * QScalar.q_half_power(3, q)
    coeffs = []
    weight = QScalar.one(q)
    for l in range(inst.order + 1):
        coeffs.append(B.coeffs[l] * weight * newform_value(rep, l))
        weight = weight * w_unit
    return Series(coeffs, q)


def _y_scale(inst: LocalInstance) -> QScalar:
    """Scalar c with y = c*T in the H/Q substitution, per representation case."""
    q = inst.q
    rep = inst.rep
    if rep.kind == RAMIFIED_PS_UNRAM_ALPHA:
        # y = q^(-3s+1) (omega_pi alpha)^{-1}(varpi)
        return QScalar.q_half_power(2, q) \
            * (inst.satake.omega_pi * rep.alpha_varpi).inverse()
    if rep.kind == STEINBERG_UNRAMIFIED:
        # y = q^(-3s+1/2) (omega_pi Omega)^{-1}(varpi)
        return QScalar.q_half_power(1, q) \
            * (inst.satake.omega_pi * rep.omega_varpi).inverse()
    raise UnsupportedCase(f"no H/Q substitution for kind {rep.kind}")


def hq_substituted(inst: LocalInstance) -> Series:
    """H(y)/Q(y) expanded in T after the case-specific substitution y = c*T."""
    c = _y_scale(inst)
    H = sugano_H(inst.bessel, inst.q).substitute_scaled(c)
    Q = sugano_Q(inst.satake).substitute_scaled(c)
    return RatFn(H, Q).to_series(inst.order)


def lfactor_gsp4_gl2_case2(satake: SatakeParams, rep: Gl2Local) -> RatFn:
    """L(3s+1/2, contragredient pi x contragredient tau) in T, Case 2.

    Inverse is prod_i (1 - (gamma^(i) alpha)^{-1}(varpi) q^(-1/2) T).
    """
    if rep.kind != RAMIFIED_PS_UNRAM_ALPHA:
        raise UnsupportedCase("degree-8 pairing factor is used in Case 2 only")
    q = satake.q
    qm1 = QScalar.q_half_power(-1, q)
    acc = Poly.one(q)
    for g in satake.gamma:
        acc = acc * Poly([QScalar.one(q),
                          -((g * rep.alpha_varpi).inverse() * qm1)], q)
    return RatFn.inverse_poly(acc)


def lfactor_chi_restriction(satake: SatakeParams, rep: Gl2Local) -> RatFn:
    """L(6s+1, chi restricted to F^x) = (1 - (omega_pi omega_tau)^{-1} q^-1 T^2)^-1."""
    q = satake.q
    x = (satake.omega_pi * rep.omega_tau_varpi).inverse() \
        * QScalar.q_half_power(-2, q)
    return RatFn.inverse_poly(Poly([QScalar.one(q), QScalar.zero(q), -x], q))


def lfactor_triple_case2(rep: Gl2Local, bessel: BesselDatum,
                         satake: SatakeParams) -> RatFn:
    """L(3s+1, tau x AI(Lambda) x chi|_{F^x}) in T, Case 2, per Legendre case."""
    if rep.kind != RAMIFIED_PS_UNRAM_ALPHA:
        raise UnsupportedCase("triple-product factor implemented for Case 2 only")
    q = satake.q
    one = QScalar.one(q)
    qm2 = QScalar.q_half_power(-2, q)
    opa_inv = (satake.omega_pi * rep.alpha_varpi).inverse()
    if bessel.legendre == INERT:
        x = bessel.lambda_varpi * opa_inv * opa_inv * qm2 * qm2
        return RatFn.inverse_poly(Poly([one, QScalar.zero(q), -x], q))
    if bessel.legendre == RAMIFIED:
        first = Poly([one, -(bessel.lambda_varpiL * opa_inv * qm2)], q)
        if not rep.beta_chi_unramified:
            return RatFn.inverse_poly(first)
        opb_inv = (satake.omega_pi * rep.beta_varpi).inverse()
        second = Poly([one, -(bessel.lambda_varpiL * opb_inv * qm2)], q)
        return RatFn.inverse_poly(first * second)
    # split
    first = Poly([one, -(bessel.lambda_varpiL * opa_inv * qm2)], q)
    second = Poly([one, -(bessel.lambda_varpi_conj * opa_inv * qm2)], q)
    return RatFn.inverse_poly(first * second)


def y_factor(inst: LocalInstance) -> RatFn:
    """The correction factor Y(s) of the local theorem, as a function of T.

    The fully ramified Case 1 formally carries the triple L-factor as well;
    it is represented as 1 here so that the asserted cancellation in
    zeta_closed_rhs is implemented exactly as stated.
    """
    rep = inst.rep
    if rep.kind == UNRAMIFIED_PS:
        return RatFn.one(inst.q)
    l_chi = lfactor_chi_restriction(inst.satake, rep)
    if rep.kind in (STEINBERG_UNRAMIFIED, RAMIFIED_OTHER):
        return l_chi
    # Case 2
    if inst.bessel.legendre == RAMIFIED and rep.beta_chi_unramified:
        q = inst.q
        opb_inv = (inst.satake.omega_pi * rep.beta_varpi).inverse()
        extra = Poly([QScalar.one(q),
                      -(inst.bessel.lambda_varpiL * opb_inv
                        * QScalar.q_half_power(-2, q))], q)
        return RatFn(l_chi.numer, l_chi.denom * extra)
    return l_chi


def zeta_closed_rhs(inst: LocalInstance,
                    y_factor_fn: Optional[Callable] = None) -> RatFn:
    """Closed form L(3s+1/2)/(L(6s+1) L(3s+1, triple)) * Y(s), Cases 1-2."""
    rep = inst.rep
    if rep.kind == STEINBERG_UNRAMIFIED:
        raise UnsupportedCase(
            "no explicit triple factor for the Steinberg case; "
            "verify against hq_substituted instead")
    if rep.kind == UNRAMIFIED_PS:
        raise UnsupportedCase("use unramified_closed for the unramified case")
    yf = (y_factor_fn or y_factor)(inst)
    l_chi = lfactor_chi_restriction(inst.satake, rep)
    if rep.kind == RAMIFIED_OTHER:
        numerator = RatFn.one(inst.q)
        triple = RatFn.one(inst.q)
    else:
        numerator = lfactor_gsp4_gl2_case2(inst.satake, rep)
        triple = lfactor_triple_case2(rep, inst.bessel, inst.satake)
    return numerator / l_chi / triple * yf


@dataclass(frozen=True)
class VerificationReport:
    """Exact comparison of the independent routes for one instance."""

    instance: dict
    case: str
    lhs: Series
    hq: Optional[Series]
    rhs: Optional[Series]
    lhs_vs_hq: Optional[SeriesComparison]
    lhs_vs_rhs: Optional[SeriesComparison]
    passed: bool

    def to_json(self):
        out = {
            "instance": self.instance,
            "case": self.case,
            "passed": self.passed,
            "lhs": self.lhs.to_json(),
        }
        if self.hq is not None:
            out["hq"] = self.hq.to_json()
            out["lhs_vs_hq"] = self.lhs_vs_hq.to_json()
        if self.rhs is not None:
            out["rhs"] = self.rhs.to_json()
            out["lhs_vs_rhs"] = self.lhs_vs_rhs.to_json()
        return out


_CASE_LABELS = {
    RAMIFIED_OTHER: "case1",
    RAMIFIED_PS_UNRAM_ALPHA: "case2",
    STEINBERG_UNRAMIFIED: "case3",
}


def verify_local(inst: LocalInstance,
                 y_factor_fn: Optional[Callable] = None) -> VerificationReport:
    """Compare LHS sum, substituted H/Q and the closed form, as applicable.

    Cases 1-2 check LHS = series(RHS); Cases 2-3 additionally (resp. only)
    check LHS = H/Q.  The optional y_factor_fn override exists as a
    negative-control hook for the sweep driver.
    """
    kind = inst.rep.kind
    if kind == UNRAMIFIED_PS:
        raise UnsupportedCase("verification needs a ramified GL2 representation")
    lhs = zeta_series_lhs(inst)
    hq = cmp_hq = rhs = cmp_rhs = None
    if kind in (RAMIFIED_PS_UNRAM_ALPHA, STEINBERG_UNRAMIFIED):
        hq = hq_substituted(inst)
        cmp_hq = series_equal(lhs, hq)
    if kind in (RAMIFIED_OTHER, RAMIFIED_PS_UNRAM_ALPHA):
        rhs = zeta_closed_rhs(inst, y_factor_fn=y_factor_fn).to_series(inst.order)
        cmp_rhs = series_equal(lhs, rhs)
    passed = all(c.match for c in (cmp_hq, cmp_rhs) if c is not None)
    return VerificationReport(
        instance=inst.to_json(),
        case=_CASE_LABELS[kind],
        lhs=lhs, hq=hq, rhs=rhs,
        lhs_vs_hq=cmp_hq, lhs_vs_rhs=cmp_rhs,
        passed=passed,
    )


def unramified_closed(satake: SatakeParams, rep: Gl2Local,
                      bessel: BesselDatum) -> RatFn:
    """Furusawa's closed form for fully unramified data, for global assembly.

    Returns L(3s+1/2, pi~ x tau~) / (L(6s+1, chi|F^x) L(3s+1, triple)) as a
    single rational function of T.  There is no series oracle at m > 0, so
    this is not verified against a sum; only its building blocks are.
    """
    if rep.kind != UNRAMIFIED_PS:
        raise UnsupportedCase("unramified_closed needs the unramified principal series")
    q = satake.q
    one = QScalar.one(q)
    zero = QScalar.zero(q)
    taus = (rep.alpha_varpi, rep.beta_varpi)
    qm1 = QScalar.q_half_power(-1, q)
    qm2 = QScalar.q_half_power(-2, q)

    # Degree-8 denominator of L(3s+1/2, pi~ x tau~): contragredient
    # parameters gamma^-1, tau_j^-1 at q^(-1/2) T.
    pairing = Poly.one(q)
    for g in satake.gamma:
        for t in taus:
            pairing = pairing * Poly([one, -((g * t).inverse() * qm1)], q)

    chi = (satake.omega_pi * rep.omega_tau_varpi).inverse()
    l_chi_poly = Poly([one, zero, -(chi * qm2)], q)

    # Triple factor tau x AI(Lambda) x chi, from the AI(Lambda) parameters.
    triple = Poly.one(q)
    if bessel.legendre == INERT:
        # per tau_j one factor 1 - Lambda(varpi) (chi tau_j)^2 q^-2 T^2
        for t in taus:
            c = bessel.lambda_varpi * (chi * t) ** 2 * qm2 * qm2
            triple = triple * Poly([one, zero, -c], q)
    elif bessel.legendre == RAMIFIED:
        for t in taus:
            c = bessel.lambda_varpiL * chi * t * qm2
            triple = triple * Poly([one, -c], q)
    else:
        for t in taus:
            for lam in (bessel.lambda_varpiL, bessel.lambda_varpi_conj):
                c = lam * chi * t * qm2
                triple = triple * Poly([one, -c], q)

    return RatFn(l_chi_poly * triple, pairing)


# ---------------------------------------------------------------------------
# Randomized instances for sweeps and property tests.
# ---------------------------------------------------------------------------

_SWEEP_QS = (2, 3, 4, 5, 7, 8, 9, 11, 13)


def _nonzero_fraction(rng: random.Random) -> Fraction:
    num = rng.choice([n for n in range(-9, 10) if n != 0])
    den = rng.randint(1, 9)
    return Fraction(num, den)


def random_local_instance(rng: random.Random, kind: str, legendre: int,
                          beta_chi_unramified: bool = False,
                          q: Optional[int] = None,
                          order: int = DEFAULT_ORDER) -> LocalInstance:
    """Draw a valid instance with small nonzero rational parameters.

    gamma4 is solved from the pairing constraint; for non-inert extensions
    omega_pi is forced to the product/square of the drawn Lambda values so
    that Bessel-model compatibility admits rational data.
    """
    if q is None:
        q = rng.choice(_SWEEP_QS)

    def draw():
        return QScalar(_nonzero_fraction(rng), 0, q)

    lamL = lam_conj = None
    if legendre == INERT:
        g1, g2, g3 = draw(), draw(), draw()
        omega_pi = g1 * g3
    elif legendre == RAMIFIED:
        lamL = draw()
        omega_pi = lamL * lamL
        g1, g2 = draw(), draw()
        g3 = omega_pi / g1
    else:
        lamL, lam_conj = draw(), draw()
        omega_pi = lamL * lam_conj
        g1, g2 = draw(), draw()
        g3 = omega_pi / g1
    g4 = g1 * g3 / g2
    satake = SatakeParams((g1, g2, g3, g4), q)
    datum = BesselDatum(legendre, omega_pi, lambda_varpiL=lamL,
                        lambda_varpi_conj=lam_conj, q=q)

    if kind == RAMIFIED_PS_UNRAM_ALPHA:
        rep = Gl2Local(kind, q, alpha_varpi=draw(), beta_varpi=draw(),
                       conductor_exp=rng.randint(1, 4),
                       beta_chi_unramified=beta_chi_unramified)
    elif kind == STEINBERG_UNRAMIFIED:
        rep = Gl2Local(kind, q, omega_varpi=draw())
    elif kind == RAMIFIED_OTHER:
        rep = Gl2Local(kind, q, omega_tau_varpi=draw(),
                       conductor_exp=rng.randint(1, 4))
    elif kind == UNRAMIFIED_PS:
        rep = Gl2Local(kind, q, alpha_varpi=draw(), beta_varpi=draw())
    else:
        raise InvalidArgument(f"unknown kind {kind!r}")
    return LocalInstance(satake, datum, rep, order=order)
