"""Spherical Bessel values B(h(l,0)) via Sugano's generating function.

For an unramified GSp(4) representation with Satake parameters
gamma^(1..4) and an unramified character Lambda of the quadratic extension,
the values B(h(l,0)) of the normalized spherical Bessel vector satisfy

    sum_{l>=0} B(h(l,0)) y^l = H(y) / Q(y),

with Q(y) = prod_i (1 - gamma^(i) q^(-3/2) y) and H depending on whether
the extension is inert, ramified or split.  Only this m = 0 slice is
needed by the zeta-integral verification.
"""

from __future__ import annotations

from .errors import InvalidArgument, InvalidBesselDatum
from .scalars import QScalar
from .series import Poly, Series, poly_series, series_div

INERT, RAMIFIED, SPLIT = -1, 0, 1


class SatakeParams:
    """The four Satake parameters of an unramified GSp(4) representation.

    The pairing gamma^(1) gamma^(3) = gamma^(2) gamma^(4) is the central
    character value omega_pi(varpi) and is enforced at construction.
    """

    __slots__ = ("gamma", "q")

    def __init__(self, gamma, q: int):
        gamma = tuple(gamma)
        if len(gamma) != 4:
            raise InvalidArgument("exactly four Satake parameters required")
        for g in gamma:
            if not isinstance(g, QScalar) or g.q != q:
                raise InvalidArgument("Satake parameters must be QScalar with matching q")
            if g.norm() == 0:
                raise InvalidArgument("Satake parameters must be invertible")
        if gamma[0] * gamma[2] != gamma[1] * gamma[3]:
            raise InvalidArgument(
                "pairing constraint gamma1*gamma3 = gamma2*gamma4 violated")
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):
        raise AttributeError("SatakeParams is immutable")

    @property
    def omega_pi(self) -> QScalar:
        """Central character value omega_pi(varpi) = gamma1*gamma3."""
        return self.gamma[0] * self.gamma[2]

    def to_json(self):
        return {"gamma": [g.to_json() for g in self.gamma]}

    @staticmethod
    def from_json(obj, q: int) -> "SatakeParams":
        return SatakeParams([QScalar.from_json(g, q) for g in obj["gamma"]], q)


class BesselDatum:
    """Quadratic-extension case plus unramified Hecke-character values.

    legendre is -1 (inert), 0 (ramified) or +1 (split).  lambda_varpi is
    Lambda(varpi); the split case also needs Lambda(varpi_L) and
    Lambda(varpi varpi_L^{-1}) with product lambda_varpi, the ramified case
    needs Lambda(varpi_L) with square lambda_varpi.
    """

    __slots__ = ("legendre", "lambda_varpi", "lambda_varpiL",
                 "lambda_varpi_conj", "q")

    def __init__(self, legendre: int, lambda_varpi: QScalar,
                 lambda_varpiL=None, lambda_varpi_conj=None, q=None):
        if legendre not in (INERT, RAMIFIED, SPLIT):
            raise InvalidBesselDatum(f"legendre symbol must be -1, 0 or 1, got {legendre}")
        if q is None:
            q = lambda_varpi.q
        if not isinstance(lambda_varpi, QScalar) or lambda_varpi.q != q:
            raise InvalidBesselDatum("lambda_varpi must be a QScalar with matching q")
        if legendre == RAMIFIED:
            if lambda_varpiL is None:
                raise InvalidBesselDatum("ramified case needs Lambda(varpi_L)")
            if lambda_varpiL * lambda_varpiL != lambda_varpi:
                raise InvalidBesselDatum(
                    "ramified case requires Lambda(varpi) = Lambda(varpi_L)^2")
        elif legendre == SPLIT:
            if lambda_varpiL is None or lambda_varpi_conj is None:
                raise InvalidBesselDatum(
                    "split case needs Lambda(varpi_L) and Lambda(varpi varpi_L^-1)")
            if lambda_varpiL * lambda_varpi_conj != lambda_varpi:
                raise InvalidBesselDatum(
                    "split case requires Lambda(varpi) = "
                    "Lambda(varpi_L) * Lambda(varpi varpi_L^-1)")
        # inert: lambda_varpiL / lambda_varpi_conj are unused
        object.__setattr__(self, "legendre", legendre)
        object.__setattr__(self, "lambda_varpi", lambda_varpi)
        object.__setattr__(self, "lambda_varpiL", lambda_varpiL)
        object.__setattr__(self, "lambda_varpi_conj", lambda_varpi_conj)
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):
        raise AttributeError("BesselDatum is immutable")

    def to_json(self):
        out = {"legendre": self.legendre, "lambda_varpi": self.lambda_varpi.to_json()}
        if self.lambda_varpiL is not None:
            out["lambda_varpiL"] = self.lambda_varpiL.to_json()
        if self.lambda_varpi_conj is not None:
            out["lambda_varpi_conj"] = self.lambda_varpi_conj.to_json()
        return out

    @staticmethod
    def from_json(obj, q: int) -> "BesselDatum":
        def dec(key):
            return QScalar.from_json(obj[key], q) if key in obj else None
        return BesselDatum(
            obj["legendre"],
            QScalar.from_json(obj["lambda_varpi"], q),
            lambda_varpiL=dec("lambda_varpiL"),
            lambda_varpi_conj=dec("lambda_varpi_conj"),
            q=q,
        )


def sugano_H(d: BesselDatum, q: int) -> Poly:
    """Numerator H(y) of the generating function, by extension type."""
    if d.q != q:
        raise InvalidBesselDatum("datum q does not match")
    if d.legendre == INERT:
        # 1 - q^-4 Lambda(varpi) y^2
        return Poly([QScalar.one(q), QScalar.zero(q),
                     -(QScalar.q_half_power(-8, q) * d.lambda_varpi)], q)
    if d.legendre == RAMIFIED:
        # 1 - q^-2 Lambda(varpi_L) y
        return Poly([QScalar.one(q),
                     -(QScalar.q_half_power(-4, q) * d.lambda_varpiL)], q)
    # split: 1 - q^-2 (Lambda(varpi_L) + Lambda(varpi varpi_L^-1)) y
    #          + q^-4 Lambda(varpi) y^2
    return Poly([
        QScalar.one(q),
        -(QScalar.q_half_power(-4, q) * (d.lambda_varpiL + d.lambda_varpi_conj)),
        QScalar.q_half_power(-8, q) * d.lambda_varpi,
    ], q)


def sugano_Q(p: SatakeParams) -> Poly:
    """Q(y) = prod_{i=1}^{4} (1 - gamma^(i) q^(-3/2) y), degree exactly 4."""
    q = p.q
    qm32 = QScalar.q_half_power(-3, q)
    acc = Poly.one(q)
    for g in p.gamma:
        acc = acc * Poly([QScalar.one(q), -(g * qm32)], q)
    return acc


def bessel_coeffs(p: SatakeParams, d: BesselDatum, order: int) -> Series:
    """Coefficients B(h(l,0)) for l = 0..order; B(h(0,0)) = 1."""
    if p.q != d.q:
        raise InvalidArgument("Satake parameters and Bessel datum q mismatch")
    H = sugano_H(d, p.q)
    Q = sugano_Q(p)
    return series_div(poly_series(H, order), poly_series(Q, order))
