"""Global integral-representation constants.

Assembles the archimedean factor Y_infty(s), the Bessel-period constant
a(Lambda) = sum_j Lambda(t_j) a(S_j, Phi), and the special-value constant

    C = conj(a(Lambda)) D^(-l+3/2) 2^(-4l+6) (2l-5)! prod_{p|N} Y_p(l/6-1/2),

keeping the factorial and the power of two exact and the D-power exact up
to a single sqrt(D).  The local Y_p values are exact QScalar evaluations of
the Y(s) rational function at T = q^(-3s), s = l/6 - 1/2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cgamma import complex_gamma
from .errors import InvalidArgument, PoleError
from .scalars import QScalar
from .zeta import LocalInstance, y_factor


@dataclass(frozen=True)
class GlobalSpec:
    l: int
    D: int
    a_lambda: complex
    bad_primes: tuple = ()
    class_data: Optional[tuple] = None

    def __post_init__(self):
        if self.D <= 0 or self.D % 4 not in (0, 3):
            raise InvalidArgument("D must be positive and = 0, 3 mod 4")
        object.__setattr__(self, "bad_primes", tuple(
            (int(p), complex(y)) for p, y in self.bad_primes))
        if self.class_data is not None:
            object.__setattr__(self, "class_data", tuple(
                (complex(a), complex(b)) for a, b in self.class_data))

    @staticmethod
    def from_json(obj) -> "GlobalSpec":
        def dec(v):
            return complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v)
        return GlobalSpec(
            l=obj["l"], D=obj["D"], a_lambda=dec(obj.get("a_lambda", 1.0)),
            bad_primes=tuple((p, dec(y)) for p, y in obj.get("bad_primes", [])),
            class_data=tuple((dec(a), dec(b)) for a, b in obj["class_data"])
            if "class_data" in obj else None,
        )


def a_lambda(class_data: Sequence[tuple]) -> complex:
    """a(Lambda) = sum_j Lambda(t_j) a(S_j, Phi) over the ideal classes."""
    if not class_data:
        raise InvalidArgument("class data must be a nonempty list of pairs")
    return sum(complex(lam) * complex(a) for lam, a in class_data)


def y_infty(s: complex, spec: GlobalSpec) -> complex:
    """conj(a(Lambda)) pi D^(-3s-l/2) (4 pi)^(-3s+3/2-3l/2)
    Gamma(3s+3l/2-3/2) / (6s+l-1)."""
    s = complex(s)
    l = spec.l
    denom = 6 * s + l - 1
    if abs(denom) < 1e-12:
        raise PoleError("6s + l - 1 vanishes")
    return (complex(spec.a_lambda).conjugate() * math.pi
            * cmath.exp((-3 * s - l / 2) * math.log(spec.D))
            * cmath.exp((-3 * s + 1.5 - 1.5 * l) * math.log(4 * math.pi))
            * complex_gamma(3 * s + 1.5 * l - 1.5) / denom)


def y_p_at_special_point(inst: LocalInstance, l: int) -> tuple[QScalar, complex]:
    """Y_p(l/6 - 1/2): evaluate Y at T = q^(-(l-3)/2), exact then floated."""
    t0 = QScalar.q_half_power(-(l - 3), inst.q)
    exact = y_factor(inst).eval_at(t0)
    return exact, complex(float(exact))


@dataclass(frozen=True)
class SpecialValueResult:
    """C with its exact rational mantissa split off.

    value = conj(a_lambda) * mantissa * sqrt(D) * prod(Y_p); the mantissa
    (2l-5)! 2^(-4l+6) D^(-l+1) is an exact Fraction.
    """

    l: int
    D: int
    mantissa: Fraction
    a_lambda: complex
    y_values: tuple = field(default_factory=tuple)
    value: complex = 0j

    def to_json(self):
        return {
            "l": self.l,
            "D": self.D,
            "exact_mantissa": str(self.mantissa),
            "sqrt_factor": self.D,
            "a_lambda": [self.a_lambda.real, self.a_lambda.imag],
            "bad_prime_y_values": [[p, [y.real, y.imag]] for p, y in self.y_values],
            "value": [self.value.real, self.value.imag],
        }


def special_value_constant(spec: GlobalSpec) -> SpecialValueResult:
    """C = conj(a(Lambda)) D^(-l+3/2) 2^(-4l+6) (2l-5)! prod Y_p(l/6-1/2)."""
    l = spec.l
    if l < 3:
        raise InvalidArgument("l >= 3 required for the factorial (2l-5)!")
    mantissa = (Fraction(math.factorial(2 * l - 5))
                * Fraction(2) ** (-4 * l + 6)
                * Fraction(1, spec.D ** (l - 1)))
    prod_y = complex(1.0)
    for _, y in spec.bad_primes:
        prod_y *= y
    value = (complex(spec.a_lambda).conjugate()
             * float(mantissa) * math.sqrt(spec.D) * prod_y)
    return SpecialValueResult(l=l, D=spec.D, mantissa=mantissa,
                              a_lambda=complex(spec.a_lambda),
                              y_values=spec.bad_primes, value=value)
