"""Complex numbers with a separate base-2 exponent.

Partition functions grow like q^n times a product of N Boltzmann factors, which
leaves the double range long before contraction becomes expensive.  A
``ScaledValue`` is ``mantissa * 2**exponent`` with ``1 <= |mantissa| < 2``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext

LOG10_2 = math.log10(2.0)


def _normalize(z: complex, exponent: int) -> tuple[complex, int]:
    if z == 0 or not cmath.isfinite(z):
        if z == 0:
            return 0j, 0
        raise OverflowError("non-finite mantissa")
    _, k = math.frexp(abs(z))
    # frexp gives |z| = f * 2**k with 0.5 <= f < 1; shift to [1, 2)
    k -= 1
    m = complex(math.ldexp(z.real, -k), math.ldexp(z.imag, -k))
    if abs(m) >= 2.0:
        m, k = m / 2, k + 1
    elif abs(m) < 1.0:
        m, k = m * 2, k - 1
    return m, exponent + k


@dataclass(frozen=True)
class ScaledValue:
    mantissa: complex
    exponent: int

    @classmethod
    def of(cls, z: complex, exponent: int = 0) -> "ScaledValue":
        return cls(*_normalize(complex(z), int(exponent)))

    @classmethod
    def zero(cls) -> "ScaledValue":
        return cls(0j, 0)

    @classmethod
    def one(cls) -> "ScaledValue":
        return cls(1 + 0j, 0)

    def is_zero(self) -> bool:
        return self.mantissa == 0

    def __mul__(self, other) -> "ScaledValue":
        if not isinstance(other, ScaledValue):
            other = ScaledValue.of(other)
        if self.is_zero() or other.is_zero():
            return ScaledValue.zero()
        return ScaledValue.of(self.mantissa * other.mantissa, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ScaledValue":
        if not isinstance(other, ScaledValue):
            other = ScaledValue.of(other)
        if other.is_zero():
            raise ZeroDivisionError("division by a zero ScaledValue")
        if self.is_zero():
            return ScaledValue.zero()
        return ScaledValue.of(self.mantissa / other.mantissa, self.exponent - other.exponent)

    def __add__(self, other) -> "ScaledValue":
        if not isinstance(other, ScaledValue):
            other = ScaledValue.of(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        big, small = (self, other) if self.exponent >= other.exponent else (other, self)
        shift = small.exponent - big.exponent
        if shift < -1100:
            return big
        m = big.mantissa + complex(math.ldexp(small.mantissa.real, shift), math.ldexp(small.mantissa.imag, shift))
        return ScaledValue.of(m, big.exponent)

    __radd__ = __add__

    def __neg__(self) -> "ScaledValue":
        return ScaledValue(-self.mantissa, self.exponent)

    def __sub__(self, other) -> "ScaledValue":
        if not isinstance(other, ScaledValue):
            other = ScaledValue.of(other)
        return self + (-other)

    def __pow__(self, k: int) -> "ScaledValue":
        out = ScaledValue.one()
        base = self
        k = int(k)
        if k < 0:
            base, k = ScaledValue.one() / base, -k
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "ScaledValue":
        return ScaledValue(self.mantissa.conjugate(), self.exponent)

    def to_complex(self) -> complex:
        """Exact conversion when in range; may overflow to inf or underflow to 0."""
        if self.is_zero():
            return 0j
        try:
            return complex(math.ldexp(self.mantissa.real, self.exponent), math.ldexp(self.mantissa.imag, self.exponent))
        except OverflowError:
            return complex(math.copysign(math.inf, self.mantissa.real), math.copysign(math.inf, self.mantissa.imag))

    def __complex__(self) -> complex:
        return self.to_complex()

    @property
    def log2_abs(self) -> float:
        if self.is_zero():
            return -math.inf
        return math.log2(abs(self.mantissa)) + self.exponent

    @property
    def phase(self) -> float:
        return cmath.phase(self.mantissa) if not self.is_zero() else 0.0

    def decimal(self, digits: int = 17) -> str:
        """Decimal rendering with ``digits`` significant digits per component."""
        with localcontext() as ctx:
            ctx.prec = digits + 10
            scale = Decimal(2) ** self.exponent

            def fmt(x: float) -> str:
                if x == 0:
                    return "0"
                return f"{(Decimal(x) * scale):.{digits - 1}E}"

            re = fmt(self.mantissa.real)
            if self.mantissa.imag == 0:
                return re
            im = fmt(self.mantissa.imag)
            sign = "" if im.startswith("-") else "+"
            return f"{re}{sign}{im}j"

    def to_json(self) -> dict:
        return {
            "mantissa": [self.mantissa.real, self.mantissa.imag],
            "exponent": self.exponent,
            "decimal": self.decimal(),
        }

    @classmethod
    def from_json(cls, d: dict) -> "ScaledValue":
        re, im = d["mantissa"]
        return cls.of(complex(re, im), d["exponent"])


def relative_error(a: ScaledValue | complex, b: ScaledValue | complex) -> float:
    """``|a - b| / |b|``, computed without leaving the scaled representation."""
    if not isinstance(a, ScaledValue):
        a = ScaledValue.of(a)
    if not isinstance(b, ScaledValue):
        b = ScaledValue.of(b)
    if b.is_zero():
        return 0.0 if a.is_zero() else math.inf
    diff = a - b
    if diff.is_zero():
        return 0.0
    return 2.0 ** (diff.log2_abs - b.log2_abs)


def scaled_product(values) -> ScaledValue:
    out = ScaledValue.one()
    for v in values:
        out = out * v
    return out
