"""Truncated Laurent series in 1/theta.

A value ``sum_{i=order}^{prec-1} c_i theta^{-i} + O(theta^{-prec})``.  The
infinite valuation is ``v_inf(theta) = -1``, so ``order`` is the valuation of a
nonzero element.  Zero to precision N is stored with no coefficients and
``order == prec == N``.
"""

from __future__ import annotations

from ..errors import FieldMismatch, InvertZero, PrecisionExhausted
from .fields import FieldDescriptor
from .poly import ThetaPoly, _mul_lists


def _series_inverse(F: FieldDescriptor, c, n: int) -> list:
    """First ``n`` coefficients of 1/(c_0 + c_1 y + ...), c_0 != 0."""
    inv0 = F.inv(c[0])
    out = [inv0]
    if F.k == 1:
        p = F.p
        ninv0 = (-inv0) % p
        m = len(c)
        for k in range(1, n):
            s = 0
            for j in range(1, min(k, m - 1) + 1):
                cj = c[j]
                if cj:
                    s += cj * out[k - j]
            out.append(s * ninv0 % p)
        return out
    ninv0 = F.neg(inv0)
    for k in range(1, n):
        s = 0
        for j in range(1, min(k, len(c) - 1) + 1):
            if c[j]:
                s = F.add(s, F.mul(c[j], out[k - j]))
        out.append(F.mul(s, ninv0))
    return out


class LaurentSeries:
    __slots__ = ("field", "order", "prec", "coeffs")

    def __init__(self, field: FieldDescriptor, order: int, prec: int, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) != max(prec - order, 0):
            raise ValueError("coefficient count must equal prec - order")
        lead = 0
        while lead < len(coeffs) and coeffs[lead] == 0:
            lead += 1
        self.field = field
        self.prec = prec
        if lead == len(coeffs):
            self.order = prec
            self.coeffs = ()
        else:
            self.order = order + lead
            self.coeffs = tuple(coeffs[lead:])

    # -- constructors -------------------------------------------------------------

    @classmethod
    def zero(cls, field, prec: int) -> "LaurentSeries":
        return cls(field, prec, prec, ())

    @classmethod
    def one(cls, field, prec: int) -> "LaurentSeries":
        return cls.from_poly(ThetaPoly.one(field), prec)

    @classmethod
    def from_poly(cls, f: ThetaPoly, prec: int) -> "LaurentSeries":
        """Embed a polynomial, keeping the terms above theta^{-prec}."""
        F = f.field
        if not f:
            return cls.zero(F, prec)
        order = -f.degree
        if prec <= order:
            raise PrecisionExhausted("precision below the leading term")
        coeffs = [f.coeff(-i) for i in range(order, prec)]
        return cls(F, order, prec, coeffs)

    @classmethod
    def theta_power(cls, field, e: int, prec: int) -> "LaurentSeries":
        """theta^e (e may be negative)."""
        if prec <= -e:
            return cls.zero(field, prec)
        return cls(field, -e, prec, [1] + [0] * (prec + e - 1))

    @classmethod
    def inverse_of_poly(cls, f: ThetaPoly, prec: int) -> "LaurentSeries":
        """1/f to absolute precision ``prec`` (f exact)."""
        if not f:
            raise InvertZero("inverse of the zero polynomial")
        d = f.degree
        n = prec - d
        if n <= 0:
            return cls.zero(f.field, prec)
        rev = list(reversed(f.c))
        return cls(f.field, d, prec, _series_inverse(f.field, rev, n))

    # -- properties ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def valuation(self) -> int:
        """v_inf; equals prec for zero-to-precision elements."""
        return self.order

    @property
    def sgn(self) -> int:
        if not self.coeffs:
            raise InvertZero("sign of zero")
        return self.coeffs[0]

    def coeff(self, i: int) -> int:
        """Coefficient of theta^{-i}."""
        if i >= self.prec:
            raise PrecisionExhausted(f"coefficient {i} is beyond precision {self.prec}")
        if i < self.order:
            return 0
        return self.coeffs[i - self.order]

    def __repr__(self):
        return f"LaurentSeries({self}, prec={self.prec})"

    def __str__(self):
        from .literals import format_terms

        terms = []
        for i, code in enumerate(self.coeffs):
            e = self.order + i
            mono = "" if e == 0 else ("t" if e == -1 else (f"t^{-e}" if e < 0 else f"t^-{e}"))
            terms.append((mono, code))
        body = format_terms(self.field, terms)
        return f"{body} + O(t^-{self.prec})" if self.prec >= 0 else f"{body} + O(t^{-self.prec})"

    def dense(self, start: int, stop: int) -> list:
        return [self.coeff(i) for i in range(start, stop)]

    # -- arithmetic ---------------------------------------------------------------

    def _check(self, other):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def _lift(self, other):
        if isinstance(other, LaurentSeries):
            self._check(other)
            return other
        if isinstance(other, ThetaPoly):
            return LaurentSeries.from_poly(other, max(self.prec, -other.degree + 1)) if other else None
        if isinstance(other, int):
            return LaurentSeries.from_poly(ThetaPoly.const(self.field, other % self.field.p), max(self.prec, 1))
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, ThetaPoly) and not other:
            return self
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.field
        prec = min(self.prec, other.prec)
        order = min(self.order, other.order, prec)
        n = prec - order
        out = [0] * n
        if F.k == 1:
            p = F.p
            for src in (self, other):
                off = src.order - order
                for i, c in enumerate(src.coeffs):
                    j = off + i
                    if j >= n:
                        break
                    out[j] = (out[j] + c) % p
        else:
            for src in (self, other):
                off = src.order - order
                for i, c in enumerate(src.coeffs):
                    j = off + i
                    if j >= n:
                        break
                    out[j] = F.add(out[j], c)
        return LaurentSeries(F, order, prec, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return LaurentSeries(F, self.order, self.prec, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, LaurentSeries):
            return self + (-other)
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ThetaPoly):
            return self.mul_poly(other)
        if isinstance(other, int):
            return self.scale(other % self.field.p)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        self._check(other)
        prec = min(self.prec + other.order, other.prec + self.order)
        order = self.order + other.order
        if not self.coeffs or not other.coeffs or prec <= order:
            return LaurentSeries.zero(self.field, prec)
        n = prec - order
        prod = _mul_lists(self.field, self.coeffs[:n], other.coeffs[:n])[:n]
        prod += [0] * (n - len(prod))
        return LaurentSeries(self.field, order, prec, prod)

    __rmul__ = __mul__

    def mul_poly(self, f: ThetaPoly) -> "LaurentSeries":
        """Multiply by an exact polynomial; precision drops by deg f."""
        if not f:
            raise PrecisionExhausted("product with exact zero carries no precision")
        return self * LaurentSeries.from_poly(f, self.prec - self.order - f.degree + 1)

    def scale(self, code: int) -> "LaurentSeries":
        F = self.field
        if code == 0:
            return LaurentSeries.zero(F, self.prec)
        return LaurentSeries(F, self.order, self.prec, [F.mul(c, code) for c in self.coeffs])

    def shift(self, e: int) -> "LaurentSeries":
        """Multiply by theta^e."""
        return LaurentSeries(self.field, self.order - e, self.prec - e, self.coeffs) if self.coeffs else LaurentSeries.zero(self.field, self.prec - e)

    def inv(self) -> "LaurentSeries":
        if not self.coeffs:
            raise InvertZero("inverse of a series that is zero to its precision")
        n = self.prec - self.order
        order = -self.order
        return LaurentSeries(self.field, order, order + n, _series_inverse(self.field, self.coeffs, n))

    def __truediv__(self, other):
        if isinstance(other, ThetaPoly):
            d = other.degree
            return self * LaurentSeries.inverse_of_poly(other, self.prec + d - self.order)
        return self * other.inv()

    def frobenius(self, q: int | None = None) -> "LaurentSeries":
        """sum c_i theta^{-i} -> sum c_i^q theta^{-q i}."""
        F = self.field
        q = F.q if q is None else q
        prec = q * self.prec
        if not self.coeffs:
            return LaurentSeries.zero(F, prec)
        order = q * self.order
        out = [0] * (prec - order)
        fixed = F.q == 2 or q % (F.q - 1) == 1
        for i, c in enumerate(self.coeffs):
            if c:
                out[q * i] = c if fixed else F.frobenius(c, 1, q)
        return LaurentSeries(F, order, prec, out)

    def truncate(self, prec: int) -> "LaurentSeries":
        if prec > self.prec:
            raise PrecisionExhausted(f"cannot raise precision from {self.prec} to {prec}")
        if prec <= self.order:
            return LaurentSeries.zero(self.field, prec)
        return LaurentSeries(self.field, self.order, prec, self.coeffs[: prec - self.order])

    # -- comparisons ----------------------------------------------------------------

    def equals_to(self, other: "LaurentSeries", prec: int | None = None) -> bool:
        """Agreement up to O(theta^{-prec}) (default: the shared precision)."""
        shared = min(self.prec, other.prec)
        prec = shared if prec is None else prec
        if prec > shared:
            raise PrecisionExhausted("comparison precision exceeds the operands'")
        return (self - other).truncate(prec).is_zero()

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.field == other.field
            and self.prec == other.prec
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.order, self.prec, self.coeffs))

    def polynomial_part(self) -> ThetaPoly:
        """Terms with non-positive exponent of 1/theta, as a polynomial."""
        if self.prec <= 0:
            raise PrecisionExhausted("polynomial part not determined at this precision")
        if not self.coeffs or self.order > 0:
            return ThetaPoly.zero(self.field)
        deg = -self.order
        return ThetaPoly(self.field, [self.coeff(-k) for k in range(deg + 1)])

    def to_json(self) -> dict:
        from .literals import format_ff

        return {
            "order": self.order,
            "prec": self.prec,
            "coeffs": [format_ff(self.field, c) for c in self.coeffs],
        }
