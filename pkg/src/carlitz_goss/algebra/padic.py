"""Truncated P-adic elements of K_P = F_{q^d}((P)).

An element is ``P^val * unit + O(P^(val + prec))`` with ``unit`` a polynomial
of degree ``< d*prec`` and (for nonzero elements) ``P`` not dividing ``unit``.
Zero to absolute precision ``M`` is stored as ``val = M, prec = 0, unit = 0``.

The unit part may carry coefficients in an extension F_{q^r} of the field of
``P``; the element then lives in ``F_{q^r} (x) A_P = O_L (x)_A A_P`` for the
constant-field extension O_L = F_{q^r}[theta].  That ring is a product of
fields when ``P`` splits, so ``unit`` need not be invertible there; ``val`` is
still the largest power of ``P`` dividing the element.
"""

from __future__ import annotations

import functools

from ..errors import InvertZero, PrecisionExhausted, PrimeMismatch
from .fields import FieldDescriptor
from .poly import ThetaPoly


@functools.lru_cache(maxsize=4096)
def _p_power(P: ThetaPoly, n: int) -> ThetaPoly:
    return P**n


class PAdicElem:
    __slots__ = ("P", "val", "unit", "prec")

    def __init__(self, P: ThetaPoly, val: int, unit: ThetaPoly, prec: int):
        self.P = P
        self.val = val
        self.unit = unit
        self.prec = prec

    # -- constructors -------------------------------------------------------------

    @staticmethod
    def _local_P(P: ThetaPoly, field: FieldDescriptor) -> ThetaPoly:
        return P if P.field == field else P.change_field(field)

    @classmethod
    def zero(cls, P: ThetaPoly, abs_prec: int, field: FieldDescriptor | None = None):
        field = P.field if field is None else field
        return cls(P, abs_prec, ThetaPoly.zero(field), 0)

    @classmethod
    def from_poly(cls, f: ThetaPoly, P: ThetaPoly, prec: int | None = None, abs_prec: int | None = None):
        """Embed ``f``; ``prec`` is relative, ``abs_prec`` absolute (one of them)."""
        if (prec is None) == (abs_prec is None):
            raise ValueError("give exactly one of prec / abs_prec")
        Pl = cls._local_P(P, f.field)
        if not f:
            return cls(P, abs_prec if abs_prec is not None else prec, f, 0)
        v = 0
        g = f
        limit = abs_prec if abs_prec is not None else None
        while True:
            if limit is not None and v >= limit:
                return cls.zero(P, limit, f.field)
            qt, r = divmod(g, Pl)
            if r:
                break
            g = qt
            v += 1
        rel = prec if prec is not None else abs_prec - v
        return cls(P, v, g % _p_power(Pl, rel), rel)

    @classmethod
    def one(cls, P: ThetaPoly, prec: int, field=None):
        field = P.field if field is None else field
        return cls.from_poly(ThetaPoly.one(field), P, prec=prec)

    # -- properties ---------------------------------------------------------------

    @property
    def field(self) -> FieldDescriptor:
        return self.unit.field

    @property
    def abs_prec(self) -> int:
        return self.val + self.prec

    def is_zero(self) -> bool:
        return self.prec == 0

    @property
    def valuation(self) -> int:
        return self.val

    def _Pl(self) -> ThetaPoly:
        return self._local_P(self.P, self.unit.field)

    def __repr__(self):
        return f"PAdicElem(P={self.P}, val={self.val}, unit={self.unit}, prec={self.prec})"

    def __str__(self):
        if self.is_zero():
            return f"O(P^{self.val})"
        return f"P^{self.val}*({self.unit}) + O(P^{self.abs_prec})"

    def to_poly(self) -> ThetaPoly:
        """Polynomial representative of an integral element (val >= 0)."""
        if self.val < 0:
            raise ValueError("element is not integral")
        if self.is_zero():
            return self.unit
        return _p_power(self._Pl(), self.val) * self.unit

    def residue(self) -> ThetaPoly:
        """Image in A/P (for val >= 0) as a polynomial of degree < deg P."""
        if self.val < 0:
            raise ValueError("element is not integral")
        if self.val > 0 or self.is_zero():
            if self.is_zero() and self.val == 0:
                raise PrecisionExhausted("residue unknown at precision 0")
            return ThetaPoly.zero(self.field)
        return self.unit % self._Pl()

    # -- arithmetic ---------------------------------------------------------------

    def _check(self, other: "PAdicElem"):
        if other.P != self.P:
            raise PrimeMismatch(f"{self.P} vs {other.P}")

    def _coerce(self, other):
        if isinstance(other, PAdicElem):
            self._check(other)
            return other
        if isinstance(other, int):
            other = ThetaPoly.const(self.field, other % self.field.p)
        if isinstance(other, ThetaPoly):
            # exact operand: enough digits for both sums and products
            f = other.change_field(self.field) if other.field != self.field else other
            return PAdicElem.from_poly(f, self.P, prec=max(self.prec, self.abs_prec, 1))
        return NotImplemented

    def change_field(self, field: FieldDescriptor) -> "PAdicElem":
        return PAdicElem(self.P, self.val, self.unit.change_field(field), self.prec)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self, other
        if a.field != b.field:  # promote the prime-field operand
            if a.field.k == 1:
                a = a.change_field(b.field)
            else:
                b = b.change_field(a.field)
        top = min(a.abs_prec, b.abs_prec)
        m = min(a.val, b.val)
        Pl = a._Pl()
        if top <= m:
            return PAdicElem.zero(a.P, top, a.field)
        mod = _p_power(Pl, top - m)
        s = ThetaPoly.zero(a.field)
        for x in (a, b):
            if not x.is_zero() and x.val < top:
                s = s + _p_power(Pl, x.val - m) * x.unit
        s = s % mod
        return PAdicElem._normalize(a.P, m, s, top - m)

    __radd__ = __add__

    @staticmethod
    def _normalize(P, m, s: ThetaPoly, rel: int) -> "PAdicElem":
        Pl = PAdicElem._local_P(P, s.field)
        if not s:
            return PAdicElem.zero(P, m + rel, s.field)
        k = 0
        while True:
            qt, r = divmod(s, Pl)
            if r:
                break
            s = qt
            k += 1
        return PAdicElem(P, m + k, s, rel - k)

    def __neg__(self):
        return PAdicElem(self.P, self.val, -self.unit, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self, other
        if a.field != b.field:
            if a.field.k == 1:
                a = a.change_field(b.field)
            else:
                b = b.change_field(a.field)
        if a.is_zero() or b.is_zero():
            if a.is_zero() and b.is_zero():
                return PAdicElem.zero(a.P, a.val + b.val, a.field)
            z, nz = (a, b) if a.is_zero() else (b, a)
            return PAdicElem.zero(a.P, z.val + nz.val, a.field)
        rel = min(a.prec, b.prec)
        u = (a.unit * b.unit) % _p_power(a._Pl(), rel)
        if a.field != a.P.field:
            return PAdicElem._normalize(a.P, a.val + b.val, u, rel)
        return PAdicElem(a.P, a.val + b.val, u, rel)

    __rmul__ = __mul__

    def inv(self) -> "PAdicElem":
        if self.is_zero():
            raise InvertZero("inverse of an element that is zero to its precision")
        mod = _p_power(self._Pl(), self.prec)
        try:
            u = self.unit.inverse_mod(mod)
        except ZeroDivisionError as exc:
            raise InvertZero(str(exc)) from None
        return PAdicElem(self.P, -self.val, u, self.prec)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def mul_P_power(self, k: int) -> "PAdicElem":
        return PAdicElem(self.P, self.val + k, self.unit, self.prec)

    def frobenius(self, q: int | None = None) -> "PAdicElem":
        """x -> x^q (P has coefficients in F_q, so P^v maps to P^(q v))."""
        q = self.P.field.q if q is None else q
        if self.is_zero():
            return PAdicElem.zero(self.P, q * self.val, self.field)
        u = self.unit.frobenius(q)
        rel = q * self.prec
        return PAdicElem(self.P, q * self.val, u % _p_power(self._Pl(), rel), rel)

    def truncate_abs(self, abs_prec: int) -> "PAdicElem":
        if abs_prec > self.abs_prec:
            raise PrecisionExhausted(f"cannot raise precision {self.abs_prec} -> {abs_prec}")
        if abs_prec <= self.val:
            return PAdicElem.zero(self.P, abs_prec, self.field)
        rel = abs_prec - self.val
        return PAdicElem(self.P, self.val, self.unit % _p_power(self._Pl(), rel), rel)

    def equals_to(self, other: "PAdicElem", abs_prec: int | None = None) -> bool:
        other = self._coerce(other)
        diff = self - other
        top = diff.abs_prec if abs_prec is None else abs_prec
        if top > diff.abs_prec:
            raise PrecisionExhausted("comparison precision exceeds the operands'")
        return diff.is_zero() or diff.val >= top

    def __eq__(self, other):
        if not isinstance(other, PAdicElem):
            return NotImplemented
        return (self.P, self.val, self.unit, self.prec) == (other.P, other.val, other.unit, other.prec)

    def __hash__(self):
        return hash((self.P, self.val, self.unit, self.prec))

    def to_json(self) -> dict:
        return {"P": str(self.P), "val": self.val, "prec": self.prec, "unit": str(self.unit)}


def embed_poly(f: ThetaPoly, P: ThetaPoly, N: int) -> PAdicElem:
    """Embed ``f`` with relative precision ``N`` (P-powers factored out)."""
    return PAdicElem.from_poly(f, P, prec=N)
