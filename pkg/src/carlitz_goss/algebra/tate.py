"""Polynomials in z truncated at a z-degree bound.

Coefficients are LaurentSeries (the Tate algebra over K_inf), PAdicElem (over
K_P) or exact ThetaPoly (elements of A[z]).  ``None`` marks an exactly zero
coefficient, which keeps precision bookkeeping honest: a missing term never
limits the precision of a sum.
"""

from __future__ import annotations

from typing import Any, Callable

from ..errors import ZDegreeOverflow


class TatePoly:
    __slots__ = ("coeffs", "zmax")

    def __init__(self, coeffs, zmax: int):
        coeffs = list(coeffs)
        if len(coeffs) > zmax + 1:
            if any(c is not None and not _is_zero(c) for c in coeffs[zmax + 1 :]):
                raise ZDegreeOverflow(f"z-degree {len(coeffs) - 1} exceeds bound {zmax}")
            coeffs = coeffs[: zmax + 1]
        self.coeffs = coeffs + [None] * (zmax + 1 - len(coeffs))
        self.zmax = zmax

    @classmethod
    def constant(cls, c, zmax: int) -> "TatePoly":
        return cls([c], zmax)

    def __getitem__(self, m: int):
        return self.coeffs[m] if 0 <= m <= self.zmax else None

    @property
    def zdegree(self) -> int:
        for m in range(self.zmax, -1, -1):
            c = self.coeffs[m]
            if c is not None and not _is_zero(c):
                return m
        return -1

    def __repr__(self):
        return f"TatePoly({self.coeffs!r}, zmax={self.zmax})"

    def __str__(self):
        parts = []
        for m, c in enumerate(self.coeffs):
            if c is None or _is_zero(c):
                continue
            z = "" if m == 0 else ("*z" if m == 1 else f"*z^{m}")
            parts.append(f"({c}){z}")
        return " + ".join(parts) if parts else "0"

    def map(self, fn: Callable[[Any], Any]) -> "TatePoly":
        return TatePoly([None if c is None else fn(c) for c in self.coeffs], self.zmax)

    def __add__(self, other: "TatePoly") -> "TatePoly":
        zmax = min(self.zmax, other.zmax)
        out = []
        for m in range(zmax + 1):
            a, b = self.coeffs[m], other.coeffs[m]
            out.append(b if a is None else (a if b is None else a + b))
        return TatePoly(out, zmax)

    def __neg__(self):
        return self.map(lambda c: -c)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "TatePoly":
        if not isinstance(other, TatePoly):
            return self.map(lambda c: c * other)
        zmax = min(self.zmax, other.zmax)
        out: list = [None] * (zmax + 1)
        for i, a in enumerate(self.coeffs[: zmax + 1]):
            if a is None:
                continue
            for j, b in enumerate(other.coeffs[: zmax + 1 - i]):
                if b is None:
                    continue
                t = a * b
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        return TatePoly(out, zmax)

    def scale_left(self, c) -> "TatePoly":
        """Multiply every coefficient by ``c`` on the left (c * coeff)."""
        return self.map(lambda x: c * x)

    def shift_z(self, k: int) -> "TatePoly":
        """Multiply by z^k (must stay inside the bound)."""
        return TatePoly([None] * k + self.coeffs, self.zmax)

    def frobenius(self, q: int | None = None) -> "TatePoly":
        """tau acting coefficientwise; z is fixed."""
        return self.map(lambda c: c.frobenius(q))

    def at_one(self):
        """Specialize z = 1."""
        acc = None
        for c in self.coeffs:
            if c is not None:
                acc = c if acc is None else acc + c
        return acc

    def evaluate(self, z_code: int, scale: Callable[[Any, int], Any]):
        """Specialize z to a constant of the coefficient field."""
        present = [c for c in self.coeffs if c is not None]
        if not present:
            return None
        F = present[0].field
        acc = None
        power = 1
        for c in self.coeffs:
            if c is not None and power:
                term = scale(c, power)
                acc = term if acc is None else acc + term
            power = F.mul(power, z_code)
        return acc


def _is_zero(c) -> bool:
    f = getattr(c, "is_zero", None)
    if callable(f):
        return f()
    return not c
