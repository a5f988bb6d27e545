"""The Carlitz module C, its z-deformation, and exp/log in each topology.

``C_theta = theta + tau`` with tau the q-power Frobenius; the deformation has
``C~_theta = theta + z tau``.  exp and log are

    exp_C = sum tau^i / D_i,   Log_C = sum tau^i / L_i,

with D_i = prod_{k<i} (theta^{q^i} - theta^{q^k}) and
L_i = (theta - theta^q) ... (theta - theta^{q^i}).  Carriers (polynomials,
Laurent series, P-adic elements, Tate polynomials, residue fields) are duck
typed: they need ``+``, multiplication by an exact ThetaPoly, and
``frobenius(q)``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .algebra import LaurentSeries, PAdicElem, TatePoly, ThetaPoly, field_for_q
from .algebra.fields import FieldDescriptor
from .errors import NotBaseField, OutsideDomain, PrecisionExhausted, ZDegreeOverflow

# --- factorials -----------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def carlitz_D(field: FieldDescriptor, i: int) -> ThetaPoly:
    """D_i over F_q, q = field size."""
    q = field.q
    if i == 0:
        return ThetaPoly.one(field)
    top = ThetaPoly.monomial(field, q**i)
    acc = ThetaPoly.one(field)
    for k in range(i):
        acc = acc * (top - ThetaPoly.monomial(field, q**k))
    return acc


@functools.lru_cache(maxsize=None)
def carlitz_L(field: FieldDescriptor, i: int) -> ThetaPoly:
    """L_i over F_q."""
    if i == 0:
        return ThetaPoly.one(field)
    q = field.q
    theta = ThetaPoly.theta(field)
    return carlitz_L(field, i - 1) * (theta - ThetaPoly.monomial(field, q**i))


def deg_D(q: int, i: int) -> int:
    return i * q**i


def deg_L(q: int, i: int) -> int:
    return sum(q**j for j in range(1, i + 1))


def vP_L(i: int, d: int) -> int:
    """v_P(L_i) for a prime of degree d."""
    return i // d


def vP_D(q: int, i: int, d: int) -> int:
    """v_P(D_i) for a prime of degree d."""
    return (q**i - q ** (i - d * (i // d))) // (q**d - 1)


@dataclass(frozen=True)
class FactorialSeq:
    """Memoized D_i or L_i over one base field."""

    field: FieldDescriptor
    kind: str  # "D" or "L"

    def __getitem__(self, i: int) -> ThetaPoly:
        return carlitz_D(self.field, i) if self.kind == "D" else carlitz_L(self.field, i)


# --- Goss coefficients -------------------------------------------------------------


@dataclass(frozen=True)
class GossCoeffs:
    a: ThetaPoly
    coeffs: tuple

    def __getitem__(self, i: int) -> ThetaPoly:
        if i < len(self.coeffs):
            return self.coeffs[i]
        return ThetaPoly.zero(self.a.field)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        # __getitem__ pads with zeros, so the default protocol would never stop
        return iter(self.coeffs)


def _as_base(a: ThetaPoly, q: int | None) -> ThetaPoly:
    if q is None or a.field.q == q:
        return a
    base = field_for_q(q)
    if base.k == 1 and a.field.p == base.p and all(c < base.p for c in a.c):
        return a.change_field(base)
    raise NotBaseField(f"{a} does not have coefficients in F_{q}")


@functools.lru_cache(maxsize=4096)
def _goss_cached(a: ThetaPoly) -> tuple:
    F = a.field
    q = F.q
    theta = ThetaPoly.theta(F)
    coeffs = [a]
    for i in range(1, a.degree + 1):
        prev = coeffs[-1]
        num = prev.frobenius(q) - prev
        coeffs.append(num.exact_div(ThetaPoly.monomial(F, q**i) - theta))
    return tuple(coeffs)


def goss_coeffs(a: ThetaPoly, q: int | None = None) -> GossCoeffs:
    """[a,0..deg a] with C_a = sum [a,i] tau^i, via the Goss recursion."""
    a = _as_base(a, q)
    if not a:
        return GossCoeffs(a, ())
    return GossCoeffs(a, _goss_cached(a))


# --- actions -----------------------------------------------------------------------


def carlitz_action(
    a: ThetaPoly,
    x: Any,
    frobenius: Callable[[Any], Any] | None = None,
    scalar: Callable[[ThetaPoly], Any] | None = None,
):
    """C_a(x) = sum [a,i] tau^i(x) on any carrier.

    ``scalar`` maps a polynomial coefficient into the carrier (e.g. the
    reduction A -> O_L/P for residue fields); by default the carrier is
    multiplied by the polynomial directly.
    """
    q = a.field.q
    frob = frobenius or (lambda y: y.frobenius(q))
    gc = goss_coeffs(a)
    if not gc.coeffs:
        return x - x
    acc = None
    y = x
    for i, c in enumerate(gc.coeffs):
        if i:
            y = frob(y)
        if c:
            term = y * (c if scalar is None else scalar(c))
            acc = term if acc is None else acc + term
    return acc


def deformed_action(a: ThetaPoly, x: TatePoly) -> TatePoly:
    """C~_a(x) = sum [a,i] z^i tau^i(x)."""
    q = a.field.q
    if x.zdegree + max(a.degree, 0) > x.zmax:
        raise ZDegreeOverflow(
            f"z-degree {x.zdegree} + deg a {a.degree} exceeds the bound {x.zmax}"
        )
    gc = goss_coeffs(a)
    if not gc.coeffs:
        return x - x
    acc = None
    y = x
    for i, c in enumerate(gc.coeffs):
        if i:
            y = y.frobenius(q)
        if c:
            term = (y * c).shift_z(i) if i else y * c
            acc = term if acc is None else acc + term
    return acc


def deformed_action_exact(a: ThetaPoly, x: ThetaPoly, zmax: int | None = None) -> TatePoly:
    """C~_a(x) for x in A, as an element of A[z]."""
    zmax = a.degree if zmax is None else zmax
    return deformed_action(a, TatePoly.constant(x, zmax))


# --- infinite-adic exp / log --------------------------------------------------------


@functools.lru_cache(maxsize=2048)
def _inv_factorial_inf(field: FieldDescriptor, kind: str, i: int, prec: int) -> LaurentSeries:
    f = carlitz_D(field, i) if kind == "D" else carlitz_L(field, i)
    return LaurentSeries.inverse_of_poly(f, prec)


def _div_factorial_inf(y: LaurentSeries, base: FieldDescriptor, kind: str, i: int, target: int) -> LaurentSeries:
    """y / D_i or y / L_i, carried to absolute precision ``target``."""
    if i == 0:
        return y
    inv = _inv_factorial_inf(base, kind, i, target - y.order)
    if y.field != base:
        inv = LaurentSeries(y.field, inv.order, inv.prec, inv.coeffs)
    return y * inv


def _frob_trunc(y: LaurentSeries, q: int, target: int) -> LaurentSeries:
    # dividing by D_i or L_i only raises precision, so digits past the target
    # never reach the result
    y = y.frobenius(q)
    return y.truncate(target) if y.prec > target else y


def _check_inf_domain(x: LaurentSeries, q: int):
    # v > -q/(q-1)
    if x.coeffs and (q - 1) * x.order + q <= 0:
        raise OutsideDomain(f"v_inf(x) = {x.order} <= -q/(q-1)")


def log_term_valuation_inf(q: int, v, i: int) -> Fraction:
    """v_inf(x^{q^i} / L_i) for v_inf(x) = v."""
    c = Fraction(q, q - 1)
    return q**i * (Fraction(v) + c) - c


def exp_term_valuation_inf(q: int, v, i: int) -> Fraction:
    return Fraction(q**i) * (Fraction(v) + i)


def log_inf(x: LaurentSeries, q: int | None = None, prec: int | None = None) -> LaurentSeries:
    """Log_C(x) on D_inf, to the precision of ``x`` (or ``prec`` if lower)."""
    base = field_for_q(q) if q is not None else x.field
    q = base.q
    _check_inf_domain(x, q)
    target = x.prec if prec is None else min(prec, x.prec)
    if not x.coeffs:
        return LaurentSeries.zero(x.field, target)
    v = x.order
    acc = x.truncate(target)
    y = x
    i = 0
    while True:
        i += 1
        if log_term_valuation_inf(q, v, i) >= target:
            break
        y = _frob_trunc(y, q, target)
        acc = acc + _div_factorial_inf(y, base, "L", i, target)
    # first omitted term lies below the target precision, and later ones further
    assert log_term_valuation_inf(q, v, i) >= target
    return acc.truncate(min(target, acc.prec))


def exp_inf(x: LaurentSeries, q: int | None = None, prec: int | None = None) -> LaurentSeries:
    """exp_C(x); converges for every x, valuation-preserving on D_inf."""
    base = field_for_q(q) if q is not None else x.field
    q = base.q
    target = x.prec if prec is None else min(prec, x.prec)
    if not x.coeffs:
        return LaurentSeries.zero(x.field, target)
    v = x.order
    acc = x.truncate(target)
    y = x
    i = 0
    while True:
        i += 1
        val = exp_term_valuation_inf(q, v, i)
        if val >= target and v + i >= 0:
            break
        y = _frob_trunc(y, q, target)
        if val < target:
            acc = acc + _div_factorial_inf(y, base, "D", i, target)
    return acc.truncate(min(target, acc.prec))


# --- z-deformed exp / log (coefficientwise in z) -------------------------------------


def _div_factorial(y, base: FieldDescriptor, kind: str, i: int, target: int):
    if isinstance(y, LaurentSeries):
        return _div_factorial_inf(y, base, kind, i, target)
    if isinstance(y, PAdicElem):
        return _div_factorial_padic(y, base, kind, i, target)
    raise TypeError(f"unsupported coefficient type {type(y).__name__}")


def _coeff_target(c) -> int:
    return c.prec if isinstance(c, LaurentSeries) else c.abs_prec


def _tate_series(x: TatePoly, q: int, kind: str) -> TatePoly:
    present = [c for c in x.coeffs if c is not None]
    if not present:
        return x
    base = field_for_q(q)
    targets = [_coeff_target(c) for c in present]
    target = min(targets)
    zmax = x.zmax
    acc = x.map(lambda c: c.truncate(target) if isinstance(c, LaurentSeries) else c.truncate_abs(target))
    y = x
    for i in range(1, zmax + 1):
        y = y.map(lambda c: _frob_trunc(c, q, target) if isinstance(c, LaurentSeries) else c.frobenius(q))
        if all(c is None for c in y.coeffs[: zmax + 1 - i]):
            break
        term = TatePoly(
            [None if c is None else _div_factorial(c, base, kind, i, target) for c in y.coeffs[: zmax + 1 - i]],
            zmax - i,
        )
        acc = acc + TatePoly([None] * i + term.coeffs, zmax)
    return acc.map(lambda c: c.truncate(min(target, c.prec)) if isinstance(c, LaurentSeries) else c.truncate_abs(min(target, c.abs_prec)))


def log_z(x: TatePoly, q: int) -> TatePoly:
    """Log_{C~}(x) = sum z^i tau^i(x) / L_i, exact in z up to the bound."""
    return _tate_series(x, q, "L")


def exp_z(x: TatePoly, q: int) -> TatePoly:
    """exp_{C~}(x) = sum z^i tau^i(x) / D_i."""
    return _tate_series(x, q, "D")


def log_z_of_one(field: FieldDescriptor, zmax: int, prec: int) -> TatePoly:
    """Log_{C~}(1); its z^m coefficient is 1/L_m."""
    return log_z(TatePoly.constant(LaurentSeries.one(field, prec), zmax), field.q)


# --- P-adic ----------------------------------------------------------------------------


def _div_factorial_padic(y: PAdicElem, base: FieldDescriptor, kind: str, i: int, target: int) -> PAdicElem:
    if i == 0:
        return y
    f = carlitz_D(base, i) if kind == "D" else carlitz_L(base, i)
    d = y.P.degree
    loss = vP_D(base.q, i, d) if kind == "D" else vP_L(i, d)
    fe = PAdicElem.from_poly(f.change_field(y.field) if y.field != base else f, y.P, prec=max(target - y.val + loss, 1) + loss)
    out = y * fe.inv()
    return out if out.abs_prec <= target else out.truncate_abs(target)


def padic_goss_coeffs(a: PAdicElem, i_max: int) -> list[PAdicElem]:
    """[a,0..i_max] for a in A_P known mod P^N; entry i is exact mod P^(N-i)."""
    if a.val < 0:
        raise OutsideDomain("a must be P-integral")
    N = a.abs_prec
    if i_max >= N:
        raise PrecisionExhausted(f"[a,{i_max}] needs more than {N} digits")
    F = a.P.field
    q = F.q
    theta = ThetaPoly.theta(F)
    out = [a]
    cur = a
    for i in range(1, i_max + 1):
        num = cur.frobenius(q) - cur
        den = ThetaPoly.monomial(F, q**i) - theta
        nxt = num / den
        if not nxt.is_zero() and nxt.val < 0:
            raise AssertionError("Goss recursion produced a non-integral coefficient")
        cur = nxt
        out.append(cur)
    return [c.truncate_abs(min(N - i, c.abs_prec)) for i, c in enumerate(out)]


def _padic_valuation_threshold(q: int, d: int) -> Fraction:
    return Fraction(1, q**d - 1)


def log_padic(x: PAdicElem, prec: int | None = None) -> PAdicElem:
    """P-adic Log_C(x) for v_P(x) >= 1, to the absolute precision of x."""
    if x.is_zero():
        if x.val < 1:
            raise OutsideDomain("valuation of x is not known to be positive")
        return x
    if x.val < 1:
        raise OutsideDomain(f"v_P(x) = {x.val} < 1")
    base = x.P.field
    q = base.q
    d = x.P.degree
    target = x.abs_prec if prec is None else min(prec, x.abs_prec)
    v = x.val
    acc = x.truncate_abs(target)
    y = x
    i = 0
    while True:
        i += 1
        val = q**i * v - vP_L(i, d)
        if val >= target:
            break  # term valuations are non-decreasing for v >= 1
        y = y.frobenius(q)
        if y.abs_prec > target + i:
            y = y.truncate_abs(target + i)
        acc = acc + _div_factorial_padic(y, base, "L", i, target)
    return acc.truncate_abs(min(target, acc.abs_prec))


def exp_padic(x: PAdicElem, prec: int | None = None) -> PAdicElem:
    """P-adic exp_C(x) for v_P(x) > 1/(q^d - 1)."""
    base = x.P.field
    q = base.q
    d = x.P.degree
    thr = _padic_valuation_threshold(q, d)
    if x.is_zero():
        return x
    if x.val <= thr:
        raise OutsideDomain(f"v_P(x) = {x.val} <= 1/(q^d-1)")
    target = x.abs_prec if prec is None else min(prec, x.abs_prec)
    v = x.val
    acc = x.truncate_abs(target)
    y = x
    i = 0
    while True:
        i += 1
        val = q**i * v - vP_D(q, i, d)
        # rigorous tail bound: every later term has valuation >= q^j (v - thr)
        if val >= target and q**i * (v - thr) >= target:
            break
        y = y.frobenius(q)
        loss = vP_D(q, i, d)
        if y.abs_prec > target + loss:
            y = y.truncate_abs(target + loss)
        if val < target:
            acc = acc + _div_factorial_padic(y, base, "D", i, target)
    return acc.truncate_abs(min(target, acc.abs_prec))


def residual_degree_for(x_field: FieldDescriptor, P: ThetaPoly) -> int:
    """Exponent f making C_{P^f - 1} kill the residue rings of the carrier.

    For K_P itself f = 1; for F_{q^r} (x) A_P the residue fields have degree
    d * r / gcd(r, d) over F_q, so f = r / gcd(r, d).
    """
    base = P.field
    if x_field == base:
        return 1
    r = x_field.k // base.k
    return r // math.gcd(r, P.degree)


def iwasawa_log(x: PAdicElem, f: int | None = None) -> PAdicElem:
    """Iwasawa logarithm (P^f - 1)^{-1} Log_C(C_{P^f - 1}(x)) on integral x."""
    if x.val < 0 and not x.is_zero():
        raise OutsideDomain(f"v_P(x) = {x.val} < 0")
    P = x.P
    f = residual_degree_for(x.field, P) if f is None else f
    a = P**f - ThetaPoly.one(P.field)
    y = carlitz_action(a, x)
    if not y.is_zero() and y.val < 1:
        raise AssertionError("C_{P^f-1}(x) must lie in P A_P")
    if y.is_zero():
        return PAdicElem.zero(P, y.val, x.field)
    return log_padic(y) / a


# --- Carlitz period -------------------------------------------------------------------


@dataclass(frozen=True)
class CarlitzPeriod:
    q: int
    unit_part: LaurentSeries
    full: LaurentSeries | None
    root_factor: str


def carlitz_period(q: int, prec: int) -> CarlitzPeriod:
    """pi~ = theta (-theta)^{1/(q-1)} prod_{i>=1} (1 - theta^{1-q^i})^{-1}."""
    if prec < 1:
        raise ValueError("prec must be >= 1")
    F = field_for_q(q)
    unit = LaurentSeries.one(F, prec)
    i = 1
    while q**i - 1 < prec:
        factor = LaurentSeries.one(F, prec) - LaurentSeries.theta_power(F, 1 - q**i, prec)
        unit = unit * factor.inv()
        i += 1
    full = None
    if q == 2:
        # (-theta)^{1/(q-1)} = -theta = theta in characteristic 2
        full = unit.shift(2)
    return CarlitzPeriod(q=q, unit_part=unit, full=full, root_factor="t*(-t)^(1/(q-1))")
