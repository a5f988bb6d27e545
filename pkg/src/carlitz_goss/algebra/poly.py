"""Dense polynomials in theta over a finite field, and their factorization."""

from __future__ import annotations

import random
from typing import Iterator

from ..errors import DivisionByZeroPoly, FieldMismatch, ZeroPolynomial
from .fields import FieldDescriptor, FFElem


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _add_lists(F: FieldDescriptor, a, b) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    if F.k == 1:
        p = F.p
        for i, x in enumerate(b):
            out[i] = (out[i] + x) % p
    else:
        at = F.add_table
        if at is None:
            for i, x in enumerate(b):
                out[i] = F.add(out[i], x)
        else:
            for i, x in enumerate(b):
                out[i] = at[out[i]][x]
    return _trim(out)


def _neg_list(F: FieldDescriptor, a) -> list:
    if F.k == 1:
        p = F.p
        return [(-x) % p for x in a]
    return [F.neg(x) for x in a]


def _mul_lists(F: FieldDescriptor, a, b) -> list:
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    n = len(a) + len(b) - 1
    if F.k == 1:
        p = F.p
        res = [0] * n
        for j, bj in enumerate(b):
            if bj:
                for i, ai in enumerate(a):
                    res[i + j] += ai * bj
        return _trim([x % p for x in res])
    mt, at = F.mul_table, F.add_table
    res = [0] * n
    if mt is None:
        for j, bj in enumerate(b):
            if bj:
                for i, ai in enumerate(a):
                    res[i + j] = F.add(res[i + j], F.mul(ai, bj))
        return _trim(res)
    for j, bj in enumerate(b):
        if bj:
            row = mt[bj]
            for i, ai in enumerate(a):
                if ai:
                    res[i + j] = at[res[i + j]][row[ai]]
    return _trim(res)


def _scale_list(F: FieldDescriptor, a, s: int) -> list:
    if s == 0:
        return []
    if s == 1:
        return list(a)
    if F.k == 1:
        p = F.p
        return [(x * s) % p for x in a]
    return [F.mul(x, s) for x in a]


def _divmod_lists(F: FieldDescriptor, a, b):
    if not b:
        raise DivisionByZeroPoly("division by the zero polynomial")
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], list(a)
    r = list(a)
    qt = [0] * (len(a) - db)
    inv_lead = F.inv(b[-1])
    if F.k == 1:
        p = F.p
        for shift in range(len(a) - 1 - db, -1, -1):
            coef = r[shift + db] * inv_lead % p
            if coef:
                qt[shift] = coef
                for i in range(db + 1):
                    r[shift + i] = (r[shift + i] - coef * b[i]) % p
    else:
        for shift in range(len(a) - 1 - db, -1, -1):
            coef = F.mul(r[shift + db], inv_lead)
            if coef:
                qt[shift] = coef
                nc = F.neg(coef)
                for i in range(db + 1):
                    r[shift + i] = F.add(r[shift + i], F.mul(nc, b[i]))
    return _trim(qt), _trim(r[:db])


class ThetaPoly:
    """Polynomial in theta with coefficients in ``field`` (codes, lowest first)."""

    __slots__ = ("field", "c")

    def __init__(self, field: FieldDescriptor, coeffs=(), _trusted: bool = False):
        self.field = field
        if _trusted:
            self.c = tuple(coeffs)
        else:
            q = field.q
            c = [int(x) for x in coeffs]
            if any(x < 0 or x >= q for x in c):
                raise ValueError("coefficient codes out of range")
            self.c = tuple(_trim(c))

    # -- constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, field, lst) -> "ThetaPoly":
        obj = cls.__new__(cls)
        obj.field = field
        obj.c = tuple(lst)
        return obj

    @classmethod
    def zero(cls, field):
        return cls._raw(field, ())

    @classmethod
    def one(cls, field):
        return cls._raw(field, (1,))

    @classmethod
    def const(cls, field, code: int):
        return cls._raw(field, (code,) if code else ())

    @classmethod
    def theta(cls, field):
        return cls._raw(field, (0, 1))

    @classmethod
    def monomial(cls, field, deg: int, code: int = 1):
        if not code:
            return cls.zero(field)
        return cls._raw(field, (0,) * deg + (code,))

    @classmethod
    def parse(cls, text: str, field) -> "ThetaPoly":
        from .literals import parse_bivariate

        terms = parse_bivariate(text, field)
        if any(ze for (_, ze) in terms):
            raise ValueError("z is not allowed in a theta polynomial")
        deg = max((te for te, _ in terms), default=-1)
        return cls(field, [terms.get((i, 0), 0) for i in range(deg + 1)])

    # -- basic properties ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def lead(self) -> int:
        return self.c[-1] if self.c else 0

    def is_zero(self) -> bool:
        return not self.c

    def is_one(self) -> bool:
        return self.c == (1,)

    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == 1

    def coeff(self, i: int) -> int:
        return self.c[i] if 0 <= i < len(self.c) else 0

    def __bool__(self):
        return bool(self.c)

    def __len__(self):
        return len(self.c)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.c == ((other % self.field.p,) if other % self.field.p else ())
        if not isinstance(other, ThetaPoly):
            return NotImplemented
        return self.field == other.field and self.c == other.c

    def __hash__(self):
        return hash((self.field, self.c))

    def __repr__(self):
        return f"ThetaPoly({self}, {self.field!r})"

    def __str__(self):
        return self.to_str("t")

    def to_str(self, var: str = "t") -> str:
        from .literals import format_terms, mono_str

        return format_terms(
            self.field, ((mono_str(var, i), self.c[i]) for i in range(len(self.c) - 1, -1, -1))
        )

    # -- arithmetic ------------------------------------------------------------

    def _align(self, other):
        """Bring a prime-field operand into the other operand's field."""
        if isinstance(other, ThetaPoly) and other.field != self.field:
            if other.field.p == self.field.p:
                if self.field.k == 1:
                    return self.change_field(other.field), other
                if other.field.k == 1:
                    return self, other.change_field(self.field)
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        return self, other

    def _coerce(self, other) -> "ThetaPoly":
        if isinstance(other, ThetaPoly):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, int):
            return ThetaPoly.const(self.field, other % self.field.p)
        if isinstance(other, FFElem):
            if other.field != self.field:
                raise FieldMismatch("coefficient field mismatch")
            return ThetaPoly.const(self.field, other.value)
        return NotImplemented

    def __add__(self, other):
        self, other = self._align(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ThetaPoly._raw(self.field, _add_lists(self.field, self.c, other.c))

    __radd__ = __add__

    def __neg__(self):
        return ThetaPoly._raw(self.field, _neg_list(self.field, self.c))

    def __sub__(self, other):
        self, other = self._align(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ThetaPoly._raw(self.field, _add_lists(self.field, self.c, _neg_list(self.field, other.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        self, other = self._align(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ThetaPoly._raw(self.field, _mul_lists(self.field, self.c, other.c))

    __rmul__ = __mul__

    def scale(self, code: int) -> "ThetaPoly":
        return ThetaPoly._raw(self.field, _scale_list(self.field, self.c, code))

    def shift(self, k: int) -> "ThetaPoly":
        """Multiply by theta^k."""
        if not self.c:
            return self
        return ThetaPoly._raw(self.field, (0,) * k + self.c)

    def __divmod__(self, other):
        other = self._coerce(other)
        qt, r = _divmod_lists(self.field, self.c, other.c)
        return ThetaPoly._raw(self.field, qt), ThetaPoly._raw(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        other = self._coerce(other)
        if len(self.c) < len(other.c):
            if not other.c:
                raise DivisionByZeroPoly("division by the zero polynomial")
            return self
        return ThetaPoly._raw(self.field, _divmod_lists(self.field, self.c, other.c)[1])

    def exact_div(self, other) -> "ThetaPoly":
        qt, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return qt

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = ThetaPoly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def pow_mod(self, e: int, m: "ThetaPoly") -> "ThetaPoly":
        result = ThetaPoly.one(self.field) % m
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            e >>= 1
            if e:
                base = (base * base) % m
        return result

    def eval(self, x: int) -> int:
        F = self.field
        acc = 0
        for coef in reversed(self.c):
            acc = F.add(F.mul(acc, x), coef)
        return acc

    def monic(self) -> "ThetaPoly":
        if not self.c:
            raise ZeroPolynomial("zero polynomial has no monic associate")
        if self.c[-1] == 1:
            return self
        return self.scale(self.field.inv(self.c[-1]))

    def gcd(self, other) -> "ThetaPoly":
        a, b = self, self._coerce(other)
        while b:
            a, b = b, a % b
        return a.monic() if a else a

    def xgcd(self, other):
        """Return (g, s, t) with s*self + t*other = g, g monic."""
        F = self.field
        r0, r1 = self, self._coerce(other)
        s0, s1 = ThetaPoly.one(F), ThetaPoly.zero(F)
        t0, t1 = ThetaPoly.zero(F), ThetaPoly.one(F)
        while r1:
            qt, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - qt * s1
            t0, t1 = t1, t0 - qt * t1
        if not r0:
            return r0, s0, t0
        inv = F.inv(r0.lead)
        return r0.scale(inv), s0.scale(inv), t0.scale(inv)

    def inverse_mod(self, m: "ThetaPoly") -> "ThetaPoly":
        g, s, _ = self.xgcd(m)
        if not g.is_one():
            raise ZeroDivisionError(f"{self} is not invertible modulo {m}")
        return s % m

    def derivative(self) -> "ThetaPoly":
        p = self.field.p
        F = self.field
        out = []
        for i in range(1, len(self.c)):
            m = i % p
            out.append(F.mul(self.c[i], m) if m else 0)
        return ThetaPoly._raw(F, _trim(out))

    def frobenius(self, q: int | None = None) -> "ThetaPoly":
        """The ``q``-power map: coefficients raised to q, theta -> theta^q."""
        F = self.field
        q = F.q if q is None else q
        if not self.c:
            return self
        out = [0] * ((len(self.c) - 1) * q + 1)
        fixed = q % (F.q - 1) == 1 % (F.q - 1) if F.q > 2 else True
        for i, coef in enumerate(self.c):
            if coef:
                out[i * q] = coef if fixed else F.frobenius(coef, 1, q)
        return ThetaPoly._raw(F, out)

    def coefficient_frobenius(self, q: int) -> "ThetaPoly":
        """Apply x -> x^q to the coefficients only."""
        F = self.field
        return ThetaPoly._raw(F, [F.frobenius(x, 1, q) for x in self.c])

    def change_field(self, field: FieldDescriptor) -> "ThetaPoly":
        """Reinterpret over another field with the same characteristic.

        Valid for prime-field coefficients, whose codes agree in every
        extension.
        """
        if field == self.field:
            return self
        if field.p != self.field.p or any(x >= field.p for x in self.c):
            raise FieldMismatch("only prime-field coefficients can be transported")
        return ThetaPoly._raw(field, self.c)

    def valuation_at(self, P: "ThetaPoly") -> int:
        """Largest k with P^k dividing self (self nonzero)."""
        if not self.c:
            raise ZeroPolynomial("valuation of zero")
        k = 0
        f = self
        while True:
            qt, r = divmod(f, P)
            if r:
                return k
            f = qt
            k += 1


# --- enumeration ---------------------------------------------------------------


def monic_from_index(field: FieldDescriptor, d: int, idx: int) -> ThetaPoly:
    q = field.q
    coeffs = []
    for _ in range(d):
        idx, r = divmod(idx, q)
        coeffs.append(r)
    coeffs.append(1)
    return ThetaPoly._raw(field, tuple(coeffs))


def enumerate_monics(
    field: FieldDescriptor, d: int, skip_multiples_of: ThetaPoly | None = None
) -> Iterator[ThetaPoly]:
    """Every monic polynomial of degree ``d``, constant coefficient fastest."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    for idx in range(field.q**d):
        f = monic_from_index(field, d, idx)
        if skip_multiples_of is not None and not (f % skip_multiples_of):
            continue
        yield f


# --- irreducibility and factorization -------------------------------------------


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: ThetaPoly) -> bool:
    """Rabin's test."""
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    f = f.monic()
    Q = f.field.q
    x = ThetaPoly.theta(f.field)

    def frob_power(k):
        h = x
        for _ in range(k):
            h = h.pow_mod(Q, f)
        return h

    for r in _prime_factors(n):
        h = frob_power(n // r)
        if not (h - x).gcd(f).is_one():
            return False
    return (frob_power(n) - x) % f == ThetaPoly.zero(f.field)


def _pth_root(f: ThetaPoly) -> ThetaPoly:
    F = f.field
    p = F.p
    root_exp = F.q // p  # a -> a^(q/p) inverts the p-power map
    out = [F.pow(f.c[i], root_exp) if f.c[i] else 0 for i in range(0, len(f.c), p)]
    return ThetaPoly._raw(F, _trim(out))


def squarefree_decomposition(f: ThetaPoly) -> list[tuple[ThetaPoly, int]]:
    f = f.monic()
    p = f.field.p
    out: list[tuple[ThetaPoly, int]] = []
    fp = f.derivative()
    if fp:
        c = f.gcd(fp)
        w = f.exact_div(c)
        i = 1
        while not w.is_one():
            y = w.gcd(c)
            fac = w.exact_div(y)
            if fac.degree > 0:
                out.append((fac, i))
            i += 1
            w = y
            c = c.exact_div(y)
        if not c.is_one():
            for g, e in squarefree_decomposition(_pth_root(c)):
                out.append((g, e * p))
    elif f.degree > 0:
        for g, e in squarefree_decomposition(_pth_root(f)):
            out.append((g, e * p))
    return out


def distinct_degree(f: ThetaPoly) -> list[tuple[ThetaPoly, int]]:
    """Split a monic squarefree ``f`` into products of same-degree irreducibles."""
    Q = f.field.q
    x = ThetaPoly.theta(f.field)
    out = []
    h = x
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.pow_mod(Q, f)
        g = (h - x).gcd(f)
        if not g.is_one():
            out.append((g, d))
            f = f.exact_div(g)
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def equal_degree(f: ThetaPoly, d: int, rng: random.Random) -> list[ThetaPoly]:
    """Cantor-Zassenhaus splitting of a product of degree-``d`` irreducibles."""
    n = f.degree
    if n == d:
        return [f]
    F = f.field
    Q = F.q
    while True:
        a = ThetaPoly(F, [rng.randrange(Q) for _ in range(n)])
        if a.degree < 1:
            continue
        if Q % 2:
            b = a.pow_mod((Q**d - 1) // 2, f) - ThetaPoly.one(F)
        else:
            # absolute trace to F_2: a + a^2 + ... + a^(2^(k d - 1))
            b = a % f
            t = b
            for _ in range(F.k * d - 1):
                t = (t * t) % f
                b = b + t
        g = b.gcd(f)
        if 0 < g.degree < n:
            return equal_degree(g, d, rng) + equal_degree(f.exact_div(g), d, rng)


def _sort_key(f: ThetaPoly):
    return (f.degree, tuple(reversed(f.c)))


def poly_factorize(f: ThetaPoly, seed: int = 0) -> list[tuple[ThetaPoly, int]]:
    """Monic irreducible factors with multiplicities, in canonical order."""
    if not f:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    rng = random.Random(seed)
    acc: dict[ThetaPoly, int] = {}
    for sq, e in squarefree_decomposition(f):
        for g, d in distinct_degree(sq):
            for h in equal_degree(g, d, rng):
                acc[h] = acc.get(h, 0) + e
    return sorted(acc.items(), key=lambda kv: _sort_key(kv[0]))
