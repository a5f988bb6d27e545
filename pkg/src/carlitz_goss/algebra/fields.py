"""Finite fields F_{p^k} with an explicit modulus.

Elements are encoded as integers in ``range(p**k)``: the coordinate vector
``(c_0, ..., c_{k-1})`` with respect to powers of the generator ``u`` maps to
``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``.  Prime-field elements are therefore
the integers ``0..p-1`` in every extension, which makes the inclusion
F_p -> F_{p^k} the identity on codes.

Arithmetic goes through precomputed tables for small fields; larger ones fall
back to polynomial arithmetic modulo the defining polynomial.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from ..errors import FieldMismatch, NonPrimeCharacteristic, ReducibleModulus

_TABLE_LIMIT = 729


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# --- dense polynomials over F_p as int tuples (lowest degree first) ---------


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _fp_polymod(a, m, p):
    a = _trim(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mi) % p
        a = _trim(a)
    return a


def _fp_is_irreducible(m, p) -> bool:
    k = len(m) - 1
    if k <= 0:
        return False
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            cand = list(tail) + [1]
            if not _fp_polymod(m, cand, p):
                return False
    return True


def canonical_modulus(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree ``k`` over F_p.

    Candidates are scanned in the same order as ``enumerate_monics``: the
    constant coefficient varies fastest.
    """
    if k == 1:
        return (0, 1)
    for idx in range(p**k):
        tail = [(idx // p**j) % p for j in range(k)]
        cand = tuple(tail) + (1,)
        if _fp_is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldDescriptor:
    """The finite field F_{p^k} = F_p[u]/(modulus)."""

    __slots__ = ("p", "k", "modulus", "q", "_add", "_mul", "_inv", "__weakref__")

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.modulus = modulus
        self.q = p**k
        self._add = None
        self._mul = None
        self._inv = None
        if self.q <= _TABLE_LIMIT:
            self._build_tables()

    def __reduce__(self):
        return (field_make, (self.p, self.k, self.modulus))

    def __eq__(self, other):
        return (
            isinstance(other, FieldDescriptor)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"F_{self.p}"
        return f"F_{self.q}[{self.modulus_str()}]"

    def modulus_str(self) -> str:
        from .literals import format_coeff_vector

        return format_coeff_vector(self.modulus, "u")

    # -- encoding -----------------------------------------------------------

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    def to_vec(self, a: int) -> tuple[int, ...]:
        p = self.p
        return tuple((a // p**j) % p for j in range(self.k))

    def from_vec(self, v) -> int:
        p = self.p
        v = _fp_polymod([int(c) % p for c in v], list(self.modulus), p) if len(v) > self.k else v
        out = 0
        for j, c in enumerate(v):
            out += (int(c) % p) * p**j
        return out

    def generator(self) -> int:
        """Code of ``u`` (equals 0 in a prime field, where u is a root of X)."""
        if self.k == 1:
            return 0
        return self.p

    # -- slow-path arithmetic ---------------------------------------------

    def _add_slow(self, a, b):
        p = self.p
        va, vb = self.to_vec(a), self.to_vec(b)
        return self.from_vec([(x + y) % p for x, y in zip(va, vb)])

    def _mul_slow(self, a, b):
        p = self.p
        va, vb = self.to_vec(a), self.to_vec(b)
        prod = [0] * (2 * self.k)
        for i, x in enumerate(va):
            if x:
                for j, y in enumerate(vb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        red = _fp_polymod(prod, list(self.modulus), p)
        return self.from_vec(red + [0] * (self.k - len(red)))

    def _build_tables(self):
        q = self.q
        if self.k == 1:
            p = self.p
            self._add = [[(a + b) % p for b in range(q)] for a in range(q)]
            self._mul = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            self._add = [[self._add_slow(a, b) for b in range(q)] for a in range(q)]
            self._mul = [[self._mul_slow(a, b) for b in range(q)] for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            row = self._mul[a]
            for b in range(1, q):
                if row[b] == 1:
                    inv[a] = b
                    break
        self._inv = inv

    # -- public arithmetic ---------------------------------------------------

    @property
    def add_table(self):
        return self._add

    @property
    def mul_table(self):
        return self._mul

    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return self._add[a][b]
        return self._add_slow(a, b)

    def neg(self, a: int) -> int:
        p = self.p
        if self.k == 1:
            return (-a) % p
        return self.from_vec([(-c) % p for c in self.to_vec(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul is not None:
            return self._mul[a][b]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        if self._inv is not None:
            return self._inv[a]
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def frobenius(self, a: int, e: int = 1, base_q: int | None = None) -> int:
        """``a ** (base_q ** e)``; ``base_q`` defaults to p."""
        base_q = self.p if base_q is None else base_q
        exp = pow(base_q, e, self.q - 1) if self.q > 2 else 1
        if a == 0:
            return 0
        if exp == 0:
            exp = self.q - 1
        return self.pow(a, exp)

    def elements(self):
        return range(self.q)

    def check_same(self, other: "FieldDescriptor"):
        if self != other:
            raise FieldMismatch(f"{self!r} vs {other!r}")


@functools.lru_cache(maxsize=None)
def _field_cached(p: int, k: int, modulus: tuple[int, ...]) -> FieldDescriptor:
    return FieldDescriptor(p, k, modulus)


def field_make(p: int, k: int = 1, modulus=None) -> FieldDescriptor:
    """Build (or fetch) the descriptor of F_{p^k}.

    ``modulus`` may be a coefficient sequence (lowest degree first) or a
    literal such as ``"u^2+1"``; when omitted the canonical modulus is used.
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if modulus is None:
        modulus = canonical_modulus(p, k)
    else:
        if isinstance(modulus, str):
            from .literals import parse_prime_poly

            modulus = parse_prime_poly(modulus, p, var="u")
        modulus = tuple(int(c) % p for c in modulus)
        modulus = tuple(_trim(modulus))
        if len(modulus) - 1 != k or modulus[-1] != 1:
            raise ReducibleModulus(f"modulus must be monic of degree {k}")
        if k > 1 and not _fp_is_irreducible(modulus, p):
            raise ReducibleModulus(f"modulus {modulus} is reducible over F_{p}")
    return _field_cached(p, k, tuple(modulus))


def field_for_q(q: int) -> FieldDescriptor:
    """Canonical F_q for a prime power ``q``."""
    for p in range(2, q + 1):
        if q % p == 0:
            break
    k = 0
    n = q
    while n % p == 0:
        n //= p
        k += 1
    if n != 1 or not is_prime(p):
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    return field_make(p, k)


@dataclass(frozen=True)
class FFElem:
    """User-facing finite field element."""

    field: FieldDescriptor
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.to_vec(self.value)

    @classmethod
    def from_coeffs(cls, field, coeffs):
        if len(coeffs) != field.k:
            raise ValueError(f"need exactly {field.k} coordinates")
        return cls(field, field.from_vec(coeffs))

    def _other(self, other):
        if isinstance(other, int):
            return other % self.field.p
        self.field.check_same(other.field)
        return other.value

    def __add__(self, other):
        return FFElem(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FFElem(self.field, self.field.sub(self.value, self._other(other)))

    def __neg__(self):
        return FFElem(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return FFElem(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FFElem(self.field, self.field.mul(self.value, self.field.inv(self._other(other))))

    def __pow__(self, e: int):
        return FFElem(self.field, self.field.pow(self.value, e))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        from .literals import format_ff

        return format_ff(self.field, self.value)


def ff_frobenius(x: FFElem, e: int, base_q: int) -> FFElem:
    return FFElem(x.field, x.field.frobenius(x.value, e, base_q))
