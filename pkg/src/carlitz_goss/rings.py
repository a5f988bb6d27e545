"""Supported rings of integers: A = F_q[theta] and O_L = F_{q^r}[theta].

Both are principal, of genus 0, with a single unramified place at infinity of
residue degree r.  Ideals are carried by their monic generator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator

from .algebra import FieldDescriptor, ThetaPoly, enumerate_monics, field_for_q, field_make
from .algebra.fields import is_prime
from .algebra.poly import is_irreducible, monic_from_index, poly_factorize
from .errors import NotIrreducible, ParseError, UnsupportedRing, ZeroIdeal


@dataclass(frozen=True)
class RingDescriptor:
    q: int
    r: int = 1
    base: FieldDescriptor = field(init=False, repr=False, compare=False)
    field_L: FieldDescriptor = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.r < 1:
            raise UnsupportedRing("r must be >= 1")
        base = field_for_q(self.q)
        if self.r > 1 and not is_prime(self.q):
            # codes of F_q inside F_{q^r} only agree with base codes for prime q
            raise UnsupportedRing("constant-field extensions need a prime q")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "field_L", field_make(base.p, base.k * self.r))

    @property
    def genus(self) -> int:
        return 0

    @property
    def degree_over_K(self) -> int:
        return self.r

    @property
    def is_real(self) -> bool:
        # v_inf(pi~) = -q/(q-1) is integral only for q = 2
        return self.q > 2

    @property
    def infinite_places(self) -> int:
        return 1

    def __str__(self):
        if self.r == 1:
            return f"A(q={self.q})"
        return f"Fq^r[t](q={self.q},r={self.r})"

    def ideal(self, gen) -> "IdealHandle":
        if isinstance(gen, str):
            gen = ThetaPoly.parse(gen, self.field_L)
        return IdealHandle(self, gen)

    def unit_ideal(self) -> "IdealHandle":
        return IdealHandle(self, ThetaPoly.one(self.field_L))


_RING_RE = re.compile(r"^\s*(A|Fq\^r\[t\]|F(\d+)\[t\])\s*(?:\((.*)\))?\s*$")


def parse_ring(text: str, q: int | None = None, r: int | None = None) -> RingDescriptor:
    """Parse "A", "A(q=3)", "Fq^r[t](r=2)", "Fq^r[t](q=3,r=2)" or "F9[t]".

    ``q`` and ``r`` fill in parameters absent from the string.
    """
    m = _RING_RE.match(text)
    if not m:
        raise ParseError(f"unrecognized ring {text!r}")
    params: dict[str, int] = {}
    if m.group(3):
        for part in m.group(3).split(","):
            if "=" not in part:
                raise ParseError(f"bad ring parameter {part!r}")
            k, v = part.split("=", 1)
            k = k.strip()
            if k not in ("q", "r"):
                raise ParseError(f"unknown ring parameter {k!r}")
            try:
                params[k] = int(v)
            except ValueError:
                raise ParseError(f"bad value for {k}: {v!r}") from None
    kind = m.group(1)
    qq = params.get("q", q)
    rr = params.get("r", r)
    if kind == "A":
        if rr not in (None, 1):
            raise ParseError("ring A has r = 1")
        rr = 1
    elif m.group(2):
        size = int(m.group(2))
        if qq is None:
            raise ParseError("F<size>[t] needs --q to identify the base field")
        rr, e = 0, 1
        while e < size:
            e *= qq
            rr += 1
        if e != size:
            raise ParseError(f"{size} is not a power of q={qq}")
    if qq is None:
        raise ParseError("q not given")
    if rr is None:
        raise ParseError("r not given")
    return RingDescriptor(qq, rr)


@dataclass(frozen=True)
class IdealHandle:
    ring: RingDescriptor
    gen: ThetaPoly

    def __post_init__(self):
        g = self.gen
        if g.field != self.ring.field_L:
            g = g.change_field(self.ring.field_L)
        if not g:
            raise ZeroIdeal("the zero ideal is not supported")
        object.__setattr__(self, "gen", g.monic())

    def __mul__(self, other: "IdealHandle") -> "IdealHandle":
        return IdealHandle(self.ring, self.gen * other.gen)

    def __str__(self):
        return str(self.gen)


def ideal_norm(I: IdealHandle) -> ThetaPoly:
    """n_{L/K}(I) = prod_j sigma^j(gen), sigma = q-power map on coefficients."""
    ring = I.ring
    acc = I.gen
    g = I.gen
    for _ in range(1, ring.r):
        g = g.coefficient_frobenius(ring.q)
        acc = acc * g
    return acc.change_field(ring.base)


def ideals_of_norm_degree(ring: RingDescriptor, m: int) -> Iterator[IdealHandle]:
    """Ideals whose norm has degree m, in a fixed order."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m % ring.r:
        return
    for g in enumerate_monics(ring.field_L, m // ring.r):
        yield IdealHandle(ring, g)


def count_ideals_of_norm_degree(ring: RingDescriptor, m: int) -> int:
    return 0 if m % ring.r else ring.field_L.q ** (m // ring.r)


def ideal_from_index(ring: RingDescriptor, m: int, idx: int) -> ThetaPoly:
    """Generator of the idx-th ideal in ideals_of_norm_degree(ring, m)."""
    return monic_from_index(ring.field_L, m // ring.r, idx)


@dataclass(frozen=True)
class PrimeAbove:
    ideal: IdealHandle
    f: int  # residual degree over A/P

    @property
    def norm(self) -> ThetaPoly:
        return ideal_norm(self.ideal)

    def __iter__(self):
        return iter((self.ideal, self.f))


def primes_above(ring: RingDescriptor, P: ThetaPoly, seed: int = 0) -> list[PrimeAbove]:
    """Primes of O_L dividing P O_L with their residual degrees."""
    if P.field != ring.base:
        P = P.change_field(ring.base)
    P = P.monic()
    if P.degree < 1 or not is_irreducible(P):
        raise NotIrreducible(f"{P} is not irreducible over F_{ring.q}")
    if ring.r == 1:
        return [PrimeAbove(IdealHandle(ring, P), 1)]
    out = []
    for g, e in poly_factorize(P.change_field(ring.field_L), seed=seed):
        assert e == 1, "constant-field extensions are unramified"
        h = IdealHandle(ring, g)
        n = ideal_norm(h)
        f = n.degree // P.degree
        assert n == P**f, "norm of a prime above P must be a power of P"
        out.append(PrimeAbove(h, f))
    assert sum(pa.f for pa in out) == ring.r
    return out


# --- residue fields ---------------------------------------------------------------


class ResidueField:
    """O_L / gen O_L in the monomial basis {u^j theta^k} over F_q.

    ``u`` is the canonical generator of F_{q^r} (only for r > 1).  For r = 1
    and prime q the quotient is also available as an exact FieldDescriptor
    whose codes match the basis ``theta^k`` (``descriptor``).
    """

    def __init__(self, ideal: IdealHandle):
        ring = ideal.ring
        gen = ideal.gen
        if gen.degree < 1 or not is_irreducible(gen):
            raise NotIrreducible(f"{gen} is not irreducible over F_{ring.field_L.q}")
        self.ring = ring
        self.gen = gen
        self.deg = gen.degree
        self.dim = ring.r * self.deg
        self.size = ring.q**self.dim
        base = ring.base
        if ring.r == 1 and base.k == 1:
            self.descriptor = field_make(base.p, self.deg, tuple(gen.c)) if self.deg > 1 else base
        else:
            self.descriptor = field_make(base.p, base.k * self.dim)

    def __repr__(self):
        return f"ResidueField({self.ring}, {self.gen})"

    def reduce(self, f: ThetaPoly) -> "ResidueElem":
        if f.field != self.ring.field_L:
            f = f.change_field(self.ring.field_L)
        return ResidueElem(self, f % self.gen)

    @property
    def theta_bar(self) -> "ResidueElem":
        return self.reduce(ThetaPoly.theta(self.ring.field_L))

    def zero(self):
        return ResidueElem(self, ThetaPoly.zero(self.ring.field_L))

    def one(self):
        return self.reduce(ThetaPoly.one(self.ring.field_L))

    def basis(self) -> list["ResidueElem"]:
        """u^j theta^k, j fastest."""
        FL = self.ring.field_L
        out = []
        for k in range(self.deg):
            for j in range(self.ring.r):
                code = FL.from_vec([1 if i == j else 0 for i in range(FL.k)]) if self.ring.r > 1 else 1
                out.append(ResidueElem(self, ThetaPoly.monomial(FL, k, code)))
        return out

    def to_vec(self, x: "ResidueElem") -> list[int]:
        """F_q-coordinates of x in ``basis()``."""
        FL = self.ring.field_L
        out = []
        for k in range(self.deg):
            c = x.value.coeff(k)
            if self.ring.r > 1:
                out.extend(FL.to_vec(c)[: self.ring.r])
            else:
                out.append(c)
        return out

    def from_vec(self, v) -> "ResidueElem":
        FL = self.ring.field_L
        r = self.ring.r
        coeffs = []
        for k in range(self.deg):
            chunk = v[k * r : (k + 1) * r]
            coeffs.append(FL.from_vec(chunk) if r > 1 else chunk[0])
        return ResidueElem(self, ThetaPoly(FL, coeffs))

    def elements(self) -> Iterator["ResidueElem"]:
        q = self.ring.q
        for idx in range(self.size):
            v = []
            for _ in range(self.dim):
                idx, c = divmod(idx, q)
                v.append(c)
            yield self.from_vec(v)

    def to_ff(self, x: "ResidueElem") -> int:
        """Code of x in ``descriptor`` (r = 1, prime q only)."""
        if self.ring.r != 1 or self.ring.base.k != 1:
            raise NotImplementedError("explicit codes need r = 1 and prime q")
        return sum(c * self.ring.q**k for k, c in enumerate(x.value.c))


class ResidueElem:
    __slots__ = ("rf", "value")

    def __init__(self, rf: ResidueField, value: ThetaPoly):
        self.rf = rf
        self.value = value

    def _other(self, other) -> ThetaPoly:
        if isinstance(other, ResidueElem):
            return other.value
        if isinstance(other, ThetaPoly):
            return self.rf.reduce(other).value
        if isinstance(other, int):
            return ThetaPoly.const(self.rf.ring.field_L, other % self.rf.ring.base.p)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return ResidueElem(self.rf, self.value + o)

    __radd__ = __add__

    def __neg__(self):
        return ResidueElem(self.rf, -self.value)

    def __sub__(self, other):
        o = self._other(other)
        return ResidueElem(self.rf, self.value - o)

    def __mul__(self, other):
        o = self._other(other)
        return ResidueElem(self.rf, (self.value * o) % self.rf.gen)

    __rmul__ = __mul__

    def frobenius(self, q: int | None = None) -> "ResidueElem":
        q = self.rf.ring.q if q is None else q
        return ResidueElem(self.rf, self.value.pow_mod(q, self.rf.gen))

    def is_zero(self) -> bool:
        return not self.value

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, ResidueElem):
            return self.rf.gen == other.rf.gen and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.rf.gen, self.value))

    def __repr__(self):
        return f"ResidueElem({self.value})"


def residue_field(P: IdealHandle) -> ResidueField:
    return ResidueField(P)
