"""Invariant factors of C(O_L/p) over A and of its z-deformation.

theta acts on the residue field O_L/p by x -> theta_bar x + x^q (deformed:
theta_bar x + z x^q).  Writing that F_q-linear map as a matrix T in the
monomial basis of the residue field, the A-module structure is read off the
Smith normal form of x I - T over F_q[x] (resp. F_q(z)[x]), with x renamed
theta at the end.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import FFElem, TatePoly, ThetaPoly
from .algebra.fields import FieldDescriptor
from .errors import NonCyclicUnexpected
from .rings import IdealHandle, ideal_norm, residue_field

# --- coefficient domains -------------------------------------------------------------


class RatFunc:
    """Element of F_q(z): num/den with den monic and gcd 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: ThetaPoly, den: ThetaPoly | None = None):
        F = num.field
        if den is None:
            den = ThetaPoly.one(F)
        if not num:
            self.num, self.den = num, ThetaPoly.one(F)
            return
        g = num.gcd(den)
        if not g.is_one():
            num, den = num // g, den // g
        lc = den.lead
        if lc != 1:
            inv = F.inv(lc)
            num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    @property
    def field(self) -> FieldDescriptor:
        return self.num.field

    def __add__(self, o: "RatFunc"):
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o: "RatFunc"):
        return RatFunc(self.num * o.num, self.den * o.den)

    def __truediv__(self, o: "RatFunc"):
        if not o.num:
            raise ZeroDivisionError("division by zero in F_q(z)")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, o):
        return isinstance(o, RatFunc) and self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        n = self.num.to_str("z")
        return n if self.den.is_one() else f"({n})/({self.den.to_str('z')})"


class KPoly:
    """Polynomial in x over a field K whose elements support + - * / and bool."""

    __slots__ = ("c", "zero", "one")

    def __init__(self, coeffs, zero, one):
        c = list(coeffs)
        while c and not c[-1]:
            c.pop()
        self.c = c
        self.zero = zero
        self.one = one

    def _new(self, c):
        return KPoly(c, self.zero, self.one)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def __bool__(self):
        return bool(self.c)

    def __add__(self, o):
        n = max(len(self.c), len(o.c))
        z = self.zero
        return self._new([(self.c[i] if i < len(self.c) else z) + (o.c[i] if i < len(o.c) else z) for i in range(n)])

    def __neg__(self):
        return self._new([-a for a in self.c])

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if not self.c or not o.c:
            return self._new([])
        out = [self.zero] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(o.c):
                if b:
                    out[i + j] = out[i + j] + a * b
        return self._new(out)

    def __divmod__(self, o):
        if not o.c:
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.c)
        dq = len(r) - len(o.c)
        if dq < 0:
            return self._new([]), self
        qt = [self.zero] * (dq + 1)
        inv = self.one / o.c[-1]
        for k in range(dq, -1, -1):
            coef = r[k + len(o.c) - 1] * inv
            qt[k] = coef
            if coef:
                for j, b in enumerate(o.c):
                    r[k + j] = r[k + j] - coef * b
        return self._new(qt), self._new(r[: len(o.c) - 1])

    def monic(self):
        if not self.c:
            return self
        inv = self.one / self.c[-1]
        return self._new([a * inv for a in self.c])

    def is_unit(self) -> bool:
        return len(self.c) == 1


# --- Smith normal form ----------------------------------------------------------------


@dataclass(frozen=True)
class InvariantFactors:
    """Diagonal of the Smith form, monic, in divisibility order.

    Undeformed factors are ThetaPoly; deformed factors are TatePoly whose
    z^m coefficient is a ThetaPoly in theta (= x).
    """

    factors: tuple
    deformed: bool = False

    @property
    def nontrivial(self) -> tuple:
        if self.deformed:
            return tuple(f for f in self.factors if f.zdegree > 0 or any(c is not None and c.degree > 0 for c in f.coeffs))
        return tuple(f for f in self.factors if f.degree != 0)

    @property
    def is_cyclic(self) -> bool:
        return len(self.nontrivial) <= 1

    @property
    def fitting(self):
        if self.deformed:
            zmax = sum(f.zmax for f in self.factors)
            acc = None
            for f in self.factors:
                f = TatePoly(f.coeffs, zmax)
                acc = f if acc is None else acc * f
            return acc
        acc = None
        for f in self.factors:
            acc = f if acc is None else acc * f
        return acc


def snf_polyring(matrix: list[list[KPoly]]) -> list[KPoly]:
    """Smith normal form diagonal over K[x], monic, divisibility ordered.

    Pivot: entry of least degree in the remaining block, ties broken by
    row-major position.
    """
    A = [list(row) for row in matrix]
    n, m = len(A), len(A[0]) if A else 0
    diag = []
    for t in range(min(n, m)):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, m):
                    if A[i][j] and (best is None or A[i][j].degree < best[0]):
                        best = (A[i][j].degree, i, j)
            if best is None:
                break
            _, i, j = best
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
            piv = A[t][t]
            dirty = False
            for i in range(t + 1, n):
                if A[i][t]:
                    qt, r = divmod(A[i][t], piv)
                    A[i] = [a - qt * b for a, b in zip(A[i], A[t])]
                    dirty = dirty or bool(r)
            for j in range(t + 1, m):
                if A[t][j]:
                    qt, r = divmod(A[t][j], piv)
                    for i in range(n):
                        A[i][j] = A[i][j] - qt * A[i][t]
                    dirty = dirty or bool(r)
            if dirty:
                continue
            bad = None
            for i in range(t + 1, n):
                for j in range(t + 1, m):
                    if A[i][j] and divmod(A[i][j], piv)[1]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
        diag.append(A[t][t])
    return [d.monic() if d else d for d in diag]


# --- action matrices -------------------------------------------------------------------


@dataclass(frozen=True)
class ActionMatrix:
    """theta_bar-multiplication and q-power Frobenius on O_L/p, over F_q.

    Column j is the image of basis vector j.
    """

    dim: int
    base: tuple
    frob: tuple
    deformed: bool
    field: FieldDescriptor
    ideal: IdealHandle

    def combined(self) -> list[list[int]]:
        """Matrix of C_theta = theta_bar + tau (undeformed)."""
        F = self.field
        return [[F.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.base, self.frob)]

    def columns(self) -> list[list[int]]:
        return [list(col) for col in zip(*self.combined())]


def action_matrix(P: IdealHandle, deformed: bool = False) -> ActionMatrix:
    rf = residue_field(P)
    basis = rf.basis()
    q = P.ring.q
    tb = rf.theta_bar
    base_cols = [rf.to_vec(tb * b) for b in basis]
    frob_cols = [rf.to_vec(b.frobenius(q)) for b in basis]
    dim = len(basis)
    base = tuple(tuple(base_cols[j][i] for j in range(dim)) for i in range(dim))
    frob = tuple(tuple(frob_cols[j][i] for j in range(dim)) for i in range(dim))
    return ActionMatrix(dim, base, frob, deformed, P.ring.base, P)


def _fq_matrix(M: ActionMatrix) -> list[list[KPoly]]:
    F = M.field
    zero, one = FFElem(F, 0), FFElem(F, 1)
    T = M.combined()
    out = []
    for i in range(M.dim):
        row = []
        for j in range(M.dim):
            c = [FFElem(F, F.neg(T[i][j]))]
            if i == j:
                c.append(one)
            row.append(KPoly(c, zero, one))
        out.append(row)
    return out


def _ratz_matrix(M: ActionMatrix) -> list[list[KPoly]]:
    F = M.field
    zero = RatFunc(ThetaPoly.zero(F))
    one = RatFunc(ThetaPoly.one(F))
    out = []
    for i in range(M.dim):
        row = []
        for j in range(M.dim):
            # -(b + z f) as a polynomial in z
            const = RatFunc(ThetaPoly(F, [F.neg(M.base[i][j]), F.neg(M.frob[i][j])]))
            c = [const]
            if i == j:
                c.append(one)
            row.append(KPoly(c, zero, one))
        out.append(row)
    return out


def _fq_to_theta(f: KPoly, F) -> ThetaPoly:
    return ThetaPoly(F, [a.value for a in f.c])


def _ratz_to_tate(f: KPoly, F) -> TatePoly:
    """sum_k c_k(z) x^k with c_k in F_q[z] -> TatePoly in z with theta-coefficients."""
    for a in f.c:
        if not a.den.is_one():
            raise NonCyclicUnexpected(f"factor has a non-polynomial coefficient {a!r}")
    zdeg = max((a.num.degree for a in f.c if a), default=0)
    coeffs = []
    for mz in range(zdeg + 1):
        poly = ThetaPoly(F, [a.num.coeff(mz) if a else 0 for a in f.c])
        coeffs.append(poly if poly else None)
    return TatePoly(coeffs, max(zdeg, 0))


def invariant_factors_A(M: ActionMatrix) -> InvariantFactors:
    F = M.field
    diag = snf_polyring(_fq_matrix(M))
    return InvariantFactors(tuple(_fq_to_theta(d, F) for d in diag), deformed=False)


def invariant_factors_deformed(M: ActionMatrix, check: bool = True) -> InvariantFactors:
    F = M.field
    diag = snf_polyring(_ratz_matrix(M))
    out = InvariantFactors(tuple(_ratz_to_tate(d, F) for d in diag), deformed=True)
    if check:
        if not out.is_cyclic:
            raise NonCyclicUnexpected(f"deformed module at {M.ideal} is not cyclic")
        expected = deformed_norm_generator(M.ideal)
        got = out.fitting
        if not _tate_equal(got, expected):
            raise NonCyclicUnexpected(f"Fitting generator {got} differs from n(p) - z^deg")
    return out


def _tate_equal(a: TatePoly, b: TatePoly) -> bool:
    n = max(a.zmax, b.zmax)
    for m in range(n + 1):
        x, y = a[m], b[m]
        x = x if x is not None and x else None
        y = y if y is not None and y else None
        if x != y:
            return False
    return True


def norm_minus_one(P: IdealHandle) -> ThetaPoly:
    """n(p) - 1, the expected Fitting generator of C(O_L/p)."""
    n = ideal_norm(P)
    return n - ThetaPoly.one(n.field)


def deformed_norm_generator(P: IdealHandle) -> TatePoly:
    """n(p) - z^{deg n(p)} as an element of A[z]."""
    n = ideal_norm(P)
    D = n.degree
    F = n.field
    coeffs = [n] + [None] * (D - 1) + [ThetaPoly.const(F, F.neg(1))]
    return TatePoly(coeffs, D)


def specialize_z1(T: TatePoly) -> ThetaPoly:
    v = T.at_one()
    return v


def fitting_of(P: IdealHandle, deformed: bool = False):
    M = action_matrix(P, deformed)
    inv = invariant_factors_deformed(M) if deformed else invariant_factors_A(M)
    return inv.fitting
