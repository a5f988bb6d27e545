"""Class-formula verifiers, regulators and unit-module diagnostics."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any

from .algebra import LaurentSeries, PAdicElem, TatePoly, ThetaPoly, field_for_q
from .carlitz import (
    carlitz_action,
    carlitz_period,
    exp_z,
    iwasawa_log,
    log_inf,
    log_z,
    carlitz_L,
)
from .errors import (
    NotInUnitImage,
    NotReal,
    ResidualTooLarge,
    SingularToPrec,
    WrongCharacteristic,
)
from .modstruct import action_matrix, invariant_factors_A
from .rings import RingDescriptor, primes_above
from .zeta import InfMode, ZetaConfig, power_sums, zeta_inf, zeta_padic


@dataclass(frozen=True)
class UnitBasis:
    ring: RingDescriptor
    elements: tuple
    provenance: str = "user"

    def __post_init__(self):
        if len(self.elements) != self.ring.r:
            raise ValueError(f"a unit basis of O_L has {self.ring.r} elements, got {len(self.elements)}")
        FL = self.ring.field_L
        els = tuple(
            ThetaPoly.parse(e, FL) if isinstance(e, str) else (e if e.field == FL else e.change_field(FL))
            for e in self.elements
        )
        object.__setattr__(self, "elements", els)

    @classmethod
    def auto(cls, ring: RingDescriptor) -> "UnitBasis":
        """{1} for A, which generates U(A) (a torsion module when q = 2)."""
        if ring.r != 1:
            raise ValueError("no built-in unit basis for r > 1; pass one explicitly")
        return cls(ring, (ThetaPoly.one(ring.field_L),), "auto")


@dataclass
class VerificationReport:
    identity: str
    params: dict
    left: Any
    right: Any
    precision: str
    passed: bool
    residual_unit: str | None = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "identity": self.identity,
            "params": self.params,
            "pass": self.passed,
            "precision": self.precision,
        }
        if self.residual_unit is not None:
            out["residual_unit"] = self.residual_unit
        out["left"] = _render(self.left)
        out["right"] = _render(self.right)
        if self.details:
            out["details"] = self.details
        return out


def _render(x) -> str:
    if x is None:
        return "none"
    return str(x)


# --- infinite-adic identities ---------------------------------------------------------


def verify_taelman_K(q: int, prec: int, config: ZetaConfig | None = None) -> VerificationReport:
    """zeta_A(1) by ideal summation against Log_C(1) = sum 1/L_i."""
    ring = RingDescriptor(q)
    left = zeta_inf(ring, 1, prec, config).payload
    right = log_inf(LaurentSeries.one(ring.base, prec))
    ok = left.equals_to(right, prec)
    return VerificationReport(
        "taelman_K", {"q": q, "prec": prec}, left, right, f"t^-{prec}", ok
    )


def deformed_coefficient_exact(q: int, m: int) -> bool:
    """sum_{a monic, deg m} 1/a == 1/L_m, checked over a common denominator."""
    F = field_for_q(q)
    from .algebra import enumerate_monics

    monics = list(enumerate_monics(F, m))
    den = ThetaPoly.one(F)
    for a in monics:
        den = den * a // den.gcd(a)
    num = ThetaPoly.zero(F)
    for a in monics:
        num = num + den.exact_div(a)
    return num * carlitz_L(F, m) == den


def verify_deformed_K(q: int, zmax: int = 5, prec: int = 30, config: ZetaConfig | None = None) -> VerificationReport:
    """Z_A(1; z) = Log_{C~}(1): z^m coefficients U_m(1) against 1/L_m."""
    ring = RingDescriptor(q)
    F = ring.base
    exact = {m: deformed_coefficient_exact(q, m) for m in range(zmax + 1)}
    U = power_sums(ring, 1, range(zmax + 1), InfMode(prec), config)
    logz = log_z(TatePoly.constant(LaurentSeries.one(F, prec), zmax), q)
    series_ok = {}
    for m in range(zmax + 1):
        c = logz[m]
        if c is None:
            c = LaurentSeries.zero(F, prec)
        series_ok[m] = U[m].equals_to(c, prec)
    ok = all(exact.values()) and all(series_ok.values())
    left = TatePoly([U[m] for m in range(zmax + 1)], zmax)
    return VerificationReport(
        "deformed_K",
        {"q": q, "zmax": zmax, "prec": prec},
        left,
        logz,
        f"exact; series t^-{prec}",
        ok,
        details={"exact_by_degree": {str(m): v for m, v in exact.items()}},
    )


def verify_period_q2(prec: int, q: int = 2) -> VerificationReport:
    """pi~ = (theta^2 + theta) Log_C(1) in K_inf for q = 2."""
    if q != 2:
        raise WrongCharacteristic("the period identity is rational only for q = 2")
    F = field_for_q(2)
    left = carlitz_period(2, prec + 2).full.truncate(prec)
    lg = log_inf(LaurentSeries.one(F, prec + 2))
    right = (lg * ThetaPoly.parse("t^2+t", F)).truncate(prec)
    ok = left.equals_to(right, prec) and left.order == -2 and left.sgn == 1 and right.sgn == 1
    return VerificationReport("period_q2", {"prec": prec}, left, right, f"t^-{prec}", ok)


# --- P-adic identities ----------------------------------------------------------------


def _residual_unit(ratio: PAdicElem) -> tuple[bool, str | None]:
    """Is ratio a constant of F_q^x to its precision?  Returns (flag, unit)."""
    if ratio.is_zero() or ratio.val != 0:
        return False, None
    F = ratio.P.field
    u = ratio.unit
    c = u % ratio.P
    if c.degree != 0:
        return False, str(u)
    const = c.coeff(0)
    diff = ratio - ThetaPoly.const(F, const)
    if diff.is_zero() or diff.val >= ratio.abs_prec:
        return True, str(const)
    return False, str(u)


def verify_padic_K(q: int, P: ThetaPoly | str, s: int, config: ZetaConfig | None = None) -> VerificationReport:
    """zeta_{P,A}(1) = (1 - 1/P) Log_C^{Iw}(1)."""
    ring = RingDescriptor(q)
    F = ring.base
    if isinstance(P, str):
        P = ThetaPoly.parse(P, F)
    P = P.monic()
    zv = zeta_padic(ring, 1, P, s, config)
    left = zv.payload
    N = zv.certificate["precision"]
    one = PAdicElem.from_poly(ThetaPoly.one(F), P, abs_prec=N + 1)
    lg = iwasawa_log(one)
    right = (lg * (P - ThetaPoly.one(F))).mul_P_power(-1)
    top = min(left.abs_prec, right.abs_prec)
    diff = left - right
    ok = diff.is_zero() or diff.val >= top
    return VerificationReport(
        "padic_K",
        {"q": q, "P": str(P), "s": s},
        left,
        right,
        f"P^{top}",
        ok,
        details={"cutoff_D": zv.certificate.get("cutoff_D"), "certified": N},
    )


def _split_padic(x: PAdicElem, ring: RingDescriptor) -> list[PAdicElem]:
    """Coordinates of x in O_L (x) A_P = sum_j u^j A_P."""
    base = ring.base
    P = x.P
    if ring.r == 1:
        return [x if x.field == base else x.change_field(base)]
    FL = ring.field_L
    top = x.abs_prec
    if x.is_zero():
        return [PAdicElem.zero(P, top) for _ in range(ring.r)]
    if x.val < 0:
        raise ValueError("coordinates are taken of integral elements only")
    f = x.to_poly()
    comps = [[] for _ in range(ring.r)]
    for c in f.c:
        v = FL.to_vec(c)
        for j in range(ring.r):
            comps[j].append(v[j])
    return [PAdicElem.from_poly(ThetaPoly(base, cj), P, abs_prec=top) for cj in comps]


def log_matrix(basis: UnitBasis, P: ThetaPoly, N: int) -> list[list[PAdicElem]]:
    """Row i: coordinates of the Iwasawa logarithm of basis element i."""
    ring = basis.ring
    rows = []
    for a in basis.elements:
        x = PAdicElem.from_poly(a, P, abs_prec=N)
        rows.append(_split_padic(iwasawa_log(x), ring))
    return rows


def _det(M: list[list[Any]]):
    n = len(M)
    acc = None
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = None
        for i, j in enumerate(perm):
            term = M[i][j] if term is None else term * M[i][j]
        if sign < 0:
            term = -term
        acc = term if acc is None else acc + term
    return acc


@dataclass
class Regulator:
    value: PAdicElem
    unit: int  # the F_q^x factor divided out

    def __str__(self):
        return str(self.value)


def regulator_padic(basis: UnitBasis, P: ThetaPoly | str, N: int) -> Regulator:
    """R_{P,L} = det of Iwasawa logs of the unit basis, modulo F_q^x."""
    ring = basis.ring
    if not ring.is_real:
        raise NotReal(f"{ring} is not real; the P-adic regulator is not defined")
    F = ring.base
    if isinstance(P, str):
        P = ThetaPoly.parse(P, F)
    P = P.monic()
    d = _det(log_matrix(basis, P, N))
    if d.is_zero():
        raise SingularToPrec(f"regulator vanishes modulo P^{d.abs_prec}")
    lead = (d.unit % P).lead
    inv = F.inv(lead)
    return Regulator(d * ThetaPoly.const(F, inv), lead)


def fitting_C_mod_P(ring: RingDescriptor, P: ThetaPoly) -> ThetaPoly:
    """[C(O_L/P O_L)]_A as the product over primes above P."""
    acc = ThetaPoly.one(ring.base)
    for pa in primes_above(ring, P):
        inv = invariant_factors_A(action_matrix(pa.ideal))
        acc = acc * inv.fitting
    return acc


def check_theorem4(
    ring: RingDescriptor,
    basis: UnitBasis,
    H_fitting: ThetaPoly | str | None,
    P: ThetaPoly | str,
    s: int,
    config: ZetaConfig | None = None,
) -> VerificationReport:
    """zeta_{P,O_L}(1) = [H]_A [C(O_L/P)]_A / [O_L/P]_A R_{P,L}, modulo F_q^x."""
    if not ring.is_real:
        raise NotReal(f"{ring} is not real")
    F = ring.base
    if isinstance(P, str):
        P = ThetaPoly.parse(P, F)
    P = P.monic()
    if H_fitting is None:
        if ring.r != 1:
            raise ValueError("[H(O_L)]_A must be supplied for r > 1")
        H_fitting = ThetaPoly.one(F)
    elif isinstance(H_fitting, str):
        H_fitting = ThetaPoly.parse(H_fitting, F)
    zv = zeta_padic(ring, 1, P, s, config)
    left = zv.payload
    N = zv.certificate["precision"]
    reg = regulator_padic(basis, P, N + ring.r + 1)
    fit = fitting_C_mod_P(ring, P)
    right = (reg.value * (H_fitting * fit)).mul_P_power(-ring.r)
    params = {"ring": str(ring), "P": str(P), "s": s, "basis": [str(e) for e in basis.elements], "H": str(H_fitting)}
    if right.is_zero():
        return VerificationReport("theorem4", params, left, right, f"P^{right.abs_prec}", False, None)
    ratio = left / right
    ok, unit = _residual_unit(ratio)
    prec = min(left.abs_prec, right.abs_prec)
    return VerificationReport(
        "theorem4",
        params,
        left,
        right,
        f"P^{prec}",
        ok,
        unit,
        details={"C_mod_P": str(fit), "regulator_unit": str(reg.unit), "ratio": str(ratio)},
    )


# --- beta extraction ----------------------------------------------------------------------


def _split_laurent(x: LaurentSeries, ring: RingDescriptor) -> list[LaurentSeries]:
    base = ring.base
    if ring.r == 1:
        return [x]
    FL = ring.field_L
    vecs = [FL.to_vec(c) for c in x.coeffs]
    return [
        LaurentSeries(base, x.order, x.prec, [v[j] for v in vecs]) if x.coeffs else LaurentSeries.zero(base, x.prec)
        for j in range(ring.r)
    ]


@dataclass
class StarkResult:
    beta: TatePoly  # ThetaPoly coefficients
    unit: int
    precision: int

    def __str__(self):
        from .zeta import tate_to_str

        return tate_to_str(self.beta)


def _as_laurent_tate(x: TatePoly, field_L, prec: int) -> TatePoly:
    def conv(c):
        if isinstance(c, ThetaPoly):
            c = c if c.field == field_L else c.change_field(field_L)
            return LaurentSeries.from_poly(c, prec) if c else LaurentSeries.zero(field_L, prec)
        return c

    return x.map(conv)


def stark_beta(ring: RingDescriptor, units_z: list[TatePoly], prec: int, zmax: int, config: ZetaConfig | None = None) -> StarkResult:
    """beta in A[z] with det(M) = beta Z_{O_L}(1; z), M the matrix of log_z(units)."""
    if len(units_z) != ring.r:
        raise ValueError(f"need {ring.r} elements")
    q = ring.q
    F = ring.base
    logs = []
    for a in units_z:
        a = _as_laurent_tate(TatePoly(a.coeffs, zmax), ring.field_L, prec)
        la = log_z(a, q)
        vals = [c.order if c is not None and not c.is_zero() else None for c in la.coeffs]
        known = [(m, v) for m, v in enumerate(vals) if v is not None]
        if len(known) >= 2 and known[-1][1] < known[-2][1]:
            raise NotInUnitImage("log_z coefficients do not tend to 0; element is not a unit")
        logs.append(la)
    # matrix entries: TatePolys with F_q Laurent coefficients
    M = []
    for la in logs:
        comps = [[None] * (zmax + 1) for _ in range(ring.r)]
        for m, c in enumerate(la.coeffs):
            if c is None:
                continue
            for j, part in enumerate(_split_laurent(c, ring)):
                comps[j][m] = part
        M.append([TatePoly(cj, zmax) for cj in comps])
    det = _det(M)
    U = power_sums(ring, 1, range(zmax + 1), InfMode(prec), config)
    beta = []
    for m in range(zmax + 1):
        acc = det[m] if det[m] is not None else LaurentSeries.zero(F, prec)
        for k in range(1, m + 1):
            if beta[m - k] is not None:
                acc = acc - U[k] * beta[m - k]
        beta.append(acc)
    work = min(b.prec for b in beta)
    out = []
    for m, b in enumerate(beta):
        if work < 1:
            raise ResidualTooLarge("precision exhausted before the polynomial part is determined")
        poly = b.truncate(work).polynomial_part()
        resid = b.truncate(work) - LaurentSeries.from_poly(poly, work) if poly else b.truncate(work)
        if not resid.is_zero():
            raise ResidualTooLarge(f"z^{m} coefficient {b} is not in A to precision {work}")
        out.append(poly if poly else None)
    unit = 1
    c0 = next((c for c in out if c is not None), None)
    if c0 is not None and c0.lead != 1:
        unit = c0.lead
        inv = F.inv(unit)
        out = [None if c is None else c.scale(inv) for c in out]
    return StarkResult(TatePoly(out, zmax), unit, work)


def stark_input(q: int, b: ThetaPoly, prec: int, zmax: int) -> TatePoly:
    """exp_{C~}(b Log_{C~}(1)) computed through the series."""
    F = field_for_q(q)
    extra = max(b.degree, 0) + 2
    lz = log_z(TatePoly.constant(LaurentSeries.one(F, prec + extra), zmax), q)
    return exp_z(lz * b, q)


# --- unit-module diagnostics --------------------------------------------------------------


def is_torsion(x: ThetaPoly, bound: int, q: int | None = None) -> ThetaPoly | None:
    """Minimal monic a with deg a <= bound and C_a(x) = 0, or None.

    The zero element is annihilated by the unit ideal, reported as 1.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    FL = x.field
    q = FL.q if q is None else q
    base = field_for_q(q)
    if not x:
        return ThetaPoly.one(base)

    def coords(f: ThetaPoly) -> dict:
        out = {}
        for i, c in enumerate(f.c):
            if not c:
                continue
            if FL == base:
                out[(i, 0)] = c
            else:
                for j, v in enumerate(FL.to_vec(c)):
                    if v:
                        out[(i, j)] = v
        return out

    # echelon rows: pivot -> (vector, combination of orbit indices)
    pivots: dict = {}
    theta = ThetaPoly.theta(base)
    v = x
    for k in range(bound + 1):
        vec = coords(v)
        comb = {k: 1}
        while vec:
            piv = max(vec)
            if piv not in pivots:
                break
            pv, pc = pivots[piv]
            f = base.mul(vec[piv], base.inv(pv[piv]))
            for key, val in pv.items():
                nv = base.sub(vec.get(key, 0), base.mul(f, val))
                if nv:
                    vec[key] = nv
                else:
                    vec.pop(key, None)
            for key, val in pc.items():
                nv = base.sub(comb.get(key, 0), base.mul(f, val))
                if nv:
                    comb[key] = nv
                else:
                    comb.pop(key, None)
        if not vec:
            lead = comb[k]
            inv = base.inv(lead)
            return ThetaPoly(base, [base.mul(comb.get(i, 0), inv) for i in range(k + 1)])
        pivots[max(vec)] = (vec, comb)
        if k < bound:
            v = carlitz_action(theta, v)
    return None


@dataclass
class LeopoldtReport:
    rank_A: int
    rank_lower_bound: int
    defect_upper_bound: int
    certified_zero: bool
    precision: int
    pivot_valuations: list

    def to_json(self) -> dict:
        return {
            "rank_A": self.rank_A,
            "rank_lower_bound": self.rank_lower_bound,
            "defect_upper_bound": self.defect_upper_bound,
            "certified_zero": self.certified_zero,
            "precision": f"P^{self.precision}",
            "pivot_valuations": self.pivot_valuations,
        }


def _padic_snf_pivots(M: list[list[PAdicElem]]) -> list[int]:
    """Valuations of Smith pivots over the DVR A_P (min-valuation pivoting)."""
    A = [list(r) for r in M]
    n = len(A)
    m = len(A[0]) if A else 0
    out = []
    for t in range(min(n, m)):
        best = None
        for i in range(t, n):
            for j in range(t, m):
                e = A[i][j]
                if not e.is_zero() and (best is None or e.val < best[0]):
                    best = (e.val, i, j)
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        piv = A[t][t]
        out.append(piv.val)
        pinv = piv.inv()
        for i in range(t + 1, n):
            if not A[i][t].is_zero():
                f = A[i][t] * pinv
                A[i] = [a - f * b for a, b in zip(A[i], A[t])]
    return out


def leopoldt_defect(basis: UnitBasis, P: ThetaPoly | str, N: int, torsion_bound: int = 6) -> LeopoldtReport:
    """One-sided certificate: rank of the P-adic closure of U(O_L) is >= k."""
    ring = basis.ring
    F = ring.base
    if isinstance(P, str):
        P = ThetaPoly.parse(P, F)
    P = P.monic()
    free = [a for a in basis.elements if is_torsion(a, torsion_bound, ring.q) is None]
    rank_A = len(free)
    if rank_A == 0:
        return LeopoldtReport(0, 0, 0, True, N, [])
    M = []
    for a in free:
        x = PAdicElem.from_poly(a, P, abs_prec=N)
        M.append(_split_padic(iwasawa_log(x), ring))
    vals = _padic_snf_pivots(M)
    k = sum(1 for v in vals if v < N)
    return LeopoldtReport(rank_A, k, rank_A - k, rank_A - k == 0, N, vals)
