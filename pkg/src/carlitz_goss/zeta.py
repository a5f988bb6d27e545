"""Carlitz-Goss zeta values: power sums over ideals graded by norm degree.

U_m(n) = sum over ideals I with deg n(I) = m of n(I)^{-n}.  For n <= 0 these
are polynomials and vanish for large m; for n >= 1 they are summed either in
K_inf (v_inf(U_m(n)) >= n m) or in K_P over ideals prime to P, where the
tail bound v_P(U_{P,m}(n)) >= q^{s+1} for m >= D(s) certifies truncation.

Enumeration is chunked over monic-index ranges of fixed size; chunks are
reduced in index order, so the result does not depend on the worker count.
"""

from __future__ import annotations

import atexit
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import _batch as B
from .algebra import LaurentSeries, PAdicElem, TatePoly, ThetaPoly, field_for_q
from .algebra.literals import format_terms
from .errors import DegreeBoundViolated, OutsideDomain, UnsupportedRing
from .rings import (
    RingDescriptor,
    count_ideals_of_norm_degree,
    ideal_norm,
    primes_above,
)

WORKERS_ENV = "CARLITZ_GOSS_WORKERS"


@dataclass(frozen=True)
class ZetaConfig:
    workers: int = 1
    chunk_size: int = 1 << 13

    @classmethod
    def from_env(cls, workers: int | None = None) -> "ZetaConfig":
        if workers is None:
            workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
        return cls(workers=max(1, workers))


DEFAULT_CONFIG = ZetaConfig()


@dataclass(frozen=True)
class InfMode:
    prec: int


@dataclass(frozen=True)
class PadicMode:
    P: ThetaPoly
    prec: int


EXACT = "exact"


def digit_sum(m: int, q: int) -> int:
    """l_q(m): sum of the base-q digits of m >= 0."""
    s = 0
    while m:
        m, r = divmod(m, q)
        s += r
    return s


# --- chunk kernel -----------------------------------------------------------------


def _chunk(task) -> tuple:
    """Sum of n(I)^{-n} over one index range of ideals with deg n(I) = m."""
    q, r, n, m, mode, start, stop = task
    base = field_for_q(q)
    ring = RingDescriptor(q, r)
    BF = B.batch_field(base)
    G = B.monic_block(ring.field_L, m // r, start, stop)
    A = B.norm_rows(B.batch_field(ring.field_L), G, q, r) if r > 1 else G
    kind = mode[0]
    if kind == "exact":
        e = -n
        if e == 0:
            vals = np.zeros((A.shape[0], 1), dtype=np.int64)
            vals[:, 0] = 1
        else:
            vals = A
            for _ in range(e - 1):
                vals = B.pmul(BF, vals, A)
        return tuple(int(c) for c in BF.sum_rows(vals))
    if kind == "inf":
        N = mode[1]
        L = N - n * m
        if L <= 0:
            return ()
        S = A[:, ::-1]  # a = theta^m (1 + c_{m-1}/theta + ...)
        inv = B.series_inverse(BF, S, L)
        vals = B.series_power(BF, inv, n, L) if n > 1 else inv
        return tuple(int(c) for c in BF.sum_rows(vals))
    if kind == "padic":
        P = ThetaPoly(base, mode[1])
        N = mode[2]
        mask = B.coprime_mask(BF, A, P)
        A = A[mask]
        if A.shape[0] == 0:
            return ()
        M = np.array((P**N).c, dtype=np.int64)
        An = B.powmod(BF, A, n, M) if n > 1 else B.pmod(BF, A, M)
        inv = B.inverse_mod_power(BF, An, P, N)
        return tuple(int(c) for c in BF.sum_rows(inv))
    raise ValueError(f"unknown mode {kind}")


def _mode_key(n: int, mode) -> tuple:
    if mode == EXACT:
        if n > 0:
            raise ValueError("exact mode needs n <= 0")
        return ("exact",)
    if isinstance(mode, InfMode):
        if n < 1:
            raise ValueError("inf mode needs n >= 1")
        return ("inf", mode.prec)
    if isinstance(mode, PadicMode):
        if n < 1:
            raise ValueError("padic mode needs n >= 1; use euler_transfer for n <= 0")
        return ("padic", tuple(mode.P.monic().c), mode.prec)
    raise ValueError(f"unknown mode {mode!r}")


def _tasks(ring: RingDescriptor, n: int, m: int, key: tuple, chunk: int) -> list:
    total = count_ideals_of_norm_degree(ring, m)
    return [(ring.q, ring.r, n, m, key, s, min(s + chunk, total)) for s in range(0, total, chunk)]


def _reduce(F, parts: list[tuple]) -> list[int]:
    width = max((len(p) for p in parts), default=0)
    acc = [0] * width
    for part in parts:  # canonical chunk-index order
        for i, c in enumerate(part):
            if c:
                acc[i] = F.add(acc[i], c)
    return acc


_POOLS: dict[int, ProcessPoolExecutor] = {}


def _pool(workers: int) -> ProcessPoolExecutor:
    pool = _POOLS.get(workers)
    if pool is None:
        pool = ProcessPoolExecutor(max_workers=workers)
        _POOLS[workers] = pool
    return pool


@atexit.register
def _shutdown_pools():
    for pool in _POOLS.values():
        pool.shutdown(cancel_futures=True)
    _POOLS.clear()


class _Runner:
    """Runs chunk tasks serially or on a shared process pool, preserving order."""

    def __init__(self, config: ZetaConfig):
        self.config = config

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return None

    def map(self, tasks: list) -> list:
        if self.config.workers <= 1 or len(tasks) < 2:
            return [_chunk(t) for t in tasks]
        return list(_pool(self.config.workers).map(_chunk, tasks))


def _wrap(ring: RingDescriptor, n: int, m: int, mode, coeffs: list[int]):
    F = ring.base
    if mode == EXACT:
        return ThetaPoly(F, coeffs)
    if isinstance(mode, InfMode):
        N = mode.prec
        L = N - n * m
        if L <= 0:
            return LaurentSeries.zero(F, N)
        coeffs = coeffs + [0] * (L - len(coeffs))
        return LaurentSeries(F, n * m, N, coeffs)
    P = mode.P.monic()
    return PAdicElem.from_poly(ThetaPoly(F, coeffs), P, abs_prec=mode.prec)


def power_sums(ring: RingDescriptor, n: int, degrees, mode=EXACT, config: ZetaConfig | None = None) -> dict:
    """{m: U_m(n)} (or U_{P,m}(n) in P-adic mode) for the given norm degrees."""
    config = config or DEFAULT_CONFIG
    key = _mode_key(n, mode)
    degrees = list(degrees)
    plan = [(m, _tasks(ring, n, m, key, config.chunk_size)) for m in degrees]
    all_tasks = [t for _, ts in plan for t in ts]
    with _Runner(config) as runner:
        results = runner.map(all_tasks)
    out = {}
    pos = 0
    for m, ts in plan:
        parts = results[pos : pos + len(ts)]
        pos += len(ts)
        out[m] = _wrap(ring, n, m, mode, _reduce(ring.base, parts))
    return out


def power_sum(ring: RingDescriptor, n: int, d: int, mode=EXACT, config: ZetaConfig | None = None):
    """U_d(n) for one norm degree d."""
    return power_sums(ring, n, [d], mode, config)[d]


def power_sum_direct(ring: RingDescriptor, n: int, d: int, mode=EXACT):
    """Element-by-element summation with the scalar types (slow reference)."""
    from .rings import ideals_of_norm_degree

    F = ring.base
    if mode == EXACT:
        acc = ThetaPoly.zero(F)
        for I in ideals_of_norm_degree(ring, d):
            acc = acc + ideal_norm(I) ** (-n)
        return acc
    if isinstance(mode, InfMode):
        acc = LaurentSeries.zero(F, mode.prec)
        for I in ideals_of_norm_degree(ring, d):
            a = ideal_norm(I) ** n
            acc = acc + LaurentSeries.inverse_of_poly(a, mode.prec)
        return acc
    P = mode.P.monic()
    acc = PAdicElem.zero(P, mode.prec)
    for I in ideals_of_norm_degree(ring, d):
        a = ideal_norm(I)
        if not (a % P):
            continue
        acc = acc + PAdicElem.from_poly(a**n, P, abs_prec=mode.prec).inv()
    return acc


# --- values ---------------------------------------------------------------------------


@dataclass
class ZetaValue:
    flavor: str  # poly_in_z | inf_adic | p_adic
    payload: Any
    certificate: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"flavor": self.flavor}
        out.update(self.certificate)
        p = self.payload
        if isinstance(p, TatePoly):
            out["poly_in_z"] = tate_to_str(p)
        elif isinstance(p, ThetaPoly):
            out["value"] = str(p)
        else:
            out["value"] = p.to_json()
            out["value"]["str"] = str(p)
        return out


def tate_to_str(T: TatePoly) -> str:
    """Render a polynomial in A[z]: theta-degree descending, then z ascending."""
    terms = []
    F = None
    for m, c in enumerate(T.coeffs):
        if c is None or not c:
            continue
        F = c.field
        for k in range(c.degree, -1, -1):
            code = c.coeff(k)
            if code:
                terms.append(((k, m), code))
    if not terms:
        return "0"
    terms.sort(key=lambda t: (-t[0][0], t[0][1]))
    rendered = []
    for (k, m), code in terms:
        parts = []
        if k:
            parts.append("t" if k == 1 else f"t^{k}")
        if m:
            parts.append("z" if m == 1 else f"z^{m}")
        rendered.append(("*".join(parts), code))
    return format_terms(F, rendered)


def degree_bound_zeta(ring: RingDescriptor, n: int) -> int:
    """deg_z Z_{O_L}(n; z) <= [L:K](2g+1+l_q(-n)) - 1 for n <= 0."""
    return ring.r * (2 * ring.genus + 1 + digit_sum(-n, ring.q)) - 1


def degree_bound_euler(ring: RingDescriptor, n: int, P: ThetaPoly) -> int:
    return degree_bound_zeta(ring, n) + sum(pa.norm.degree for pa in primes_above(ring, P))


def zeta_poly(ring: RingDescriptor, n: int, config: ZetaConfig | None = None, overshoot: int = 2) -> TatePoly:
    """Z_{O_L}(n; z) in A[z] for n <= 0, checking U_m = 0 past the bound."""
    if n > 0:
        raise ValueError("zeta_poly needs n <= 0")
    bound = degree_bound_zeta(ring, n)
    U = power_sums(ring, n, range(bound + overshoot + 1), EXACT, config)
    for m in range(bound + 1, bound + overshoot + 1):
        if U[m]:
            raise DegreeBoundViolated(f"U_{m}({n}) = {U[m]} is nonzero beyond the bound {bound}")
    return TatePoly([U[m] if U[m] else None for m in range(bound + 1)], bound)


def zeta_nonpositive(ring: RingDescriptor, n: int, config: ZetaConfig | None = None) -> ThetaPoly:
    """zeta_{O_L}(n) = Z_{O_L}(n; 1) for n <= 0."""
    Z = zeta_poly(ring, n, config)
    acc = Z.at_one()
    return ThetaPoly.zero(ring.base) if acc is None else acc


def zeta_inf(ring: RingDescriptor, n: int, prec: int, config: ZetaConfig | None = None) -> ZetaValue:
    """zeta_{O_L}(n) in K_inf to O(theta^{-prec}), n >= 1."""
    if n < 1:
        raise ValueError("zeta_inf needs n >= 1")
    if prec < 1:
        raise ValueError("prec must be >= 1")
    cutoff = -(-prec // n)  # first m with n m >= prec
    U = power_sums(ring, n, range(cutoff), InfMode(prec), config)
    acc = LaurentSeries.zero(ring.base, prec)
    for m in range(cutoff):
        acc = acc + U[m]
    cert = {
        "ring": str(ring),
        "n": n,
        "prec": prec,
        "cutoff_degree": cutoff,
        "bound": "v_inf(U_m(n)) >= n*m",
    }
    return ZetaValue("inf_adic", acc, cert)


def lemma2_cutoff(ring: RingDescriptor, P: ThetaPoly, s: int) -> int:
    """D(s) = [L:K](2g+1+(s+1+deg P)(q-1)) + sum_{p | P} deg n(p)."""
    q = ring.q
    extra = sum(pa.norm.degree for pa in primes_above(ring, P))
    return ring.r * (2 * ring.genus + 1 + (s + 1 + P.degree) * (q - 1)) + extra


def twist_roots(ring: RingDescriptor) -> list[tuple[int, int]] | None:
    """Roots of unity (code, multiplicity) with Z_{O_L}(n;z) = prod Z_A(n; w z).

    Needs the prime-to-p part of r to divide q - 1; returns None otherwise.
    """
    q, r = ring.q, ring.r
    p = ring.base.p
    rp, mult = r, 1
    while rp % p == 0:
        rp //= p
        mult *= p
    if (q - 1) % rp:
        return None
    F = ring.base
    roots = [w for w in range(1, q) if F.pow(w, rp) == 1]
    assert len(roots) == rp
    return [(w, mult) for w in roots]


def _padic_sum(ring, n, P, N, D, config, z_code: int = 1) -> PAdicElem:
    U = power_sums(ring, n, range(D), PadicMode(P, N), config)
    F = ring.base
    acc = PAdicElem.zero(P, N)
    zpow = 1
    for m in range(D):
        if zpow != 1:
            acc = acc + U[m] * ThetaPoly.const(F, zpow)
        else:
            acc = acc + U[m]
        zpow = F.mul(zpow, z_code)
    return acc


def euler_transfer(ring: RingDescriptor, n: int, P: ThetaPoly, config: ZetaConfig | None = None) -> TatePoly:
    """Z_{P,O_L}(n; z) = prod_{p | P} (1 - n(p)^{-n} z^{deg n(p)}) Z_{O_L}(n; z)."""
    if n > 0:
        raise ValueError("euler_transfer needs n <= 0")
    F = ring.base
    Z = zeta_poly(ring, n, config)
    bound = degree_bound_euler(ring, n, P)
    acc = TatePoly([c for c in Z.coeffs], bound)
    for pa in primes_above(ring, P):
        nP = pa.norm
        factor = TatePoly(
            [ThetaPoly.one(F)] + [None] * (nP.degree - 1) + [-(nP ** (-n))], bound
        )
        acc = acc * factor
    return acc


def zeta_padic(
    ring: RingDescriptor,
    n: int,
    P: ThetaPoly,
    s: int,
    config: ZetaConfig | None = None,
    route: str = "auto",
) -> ZetaValue:
    """zeta_{P,O_L}(n) with certified absolute precision q^{s+1}.

    n >= 1 sums U_{P,m}(n) for m < D(s); n <= 0 evaluates the exact Euler
    transfer at z = 1.  ``route`` picks direct enumeration or, for r > 1, the
    constant-field twist Z_{P,O_L}(n;z) = prod_w Z_{P,A}(n; w z).
    """
    P = P.change_field(ring.base).monic() if P.field != ring.base else P.monic()
    q = ring.q
    N = q ** (s + 1)
    cert: dict = {"flavor_detail": None, "ring": str(ring), "n": n, "P": str(P), "s": s}
    if n <= 0:
        T = euler_transfer(ring, n, P, config)
        val = T.at_one()
        val = ThetaPoly.zero(ring.base) if val is None else val
        payload = PAdicElem.from_poly(val, P, abs_prec=N)
        cert.update({"route": "euler_transfer", "exact": True, "precision": N})
        cert.pop("flavor_detail")
        return ZetaValue("p_adic", payload, cert)
    if n > q**s - 1:
        raise OutsideDomain(f"tail bound needs n <= q^s - 1 (n={n}, q^s-1={q**s - 1})")
    D = lemma2_cutoff(ring, P, s)
    roots = twist_roots(ring) if ring.r > 1 else None
    if route == "auto":
        direct_cost = sum(count_ideals_of_norm_degree(ring, m) for m in range(D))
        route = "twist" if roots is not None and direct_cost > 50_000 else "direct"
    if route == "direct":
        val = _padic_sum(ring, n, P, N, D, config)
        cert.update({"route": "direct", "cutoff_D": D})
    elif route == "twist":
        if roots is None:
            raise UnsupportedRing("constant-field twist needs the r-th roots of unity in F_q")
        base_ring = RingDescriptor(q, 1)
        DA = lemma2_cutoff(base_ring, P, s)
        val = PAdicElem.one(P, N)
        for w, mult in roots:
            part = _padic_sum(base_ring, n, P, N, DA, config, z_code=w)
            for _ in range(mult):
                val = val * part
        val = val.truncate_abs(min(N, val.abs_prec)) if not val.is_zero() else val
        cert.update({"route": "constant_field_twist", "cutoff_D": DA, "roots": [w for w, _ in roots]})
    else:
        raise ValueError(f"unknown route {route!r}")
    cert.pop("flavor_detail")
    cert["precision"] = N
    return ZetaValue("p_adic", val, cert)


def measured_valuations(
    ring: RingDescriptor, n: int, P: ThetaPoly, degrees, N: int, config: ZetaConfig | None = None
) -> dict:
    """v_P(U_{P,m}(n)) for each m, capped at N (N means 'at least N')."""
    U = power_sums(ring, n, degrees, PadicMode(P.monic(), N), config)
    return {m: (min(u.val, N) if not u.is_zero() else N) for m, u in U.items()}
