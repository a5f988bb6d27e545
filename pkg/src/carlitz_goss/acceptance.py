"""The acceptance suite: one function per criterion, deterministic output.

Each criterion returns a :class:`CriterionResult` whose ``details`` are plain
JSON data (no timings), so ``verify all`` output is byte-stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .algebra import ThetaPoly, field_for_q
from .algebra.poly import enumerate_monics, is_irreducible
from .formulas import (
    UnitBasis,
    check_theorem4,
    stark_beta,
    stark_input,
    verify_deformed_K,
    verify_padic_K,
    verify_period_q2,
    verify_taelman_K,
)
from .modstruct import (
    action_matrix,
    deformed_norm_generator,
    invariant_factors_A,
    _tate_equal,
    invariant_factors_deformed,
    norm_minus_one,
)
from .rings import RingDescriptor, ideals_of_norm_degree
from .zeta import (
    ZetaConfig,
    degree_bound_euler,
    degree_bound_zeta,
    euler_transfer,
    lemma2_cutoff,
    measured_valuations,
    zeta_nonpositive,
    zeta_padic,
    zeta_poly,
)

LEVELS = ("quick", "full")


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        label = f"criterion {self.number}" if self.number else "supplementary"
        return f"[{'PASS' if self.passed else 'FAIL'}] {label}: {self.title}"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "pass": self.passed, "details": self.details}


def _poly(text: str, q: int) -> ThetaPoly:
    return ThetaPoly.parse(text, field_for_q(q))


def criterion_1(level: str = "quick", config: ZetaConfig | None = None) -> CriterionResult:
    params = [(2, 16), (3, 10)] if level == "quick" else [(2, 18), (3, 12)]
    reports = [verify_taelman_K(q, prec, config) for q, prec in params]
    return CriterionResult(
        1,
        "zeta_A(1) = Log_C(1) in K_inf",
        all(r.passed for r in reports),
        {"checks": [r.to_json() for r in reports]},
    )


def criterion_2(level: str = "quick", config: ZetaConfig | None = None) -> CriterionResult:
    reports = [verify_deformed_K(q, 5, 30, config) for q in (2, 3)]
    return CriterionResult(
        2,
        "sum_{a in A+,m} 1/a = 1/L_m for m <= 5",
        all(r.passed for r in reports),
        {"checks": [{"q": r.params["q"], "pass": r.passed, **r.details} for r in reports]},
    )


def criterion_3(level: str = "quick", config: ZetaConfig | None = None) -> CriterionResult:
    cases = [(3, "t", 1), (3, "t+1", 1), (3, "t^2+1", 1)]
    if level == "full":
        cases += [(3, "t+2", 1), (3, "t^2+t+2", 1)]
    checks = []
    ok = True
    for q, P, s in cases:
        r = verify_padic_K(q, P, s, config)
        prec = int(r.precision[2:])
        passed = r.passed and prec >= q ** (s + 1) - 1
        ok = ok and passed
        checks.append({"q": q, "P": P, "s": s, "pass": passed, "agreement": r.precision, "cutoff_D": r.details["cutoff_D"]})
    return CriterionResult(3, "zeta_{P,A}(1) = (1 - 1/P) Log_C^Iw(1)", ok, {"checks": checks})


def criterion_4(level: str = "quick", config: ZetaConfig | None = None) -> CriterionResult:
    ring = RingDescriptor(2)
    s = 4
    checks = []
    ok = True
    for P in ("t", "t+1", "t^2+t+1"):
        zv = zeta_padic(ring, 1, _poly(P, 2), s, config)
        v = zv.payload
        vanishes = v.is_zero() and v.val >= 2 ** (s + 1)
        within = zv.certificate["cutoff_D"] <= 11
        ok = ok and vanishes and within
        checks.append({"P": P, "cutoff_D": zv.certificate["cutoff_D"], "value": str(v), "pass": vanishes and within})
    return CriterionResult(4, "q = 2: zeta_{P,A}(1) vanishes (non-real)", ok, {"checks": checks})


def criterion_5(level: str = "quick", config: ZetaConfig | None = None) -> CriterionResult:
    checks = []
    ok = True
    for ring in (RingDescriptor(2), RingDescriptor(3), RingDescriptor(2, 2)):
        q = ring.q
        for n in (-(q - 1), -2 * (q - 1)):
            v = zeta_nonpositive(ring, n, config)
            passed = not v
            ok = ok and passed
            checks.append({"ring": str(ring), "n": n, "value": str(v), "pass": passed})
    s = 2
    for q in (2, 3):
        ring = RingDescriptor(q)
        zv = zeta_padic(ring, q - 1, _poly("t", q), s, config)
        v = zv.payload
        passed = v.is_zero() and v.val >= q ** (s + 1)
        ok = ok and passed
        checks.append({"ring": str(ring), "n": q - 1, "P": "t", "s": s, "value": str(v), "pass": passed})
    return CriterionResult(5, "trivial zeros", ok, {"checks": checks})


def criterion_6(level: str = "quick", config: ZetaConfig | None = None) -> CriterionResult:
    checks = []
    ok = True
    for ring in (RingDescriptor(2), RingDescriptor(3), RingDescriptor(2, 2)):
        P = ThetaPoly.theta(ring.base)
        for n in range(0, -7, -1):
            Z = zeta_poly(ring, n, config)  # raises if the overshoot check fails
            bound = degree_bound_zeta(ring, n)
            E = euler_transfer(ring, n, P, config)
            ebound = degree_bound_euler(ring, n, P)
            passed = Z.zdegree <= bound and E.zdegree <= ebound
            ok = ok and passed
            checks.append(
                {"ring": str(ring), "n": n, "deg": Z.zdegree, "bound": bound, "euler_deg": E.zdegree, "euler_bound": ebound, "pass": passed}
            )
    return CriterionResult(6, "degree bounds for Z(n; z) and Z_P(n; z)", ok, {"checks": checks})


def _irreducibles(q: int, degrees) -> list[str]:
    F = field_for_q(q)
    return [str(f) for d in degrees for f in enumerate_monics(F, d) if is_irreducible(f)]


def criterion_7(level: str = "quick", config: ZetaConfig | None = None) -> CriterionResult:
    primes = {q: _irreducibles(q, (1, 2)) for q in (2, 3)}
    if level == "full":
        primes[2] += _irreducibles(2, (3,))
    checks = []
    ok = True
    for q, plist in primes.items():
        ring = RingDescriptor(q)
        for P in plist:
            PP = _poly(P, q)
            for s in (0, 1):
                D = lemma2_cutoff(ring, PP, s)
                target = q ** (s + 1)
                vals = measured_valuations(ring, 1, PP, range(D, D + 3), target, config)
                passed = all(v >= target for v in vals.values())
                ok = ok and passed
                checks.append(
                    {
                        "q": q,
                        "P": P,
                        "s": s,
                        "D": D,
                        "bound": target,
                        "in_hypothesis": 1 <= q**s - 1,
                        "valuations": {str(d): v for d, v in vals.items()},
                        "pass": passed,
                    }
                )
    return CriterionResult(7, "tail bound v_P(U_{P,d}(1)) >= q^{s+1} for d >= D(s)", ok, {"checks": checks})


def _primes_up_to_norm_degree(ring: RingDescriptor, max_deg: int):
    for m in range(1, max_deg + 1):
        if m % ring.r:
            continue
        for I in ideals_of_norm_degree(ring, m):
            if is_irreducible(I.gen):
                yield I


def criterion_8(level: str = "quick", config: ZetaConfig | None = None) -> CriterionResult:
    checks = []
    ok = True
    rings = (RingDescriptor(2), RingDescriptor(3), RingDescriptor(2, 2), RingDescriptor(3, 2))
    for ring in rings:
        count = 0
        bad = []
        for I in _primes_up_to_norm_degree(ring, 4):
            und = invariant_factors_A(action_matrix(I))
            dfm = invariant_factors_deformed(action_matrix(I, True), check=False)
            expect = norm_minus_one(I)
            good = (
                len(und.nontrivial) == 1
                and und.fitting == expect
                and len(dfm.nontrivial) == 1
                and _tate_equal(dfm.fitting, deformed_norm_generator(I))
                and dfm.fitting.at_one() == und.fitting
            )
            count += 1
            if not good:
                bad.append(str(I))
        ok = ok and not bad
        checks.append({"ring": str(ring), "primes": count, "failures": bad, "pass": not bad})
    return CriterionResult(8, "Fitting ideals n(p) - 1 and n(p) - z^deg", ok, {"checks": checks})


def criterion_9(level: str = "quick", config: ZetaConfig | None = None) -> CriterionResult:
    r = verify_period_q2(12)
    return CriterionResult(9, "pi~ = (theta^2 + theta) Log_C(1) for q = 2", r.passed, {"check": r.to_json()})


def criterion_10(level: str = "quick", config: ZetaConfig | None = None) -> CriterionResult:
    prec, zmax = 20, 6
    checks = []
    ok = True
    for q in (2, 3):
        ring = RingDescriptor(q)
        for b in ("1", "t", "t^2+1"):
            bb = _poly(b, q)
            res = stark_beta(ring, [stark_input(q, bb, prec, zmax)], prec, zmax, config)
            c0 = res.beta[0]
            passed = res.beta.zdegree == 0 and c0 == bb and res.unit == 1
            ok = ok and passed
            checks.append({"q": q, "b": b, "beta": str(res), "precision": res.precision, "pass": passed})
    return CriterionResult(10, "beta = b for exp(b Log(1))", ok, {"checks": checks})


def theorem4_checks(config: ZetaConfig | None = None) -> CriterionResult:
    """Supplementary: P-adic class formula for A and for F_9[t], with a wrong-basis control."""
    checks = []
    ok = True
    A3 = RingDescriptor(3)
    for P in ("t", "t^2+1"):
        r = check_theorem4(A3, UnitBasis.auto(A3), None, P, 1, config)
        ok = ok and r.passed
        checks.append({"ring": str(A3), "P": P, "pass": r.passed, "residual_unit": r.residual_unit})
    F9 = RingDescriptor(3, 2)
    for P in ("t", "t^2+1"):
        r = check_theorem4(F9, UnitBasis(F9, ("1", "u")), "1", P, 1, config)
        neg = check_theorem4(F9, UnitBasis(F9, ("t", "u")), "1", P, 1, config)
        ok = ok and r.passed and not neg.passed
        checks.append(
            {"ring": str(F9), "P": P, "pass": r.passed, "residual_unit": r.residual_unit, "negative_control_rejected": not neg.passed}
        )
    return CriterionResult(0, "P-adic class formula over O_L modulo F_q^x", ok, {"checks": checks})


CRITERIA: dict[int, Callable[..., CriterionResult]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
}


def run_suite(level: str = "quick", config: ZetaConfig | None = None, include_theorem4: bool = True) -> list[CriterionResult]:
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    out = [fn(level, config) for fn in CRITERIA.values()]
    if include_theorem4:
        out.append(theorem4_checks(config))
    return out
