"""Carlitz module: actions, factorials, exp/log in each topology, the period."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carlitz_goss.algebra import LaurentSeries, PAdicElem, TatePoly, ThetaPoly, enumerate_monics, is_irreducible
from carlitz_goss.carlitz import (
    carlitz_action,
    carlitz_D,
    carlitz_L,
    carlitz_period,
    deformed_action,
    deformed_action_exact,
    deg_D,
    deg_L,
    exp_inf,
    exp_padic,
    exp_z,
    goss_coeffs,
    iwasawa_log,
    log_inf,
    log_padic,
    log_z,
    log_z_of_one,
    padic_goss_coeffs,
    vP_D,
    vP_L,
)
from carlitz_goss.errors import NotBaseField, OutsideDomain, ZDegreeOverflow
from carlitz_goss.rings import RingDescriptor, residue_field

from conftest import F2, F3, F4, F9, MANY, laurents, padics, polys


def T(text, F=F3):
    return ThetaPoly.parse(text, F)


BASES = (F2, F3)


# --- Goss coefficients and actions ----------------------------------------------------


def test_goss_examples():
    assert [str(c) for c in goss_coeffs(T("t"))] == ["t", "1"]
    for F in BASES:
        assert [str(c) for c in goss_coeffs(T("t^2", F))] == [
            "t^2",
            str(T("t", F) ** F.q + T("t", F)),
            "1",
        ]
    gc = goss_coeffs(T("t^2+1"))
    assert [str(c) for c in gc] == ["t^2+1", "t^3+t", "1"]
    assert not (gc[1] % T("t^2+1"))


def test_goss_needs_base_field():
    with pytest.raises(NotBaseField):
        goss_coeffs(T("t+u", F9), q=3)


def test_action_examples():
    assert carlitz_action(T("t"), T("1")) == T("t+1")
    assert carlitz_action(T("t^2+t", F2), T("1", F2)).is_zero()
    assert carlitz_action(T("t^2"), T("1")) == T("t^3+t^2+t+1")


def test_deformed_examples():
    one3 = TatePoly.constant(T("1"), 1)
    assert str(deformed_action(T("t"), one3)) == str(TatePoly([T("t"), T("1")], 1))
    out = deformed_action_exact(T("t^2", F2), T("1", F2))
    assert [str(c) for c in out.coeffs] == ["t^2", "t^2+t", "1"]
    with pytest.raises(ZDegreeOverflow):
        deformed_action(T("t^2"), one3)


@settings(max_examples=MANY)
@given(st.sampled_from(BASES), st.data())
def test_goss_recursion(F, data):
    a = data.draw(polys(F, 5, nonzero=True))
    gc = goss_coeffs(a)
    q = F.q
    th = ThetaPoly.theta(F)
    assert len(gc) == a.degree + 1
    for i in range(1, len(gc)):
        assert gc[i] * (th ** (q**i) - th) == gc[i - 1] ** q - gc[i - 1]


@pytest.mark.parametrize("F", BASES, ids=lambda F: f"q{F.q}")
def test_prime_goss_coefficients_divisible(F):
    for d in range(1, 5):
        for P in enumerate_monics(F, d):
            if not is_irreducible(P):
                continue
            gc = goss_coeffs(P)
            assert gc[0] == P and gc[d].is_one()
            assert all(not (gc[i] % P) for i in range(d))


@settings(max_examples=MANY)
@given(st.sampled_from(BASES), st.data())
def test_action_homomorphism_on_A(F, data):
    a, b = data.draw(polys(F, 3)), data.draw(polys(F, 3))
    x = data.draw(polys(F, 3))
    assert carlitz_action(a + b, x) == carlitz_action(a, x) + carlitz_action(b, x)
    assert carlitz_action(a * b, x) == carlitz_action(a, carlitz_action(b, x))


@settings(max_examples=MANY)
@given(st.sampled_from(BASES), st.data())
def test_action_homomorphism_on_laurent(F, data):
    a, b = data.draw(polys(F, 2)), data.draw(polys(F, 2))
    x = data.draw(laurents(F, 10, 0))
    lhs = carlitz_action(a * b, x)
    rhs = carlitz_action(a, carlitz_action(b, x))
    assert lhs.equals_to(rhs, min(lhs.prec, rhs.prec))
    lhs = carlitz_action(a + b, x)
    rhs = carlitz_action(a, x) + carlitz_action(b, x)
    assert lhs.equals_to(rhs, min(lhs.prec, rhs.prec))


RESIDUE_PRIMES = [
    (RingDescriptor(2), "t^2+t+1"),
    (RingDescriptor(3), "t^2+1"),
    (RingDescriptor(3, 2), "t"),
    (RingDescriptor(2, 2), "t+u"),
]


@settings(max_examples=MANY)
@given(st.sampled_from(RESIDUE_PRIMES), st.data())
def test_action_homomorphism_on_residue_field(case, data):
    ring, gen = case
    rf = residue_field(ring.ideal(gen))
    F = ring.base
    a, b = data.draw(polys(F, 3)), data.draw(polys(F, 3))
    x = rf.reduce(data.draw(polys(ring.field_L, 3)))
    act = lambda c, y: carlitz_action(c, y, scalar=rf.reduce)
    assert act(a * b, x) == act(a, act(b, x))
    assert act(a + b, x) == act(a, x) + act(b, x)


@settings(max_examples=MANY)
@given(st.sampled_from(BASES), st.data())
def test_deformed_homomorphism_and_specialization(F, data):
    a, b = data.draw(polys(F, 2)), data.draw(polys(F, 2))
    x = data.draw(polys(F, 2))
    zmax = 5
    X = TatePoly.constant(x, zmax)
    lhs = deformed_action(a * b, X)
    rhs = deformed_action(a, deformed_action(b, X))
    assert _tate_eq(lhs, rhs)
    assert _tate_eq(deformed_action(a + b, X), deformed_action(a, X) + deformed_action(b, X))
    at1 = deformed_action(a, X).at_one()
    plain = carlitz_action(a, x)
    assert (at1 if at1 is not None else ThetaPoly.zero(F)) == plain


def _tate_eq(a, b):
    n = max(a.zmax, b.zmax)
    norm = lambda c: None if c is None or not c else c
    return all(norm(a[m]) == norm(b[m]) for m in range(n + 1))


# --- factorials and valuations ----------------------------------------------------------


def test_factorial_examples():
    assert carlitz_L(F3, 1) == T("2*t^3+t")
    assert carlitz_D(F2, 1) == T("t^2+t", F2)
    for F in BASES:
        for i in range(4):
            assert carlitz_D(F, i).degree == deg_D(F.q, i)
            assert carlitz_L(F, i).degree == deg_L(F.q, i)


def _v_bracket(F, P, j):
    """v_P(theta^{q^j} - theta), from theta^{q^j} mod P^2 (the bracket is squarefree)."""
    th = ThetaPoly.theta(F)
    P2 = P * P
    r = (th.pow_mod(F.q**j, P2) - th) % P2
    if r:
        return 0 if r % P else 1
    return 2


def _primes_up_to(F, dmax):
    return [P for d in range(1, dmax + 1) for P in enumerate_monics(F, d) if is_irreducible(P)]


@pytest.mark.parametrize("F", BASES, ids=lambda F: f"q{F.q}")
def test_factorial_valuations(F):
    q = F.q
    for P in _primes_up_to(F, 3):
        d = P.degree
        brackets = [None] + [_v_bracket(F, P, j) for j in range(1, 13)]
        for i in range(1, 13):
            # L_i = prod_{j<=i} (theta - theta^{q^j}),  D_i = prod_{j<i} [i-j]^{q^j}
            assert vP_L(i, d) == sum(brackets[1 : i + 1])
            assert vP_D(q, i, d) == sum(q**j * brackets[i - j] for j in range(i))
        for i in range(1, 4):
            assert carlitz_L(F, i).valuation_at(P) == vP_L(i, d)
            assert carlitz_D(F, i).valuation_at(P) == vP_D(q, i, d)


# --- infinite-adic exp / log -------------------------------------------------------------


def test_log_of_one_q2():
    lg = log_inf(LaurentSeries.one(F2, 7))
    # 1 + 1/(t^2+t) + 1/((t^2+t)(t^4+t)) expanded
    expected = LaurentSeries.one(F2, 7) + LaurentSeries.inverse_of_poly(T("t^2+t", F2), 7) + LaurentSeries.inverse_of_poly(
        T("t^2+t", F2) * T("t^4+t", F2), 7
    )
    assert lg.equals_to(expected, 7)
    assert str(lg) == "1+t^-2+t^-3+t^-4+t^-5 + O(t^-7)"


def test_exp_of_zero_and_inverse_pair():
    assert exp_inf(LaurentSeries.zero(F3, 8)).is_zero()
    for F in BASES:
        x = LaurentSeries.one(F, 12)
        assert exp_inf(log_inf(x)).equals_to(x, 12)


def test_log_domain():
    with pytest.raises(OutsideDomain):
        log_inf(LaurentSeries.from_poly(T("t^2", F2), 8))


@settings(max_examples=MANY)
@given(st.sampled_from(BASES), st.data())
def test_exp_functional_equation(F, data):
    a = data.draw(polys(F, 2, nonzero=True))
    x = data.draw(laurents(F, 10, -1))
    lhs = exp_inf(x.mul_poly(a))
    rhs = carlitz_action(a, exp_inf(x))
    assert lhs.equals_to(rhs, min(lhs.prec, rhs.prec))


@settings(max_examples=MANY)
@given(st.sampled_from(BASES), st.data())
def test_log_functional_equation_and_isometry(F, data):
    x = data.draw(laurents(F, 12, 1, nonzero=True))
    a = data.draw(polys(F, 2, nonzero=True))
    y = carlitz_action(a, x)
    lhs = log_inf(y)
    rhs = log_inf(x).mul_poly(a)
    assert lhs.equals_to(rhs, min(lhs.prec, rhs.prec))
    lx = log_inf(x)
    assert lx.valuation == x.valuation
    assert exp_inf(lx).equals_to(x, min(x.prec, lx.prec))


def test_torsion_lies_in_domain_q2():
    # kernel of C_{t^2+t} in A for q = 2
    kernel = [p for p in (T(s, F2) for s in ("0", "1", "t", "t+1")) if carlitz_action(T("t^2+t", F2), p).is_zero()]
    assert len(kernel) == 4
    for p in kernel:
        if p:
            assert -p.degree > -2


# --- deformed series -----------------------------------------------------------------


def test_log_z_of_one_coefficients():
    for F in BASES:
        lz = log_z_of_one(F, 5, 20)
        for m in range(6):
            assert lz[m].equals_to(LaurentSeries.inverse_of_poly(carlitz_L(F, m), 20), 20)
        back = exp_z(lz, F.q)
        assert back[0].equals_to(LaurentSeries.one(F, 20), back[0].prec)
        assert all(back[m] is None or back[m].is_zero() for m in range(1, 6))


# --- P-adic -------------------------------------------------------------------------


def test_log_padic_theta_q3():
    P = T("t")
    x = PAdicElem.from_poly(P, P, abs_prec=4)
    lg = log_padic(x)
    # theta^3/L_1 = theta^2/(1 - theta^2) up to sign conventions of L_1 = theta - theta^3
    assert lg.equals_to(PAdicElem.from_poly(T("t^2+t"), P, abs_prec=4), 4)
    assert exp_padic(lg).equals_to(x, 4)


def test_log_padic_kills_torsion_at_boundary():
    # q = 2, P = t: C_t(t) = t^2 + t^2 = 0, so t is torsion of valuation 1
    P = T("t", F2)
    assert carlitz_action(P, P).is_zero()
    assert log_padic(PAdicElem.from_poly(P, P, abs_prec=8)).is_zero()


def test_padic_domains():
    P = T("t")
    with pytest.raises(OutsideDomain):
        log_padic(PAdicElem.one(P, 4))
    with pytest.raises(OutsideDomain):
        exp_padic(PAdicElem.one(P, 4))


def test_padic_goss_agrees_with_exact():
    P = T("t+1")
    for a in ("t^2+2", "t^3+t", "t"):
        aa = T(a)
        exact = goss_coeffs(aa)
        pad = padic_goss_coeffs(PAdicElem.from_poly(aa, P, abs_prec=8), 3)
        for i, c in enumerate(pad):
            assert c.equals_to(PAdicElem.from_poly(exact[i], P, abs_prec=8) if exact[i] else PAdicElem.zero(P, 8), c.abs_prec)


PADIC_PRIMES = [T("t", F2), T("t+1", F2), T("t", F3), T("t+2", F3), T("t^2+1", F3)]


@settings(max_examples=MANY)
@given(st.sampled_from(PADIC_PRIMES), st.data())
def test_log_padic_isometry_and_inverse(P, data):
    # isometric for v > 1/(q^d - 1); for q^d = 2 that excludes v = 1
    vmin = 2 if P.field.q**P.degree == 2 else 1
    x = data.draw(padics(P, 7, vmin, 3).filter(lambda y: not y.is_zero()))
    lg = log_padic(x)
    assert not lg.is_zero() and lg.val == x.val
    back = exp_padic(lg)
    assert back.equals_to(x, min(back.abs_prec, x.abs_prec))


@settings(max_examples=MANY)
@given(st.sampled_from(PADIC_PRIMES), st.data())
def test_log_padic_functional_equation(P, data):
    x = data.draw(padics(P, 7, 1, 3))
    a = data.draw(polys(P.field, 2, nonzero=True))
    lhs = log_padic(carlitz_action(a, x))
    rhs = log_padic(x) * a
    assert lhs.equals_to(rhs, min(lhs.abs_prec, rhs.abs_prec))


@settings(max_examples=MANY)
@given(st.sampled_from(PADIC_PRIMES), st.data())
def test_iwasawa_log_is_A_linear(P, data):
    x = data.draw(padics(P, 6, 0, 2))
    a = data.draw(polys(P.field, 2))
    lhs = iwasawa_log(carlitz_action(a, x))
    rhs = iwasawa_log(x) * a
    assert lhs.equals_to(rhs, min(lhs.abs_prec, rhs.abs_prec))


def test_iwasawa_log_values():
    P = T("t")
    one = PAdicElem.one(P, 4)
    assert iwasawa_log(one).equals_to(PAdicElem.from_poly(T("t^3+t^2+2*t"), P, abs_prec=4), 4)
    # for q = 2 the unit 1 is torsion
    P2 = T("t", F2)
    assert iwasawa_log(PAdicElem.one(P2, 6)).is_zero()


# --- period -----------------------------------------------------------------------------


def test_period_q2():
    per = carlitz_period(2, 8)
    assert str(per.full) == "t^2+t+1+t^-4 + O(t^-6)"
    assert per.full.equals_to(log_inf(LaurentSeries.one(F2, 8)).mul_poly(T("t^2+t", F2)), 6)


def test_period_q3_only_unit_part():
    per = carlitz_period(3, 6)
    assert per.full is None and per.unit_part.sgn == 1
