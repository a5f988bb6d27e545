"""Finite fields, polynomials, Laurent and P-adic series."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carlitz_goss.algebra import (
    FFElem,
    LaurentSeries,
    PAdicElem,
    ThetaPoly,
    embed_poly,
    enumerate_monics,
    ff_frobenius,
    field_for_q,
    field_make,
    is_irreducible,
    poly_factorize,
)
from carlitz_goss.errors import (
    FieldMismatch,
    InvertZero,
    NonPrimeCharacteristic,
    PrecisionExhausted,
    PrimeMismatch,
    ReducibleModulus,
    ZeroPolynomial,
)

from conftest import F2, F3, F4, F9, FIELDS, MANY, laurents, monics, padics, polys, st_field


def T(text, F):
    return ThetaPoly.parse(text, F)


# --- fields ---------------------------------------------------------------------------


def test_prime_field():
    F = field_make(2, 1)
    assert F.q == 2 and F.k == 1


def test_canonical_f9_modulus_is_first_irreducible_quadratic():
    # lexicographic over monic quadratics u^2 + a u + b: (a, b) = (0, 1) is u^2+1
    F = field_make(3, 2)
    assert F.modulus == (1, 0, 1)
    assert field_make(3, 2, "u^2+1") is F


def test_reducible_and_bad_modulus():
    with pytest.raises(ReducibleModulus):
        field_make(3, 2, "u^2+2")  # (u+1)(u+2)
    with pytest.raises(NonPrimeCharacteristic):
        field_make(4, 1)


def test_frobenius_examples():
    u4 = FFElem(F4, 2)  # code 2 is u
    assert str(ff_frobenius(u4, 1, 2)) == "u+1"
    u9 = FFElem(F9, 3)
    assert ff_frobenius(u9, 2, 3) == u9
    assert ff_frobenius(FFElem(F9, 1), 5, 3).value == 1


@settings(max_examples=MANY)
@given(st_field, st.data())
def test_frobenius_is_automorphism_fixing_base(F, data):
    p = F.p
    a, b = data.draw(st.integers(0, F.q - 1)), data.draw(st.integers(0, F.q - 1))
    fr = lambda x: F.frobenius(x, 1, p)
    assert fr(F.add(a, b)) == F.add(fr(a), fr(b))
    assert fr(F.mul(a, b)) == F.mul(fr(a), fr(b))
    assert F.frobenius(a, F.k, p) == a
    assert fr(a % p) == a % p  # prime subfield fixed


# --- polynomials ---------------------------------------------------------------------


def test_poly_examples():
    assert T("t+1", F2) * T("t+1", F2) == T("t^2+1", F2)
    qt, r = divmod(T("t^3", F3), T("t^2+1", F3))
    assert (qt, r) == (T("t", F3), T("2*t", F3))
    assert T("t^2+1", F3).gcd(T("t+1", F3)).is_one()


def test_mixed_fields_rejected_unless_prime_subfield():
    with pytest.raises(FieldMismatch):
        T("t", F2) + T("t", F3)
    # F_3 coefficients promote into F_9
    assert (T("t", F9) * T("t+1", F3)).field == F9


@settings(max_examples=MANY)
@given(st_field, st.data())
def test_poly_ring_axioms(F, data):
    a, b, c = (data.draw(polys(F)) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert (a - a).is_zero()


@settings(max_examples=MANY)
@given(st_field, st.data())
def test_divmod_and_xgcd(F, data):
    a = data.draw(polys(F, 8))
    b = data.draw(polys(F, 5, nonzero=True))
    qt, r = divmod(a, b)
    assert qt * b + r == a and (not r or r.degree < b.degree)
    g, s, t = a.xgcd(b)
    assert s * a + t * b == g and g.is_monic()


def test_enumerate_monics_examples():
    assert [str(f) for f in enumerate_monics(F2, 1)] == ["t", "t+1"]
    assert [str(f) for f in enumerate_monics(F3, 1, skip_multiples_of=T("t", F3))] == ["t+1", "t+2"]
    assert {str(f) for f in enumerate_monics(F2, 2)} == {"t^2", "t^2+1", "t^2+t", "t^2+t+1"}


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"q{F.q}")
@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_enumerate_monics_counts(F, d):
    out = list(enumerate_monics(F, d))
    assert len(out) == F.q**d == len(set(out))
    assert all(f.is_monic() and f.degree == d for f in out)


def test_factorize_examples():
    fac = poly_factorize(T("t^2+t", F2))
    assert [(str(f), e) for f, e in fac] == [("t", 1), ("t+1", 1)]
    assert [(str(f), e) for f, e in poly_factorize(T("t^2+1", F3))] == [("t^2+1", 1)]
    fac9 = {str(f) for f, _ in poly_factorize(T("t^2+1", F9))}
    assert fac9 == {"t+u", "t+2*u"}


def test_factorize_zero():
    with pytest.raises(ZeroPolynomial):
        poly_factorize(ThetaPoly.zero(F2))


@settings(max_examples=MANY)
@given(st_field, st.data())
def test_factorize_roundtrip_and_seed_independent(F, data):
    f = data.draw(monics(F, 1, 7))
    fac = poly_factorize(f, seed=0)
    prod = ThetaPoly.one(F)
    for g, e in fac:
        assert g.is_monic() and is_irreducible(g)
        prod = prod * g**e
    assert prod == f
    assert poly_factorize(f, seed=data.draw(st.integers(1, 10**6))) == fac


def test_irreducible_counts():
    # necklace counts: (q^2 - q)/2 quadratics, (2^4 - 2^2)/4 quartics over F_2
    assert sum(is_irreducible(f) for f in enumerate_monics(F2, 2)) == 1
    assert sum(is_irreducible(f) for f in enumerate_monics(F3, 2)) == 3
    assert sum(is_irreducible(f) for f in enumerate_monics(F2, 4)) == 3


@settings(max_examples=MANY)
@given(st.sampled_from((F2, F3)), st.data())
def test_valuation_at_P(F, data):
    P = data.draw(st.sampled_from([f for f in enumerate_monics(F, 1)] + [T("t^2+t+1", F2) if F.q == 2 else T("t^2+1", F3)]))
    a = data.draw(polys(F, 5, nonzero=True))
    b = data.draw(polys(F, 5, nonzero=True))
    va, vb = a.valuation_at(P), b.valuation_at(P)
    assert (a * b).valuation_at(P) == va + vb
    if a + b:
        assert (a + b).valuation_at(P) >= min(va, vb)


# --- Laurent series -------------------------------------------------------------------


def test_laurent_examples():
    th = LaurentSeries.from_poly(T("t", F2), 8)
    assert th.inv().equals_to(LaurentSeries.theta_power(F2, -1, 10))
    inv = LaurentSeries.inverse_of_poly(T("t+1", F2), 4)
    assert inv == LaurentSeries(F2, 1, 4, [1, 1, 1])
    one = LaurentSeries.theta_power(F2, -1, 8) * LaurentSeries.from_poly(T("t", F2), 8)
    assert one.equals_to(LaurentSeries.one(F2, 7))


def test_laurent_precision_never_fabricated():
    x = LaurentSeries.one(F3, 3)
    with pytest.raises(PrecisionExhausted):
        x.coeff(3)
    with pytest.raises(InvertZero):
        LaurentSeries.zero(F3, 4).inv()


@settings(max_examples=MANY)
@given(st_field, st.data())
def test_laurent_ring_axioms(F, data):
    a, b, c = (data.draw(laurents(F, 10, -3)) for _ in range(3))
    lhs, rhs = (a * b) * c, a * (b * c)
    assert lhs.equals_to(rhs, min(lhs.prec, rhs.prec))
    lhs, rhs = a * (b + c), a * b + a * c
    assert lhs.equals_to(rhs, min(lhs.prec, rhs.prec))


@settings(max_examples=MANY)
@given(st_field, st.data())
def test_laurent_inverse_two_sided(F, data):
    a = data.draw(laurents(F, 10, -3, nonzero=True))
    prod = a * a.inv()
    assert prod.equals_to(LaurentSeries.one(F, prod.prec))
    assert (a.inv() * a).equals_to(prod)


@settings(max_examples=MANY)
@given(st_field, st.data())
def test_inf_valuation(F, data):
    a = data.draw(laurents(F, 12, -3, nonzero=True))
    b = data.draw(laurents(F, 12, -3, nonzero=True))
    assert (a * b).valuation == a.valuation + b.valuation
    s = a + b
    assert s.valuation >= min(a.valuation, b.valuation)


@settings(max_examples=MANY)
@given(st_field, st.data())
def test_laurent_frobenius_is_ring_map(F, data):
    a, b = data.draw(laurents(F, 8, -2)), data.draw(laurents(F, 8, -2))
    q = F.q
    x, y = (a * b).frobenius(q), a.frobenius(q) * b.frobenius(q)
    assert x.equals_to(y, min(x.prec, y.prec))
    x, y = (a + b).frobenius(q), a.frobenius(q) + b.frobenius(q)
    assert x.equals_to(y, min(x.prec, y.prec))


# --- P-adic elements -------------------------------------------------------------------


def test_padic_examples():
    P = T("t", F3)
    e = embed_poly(T("t", F3), P, 3)
    assert e.val == 1 and e.unit.is_one()
    inv = PAdicElem.from_poly(T("t-1", F3), P, prec=2).inv()
    assert inv.val == 0 and inv.unit == T("2*t+2", F3)
    a = PAdicElem(P, 1, ThetaPoly.one(F3), 4)
    b = PAdicElem(P, -1, ThetaPoly.one(F3), 4)
    assert (a * b).equals_to(PAdicElem.one(P, 4))


def test_padic_prime_mismatch():
    a = PAdicElem.one(T("t", F3), 3)
    b = PAdicElem.one(T("t+1", F3), 3)
    with pytest.raises(PrimeMismatch):
        a + b


PRIMES = [T("t", F2), T("t^2+t+1", F2), T("t", F3), T("t+1", F3), T("t^2+1", F3)]


@settings(max_examples=MANY)
@given(st.sampled_from(PRIMES), st.data())
def test_padic_ring_axioms(P, data):
    a, b, c = (data.draw(padics(P, 5)) for _ in range(3))
    lhs, rhs = (a * b) * c, a * (b * c)
    assert lhs.equals_to(rhs, min(lhs.abs_prec, rhs.abs_prec))
    lhs, rhs = a * (b + c), a * b + a * c
    assert lhs.equals_to(rhs, min(lhs.abs_prec, rhs.abs_prec))


@settings(max_examples=MANY)
@given(st.sampled_from(PRIMES), st.data())
def test_padic_inverse_two_sided(P, data):
    a = data.draw(padics(P, 6, unit=True).filter(lambda x: not x.is_zero()))
    prod = a * a.inv()
    assert prod.equals_to(PAdicElem.one(P, prod.abs_prec))
    assert (a.inv() * a).equals_to(prod)


@settings(max_examples=MANY)
@given(st.sampled_from(PRIMES), st.data())
def test_padic_valuation(P, data):
    a = data.draw(padics(P, 8).filter(lambda x: not x.is_zero()))
    b = data.draw(padics(P, 8).filter(lambda x: not x.is_zero()))
    assert (a * b).val == a.val + b.val
    s = a + b
    assert s.is_zero() or s.val >= min(a.val, b.val)


def test_padic_to_json():
    x = PAdicElem.from_poly(T("t^2+t", F3), T("t", F3), abs_prec=3)
    assert x.to_json() == {"P": "t", "val": 1, "prec": 2, "unit": "t+1"}
