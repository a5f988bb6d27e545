"""Action matrices, Smith normal form, Fitting ideals of C(O_L/p)."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carlitz_goss.algebra import FFElem, ThetaPoly, is_irreducible
from carlitz_goss.errors import NotIrreducible
from carlitz_goss.modstruct import (
    KPoly,
    _tate_equal,
    action_matrix,
    deformed_norm_generator,
    fitting_of,
    invariant_factors_A,
    invariant_factors_deformed,
    norm_minus_one,
    snf_polyring,
    specialize_z1,
)
from carlitz_goss.rings import RingDescriptor, ideal_norm, ideals_of_norm_degree

from conftest import F2, F3, F4

RINGS = [RingDescriptor(2), RingDescriptor(3), RingDescriptor(2, 2), RingDescriptor(3, 2)]


def kp(F, coeffs):
    return KPoly([FFElem(F, c) for c in coeffs], FFElem(F, 0), FFElem(F, 1))


def coeffs(f):
    return [a.value for a in f.c]


def primes(ring, max_deg=4):
    for m in range(ring.r, max_deg + 1, ring.r):
        for I in ideals_of_norm_degree(ring, m):
            if is_irreducible(I.gen):
                yield I


# --- action matrices ---------------------------------------------------------------


def test_action_matrix_identity_at_theta():
    M = action_matrix(RingDescriptor(3).ideal("t"))
    assert M.base == ((0,),) and M.frob == ((1,),)
    assert M.combined() == [[1]]


def test_action_matrix_quadratic_prime():
    M = action_matrix(RingDescriptor(2).ideal("t^2+t+1"))
    assert M.columns() == [[1, 1], [0, 0]]


def test_action_matrix_deformed_columns():
    # columns (z, 1) and (1 + z, 1 + z): base + z * frob
    M = action_matrix(RingDescriptor(2).ideal("t^2+t+1"), deformed=True)
    base_cols = [list(c) for c in zip(*M.base)]
    frob_cols = [list(c) for c in zip(*M.frob)]
    assert base_cols == [[0, 1], [1, 1]]
    assert frob_cols == [[1, 0], [1, 1]]


def test_action_matrix_rejects_reducible():
    with pytest.raises(NotIrreducible):
        action_matrix(RingDescriptor(2).ideal("t^2+t"))


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_frobenius_invertible(ring):
    for I in primes(ring, 3):
        M = action_matrix(I)
        F = M.field
        rows = [[FFElem(F, a) for a in row] for row in M.frob]
        assert _det(rows, FFElem(F, 0), FFElem(F, 1))


# --- SNF examples ---------------------------------------------------------------------


def test_snf_identity():
    one, zero = kp(F3, [1]), kp(F3, [])
    diag = snf_polyring([[one, zero, zero], [zero, one, zero], [zero, zero, one]])
    assert [coeffs(d) for d in diag] == [[1], [1], [1]]


def test_snf_diagonal():
    x, x2, zero = kp(F2, [0, 1]), kp(F2, [0, 0, 1]), kp(F2, [])
    assert [coeffs(d) for d in snf_polyring([[x2, zero], [zero, x]])] == [[0, 1], [0, 0, 1]]


def test_snf_jordan_block():
    x, one, zero = kp(F3, [0, 1]), kp(F3, [1]), kp(F3, [])
    assert [coeffs(d) for d in snf_polyring([[x, one], [zero, x]])] == [[1], [0, 0, 1]]


def test_snf_non_coprime_diagonal():
    # diag(x, x+1) -> {1, x(x+1)}: needs the row-add fixup
    x, x1, zero = kp(F2, [0, 1]), kp(F2, [1, 1]), kp(F2, [])
    assert [coeffs(d) for d in snf_polyring([[x, zero], [zero, x1]])] == [[1], [0, 1, 1]]


# --- SNF properties -------------------------------------------------------------------


def _det(A, zero, one):
    n = len(A)
    total = zero
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = one
        for i in range(n):
            term = term * A[i][perm[i]]
        total = total + (-term if inv % 2 else term)
    return total


def kpolys(F, max_deg=2):
    return st.lists(st.integers(0, F.q - 1), max_size=max_deg + 1).map(lambda c: kp(F, c))


def matrices(F):
    return st.integers(1, 3).flatmap(lambda n: st.lists(st.lists(kpolys(F), min_size=n, max_size=n), min_size=n, max_size=n))


def _chain_ok(diag):
    seen_zero = False
    for a, b in zip(diag, diag[1:]):
        if not a:
            seen_zero = True
        if seen_zero:
            if b:
                return False
            continue
        if b and divmod(b, a)[1]:
            return False
    return True


@settings(max_examples=300)
@given(st.sampled_from([F2, F3, F4]).flatmap(lambda F: st.tuples(st.just(F), matrices(F))))
def test_snf_product_is_determinant_and_chain(data):
    F, A = data
    zero, one = kp(F, []), kp(F, [1])
    diag = snf_polyring(A)
    det = _det(A, zero, one)
    prod = one
    for d in diag:
        prod = prod * d
    assert coeffs(prod) == coeffs(det.monic())
    assert _chain_ok(diag)
    assert all(not d or d.c[-1].value == 1 for d in diag)


def _mix(A, ops, F):
    """Apply row/column operations R_i += c x^k R_j (and the column analogue)."""
    A = [list(r) for r in A]
    n = len(A)
    for kind, i, j, c, k in ops:
        i, j = i % n, j % n
        if i == j or c == 0:
            continue
        m = kp(F, [0] * k + [c])
        if kind == "row":
            A[i] = [a + m * b for a, b in zip(A[i], A[j])]
        else:
            for row in A:
                row[i] = row[i] + m * row[j]
    return A


ops_st = st.lists(
    st.tuples(st.sampled_from(["row", "col"]), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)),
    max_size=6,
)


@settings(max_examples=300)
@given(st.sampled_from([F2, F3]).flatmap(lambda F: st.tuples(st.just(F), matrices(F), ops_st)))
def test_snf_invariant_under_unimodular_mixing(data):
    F, A, ops = data
    ops = [(kind, i, j, c % F.q, k) for kind, i, j, c, k in ops]
    before = [coeffs(d) for d in snf_polyring(A)]
    after = [coeffs(d) for d in snf_polyring(_mix(A, ops, F))]
    assert before == after


# --- Fitting ideals -------------------------------------------------------------------


def test_fitting_examples():
    A2, A3, F9 = RingDescriptor(2), RingDescriptor(3), RingDescriptor(3, 2)
    inv = invariant_factors_A(action_matrix(A3.ideal("t")))
    assert [str(f) for f in inv.nontrivial] == ["t+2"]
    inv = invariant_factors_A(action_matrix(A2.ideal("t^2+t+1")))
    assert [str(f) for f in inv.nontrivial] == ["t^2+t"] and inv.is_cyclic
    assert str(fitting_of(F9.ideal("t"))) == "t^2+2"


def test_deformed_examples():
    A2, A3 = RingDescriptor(2), RingDescriptor(3)
    got = fitting_of(A2.ideal("t^2+t+1"), deformed=True)
    assert [str(c) if c is not None else None for c in got.coeffs] == ["t^2+t+1", None, "1"]
    got = fitting_of(A3.ideal("t"), deformed=True)
    assert [str(c) for c in got.coeffs] == ["t", "2"]  # theta - z


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_fitting_is_norm_minus_one(ring):
    count = 0
    for I in primes(ring):
        und = invariant_factors_A(action_matrix(I))
        assert len(und.nontrivial) == 1
        assert und.fitting == norm_minus_one(I) == ideal_norm(I) - ThetaPoly.one(ring.base)
        count += 1
    assert count > 0


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_deformed_fitting_and_specialization(ring):
    for I in primes(ring):
        dfm = invariant_factors_deformed(action_matrix(I, deformed=True))
        assert dfm.is_cyclic
        assert _tate_equal(dfm.fitting, deformed_norm_generator(I))
        assert specialize_z1(dfm.fitting) == fitting_of(I)


def test_deformed_generator_shape():
    I = RingDescriptor(3, 2).ideal("t")
    g = deformed_norm_generator(I)
    n = ideal_norm(I)
    assert g.zmax == n.degree and g[0] == n and str(g[n.degree]) == "2"
