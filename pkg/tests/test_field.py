import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import field
from tracecode.errors import FieldError, ReducibleModulusError
from tracecode.field import (
    FieldCtx,
    arith,
    bar_eta,
    eta,
    find_modulus,
    irreducible_moduli,
    is_irreducible,
    parse_modulus,
    trace,
    trace_by_definition,
)

SMALL = [(3, 2), (3, 3), (5, 2), (3, 4), (7, 2), (5, 3)]


def elements(ctx):
    return st.integers(0, ctx.q - 1).map(ctx.from_index)


# -- frozen values worked out by hand ------------------------------------------


def test_default_moduli():
    # smallest monic irreducible by the integer sum c_i p^i
    assert find_modulus(3, 1) == (0, 1)
    assert find_modulus(3, 2) == (1, 0, 1)  # x^2 + 1: -1 is a non-square mod 3
    assert find_modulus(3, 3) == (1, 2, 0, 1)  # x^3 + 2x + 1 has no root in GF(3)
    assert find_modulus(5, 2) == (2, 0, 1)  # x^2 + 2: 3 is a non-square mod 5


def test_small_field_arithmetic():
    F = field(3, 3)
    a = F.alpha
    assert (a**3).coeffs == (2, 1, 0)  # a^3 = -2a - 1 = a + 2
    assert (a**2).trace() == 2
    assert F.one.trace() == 0  # Tr(1) = m mod p = 0
    assert (a**26) == F.one
    assert a**13 == -F.one  # a is primitive here


def test_irreducibility_test_against_root_search():
    p = 3
    for m in (2, 3):
        for idx in range(p**m):
            coeffs = [(idx // p**i) % p for i in range(m)] + [1]
            has_root = any(
                sum(c * x**i for i, c in enumerate(coeffs)) % p == 0 for x in range(p)
            )
            assert is_irreducible(coeffs, p) == (not has_root)


def test_count_of_irreducibles():
    # Gauss: number of monic irreducibles of degree 4 over GF(3) is (81 - 9) / 4
    assert len(list(irreducible_moduli(3, 4))) == 18
    assert len(list(irreducible_moduli(5, 3))) == 40


def test_parse_modulus_errors():
    with pytest.raises(ReducibleModulusError, match="reducible"):
        parse_modulus("2,0,1", 3)
    with pytest.raises(FieldError):
        parse_modulus("1,2,2", 3)
    with pytest.raises(FieldError):
        parse_modulus("a,b", 3)
    assert parse_modulus("1,2,0,1", 3) == (1, 2, 0, 1)


def test_ctx_validation():
    with pytest.raises(FieldError, match="odd prime"):
        FieldCtx(4, 2)
    with pytest.raises(FieldError, match="odd prime"):
        FieldCtx(2, 3)
    with pytest.raises(FieldError):
        FieldCtx(3, 0)
    with pytest.raises(FieldError, match="degree"):
        FieldCtx(3, 3, (1, 0, 1))
    with pytest.raises(ReducibleModulusError):
        FieldCtx(3, 2, (2, 0, 1))


def test_enumeration_order_and_index_roundtrip():
    F = field(3, 2)
    els = list(F.elements())
    assert [e.coeffs for e in els[:4]] == [(0, 0), (1, 0), (2, 0), (0, 1)]
    assert [e.index for e in els] == list(range(9))
    assert np.array_equal(F.index_of(F.all_coords), np.arange(9))


def test_zero_inverse():
    with pytest.raises(ZeroDivisionError):
        field(3, 2).zero.inverse()


def test_eta_bar():
    assert [bar_eta(c, 5) for c in range(5)] == [0, 1, -1, -1, 1]
    assert [bar_eta(c, 3) for c in range(3)] == [0, 1, -1]


def test_arith_dispatch():
    F = field(5, 2)
    x, y = F.alpha, F.from_index(7)
    assert arith("add", x, y) == x + y
    assert arith("div", x, y) * y == x
    assert arith("pow", x, 24) == F.one
    with pytest.raises(ValueError):
        arith("xor", x, y)


# -- algebraic properties ------------------------------------------------------------


@pytest.mark.parametrize("p,m", SMALL)
def test_field_axioms_exhaustive_units(p, m):
    F = field(p, m)
    units = [e for e in F.elements() if not e.is_zero()]
    assert all(u * u.inverse() == F.one for u in units)
    # the multiplicative group is cyclic of order q - 1
    assert all(u ** (F.q - 1) == F.one for u in units)


@pytest.mark.parametrize("p,m", SMALL)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_ring_laws(p, m, data):
    F = field(p, m)
    x, y, z = (data.draw(elements(F)) for _ in range(3))
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x + y - y == x
    assert (x + y) ** p == x**p + y**p  # Frobenius is additive


@pytest.mark.parametrize("p,m", SMALL)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_trace_properties(p, m, data):
    F = field(p, m)
    x, y = data.draw(elements(F)), data.draw(elements(F))
    c = data.draw(st.integers(0, p - 1))
    assert trace(x) == trace_by_definition(x)
    assert trace(x * c + y) == (c * trace(x) + trace(y)) % p
    assert trace(x**p) == trace(x)


@pytest.mark.parametrize("p,m", SMALL)
def test_trace_balanced(p, m):
    F = field(p, m)
    tr = F.trace_vec(F.all_coords)
    assert np.all(np.bincount(tr, minlength=p) == p ** (m - 1))


@pytest.mark.parametrize("p,m", SMALL)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_eta_multiplicative(p, m, data):
    F = field(p, m)
    x, y = data.draw(elements(F)), data.draw(elements(F))
    assert eta(x * y) == eta(x) * eta(y)
    if x.in_prime_field() and not x.is_zero():
        # on GF(p)*, eta = bar_eta^m
        assert eta(x) == bar_eta(x.coeffs[0], p) ** m


@pytest.mark.parametrize("p,m", SMALL)
def test_vectorised_ops_match_scalar(p, m):
    F = field(p, m)
    xs = F.all_coords
    ys = np.roll(xs, 5, axis=0)
    prod = F.mul_vec(xs, ys)
    for i in range(0, F.q, max(1, F.q // 20)):
        assert tuple(prod[i]) == (F(xs[i]) * F(ys[i])).coeffs
    cube = F.pow_vec(xs, p + 1)
    for i in range(0, F.q, max(1, F.q // 20)):
        assert tuple(cube[i]) == (F(xs[i]) ** (p + 1)).coeffs


@pytest.mark.parametrize("p,m", SMALL)
def test_bilinear_forms(p, m):
    F = field(p, m)
    T, Q, Fr = F.trace_form, F.norm_form, F.frobenius_matrix
    for i in range(0, F.q, max(1, F.q // 15)):
        x = F.from_index(i)
        v = np.array(x.coeffs)
        assert tuple(v @ Fr % p) == (x**p).coeffs
        assert int(v @ Q @ v) % p == (x ** (p + 1)).trace()
        for j in (1, F.q - 1):
            y = F.from_index(j)
            assert int(v @ T @ np.array(y.coeffs)) % p == (x * y).trace()


def test_modulus_change_gives_isomorphic_field():
    mods = list(irreducible_moduli(3, 3))[:3]
    counts = set()
    for mod in mods:
        F = FieldCtx(3, 3, mod)
        counts.add(tuple(sorted(int(eta(e)) for e in F.elements())))
    assert len(counts) == 1
