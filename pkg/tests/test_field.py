import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from flagchar.errors import DivisionByZero, NotPrime, ReducibleModulus, PrimeMismatch
from flagchar.field import BUILTIN_MODULI, CycInt, FieldElem, canonical, cyc_arith, field_of_order, fq_arith, fq_make

FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (2, 4), (3, 2)]


def _field_for(p, e):
    return fq_make(p, e)


def _poly(p, e):
    F = fq_make(p, e)
    if e == 1:
        return F, oracles.PolyField(p, (0, 1))
    return F, oracles.PolyField(p, BUILTIN_MODULI[(p, e)])


@pytest.mark.parametrize("p,e", [f for f in FIELDS if f[1] > 1])
def test_tables_match_polynomial_arithmetic(p, e):
    F, P = _poly(p, e)
    for a in range(F.q):
        for b in range(F.q):
            pa, pb = P.from_int(a), P.from_int(b)
            assert int(F.add(a, b)) == P.to_int(P.add(pa, pb))
            assert int(F.mul(a, b)) == P.to_int(P.mul(pa, pb))


@pytest.mark.parametrize("p,e", [f for f in FIELDS if f[1] > 1])
def test_theta_is_trace(p, e):
    F, P = _poly(p, e)
    for a in range(F.q):
        assert int(F.theta(a)) == P.trace(P.from_int(a))


@pytest.mark.parametrize("p,e", FIELDS)
def test_field_axioms(p, e):
    F = _field_for(p, e)
    xs = np.arange(F.q)
    assert np.all(F.add(xs, F.neg(xs)) == 0)
    nz = xs[1:]
    assert np.all(F.mul(nz, F.inv(nz)) == 1)
    # theta is a nontrivial additive character
    th = np.asarray(F.theta(xs))
    for a in range(F.q):
        assert np.all((th[a] + th) % p == np.asarray(F.theta(F.add(a, xs))))
    assert np.any(th)


def test_examples():
    assert int(fq_make(3).mul(2, 2)) == 1
    assert int(fq_make(3).add(1, 2)) == 0
    assert int(fq_make(2).inv(1)) == 1
    F4 = fq_make(2, 2)
    x, x1 = F4.parse("10"), F4.parse("11")
    assert int(F4.mul(x, x1)) == 1
    assert int(F4.mul(x, x)) == x1
    assert int(F4.theta(x)) == 1
    assert [int(fq_make(2).theta(a)) for a in (0, 1)] == [0, 1]
    assert int(fq_make(3).theta(2)) == 2


def test_errors():
    with pytest.raises(NotPrime):
        fq_make(4)
    with pytest.raises(ReducibleModulus):
        fq_make(2, 2, (1, 0, 1))
    with pytest.raises(DivisionByZero):
        fq_make(3).inv(0)
    with pytest.raises(NotPrime):
        field_of_order(6)


def test_format_parse_roundtrip():
    for p, e in FIELDS:
        F = _field_for(p, e)
        for a in range(F.q):
            assert F.parse(F.format(a)) == a


def test_field_elem_operators():
    F = fq_make(2, 2)
    a, b = FieldElem(F, 2), FieldElem(F, 3)
    assert int(a * b) == 1
    assert int((a / b) * b) == int(a)
    assert int(a + a) == 0
    assert fq_arith("mul", a, b) == a * b


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_distributive_f5(a, b, c):
    F = fq_make(5)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


# -- cyclotomic integers ---------------------------------------------------

vec3 = st.lists(st.integers(-5, 5), min_size=3, max_size=3)


@given(vec3, vec3)
@settings(max_examples=60)
def test_cycint_matches_complex(u, v):
    a, b = CycInt.from_vector(3, u), CycInt.from_vector(3, v)
    for res, expect in [
        (a + b, oracles.cyc_to_complex(3, u) + oracles.cyc_to_complex(3, v)),
        (a * b, oracles.cyc_to_complex(3, u) * oracles.cyc_to_complex(3, v)),
        (a.conj(), oracles.cyc_to_complex(3, u).conjugate()),
    ]:
        assert abs(oracles.cyc_to_complex(3, res.vector()) - expect) < 1e-9


def test_cycint_examples():
    z = CycInt.root_of_unity
    assert z(2, 1) + z(2, 0) == CycInt.integer(2, 0)
    assert z(3, 0) + z(3, 1) + z(3, 2) == CycInt.integer(3, 0)
    assert z(3, 1) * z(3, 2) == CycInt.integer(3, 1)
    with pytest.raises(PrimeMismatch):
        z(2, 1) + z(3, 1)
    assert cyc_arith("add", z(3, 1), z(3, 1)) == z(3, 1).scale(2)


def test_canonical_kills_relation():
    assert not np.any(canonical(np.ones(5, dtype=np.int64)))
