import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from ercd.rlinear import (CONJ, IDENTITY, IMAG, ZERO, RLinOp, anticommutator, antilinear, apply,
                          commutator, compose, from_real8, linear, op_norm_diff, real8_vector,
                          to_real8)
from ercd.algebra import build_gammas

G = build_gammas()

finite = st.floats(-3, 3, allow_nan=False, allow_infinity=False)
cmat = arrays(np.float64, (2, 4, 4), elements=finite).map(lambda a: a[0] + 1j * a[1])
ops = st.builds(RLinOp, cmat, cmat)
cvec = arrays(np.float64, (2, 4), elements=finite).map(lambda a: a[0] + 1j * a[1])


def test_conj_is_involution():
    c = CONJ @ CONJ
    assert np.array_equal(c.L, np.eye(4)) and not c.A.any()


def test_i_and_conj_anticommute():
    assert op_norm_diff(IMAG @ CONJ, antilinear(1j * np.eye(4))) == 0
    assert op_norm_diff(CONJ @ IMAG, antilinear(-1j * np.eye(4))) == 0


def test_gamma5_squared_via_oracle():
    g5 = G.gamma[5]
    m = to_real8(g5) @ to_real8(g5)
    assert np.allclose(m, -np.eye(8), atol=1e-15)
    assert op_norm_diff(g5 @ g5, -1.0 * IDENTITY) < 1e-15


def test_apply_basics():
    v = np.array([1j, 0, 0, 0])
    assert np.array_equal(apply(IDENTITY, v), v)
    assert np.array_equal(apply(CONJ, v), np.array([-1j, 0, 0, 0]))
    d1, d3 = np.eye(4)[0], np.eye(4)[2]
    assert np.allclose(apply(G.gamma0, d1), d1)
    assert np.allclose(apply(G.gamma0, d3), -d3)


def test_commutators():
    o = G.gamma[3]
    assert op_norm_diff(commutator(o, o), ZERO) == 0
    assert op_norm_diff(anticommutator(G.gamma[1], G.gamma[2]), ZERO) < 1e-15
    assert op_norm_diff(anticommutator(G.gamma[6], G.gamma[6]), -2.0 * IDENTITY) < 1e-15


def test_real8_known_values():
    assert np.array_equal(to_real8(IDENTITY), np.eye(8))
    expect = np.block([[np.zeros((4, 4)), -np.eye(4)], [np.eye(4), np.zeros((4, 4))]])
    assert np.array_equal(to_real8(IMAG), expect)


@pytest.mark.parametrize("a", range(8))
def test_real8_round_trip_on_orts(a):
    assert op_norm_diff(from_real8(to_real8(G.gamma[a])), G.gamma[a]) == 0


def test_norm_diff():
    assert op_norm_diff(IDENTITY, IDENTITY) == 0
    assert op_norm_diff(IDENTITY, ZERO) == pytest.approx(1.0)
    assert op_norm_diff(G.gamma[5], G.gamma[6]) > 0


def test_frozen():
    with pytest.raises(ValueError):
        IDENTITY.L[0, 0] = 2


def test_shape_checked():
    with pytest.raises(ValueError):
        RLinOp(np.eye(3))


@settings(max_examples=60, deadline=None)
@given(ops, ops)
def test_composition_is_homomorphism(a, b):
    lhs = to_real8(compose(a, b))
    rhs = to_real8(a) @ to_real8(b)
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * max(1.0, np.max(np.abs(rhs)))


@settings(max_examples=40, deadline=None)
@given(ops, ops, ops)
def test_composition_associative(a, b, c):
    assert op_norm_diff((a @ b) @ c, a @ (b @ c)) < 1e-10


@settings(max_examples=60, deadline=None)
@given(ops, cvec)
def test_apply_matches_oracle(a, v):
    out = apply(a, v)
    assert np.allclose(real8_vector(out), to_real8(a) @ real8_vector(v), atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(ops, cvec, finite)
def test_real_linearity(a, v, c):
    assert np.allclose(apply(a, c * v), c * apply(a, v), atol=1e-10)


def test_complex_scalar_does_not_commute_with_antilinear():
    # i*C applied to v: i*conj(v); C*(i) is -i*conj(v)
    v = np.array([1 + 2j, 0, 0, 0])
    assert np.allclose((1j * CONJ)(v), 1j * v.conj())
    assert np.allclose((CONJ * 1j)(v), -1j * v.conj())


def test_stacked_apply(rng):
    v = rng.standard_normal((6, 4)) + 1j * rng.standard_normal((6, 4))
    op = G.gamma[5]
    assert np.allclose(apply(op, v), np.array([apply(op, x) for x in v]))


def test_linear_constructor():
    assert linear(np.eye(4)).is_linear
    assert not CONJ.is_linear
