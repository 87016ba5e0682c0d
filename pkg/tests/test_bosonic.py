import numpy as np
import pytest

from ercd import bosonic
from ercd.algebra import build_gammas, blockdiag, SIGMA
from ercd.rlinear import IDENTITY, ZERO, apply, commutator, op_norm_diff, to_real8

WP = bosonic.build_w()
B = bosonic.build_breve_basis()
S = bosonic.build_breve_spin(B)
G = build_gammas()


def test_w_inverse_and_orthogonal():
    reps = bosonic.check_w(WP)
    assert all(r.passed for r in reps), reps


def test_w_keeps_d1():
    d1 = np.eye(4)[0]
    assert np.allclose(apply(WP.w, d1), d1)


def test_real8_w_orthogonal():
    m = to_real8(WP.w)
    assert np.allclose(m.T @ m, np.eye(8), atol=1e-12)


def test_breve_gamma0_and_gamma7():
    s1, _, s3 = SIGMA
    assert op_norm_diff(B.breve_gamma[0], bosonic.RLinOp(blockdiag(s3, s1))) == 0
    assert op_norm_diff(B.breve_gamma[7], G.gamma[7]) == 0


def test_breve_i_squared():
    assert op_norm_diff(B.breve_i @ B.breve_i, -1.0 * IDENTITY) < 1e-15


def test_conjugation_matches_tabulated_orts():
    reps = bosonic.check_conjugation(WP, G, B)
    bad = [r.relation for r in reps if not r.passed]
    assert not bad


def test_gamma7_invariant_under_w():
    assert op_norm_diff(WP.conjugate(G.gamma[7]), G.gamma[7]) <= 1e-12


def test_breve_spin_composition():
    assert max(S.residuals()) <= 1e-12


def test_breve_s3_values():
    assert np.allclose(S[3].L, np.diag([-1j, 1j, 0, 0]))
    d1, d4 = np.eye(4)[0], np.eye(4)[3]
    assert np.allclose(apply(S[3], d1), -1j * d1)
    assert np.allclose(apply(S[1], d4), 0)


def test_su2_and_casimir():
    assert op_norm_diff(commutator(S[3], S[3]), ZERO) == 0
    assert op_norm_diff(commutator(S[1], S[2]), bosonic.SU2_SIGN * S[3]) <= 1e-12
    assert op_norm_diff(S.casimir(), bosonic.CASIMIR_VALUE) <= 1e-12
    assert all(r.passed for r in bosonic.check_su2_closure(S))


def test_physical_labels():
    # i s^3 marks d1, d2, d3, d4 as +1, -1, 0, 0
    assert np.allclose(bosonic.physical_s3_eigenvalues(S), [1, -1, 0, 0])


def test_casimir_rank_is_triplet():
    assert bosonic.casimir_rank(S) == 3


def test_proper_zero_spin_annihilated():
    d4 = np.eye(4)[3]
    for j in (1, 2, 3):
        assert np.allclose(apply(S[j], d4), 0)
