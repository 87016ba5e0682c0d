import numpy as np
import pytest

from ercd import poincare as pc
from ercd import spectral as sp

SPEC = pc.TestFieldSpec(1.0, 8.0, 3)


@pytest.fixture(scope="module")
def field():
    return SPEC.sample(SPEC.grid(0.5, 1.0))


def _mode(grid, node, vec):
    pos = np.zeros((grid.size, 4), complex)
    pos[node] = vec
    return sp.SpinorFieldK(grid, pos, np.zeros_like(pos))


def test_p0_on_d1_mode(small_grid):
    f = _mode(small_grid, 40, np.eye(4)[0])
    out = pc.apply_generator("p0", f)
    assert np.allclose(out.pos[40], -1j * small_grid.omega[40] * np.eye(4)[0])


def test_pn_on_plane_wave(small_grid):
    f = _mode(small_grid, 40, np.eye(4)[2])
    k = small_grid.k[40]
    for n in (1, 2, 3):
        out = pc.apply_generator(f"p{n}", f)
        assert np.allclose(out.pos[40], 1j * k[n - 1] * np.eye(4)[2])


def test_neg_branch_sees_minus_k(small_grid):
    f = _mode(small_grid, 40, np.eye(4)[0])
    f = f.replace(pos=f.neg, neg=f.pos)
    out = pc.apply_generator("p1", f)
    assert np.allclose(out.neg[40], -1j * small_grid.k[40, 0] * np.eye(4)[0])


def test_j12_on_radial_d4_is_only_fd_error(field):
    g = field.grid
    env = np.exp(-np.sum(g.k ** 2, axis=1) / 2)
    d4 = sp.SpinorFieldK(g, env[:, None] * np.eye(4)[3], np.zeros((g.size, 4)))
    d1 = d4.replace(pos=env[:, None] * np.eye(4)[0])
    assert pc.apply_generator("j12", d4).norm() < 1e-2 * d4.norm()
    # the spin part acts on d1 with unit strength
    assert pc.apply_generator("j12", d1).norm() == pytest.approx(d1.norm(), rel=1e-3)


def test_fd_derivative_exact_on_quartic():
    counts = (11, 1, 1)
    x = (np.arange(11) - 5) * 0.3
    vals = np.repeat((x ** 4 - 2 * x)[:, None], 4, axis=1).astype(complex)
    d = pc.fd_derivative(vals, counts, 0.3, 0)
    assert np.allclose(d[2:-2, 0], (4 * x ** 3 - 2)[2:-2], atol=1e-12)
    assert not d[:2].any() and not d[-2:].any()


def test_fd_derivative_fourth_order():
    errs = []
    for n in (41, 81):
        x = np.linspace(-2, 2, n)
        vals = np.repeat(np.sin(x)[:, None], 4, axis=1).astype(complex)
        d = pc.fd_derivative(vals, (n, 1, 1), x[1] - x[0], 0)
        errs.append(np.max(np.abs(d[2:-2, 0] - np.cos(x[2:-2]))))
    assert np.log2(errs[0] / errs[1]) > 3.8


def test_undecayed_field_rejected(small_grid):
    f = sp.SpinorFieldK(small_grid, np.ones((small_grid.size, 4)), np.zeros((small_grid.size, 4)))
    with pytest.raises(ValueError):
        pc.apply_generator("j12", f)
    pc.apply_generator("p1", f)  # multiplication operators need no decay


def test_unknown_generator(field):
    with pytest.raises(ValueError):
        pc.apply_generator("q7", field)


def test_structure_constants():
    assert pc.structure("p1", "p2") == {}
    assert pc.structure("p1", "j12") == {"p2": -1.0}
    assert pc.structure("j12", "p1") == {"p2": 1.0}
    assert pc.structure("j01", "j02") == {"j12": -1.0}
    assert pc.jacobi_residual() == 0.0
    c = pc.structure_tensor()
    assert np.array_equal(c, -np.transpose(c, (1, 0, 2)))
    assert len(pc.structure_table()) == 45


@pytest.mark.parametrize("gid", ["p0", "p1", "p2", "p3"])
def test_momentum_generators_commute_with_propagation(field, gid):
    assert pc.check_fw_commutation(gid, field, 1.0) <= 1e-12


@pytest.mark.parametrize("gid", ["j12", "j01"])
def test_generators_commute_at_t0(field, gid):
    assert pc.check_fw_commutation(gid, field, 0.0) == 0.0


def test_exact_commutators(field):
    reps = {r.relation: r for r in pc.check_poincare_algebra(field)}
    assert len(reps) == 45
    exact = [r for r in reps.values() if r.note == "exact"]
    assert len(exact) == 6 and all(r.residual <= 1e-10 for r in exact)
    assert reps["[p1,p2]"].residual <= 1e-10


def test_fd_commutators_are_small_but_grid_limited(field):
    # fourth-order differences on a unit Gaussian at dk = 0.5 reach the 1e-2 level
    fd = [r for r in pc.check_poincare_algebra(field) if r.note == "finite-difference"]
    assert max(r.residual for r in fd) < 0.2


def test_orderings_differ_but_both_close(field):
    left = pc.apply_generator("j01", field, "left")
    right = pc.apply_generator("j01", field, "right")
    assert (left - right).norm() > 1e-3 * field.norm()
    for o in pc.ORDERINGS:
        fd = [r.residual for r in pc.check_poincare_algebra(field, o) if r.relation == "[j01,j02]"]
        assert fd[0] < 0.2


def test_casimirs(field):
    c1, c2 = pc.casimir_check(field)
    assert c1 <= 1e-10
    assert c2 <= 1e-12


def test_casimir_single_mode():
    grid = sp.MomentumGrid((13, 1, 1), 0.5, 1.0)
    env = np.exp(-((grid.k[:, 0] - 3.0) ** 2) / 0.1)
    f = sp.SpinorFieldK(grid, env[:, None] * np.eye(4)[0], np.zeros((grid.size, 4)))
    c1, _ = pc.casimir_check(f)
    assert c1 <= 1e-12
