"""Bosonic Poincare generators on momentum-space FW fields.

Index conventions: metric (+,-,-,-); ``x_l = -x^l``; ``d_n = d/dx^n`` acts as
multiplication by ``+i q^n``; ``x^l`` acts as ``+i d/dk_l`` on the ``pos``
branch and ``-i d/dk_l`` on the ``neg`` branch.  k-derivatives use fourth
order centred differences; the two outer layers are left at zero, which the
test-field decay precondition makes harmless.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import GAMMA0
from .bosonic import BREVE_SPIN_DATA, CASIMIR_VALUE
from .relations import RelationReport
from .rlinear import RLinOp, op_norm_diff
from .spectral import (MomentumGrid, SpinorFieldK, apply_momentum_matrix,
                       apply_momentum_scalar, apply_rlinear, fw_propagate)

TOL_SPEC = 1e-6
TOL_EXACT = 1e-10
METRIC = np.diag([1.0, -1.0, -1.0, -1.0])
BOUNDARY_TOL = 1e-8

GENERATORS = ("p0", "p1", "p2", "p3", "j12", "j13", "j23", "j01", "j02", "j03")
ORDERINGS = ("left", "right")

# breve spin as an antisymmetric tensor: s_23 = s^1, s_31 = s^2, s_12 = s^3
_SPIN_INDEX = {(2, 3): 0, (3, 1): 1, (1, 2): 2}
_EPS = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1, (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1}


def spin_tensor(l: int, n: int) -> RLinOp:
    if (l, n) in _SPIN_INDEX:
        return BREVE_SPIN_DATA[_SPIN_INDEX[l, n]]
    if (n, l) in _SPIN_INDEX:
        return -BREVE_SPIN_DATA[_SPIN_INDEX[n, l]]
    return RLinOp()


# -- primitive field operations -------------------------------------------

def fd_derivative(values: np.ndarray, counts, dk: float, axis: int) -> np.ndarray:
    """Fourth-order centred d/dk along ``axis`` for values of shape (N, 4)."""
    a = values.reshape(*counts, 4)
    out = np.zeros_like(a)
    n = counts[axis]
    if n >= 5:
        sl = lambda lo, hi: tuple(slice(lo, hi) if ax == axis else slice(None) for ax in range(4))  # noqa: E731
        out[sl(2, n - 2)] = (a[sl(0, n - 4)] - 8 * a[sl(1, n - 3)]
                             + 8 * a[sl(3, n - 1)] - a[sl(4, n)]) / (12 * dk)
    return out.reshape(-1, 4)


def position(f: SpinorFieldK, l: int) -> SpinorFieldK:
    """Contravariant x^l, l = 1..3."""
    g = f.grid
    return f.replace(pos=1j * fd_derivative(f.pos, g.counts, g.dk, l - 1),
                     neg=-1j * fd_derivative(f.neg, g.counts, g.dk, l - 1))


def position_lower(f: SpinorFieldK, l: int) -> SpinorFieldK:
    return position(f, l).scale(-1.0)


def partial(f: SpinorFieldK, n: int) -> SpinorFieldK:
    return apply_momentum_scalar(f, lambda q: 1j * q[:, n - 1])


def omega_times(f: SpinorFieldK, power: float = 1.0, shift: float = 0.0) -> SpinorFieldK:
    m = f.grid.m
    return apply_momentum_scalar(f, lambda q: (np.sqrt(np.sum(q ** 2, axis=1) + m * m) + shift) ** power)


_I_GAMMA0 = RLinOp(1j * GAMMA0)


# -- generators -------------------------------------------------------------

def _p0(f):
    m = f.grid.m
    return apply_momentum_matrix(
        f, lambda q: (-1j * np.sqrt(np.sum(q ** 2, axis=1) + m * m))[:, None, None] * GAMMA0)


def _rotation(f, l, n):
    orb = position_lower(partial(f, n), l) - position_lower(partial(f, l), n)
    return orb + apply_rlinear(f, spin_tensor(l, n))


def _boost(f, k, ordering):
    if ordering == "left":
        xw = position_lower(omega_times(f), k)
    elif ordering == "right":
        xw = omega_times(position_lower(f, k))
    else:
        raise ValueError(f"unknown ordering {ordering!r}")
    inner = xw + omega_times(partial(f, k), -1.0).scale(0.5)
    m = f.grid.m
    for (a, b, c), sign in _EPS.items():
        if a != k - 1:
            continue
        term = apply_rlinear(partial(f, c + 1), BREVE_SPIN_DATA[b])
        inner = inner + omega_times(term, -1.0, m).scale(sign)
    return partial(f, k).scale(f.t) + apply_rlinear(inner, _I_GAMMA0)


def check_smooth(f: SpinorFieldK, depth: int = 2, tol: float = BOUNDARY_TOL) -> None:
    peak = max(np.max(np.abs(f.pos)), np.max(np.abs(f.neg)))
    if peak == 0:
        return
    mask = np.zeros(f.grid.counts, dtype=bool)
    for ax, c in enumerate(f.grid.counts):
        idx = [slice(None)] * 3
        idx[ax] = np.r_[0:depth, c - depth:c]
        mask[tuple(idx)] = True
    mask = mask.ravel()
    edge = max(np.max(np.abs(f.pos[mask]), initial=0), np.max(np.abs(f.neg[mask]), initial=0))
    if edge > tol * peak:
        raise ValueError(f"field is not decayed at the grid boundary ({edge / peak:.2e} of peak)")


def apply_generator(gid: str, f: SpinorFieldK, ordering: str = "left") -> SpinorFieldK:
    if gid == "p0":
        return _p0(f)
    if gid in ("p1", "p2", "p3"):
        return partial(f, int(gid[1]))
    if gid in GENERATORS and gid.startswith("j"):
        check_smooth(f)
        a, b = int(gid[1]), int(gid[2])
        return _boost(f, b, ordering) if a == 0 else _rotation(f, a, b)
    raise ValueError(f"unknown generator {gid!r}")


def derivative_bearing(gid: str) -> bool:
    return gid.startswith("j")


# -- structure constants --------------------------------------------------

def _parse(gid):
    return gid[0], tuple(int(c) for c in gid[1:])


def _j(mu, nu):
    """j_{mu nu} as {name: coefficient}."""
    if mu == nu:
        return {}
    if mu < nu:
        return {f"j{mu}{nu}": 1.0}
    return {f"j{nu}{mu}": -1.0}


def _add(acc, terms, c):
    if c:
        for k, v in terms.items():
            acc[k] = acc.get(k, 0.0) + c * v


def structure(g1: str, g2: str) -> dict:
    """[g1, g2] as a linear combination of generators."""
    t1, i1 = _parse(g1)
    t2, i2 = _parse(g2)
    g = METRIC
    out: dict = {}
    if t1 == "p" and t2 == "p":
        return out
    if t1 == "j" and t2 == "p":
        return {k: -v for k, v in structure(g2, g1).items()}
    if t1 == "p":
        (mu,), (rho, sig) = i1, i2
        _add(out, {f"p{sig}": 1.0}, g[mu, rho])
        _add(out, {f"p{rho}": 1.0}, -g[mu, sig])
    else:
        (mu, nu), (rho, sig) = i1, i2
        _add(out, _j(mu, sig), g[nu, rho])
        _add(out, _j(nu, sig), -g[mu, rho])
        _add(out, _j(mu, rho), -g[nu, sig])
        _add(out, _j(nu, rho), g[mu, sig])
    return {k: v for k, v in out.items() if v}


def structure_table() -> dict:
    return {f"[{a},{b}]": structure(a, b) for a, b in itertools.combinations(GENERATORS, 2)}


def structure_tensor() -> np.ndarray:
    n = len(GENERATORS)
    c = np.zeros((n, n, n))
    for i, a in enumerate(GENERATORS):
        for j, b in enumerate(GENERATORS):
            for name, v in structure(a, b).items():
                c[i, j, GENERATORS.index(name)] = v
    return c


def jacobi_residual() -> float:
    c = structure_tensor()
    # [[a,b],c] + [[b,c],a] + [[c,a],b] = 0 on the generator basis
    t = np.einsum("abd,dce->abce", c, c)
    jac = t + np.transpose(t, (1, 2, 0, 3)) + np.transpose(t, (2, 0, 1, 3))
    return float(np.max(np.abs(jac)))


# -- test fields and checks -----------------------------------------------

@dataclass(frozen=True)
class TestFieldSpec:
    """Gaussian of width ``width`` times a random degree-2 polynomial in k."""

    width: float = 1.0
    extent: float = 8.0
    seed: int = 7
    __test__ = False

    def grid(self, dk: float = 0.5, m: float = 1.0) -> MomentumGrid:
        half = int(round(self.extent / dk))
        return MomentumGrid((2 * half + 1,) * 3, dk, m)

    def sample(self, grid: MomentumGrid, t: float = 0.0) -> SpinorFieldK:
        rng = np.random.default_rng(self.seed)
        monos = [()] + [(i,) for i in range(3)] + list(itertools.combinations_with_replacement(range(3), 2))
        k = grid.k
        env = np.exp(-np.sum(k ** 2, axis=1) / (2 * self.width ** 2))
        branches = []
        for _ in range(2):
            coef = rng.standard_normal((len(monos), 4)) + 1j * rng.standard_normal((len(monos), 4))
            poly = np.zeros((grid.size, 4), dtype=complex)
            for c, mono in zip(coef, monos):
                poly += np.prod(k[:, list(mono)], axis=1)[:, None] * c if mono else c
            branches.append(env[:, None] * poly)
        return SpinorFieldK(grid, branches[0], branches[1], t, "fw")


def _rel(a: SpinorFieldK, b: SpinorFieldK, ref: float) -> float:
    return (a - b).norm() / ref


def check_fw_commutation(gid: str, f: SpinorFieldK, t: float, ordering: str = "left") -> float:
    lhs = apply_generator(gid, fw_propagate(f, t), ordering)
    rhs = fw_propagate(apply_generator(gid, f, ordering), t)
    return _rel(lhs, rhs, f.norm())


def _combination(terms: dict, f: SpinorFieldK, cache: dict) -> SpinorFieldK:
    out = f.scale(0.0)
    for name, c in terms.items():
        out = out + cache[name].scale(c)
    return out


def check_poincare_algebra(f: SpinorFieldK, ordering: str = "left",
                           tol_exact: float = TOL_EXACT, tol_spec: float = TOL_SPEC) -> list:
    once = {g: apply_generator(g, f, ordering) for g in GENERATORS}
    ref = f.norm()
    out = []
    for a, b in itertools.combinations(GENERATORS, 2):
        ab = apply_generator(a, once[b], ordering)
        ba = apply_generator(b, once[a], ordering)
        expect = _combination(structure(a, b), f, once)
        r = _rel(ab - ba, expect, ref)
        fd = derivative_bearing(a) or derivative_bearing(b)
        out.append(RelationReport(f"[{a},{b}]", r, tol_spec if fd else tol_exact,
                                  note="finite-difference" if fd else "exact"))
    return out


def casimir_check(f: SpinorFieldK) -> tuple:
    """(c1, c2): mass-shell residual on f and the spin-Casimir matrix residual."""
    m = f.grid.m
    if not m > 0:
        raise ValueError("mass must be positive")
    lhs = _p0(_p0(f))
    for n in (1, 2, 3):
        lhs = lhs - partial(partial(f, n), n)
    c1 = _rel(lhs, f.scale(-m * m), f.norm())
    s2 = RLinOp()
    for s in BREVE_SPIN_DATA:
        s2 = s2 + s @ s
    c2 = op_norm_diff(m * m * s2, m * m * CASIMIR_VALUE)
    return c1, c2


def fw_commutation_reports(f: SpinorFieldK, t: float, ordering: str = "left",
                           tol_exact: float = TOL_EXACT, tol_spec: float = TOL_SPEC) -> list:
    out = []
    for g in GENERATORS:
        fd = derivative_bearing(g)
        out.append(RelationReport(f"fw_commute({g},t={t})", check_fw_commutation(g, f, t, ordering),
                                  tol_spec if fd else tol_exact,
                                  note="finite-difference" if fd else "exact"))
    return out


def convergence_study(spec: TestFieldSpec = TestFieldSpec(), dk: float = 0.5, m: float = 1.0,
                      levels: int = 1, t: float = 1.0, ordering: str = "left",
                      factor: int = 2) -> dict:
    """Worst derivative-bearing residual on grids refined ``levels`` times by ``factor``."""
    grid = spec.grid(dk, m)
    worst, detail = [], []
    for _ in range(levels + 1):
        f = spec.sample(grid)
        reps = [r for r in fw_commutation_reports(f, t, ordering) + check_poincare_algebra(f, ordering)
                if r.note == "finite-difference"]
        worst.append(max(r.residual for r in reps))
        detail.append({"dk": grid.dk, "counts": list(grid.counts), "worst": worst[-1]})
        grid = grid.refined(factor)
    ratios = [a / b for a, b in zip(worst, worst[1:])]
    return {"levels": detail, "ratios": ratios,
            "orders": [float(np.log(r) / np.log(factor)) for r in ratios]}
