"""Momentum-space FW and Dirac dynamics.

A field is stored as two branches per grid node k, the coefficients of
``exp(+i k.x)`` (``pos``, the ``e^{-ikx}`` positive-frequency branch) and of
``exp(-i k.x)`` (``neg``).  Its Fourier transform is
``phi(p) = pos(p) + neg(-p)``, so an operator that is a matrix function M(p) of
the momentum acts as ``M(k)`` on ``pos`` and ``M(-k)`` on ``neg``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import GAMMA0, GAMMA_K, SIGMA
from .rlinear import RLinOp


def _check_mass(m: float) -> None:
    if not m > 0:
        raise ValueError(f"mass must be positive, got {m}")


@dataclass(frozen=True)
class MomentumSample:
    k: tuple
    m: float = 1.0

    def __post_init__(self):
        _check_mass(self.m)
        object.__setattr__(self, "k", tuple(float(x) for x in self.k))

    @property
    def omega(self) -> float:
        return omega(self)


def omega(s: MomentumSample) -> float:
    _check_mass(s.m)
    k = np.asarray(s.k, dtype=float)
    return float(np.sqrt(k @ k + s.m ** 2))


@dataclass(frozen=True)
class MomentumGrid:
    """Uniform lattice symmetric about k = 0 with odd per-axis counts."""

    counts: tuple = (9, 9, 9)
    dk: float = 0.5
    m: float = 1.0
    k: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if len(counts) != 3 or any(c < 1 or c % 2 == 0 for c in counts):
            raise ValueError(f"per-axis counts must be three odd positive integers, got {self.counts}")
        if not self.dk > 0:
            raise ValueError("grid spacing must be positive")
        _check_mass(self.m)
        object.__setattr__(self, "counts", counts)
        axes = [self.dk * (np.arange(c) - c // 2) for c in counts]
        kk = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, 3)
        kk.setflags(write=False)
        object.__setattr__(self, "k", kk)

    @property
    def size(self) -> int:
        return int(np.prod(self.counts))

    @property
    def weight(self) -> float:
        return self.dk ** 3

    @property
    def neg_index(self) -> np.ndarray:
        # C-order lattice symmetric about 0: node -k sits at the mirrored flat index
        return np.arange(self.size)[::-1]

    @property
    def omega(self) -> np.ndarray:
        return np.sqrt(np.sum(self.k ** 2, axis=1) + self.m ** 2)

    def samples(self) -> list:
        return [MomentumSample(tuple(k), self.m) for k in self.k]

    def as_dict(self) -> dict:
        return {"counts": list(self.counts), "dk": self.dk, "m": self.m}

    @classmethod
    def from_dict(cls, d: dict) -> "MomentumGrid":
        return cls(tuple(d["counts"]), float(d["dk"]), float(d["m"]))

    def refined(self, factor: int = 2) -> "MomentumGrid":
        """Same extent, spacing divided by ``factor``."""
        counts = tuple((c - 1) * factor + 1 for c in self.counts)
        return MomentumGrid(counts, self.dk / factor, self.m)


@dataclass(frozen=True, eq=False)
class SpinorFieldK:
    grid: MomentumGrid
    pos: np.ndarray
    neg: np.ndarray
    t: float = 0.0
    rep: str = "fw"

    def __post_init__(self):
        n = self.grid.size
        for name in ("pos", "neg"):
            a = np.array(getattr(self, name), dtype=np.complex128).reshape(n, 4)
            if not np.all(np.isfinite(a)):
                raise ValueError(f"non-finite entries in {name} branch")
            a.setflags(write=False)
            object.__setattr__(self, name, a)
        if self.rep not in ("fw", "dirac"):
            raise ValueError(f"unknown representation {self.rep!r}")

    def replace(self, **kw) -> "SpinorFieldK":
        # internal fast path: branch arrays produced here are already valid
        out = object.__new__(SpinorFieldK)
        for name in ("grid", "pos", "neg", "t", "rep"):
            object.__setattr__(out, name, kw.get(name, getattr(self, name)))
        for name in ("pos", "neg"):
            a = getattr(out, name)
            if a.dtype != np.complex128 or a.shape != (out.grid.size, 4):
                return SpinorFieldK(out.grid, out.pos, out.neg, out.t, out.rep)
            if a.flags.writeable:
                a.setflags(write=False)
        return out

    def fourier(self) -> np.ndarray:
        """phi(p) on the grid nodes."""
        return self.pos + self.neg[self.grid.neg_index]

    def norm(self) -> float:
        return float(np.sqrt(self.grid.weight * np.sum(np.abs(self.fourier()) ** 2)))

    def __add__(self, other):
        return self.replace(pos=self.pos + other.pos, neg=self.neg + other.neg)

    def __sub__(self, other):
        return self.replace(pos=self.pos - other.pos, neg=self.neg - other.neg)

    def scale(self, c: complex) -> "SpinorFieldK":
        return self.replace(pos=c * self.pos, neg=c * self.neg)


def zeros_field(grid: MomentumGrid, t: float = 0.0, rep: str = "fw") -> SpinorFieldK:
    z = np.zeros((grid.size, 4), dtype=complex)
    return SpinorFieldK(grid, z, z, t, rep)


# -- per-momentum matrices, vectorised over rows of q (shape (N, 3)) --------

def gamma_dot(q) -> np.ndarray:
    q = np.atleast_2d(np.asarray(q, dtype=float))
    return np.einsum("nk,kij->nij", q, np.array(GAMMA_K))


def sigma_dot(q) -> np.ndarray:
    q = np.atleast_2d(np.asarray(q, dtype=float))
    return np.einsum("nk,kij->nij", q, np.array(SIGMA))


def _omega(q, m) -> np.ndarray:
    q = np.atleast_2d(np.asarray(q, dtype=float))
    return np.sqrt(np.sum(q ** 2, axis=1) + m ** 2)


def hamiltonian_q(q, m: float) -> np.ndarray:
    _check_mass(m)
    return GAMMA0 @ gamma_dot(q) + m * GAMMA0


def v_plus_q(q, m: float) -> np.ndarray:
    _check_mass(m)
    w = _omega(q, m)[:, None, None]
    return (-gamma_dot(q) + (w + m) * np.eye(4)) / np.sqrt(2 * w * (w + m))


def v_minus_q(q, m: float) -> np.ndarray:
    _check_mass(m)
    w = _omega(q, m)[:, None, None]
    return (gamma_dot(q) + (w + m) * np.eye(4)) / np.sqrt(2 * w * (w + m))


def spinors_q(q, m: float) -> np.ndarray:
    """Columns v1-, v2-, v1+, v2+ at each momentum row."""
    _check_mass(m)
    q = np.atleast_2d(np.asarray(q, dtype=float))
    w = _omega(q, m)
    n = 1.0 / np.sqrt(2 * w * (w + m))
    sk = sigma_dot(q)
    out = np.zeros((len(q), 4, 4), dtype=complex)
    ident = (w + m)[:, None, None] * np.eye(2)
    out[:, :2, :2] = ident
    out[:, 2:, :2] = sk
    out[:, :2, 2:] = sk
    out[:, 2:, 2:] = ident
    return out * n[:, None, None]


def fw_propagator_q(q, m: float, t: float) -> np.ndarray:
    w = _omega(q, m)[:, None, None]
    return np.cos(w * t) * np.eye(4) - 1j * np.sin(w * t) * GAMMA0


def dirac_propagator_q(q, m: float, t: float) -> np.ndarray:
    w = _omega(q, m)[:, None, None]
    return np.cos(w * t) * np.eye(4) - 1j * (np.sin(w * t) / w) * hamiltonian_q(q, m)


# -- single-sample API -----------------------------------------------------

def dirac_hamiltonian(s: MomentumSample) -> np.ndarray:
    return hamiltonian_q([s.k], s.m)[0]


def v_plus(s: MomentumSample) -> np.ndarray:
    return v_plus_q([s.k], s.m)[0]


def v_minus(s: MomentumSample) -> np.ndarray:
    return v_minus_q([s.k], s.m)[0]


def dirac_spinors(s: MomentumSample) -> tuple:
    """(v1-, v2-, v1+, v2+)."""
    v = spinors_q([s.k], s.m)[0]
    return tuple(v[:, j] for j in range(4))


# the v operator diag(I2, C I2); only its involution property is used
V_OP = RLinOp(np.diag([1, 1, 0, 0]), np.diag([0, 0, 1, 1]))


# -- field maps ------------------------------------------------------------

def apply_momentum_matrix(f: SpinorFieldK, fn, **kw) -> SpinorFieldK:
    """Apply the matrix function ``fn(q)`` of the momentum operator."""
    k = f.grid.k
    pos = np.einsum("nij,nj->ni", fn(k), f.pos)
    neg = np.einsum("nij,nj->ni", fn(-k), f.neg)
    return f.replace(pos=pos, neg=neg, **kw)


def apply_momentum_scalar(f: SpinorFieldK, fn, **kw) -> SpinorFieldK:
    k = f.grid.k
    return f.replace(pos=fn(k)[:, None] * f.pos, neg=fn(-k)[:, None] * f.neg, **kw)


def apply_rlinear(f: SpinorFieldK, op: RLinOp) -> SpinorFieldK:
    """Pointwise R-linear operator; its antilinear part swaps the branches."""
    pos = f.pos @ op.L.T + f.neg.conj() @ op.A.T
    neg = f.neg @ op.L.T + f.pos.conj() @ op.A.T
    return f.replace(pos=pos, neg=neg)


def fw_transform(f: SpinorFieldK) -> SpinorFieldK:
    """psi = V+ phi (FW -> Pauli-Dirac)."""
    m = f.grid.m
    return apply_momentum_matrix(f, lambda q: v_plus_q(q, m), rep="dirac")


def inverse_fw_transform(f: SpinorFieldK) -> SpinorFieldK:
    """phi = V- psi."""
    m = f.grid.m
    return apply_momentum_matrix(f, lambda q: v_minus_q(q, m), rep="fw")


def fw_propagate(f: SpinorFieldK, t: float) -> SpinorFieldK:
    m = f.grid.m
    return apply_momentum_matrix(f, lambda q: fw_propagator_q(q, m, t), t=f.t + t)


def dirac_propagate(f: SpinorFieldK, t: float) -> SpinorFieldK:
    m = f.grid.m
    return apply_momentum_matrix(f, lambda q: dirac_propagator_q(q, m, t), t=f.t + t)


def propagate(f: SpinorFieldK, t: float, equation: str | None = None) -> SpinorFieldK:
    equation = equation or f.rep
    if equation == "fw":
        return fw_propagate(f, t)
    if equation == "dirac":
        return dirac_propagate(f, t)
    raise ValueError(f"unknown equation {equation!r}")


def generator_q(q, m: float, equation: str) -> np.ndarray:
    """Right-hand side matrix G with d(phi)/dt = G phi."""
    if equation == "fw":
        return -1j * _omega(q, m)[:, None, None] * GAMMA0
    if equation == "dirac":
        return -1j * hamiltonian_q(q, m)
    raise ValueError(f"unknown equation {equation!r}")


def rk4_propagate(f: SpinorFieldK, t: float, steps: int, equation: str | None = None) -> SpinorFieldK:
    """Classical fourth-order Runge-Kutta, used only as a check on the closed forms."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    equation = equation or f.rep
    m, k = f.grid.m, f.grid.k
    h = t / steps
    out = []
    for branch, q in ((f.pos, k), (f.neg, -k)):
        g = generator_q(q, m, equation)
        y = branch.copy()
        rhs = lambda v: np.einsum("nij,nj->ni", g, v)  # noqa: E731
        for _ in range(steps):
            k1 = rhs(y)
            k2 = rhs(y + 0.5 * h * k1)
            k3 = rhs(y + 0.5 * h * k2)
            k4 = rhs(y + h * k3)
            y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        out.append(y)
    return f.replace(pos=out[0], neg=out[1], t=f.t + t)


def field_diff(f1: SpinorFieldK, f2: SpinorFieldK) -> float:
    """Max over nodes of the Euclidean norm of the branch-wise difference."""
    d = np.concatenate([f1.pos - f2.pos, f1.neg - f2.neg], axis=0)
    return float(np.max(np.linalg.norm(d, axis=1), initial=0.0))


def rk4_order_study(f: SpinorFieldK, t: float, steps=(8, 16, 32, 64), equation: str | None = None) -> dict:
    """Errors against the closed-form propagator and the observed convergence orders."""
    exact = propagate(f, t, equation)
    errs = [field_diff(rk4_propagate(f, t, n, equation), exact) for n in steps]
    orders = [float(np.log2(a / b)) for a, b in zip(errs, errs[1:])]
    return {"steps": list(steps), "errors": errs, "orders": orders}
