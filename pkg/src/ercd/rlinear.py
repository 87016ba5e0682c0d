"""R-linear operators on C^4.

Every operator is stored as a pair ``(L, A)`` acting as ``v -> L v + A conj(v)``.
The 8x8 real matrix on ``(Re v; Im v)`` is kept as an independent oracle for
equality tests and for checking the composition law.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number

import numpy as np

TOL_ALG = 1e-12


def _frozen(m) -> np.ndarray:
    a = np.array(m, dtype=np.complex128)
    if a.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("operator entries must be finite")
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class RLinOp:
    """Real-linear operator ``v -> L v + A conj(v)``."""

    L: np.ndarray
    A: np.ndarray

    def __init__(self, L=None, A=None):
        object.__setattr__(self, "L", _frozen(np.zeros((4, 4)) if L is None else L))
        object.__setattr__(self, "A", _frozen(np.zeros((4, 4)) if A is None else A))

    @property
    def is_linear(self) -> bool:
        return not np.any(self.A)

    def __matmul__(self, other: "RLinOp") -> "RLinOp":
        return compose(self, other)

    def __add__(self, other: "RLinOp") -> "RLinOp":
        return RLinOp(self.L + other.L, self.A + other.A)

    def __sub__(self, other: "RLinOp") -> "RLinOp":
        return RLinOp(self.L - other.L, self.A - other.A)

    def __neg__(self) -> "RLinOp":
        return RLinOp(-self.L, -self.A)

    def __rmul__(self, c: Number) -> "RLinOp":
        # c * op: multiply the output by c
        if not isinstance(c, Number):
            return NotImplemented
        return RLinOp(c * self.L, c * self.A)

    def __mul__(self, c: Number) -> "RLinOp":
        # op * c: multiply the input by c, so the antilinear part sees conj(c)
        if not isinstance(c, Number):
            return NotImplemented
        return RLinOp(self.L * c, self.A * np.conj(c))

    def __call__(self, v):
        return apply(self, v)

    def __repr__(self) -> str:
        return f"RLinOp(L={self.L.tolist()}, A={self.A.tolist()})"


IDENTITY = RLinOp(np.eye(4))
ZERO = RLinOp()
CONJ = RLinOp(A=np.eye(4))
IMAG = RLinOp(1j * np.eye(4))


def linear(m) -> RLinOp:
    return RLinOp(L=m)


def antilinear(m) -> RLinOp:
    """The operator ``m @ conj(.)``, i.e. a matrix written to the left of C-hat."""
    return RLinOp(A=m)


def compose(o1: RLinOp, o2: RLinOp) -> RLinOp:
    """``o1 . o2`` (apply ``o2`` first)."""
    return RLinOp(
        o1.L @ o2.L + o1.A @ o2.A.conj(),
        o1.L @ o2.A + o1.A @ o2.L.conj(),
    )


def apply(o: RLinOp, v) -> np.ndarray:
    """Apply to a single vector (shape (4,)) or a stack of vectors (shape (..., 4))."""
    v = np.asarray(v, dtype=np.complex128)
    return v @ o.L.T + v.conj() @ o.A.T


def commutator(o1: RLinOp, o2: RLinOp) -> RLinOp:
    return compose(o1, o2) - compose(o2, o1)


def anticommutator(o1: RLinOp, o2: RLinOp) -> RLinOp:
    return compose(o1, o2) + compose(o2, o1)


def to_real8(o: RLinOp) -> np.ndarray:
    """8x8 real matrix of ``o`` in the basis ``v -> (Re v; Im v)``."""
    L, A = o.L, o.A
    return np.block([
        [L.real + A.real, -L.imag + A.imag],
        [L.imag + A.imag, L.real - A.real],
    ])


def from_real8(m) -> RLinOp:
    m = np.asarray(m, dtype=float)
    if m.shape != (8, 8):
        raise ValueError(f"expected an 8x8 real matrix, got shape {m.shape}")
    m11, m12, m21, m22 = m[:4, :4], m[:4, 4:], m[4:, :4], m[4:, 4:]
    L = 0.5 * (m11 + m22) + 0.5j * (m21 - m12)
    A = 0.5 * (m11 - m22) + 0.5j * (m21 + m12)
    return RLinOp(L, A)


def op_norm_diff(o1: RLinOp, o2: RLinOp) -> float:
    """Max-abs entry difference of the real 8x8 oracles."""
    return float(np.max(np.abs(to_real8(o1) - to_real8(o2))))


def real8_vector(v) -> np.ndarray:
    v = np.asarray(v, dtype=np.complex128)
    return np.concatenate([v.real, v.imag], axis=-1)
