"""The seven gamma orts and the 29-ort proper extended real Clifford-Dirac algebra.

Standard Pauli-Dirac representation.  gamma^4..gamma^7 are built by composition
from gamma^0..gamma^3, the imaginary unit and complex conjugation, so any sign
slip in the base matrices propagates into the relation checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .relations import RelationReport
from .rlinear import (CONJ, IDENTITY, IMAG, TOL_ALG, RLinOp, anticommutator,
                      commutator, linear, op_norm_diff, to_real8)

SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
I2 = np.eye(2, dtype=complex)
Z2 = np.zeros((2, 2), dtype=complex)

GAMMA0 = np.block([[I2, Z2], [Z2, -I2]])
GAMMA_K = tuple(np.block([[Z2, s], [-s, Z2]]) for s in SIGMA)


def blockdiag(a, b) -> np.ndarray:
    return np.block([[a, Z2], [Z2, b]])


@dataclass(frozen=True)
class GammaBasis:
    """``gamma[0]`` is gamma^0; ``gamma[1..7]`` are the orts gamma^1..gamma^7."""

    gamma: tuple
    conj: RLinOp
    imag: RLinOp

    @property
    def gamma0(self) -> RLinOp:
        return self.gamma[0]


def build_gammas() -> GammaBasis:
    g0 = linear(GAMMA0)
    g1, g2, g3 = (linear(g) for g in GAMMA_K)
    g4 = g0 @ g1 @ g2 @ g3
    g5 = g1 @ g3 @ CONJ
    g6 = IMAG @ g1 @ g3 @ CONJ
    g7 = IMAG @ g0
    return GammaBasis(gamma=(g0, g1, g2, g3, g4, g5, g6, g7), conj=CONJ, imag=IMAG)


def check_anticommutation(g: GammaBasis, tol: float = TOL_ALG) -> list:
    out = []
    for a, b in itertools.combinations_with_replacement(range(1, 8), 2):
        lhs = anticommutator(g.gamma[a], g.gamma[b])
        rhs = (-2.0 * (a == b)) * IDENTITY
        out.append(RelationReport(f"anticomm({a},{b})", op_norm_diff(lhs, rhs), tol))
    return out


class SpinTensor:
    """s^{AB}, A,B = 1..8: s^{AB} = [g^A, g^B]/4 and s^{A8} = -s^{8A} = g^A/2."""

    def __init__(self, g: GammaBasis):
        s = {}
        for a in range(1, 9):
            s[a, a] = RLinOp()
        for a, b in itertools.combinations(range(1, 9), 2):
            if b == 8:
                op = 0.5 * g.gamma[a]
            else:
                op = 0.25 * commutator(g.gamma[a], g.gamma[b])
            s[a, b] = op
            s[b, a] = -op
        self._s = s
        self.unit = IDENTITY

    def __call__(self, a: int, b: int) -> RLinOp:
        return self._s[a, b]

    def __getitem__(self, ab) -> RLinOp:
        return self._s[tuple(ab)]

    def independent(self) -> list:
        """I_4 followed by the 28 s^{AB} with A < B."""
        return [self.unit] + [self._s[a, b] for a, b in itertools.combinations(range(1, 9), 2)]


def build_spin_tensor(g: GammaBasis) -> SpinTensor:
    return SpinTensor(g)


def check_so8(t: SpinTensor, tol: float = TOL_ALG) -> list:
    out = []
    d = lambda i, j: 1.0 if i == j else 0.0  # noqa: E731
    for a, b, c, e in itertools.product(range(1, 9), repeat=4):
        lhs = commutator(t(a, b), t(c, e))
        rhs = (d(a, c) * t(b, e) + d(c, b) * t(e, a)
               + d(b, e) * t(a, c) + d(e, a) * t(c, b))
        out.append(RelationReport(f"so8({a},{b},{c},{e})", op_norm_diff(lhs, rhs), tol))
    return out


def ort_rank(t: SpinTensor, cutoff: float = 1e-8) -> int:
    """Numerical rank of the 29 orts flattened into R^64."""
    rows = np.array([to_real8(o).ravel() for o in t.independent()])
    sv = np.linalg.svd(rows, compute_uv=False)
    return int(np.sum(sv > cutoff))


def so6_generators(t: SpinTensor) -> list:
    """The 15 s^{AB}, 1 <= A < B <= 6, followed by I_4."""
    return [t(a, b) for a, b in itertools.combinations(range(1, 7), 2)] + [t.unit]


def fw_propagator(omega: float, t: float) -> RLinOp:
    """exp(-i gamma^0 omega t) at fixed momentum."""
    return linear(np.cos(omega * t) * np.eye(4) - 1j * np.sin(omega * t) * GAMMA0)


def check_fw_invariance(ops, samples, times, tol: float = TOL_ALG, labels=None) -> list:
    out = []
    labels = labels or [f"op{i}" for i in range(len(ops))]
    for s in samples:
        if s.m <= 0:
            raise ValueError("mass must be positive")
        w = s.omega
        for t in times:
            u = fw_propagator(w, t)
            for name, q in zip(labels, ops):
                r = op_norm_diff(q @ u, u @ q)
                out.append(RelationReport(
                    f"fw_invariance({name},k={list(map(float, s.k))},t={t})", r, tol))
    return out


def so6_labels() -> list:
    return [f"s{a}{b}" for a, b in itertools.combinations(range(1, 7), 2)] + ["I4"]
