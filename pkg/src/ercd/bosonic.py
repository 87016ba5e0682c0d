"""Bosonic spin-(1,0) representation.

The explicit matrices (breve orts, W, breve spin) are transcribed as data and
cross-checked against the routes that build them: conjugation by W and
composition of breve orts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import I2, SIGMA, Z2, GammaBasis, blockdiag
from .relations import RelationReport
from .rlinear import (IDENTITY, TOL_ALG, RLinOp, commutator, op_norm_diff,
                      to_real8)

SQ2 = np.sqrt(2.0)
s1, s2, s3 = SIGMA

# C-hat entries of a tabulated matrix go into the antilinear slot.
W_L = np.array([[SQ2, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, -1]]) / SQ2
W_A = np.array([[0, 0, 0, 0], [0, 0, 1j * SQ2, 0], [0, -1, 0, 0], [0, -1, 0, 0]]) / SQ2
# The inverse needs the same overall 1/sqrt(2) as W.
W_INV_L = np.array([[SQ2, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, -1]]) / SQ2
W_INV_A = np.array([[0, 0, 0, 0], [0, 0, -1, -1], [0, 1j * SQ2, 0, 0], [0, 0, 0, 0]]) / SQ2

BREVE_GAMMA_DATA = {
    0: RLinOp(blockdiag(s3, s1)),
    1: RLinOp(np.array([[0, 0, 1, -1], [0, 0, 1j, 1j], [-1, 1j, 0, 0], [1, 1j, 0, 0]]) / SQ2),
    2: RLinOp(np.array([[0, 0, -1j, 1j], [0, 0, -1, -1], [-1j, 1, 0, 0], [1j, 1, 0, 0]]) / SQ2),
    3: RLinOp(A=-blockdiag(s2, 1j * s2)),
    4: RLinOp(A=blockdiag(1j * s2, -s2)),
    5: RLinOp(np.array([[0, 0, -1, -1], [0, 0, 1j, -1j], [1, 1j, 0, 0], [1, -1j, 0, 0]]) / SQ2),
    6: RLinOp(np.array([[0, 0, -1j, -1j], [0, 0, 1, -1], [-1j, -1, 0, 0], [-1j, 1, 0, 0]]) / SQ2),
    7: RLinOp(1j * blockdiag(I2, -I2)),
}
BREVE_I_DATA = RLinOp(blockdiag(1j * s3, -1j * s1))
BREVE_C_DATA = RLinOp(A=blockdiag(s3, I2))

BREVE_SPIN_DATA = (
    RLinOp(A=np.array([[0, 0, 1j, 0], [0, 0, -1, 0], [-1j, 1, 0, 0], [0, 0, 0, 0]]) / SQ2),
    RLinOp(A=np.array([[0, 0, 1, 0], [0, 0, -1j, 0], [-1, 1j, 0, 0], [0, 0, 0, 0]]) / SQ2),
    RLinOp(np.diag([-1j, 1j, 0, 0])),
)
CASIMIR_VALUE = RLinOp(-2.0 * np.diag([1, 1, 1, 0]))


@dataclass(frozen=True)
class WPair:
    w: RLinOp
    w_inv: RLinOp

    def conjugate(self, op: RLinOp) -> RLinOp:
        """W op W^-1: fundamental representation to bosonic."""
        return self.w @ op @ self.w_inv


@dataclass(frozen=True)
class BreveBasis:
    breve_gamma: tuple
    breve_i: RLinOp
    breve_conj: RLinOp


@dataclass(frozen=True)
class BreveSpin:
    s: tuple
    composed: tuple

    def __getitem__(self, j: int) -> RLinOp:
        """1-based component s^j."""
        return self.s[j - 1]

    def casimir(self) -> RLinOp:
        c = RLinOp()
        for op in self.s:
            c = c + op @ op
        return c

    def residuals(self) -> list:
        return [op_norm_diff(a, b) for a, b in zip(self.s, self.composed)]


def build_w() -> WPair:
    return WPair(RLinOp(W_L, W_A), RLinOp(W_INV_L, W_INV_A))


def check_w(wp: WPair, tol: float = TOL_ALG) -> list:
    m = to_real8(wp.w)
    return [
        RelationReport("W.W^-1=I", op_norm_diff(wp.w @ wp.w_inv, IDENTITY), tol),
        RelationReport("W^-1.W=I", op_norm_diff(wp.w_inv @ wp.w, IDENTITY), tol),
        RelationReport("real8(W) orthogonal", float(np.max(np.abs(m.T @ m - np.eye(8)))), tol),
    ]


def build_breve_basis() -> BreveBasis:
    return BreveBasis(
        breve_gamma=tuple(BREVE_GAMMA_DATA[a] for a in range(8)),
        breve_i=BREVE_I_DATA,
        breve_conj=BREVE_C_DATA,
    )


def check_conjugation(wp: WPair, g: GammaBasis, b: BreveBasis, tol: float = TOL_ALG) -> list:
    """Residuals of W A W^-1 against each tabulated breve ort; failures are reported, not raised."""
    out = []
    for a in range(8):
        r = op_norm_diff(wp.conjugate(g.gamma[a]), b.breve_gamma[a])
        out.append(RelationReport(f"W.gamma{a}.W^-1=breve_gamma{a}", r, tol))
    out.append(RelationReport("W.i.W^-1=breve_i", op_norm_diff(wp.conjugate(g.imag), b.breve_i), tol))
    out.append(RelationReport("W.C.W^-1=breve_C", op_norm_diff(wp.conjugate(g.conj), b.breve_conj), tol))
    out.append(RelationReport("W.I.W^-1=I", op_norm_diff(wp.conjugate(IDENTITY), IDENTITY), tol))
    return out


def compose_breve_spin(b: BreveBasis) -> tuple:
    """Spin from breve orts, strict left-to-right composition."""
    g, bi, bc = b.breve_gamma, b.breve_i, b.breve_conj
    return (
        0.5 * (g[2] @ g[3] - g[0] @ g[2] @ bc),
        0.5 * (g[3] @ g[1] + bi @ g[0] @ g[2] @ bc),
        0.5 * (g[1] @ g[2] - bi),
    )


def build_breve_spin(b: BreveBasis) -> BreveSpin:
    return BreveSpin(s=BREVE_SPIN_DATA, composed=compose_breve_spin(b))


def check_breve_spin(s: BreveSpin, tol: float = TOL_ALG) -> list:
    return [RelationReport(f"composed_s{j + 1}=explicit_s{j + 1}", r, tol)
            for j, r in enumerate(s.residuals())]


# [s^a, s^b] = SU2_SIGN * s^c for cyclic (a, b, c); fixed by the oracle.
SU2_SIGN = 1.0


def check_su2_closure(s: BreveSpin, tol: float = TOL_ALG) -> list:
    out = []
    for a, b, c in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        r = op_norm_diff(commutator(s[a], s[b]), SU2_SIGN * s[c])
        out.append(RelationReport(f"[s{a},s{b}]=s{c}", r, tol))
    out.append(RelationReport("casimir=-2diag(I3,0)", op_norm_diff(s.casimir(), CASIMIR_VALUE), tol))
    return out


def physical_s3_eigenvalues(s: BreveSpin) -> np.ndarray:
    """Eigenvalues of i*s^3 on d1..d4, in that order."""
    op = 1j * s[3]
    return np.array([np.vdot(np.eye(4)[j], op(np.eye(4)[j])).real for j in range(4)])


def casimir_rank(s: BreveSpin, cutoff: float = 1e-8) -> int:
    # antilinear parts make rank a real-dimension count; divide by 2 for C^4
    sv = np.linalg.svd(to_real8(s.casimir()), compute_uv=False)
    return int(np.sum(sv > cutoff)) // 2
