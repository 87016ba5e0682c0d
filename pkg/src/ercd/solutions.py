"""Fermionic and bosonic solution families and the amplitude maps between them.

Amplitudes are stored unconjugated.  Conjugations required by the solution
formulas are applied at synthesis time (and undone in ``analyze``).  The
continuum normalisation (2 pi)^(-3/2) is dropped: one grid node is one unit
mode, and integrals become sums with weight dk^3.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .spectral import MomentumGrid, SpinorFieldK, field_diff, propagate, spinors_q

KINDS = ("fermionic", "bosonic-b", "bosonic-xi")
SQ2 = np.sqrt(2.0)

# a = A_FROM_B @ b and b = B_FROM_A @ a, amplitude order
# (a-+, a--, a+-, a++) and (b+, b-, b0, b0_)
A_FROM_B = np.array([[SQ2, 0, 0, 0],
                     [0, 0, -1, -1],
                     [0, -1j * SQ2, 0, 0],
                     [0, 0, 1, -1]]) / SQ2
B_FROM_A = np.array([[SQ2, 0, 0, 0],
                     [0, 0, 1j * SQ2, 0],
                     [0, -1, 0, 1],
                     [0, -1, 0, -1]]) / SQ2


@dataclass(frozen=True)
class UMat:
    a_from_b: np.ndarray = A_FROM_B
    b_from_a: np.ndarray = B_FROM_A


class KindError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class AmplitudeSet:
    grid: MomentumGrid
    kind: str
    amp: np.ndarray

    def __post_init__(self):
        if self.kind not in KINDS:
            raise KindError(f"unknown amplitude kind {self.kind!r}")
        a = np.array(self.amp, dtype=np.complex128).reshape(self.grid.size, 4)
        if not np.all(np.isfinite(a)):
            raise ValueError("non-finite amplitudes")
        a.setflags(write=False)
        object.__setattr__(self, "amp", a)

    def norm2(self) -> float:
        return float(self.grid.weight * np.sum(np.abs(self.amp) ** 2))

    def to_json(self) -> str:
        return json.dumps(amplitudes_to_dict(self))

    @classmethod
    def from_json(cls, text: str) -> "AmplitudeSet":
        return amplitudes_from_dict(json.loads(text))


def _require(x: AmplitudeSet, kind: str) -> None:
    if x.kind != kind:
        raise KindError(f"expected {kind} amplitudes, got {x.kind}")


def random_amplitudes(grid: MomentumGrid, kind: str, rng: np.random.Generator) -> AmplitudeSet:
    """Complex standard normal per slot."""
    z = (rng.standard_normal((grid.size, 4)) + 1j * rng.standard_normal((grid.size, 4))) / SQ2
    return AmplitudeSet(grid, kind, z)


def single_mode(grid: MomentumGrid, kind: str, node: int, slot: int, value: complex = 1.0) -> AmplitudeSet:
    a = np.zeros((grid.size, 4), dtype=complex)
    a[node, slot] = value
    return AmplitudeSet(grid, kind, a)


def xi_from_b(b: AmplitudeSet) -> AmplitudeSet:
    _require(b, "bosonic-b")
    b1, b2, b3, b4 = b.amp.T
    xi = np.stack([b1, -(b3 + b4) / SQ2, -1j * b2, (b3 - b4) / SQ2], axis=1)
    return AmplitudeSet(b.grid, "bosonic-xi", xi)


def b_from_xi(xi: AmplitudeSet) -> AmplitudeSet:
    _require(xi, "bosonic-xi")
    x1, x2, x3, x4 = xi.amp.T
    b = np.stack([x1, 1j * x3, (x4 - x2) / SQ2, -(x2 + x4) / SQ2], axis=1)
    return AmplitudeSet(xi.grid, "bosonic-b", b)


def a_from_b(b: AmplitudeSet) -> AmplitudeSet:
    _require(b, "bosonic-b")
    return AmplitudeSet(b.grid, "fermionic", b.amp @ A_FROM_B.T)


def b_from_a(a: AmplitudeSet) -> AmplitudeSet:
    _require(a, "fermionic")
    return AmplitudeSet(a.grid, "bosonic-b", a.amp @ B_FROM_A.T)


def _cartesian_field(grid, upper, lower_conj) -> SpinorFieldK:
    n = grid.size
    pos = np.zeros((n, 4), dtype=complex)
    neg = np.zeros((n, 4), dtype=complex)
    pos[:, :2] = upper
    neg[:, 2:] = np.conj(lower_conj)
    return SpinorFieldK(grid, pos, neg, 0.0, "fw")


def _spinor_field(grid, minus, plus_conj) -> SpinorFieldK:
    v = spinors_q(grid.k, grid.m)
    pos = np.einsum("nir,nr->ni", v[:, :, :2], minus)
    neg = np.einsum("nir,nr->ni", v[:, :, 2:], np.conj(plus_conj))
    return SpinorFieldK(grid, pos, neg, 0.0, "dirac")


def synth_fw_fermionic(a: AmplitudeSet) -> SpinorFieldK:
    _require(a, "fermionic")
    return _cartesian_field(a.grid, a.amp[:, :2], a.amp[:, 2:])


def synth_dirac_fermionic(a: AmplitudeSet) -> SpinorFieldK:
    _require(a, "fermionic")
    return _spinor_field(a.grid, a.amp[:, :2], a.amp[:, 2:])


def synth_fw_bosonic(b: AmplitudeSet) -> SpinorFieldK:
    _require(b, "bosonic-b")
    xi = xi_from_b(b).amp
    return _cartesian_field(b.grid, xi[:, :2], xi[:, 2:])


def synth_dirac_bosonic(b: AmplitudeSet) -> SpinorFieldK:
    """Bosonic solution written directly in b: the i multiplies conj(b2)."""
    _require(b, "bosonic-b")
    b1, b2, b3, b4 = b.amp.T
    grid = b.grid
    v = spinors_q(grid.k, grid.m)
    v1m, v2m, v1p, v2p = (v[:, :, j] for j in range(4))
    pos = b1[:, None] * v1m - ((b3 + b4) / SQ2)[:, None] * v2m
    neg = (1j * np.conj(b2))[:, None] * v1p + ((np.conj(b3) - np.conj(b4)) / SQ2)[:, None] * v2p
    return SpinorFieldK(grid, pos, neg, 0.0, "dirac")


def synthesize(amps: AmplitudeSet, rep: str = "fw") -> SpinorFieldK:
    if amps.kind == "bosonic-xi":
        amps = b_from_xi(amps)
    table = {
        ("fermionic", "fw"): synth_fw_fermionic,
        ("fermionic", "dirac"): synth_dirac_fermionic,
        ("bosonic-b", "fw"): synth_fw_bosonic,
        ("bosonic-b", "dirac"): synth_dirac_bosonic,
    }
    return table[amps.kind, rep](amps)


def analyze(field: SpinorFieldK, kind: str, dephase: bool = True) -> AmplitudeSet:
    """Amplitudes of a field on the solution basis.

    With ``dephase`` the time phases exp(-/+ i omega t) are removed, giving the
    t = 0 amplitudes of a solution; without it the instantaneous amplitudes
    (which carry exp(-i omega t)) are returned.
    """
    if kind not in KINDS:
        raise KindError(f"unknown amplitude kind {kind!r}")
    grid = field.grid
    pos, neg = field.pos, field.neg
    if dephase and field.t:
        ph = np.exp(1j * grid.omega * field.t)[:, None]
        pos, neg = pos * ph, neg * np.conj(ph)
    if field.rep == "fw":
        minus, plus_conj = pos[:, :2], neg[:, 2:]
    else:
        v = spinors_q(grid.k, grid.m)
        # orthonormal basis: projection by conjugate transpose
        minus = np.einsum("nir,ni->nr", v[:, :, :2].conj(), pos)
        plus_conj = np.einsum("nir,ni->nr", v[:, :, 2:].conj(), neg)
    a = AmplitudeSet(grid, "fermionic", np.concatenate([minus, np.conj(plus_conj)], axis=1))
    if kind == "fermionic":
        return a
    b = b_from_a(a)
    return b if kind == "bosonic-b" else xi_from_b(b)


def equation_residual(field: SpinorFieldK, which: str, t: float) -> float:
    """Distance between the propagated field and the field with analytic solution phases."""
    ph = np.exp(-1j * field.grid.omega * t)[:, None]
    expected = field.replace(pos=field.pos * ph, neg=field.neg * np.conj(ph), t=field.t + t)
    return field_diff(propagate(field, t, which), expected)


def swap_branches(field: SpinorFieldK) -> SpinorFieldK:
    """Negative control: positive-frequency content moved onto the negative branch."""
    return field.replace(pos=field.neg, neg=field.pos)


# -- JSON ------------------------------------------------------------------

def _pairs(v) -> list:
    return [[float(z.real), float(z.imag)] for z in v]


def _unpairs(rows) -> np.ndarray:
    return np.array([complex(re, im) for re, im in rows])


def amplitudes_to_dict(a: AmplitudeSet) -> dict:
    return {
        "grid": a.grid.as_dict(),
        "kind": a.kind,
        "nodes": [{"k": [float(x) for x in k], "amp": _pairs(v)} for k, v in zip(a.grid.k, a.amp)],
    }


def amplitudes_from_dict(d: dict) -> AmplitudeSet:
    grid = MomentumGrid.from_dict(d["grid"])
    nodes = d["nodes"]
    if len(nodes) != grid.size:
        raise ValueError(f"expected {grid.size} nodes, got {len(nodes)}")
    amp = np.array([_unpairs(n["amp"]) for n in nodes])
    return AmplitudeSet(grid, d["kind"], amp)


def field_to_dict(f: SpinorFieldK) -> dict:
    return {
        "grid": f.grid.as_dict(),
        "t": f.t,
        "rep": f.rep,
        "nodes": [{"k": [float(x) for x in k], "pos": _pairs(p), "neg": _pairs(q)}
                  for k, p, q in zip(f.grid.k, f.pos, f.neg)],
    }


def field_from_dict(d: dict) -> SpinorFieldK:
    grid = MomentumGrid.from_dict(d["grid"])
    pos = np.array([_unpairs(n["pos"]) for n in d["nodes"]])
    neg = np.array([_unpairs(n["neg"]) for n in d["nodes"]])
    return SpinorFieldK(grid, pos, neg, float(d["t"]), d["rep"])


def duality_residual(b: AmplitudeSet) -> float:
    """Bosonic Dirac solution against the fermionic one built from a_from_b(b)."""
    return field_diff(synth_dirac_bosonic(b), synth_dirac_fermionic(a_from_b(b)))
