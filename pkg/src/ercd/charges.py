"""Spin conservation laws in amplitude space.

The charge of an amplitude set is ``sum_k w * col(k)^H (s col(k))`` where the
column conjugates the last two slots:
``(a-+, a--, conj(a+-), conj(a++))`` for fermions and
``(b1, b2, conj(b3), conj(b4))`` for bosons.  Values are returned raw; the
bosonic spin is anti-Hermitian and antilinear, so they need not be real.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import SIGMA, blockdiag
from .bosonic import BREVE_SPIN_DATA
from .rlinear import CONJ, RLinOp, apply, linear
from .solutions import AmplitudeSet, KindError, analyze, synthesize
from .spectral import fw_propagate

TOL_CONS = 1e-10


@dataclass(frozen=True)
class SpinChoice:
    label: str
    family: str
    components: tuple


def fermi_field_spin() -> SpinChoice:
    ops = tuple(linear(0.5 * blockdiag(s, s)) for s in SIGMA)
    return SpinChoice("fermi-field", "fermionic", ops)


def fermi_qm_spin() -> SpinChoice:
    # lower block is -C sigma C
    ops = []
    for s in SIGMA:
        lower = -(CONJ @ linear(blockdiag(s, s)) @ CONJ).L[2:, 2:]
        ops.append(linear(0.5 * blockdiag(s, lower)))
    return SpinChoice("fermi-qm", "fermionic", tuple(ops))


def bose_spin() -> SpinChoice:
    return SpinChoice("bose", "bosonic-b", BREVE_SPIN_DATA)


SPINS = {"fermi-field": fermi_field_spin, "fermi-qm": fermi_qm_spin, "bose": bose_spin}


def spin_choices() -> list:
    return [f() for f in SPINS.values()]


def column(amps: AmplitudeSet) -> np.ndarray:
    a = amps.amp
    return np.concatenate([a[:, :2], np.conj(a[:, 2:])], axis=1)


def charge(amps: AmplitudeSet, spin: SpinChoice, component: int) -> complex:
    if amps.kind != spin.family:
        raise KindError(f"{spin.label} spin needs {spin.family} amplitudes, got {amps.kind}")
    if component not in (1, 2, 3):
        raise ValueError("component must be 1, 2 or 3")
    op: RLinOp = spin.components[component - 1]
    col = column(amps)
    dens = np.einsum("ni,ni->n", col.conj(), apply(op, col))
    return complex(amps.grid.weight * np.sum(dens))


@dataclass
class ChargeReport:
    spin: str
    component: int
    value: complex
    times: list
    values: list = field(default_factory=list)
    max_drift: float = 0.0
    tol: float = TOL_CONS

    @property
    def passed(self) -> bool:
        return self.max_drift <= self.tol

    def as_dict(self) -> dict:
        return {
            "spin": self.spin, "component": self.component,
            "value": [self.value.real, self.value.imag],
            "times": list(self.times),
            "values": [[v.real, v.imag] for v in self.values],
            "max_drift": self.max_drift, "tol": self.tol, "pass": self.passed,
        }


def conservation_sweep(amps: AmplitudeSet, spin: SpinChoice, times, tol: float = TOL_CONS) -> list:
    """Evolve the FW field, re-read the instantaneous amplitudes, recompute every component.

    The instantaneous amplitudes all carry exp(-i omega t); the conjugated
    column slots carry the opposite phase, so conservation is a statement
    about which slots the spin operator couples.
    """
    base = synthesize(amps, "fw")
    per_time = []
    for t in times:
        now = analyze(fw_propagate(base, t), amps.kind, dephase=False)
        per_time.append([charge(now, spin, c) for c in (1, 2, 3)])
    reports = []
    for c in range(3):
        vals = [row[c] for row in per_time]
        ref = charge(amps, spin, c + 1)
        drift = max((abs(v - ref) for v in vals), default=0.0)
        reports.append(ChargeReport(spin.label, c + 1, ref, list(times), vals, float(drift), tol))
    return reports


_SIX = "one of the 22 laws per family; no explicit formula, not evaluated"


def charge_total_count_report() -> list:
    """44 rows: per family 10 Poincare plus 12 additional conservation laws."""
    rows = []
    for family in ("fermionic", "bosonic"):
        spin_src = "fermi-field / fermi-qm spin" if family == "fermionic" else "bose spin"
        rows.append((family, "energy", 1, True, "p0 generator"))
        rows += [(family, f"momentum_{n}", 1, True, f"p{n} generator") for n in (1, 2, 3)]
        rows += [(family, f"rotation_{ln}", 1, True, f"j{ln} generator") for ln in ("23", "31", "12")]
        rows += [(family, f"boost_{k}", 1, False, "Lorentz boost charge not evaluated") for k in (1, 2, 3)]
        rows += [(family, f"spin_{j}", 1, True, spin_src) for j in (1, 2, 3)]
        rows += [(family, f"boost_spin_{j}", 1, False, _SIX) for j in (1, 2, 3)]
        rows += [(family, f"angular_momentum_{j}", 1, False, _SIX) for j in (1, 2, 3)]
        rows += [(family, f"pure_angular_momentum_{j}", 1, False, _SIX) for j in (1, 2, 3)]
    return [{"family": f, "law": n, "count": c, "computed": comp, "source": s}
            for f, n, c, comp, s in rows]
