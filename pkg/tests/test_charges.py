import numpy as np
import pytest

from ercd import charges as ch
from ercd import solutions as so
from ercd.spectral import MomentumGrid

ONE = MomentumGrid((1, 1, 1), 0.5, 1.0)
W = ONE.weight


def single(kind, vec):
    return so.AmplitudeSet(ONE, kind, np.array([vec], dtype=complex))


def test_fermi_field_spin_up():
    assert ch.charge(single("fermionic", (1, 0, 0, 0)), ch.fermi_field_spin(), 3) == pytest.approx(0.5 * W)


def test_fermi_qm_lower_block_flipped():
    assert ch.charge(single("fermionic", (0, 0, 1, 0)), ch.fermi_qm_spin(), 3) == pytest.approx(-0.5 * W)
    assert ch.charge(single("fermionic", (0, 0, 1, 0)), ch.fermi_field_spin(), 3) == pytest.approx(0.5 * W)


def test_bose_raw_component_three():
    assert ch.charge(single("bosonic-b", (1, 0, 0, 0)), ch.bose_spin(), 3) == pytest.approx(-1j * W)


def test_family_mismatch_rejected():
    with pytest.raises(so.KindError):
        ch.charge(single("fermionic", (1, 0, 0, 0)), ch.bose_spin(), 1)
    with pytest.raises(ValueError):
        ch.charge(single("fermionic", (1, 0, 0, 0)), ch.fermi_field_spin(), 4)


def test_qm_spin_su2(rng):
    # the lower block -conj(sigma)/2 is again an su(2) representation
    s = ch.fermi_qm_spin().components
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        lhs = s[a].L @ s[b].L - s[b].L @ s[a].L
        assert np.allclose(lhs, 1j * s[c].L)


@pytest.mark.parametrize("label", list(ch.SPINS))
def test_conservation_random(grid9, rng, label):
    spin = ch.SPINS[label]()
    amps = so.random_amplitudes(grid9, spin.family, rng)
    reps = ch.conservation_sweep(amps, spin, [0.0, 0.7, 3.1, 10.0])
    assert len(reps) == 3
    assert all(r.passed for r in reps), [r.max_drift for r in reps]


def test_zero_amplitudes_zero_charge(small_grid):
    z = so.AmplitudeSet(small_grid, "bosonic-b", np.zeros((small_grid.size, 4)))
    for r in ch.conservation_sweep(z, ch.bose_spin(), [0.0, 1.0]):
        assert r.value == 0 and all(v == 0 for v in r.values)


def test_bose_transverse_charges_vanish_identically(grid9, rng):
    # s1, s2 are antilinear with antisymmetric matrices: B^H A conj(B) = y^T A y = 0
    amps = so.random_amplitudes(grid9, "bosonic-b", rng)
    for c in (1, 2):
        assert abs(ch.charge(amps, ch.bose_spin(), c)) < 1e-12
    assert abs(ch.charge(amps, ch.bose_spin(), 3)) > 1e-3


def test_report_serialises(small_grid, rng):
    amps = so.random_amplitudes(small_grid, "fermionic", rng)
    d = ch.conservation_sweep(amps, ch.fermi_field_spin(), [0.0, 1.0])[0].as_dict()
    assert set(d) >= {"spin", "component", "max_drift", "pass", "values"}


def test_bookkeeping_table():
    rows = ch.charge_total_count_report()
    assert len(rows) == 44
    for fam in ("fermionic", "bosonic"):
        mine = [r for r in rows if r["family"] == fam]
        assert len(mine) == 22
        computed = {r["law"].split("_")[0] for r in mine if r["computed"]}
        assert computed == {"energy", "momentum", "rotation", "spin"}
        assert sum(r["computed"] for r in mine) == 10
