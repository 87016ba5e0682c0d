"""Verification suites behind the command line.

Each suite returns a plain dict section; ``run_command`` assembles them into
a report.  Suites are deterministic given the config and seed.
"""

from __future__ import annotations

import dataclasses
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from . import algebra, bosonic, charges, poincare, solutions, spectral
from .relations import RelationReport

COMMANDS = {
    "verify-algebra": ("anticomm", "so8", "rank", "so6-invariance", "w", "conjugation",
                       "breve-spin", "su2"),
    "verify-duality": ("fw-link", "spinors", "propagators", "rk4", "solutions", "duality",
                       "amplitude-maps", "json"),
    "charges": ("conservation", "bookkeeping"),
    "poincare": ("structure", "casimir", "fw-commutation", "algebra", "convergence"),
}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    counts: tuple = (9, 9, 9)
    dk: float = 0.5
    mass: float = 1.0
    tol_alg: float = 1e-12
    tol_link: float = 1e-11
    tol_cons: float = 1e-10
    tol_exact: float = 1e-10
    tol_spec: float = 1e-6
    suites: list = field(default_factory=list)
    out: str | None = None
    seed: int = 42
    times: list = field(default_factory=lambda: [0.0, 0.5, 1.0, 2.5, 10.0])
    refine: int = 1
    ordering: str = "left"
    modes: str = "random"
    n_duality: int = 50
    n_charge_sets: int = 20
    field_width: float = 1.0
    field_extent: float = 8.0
    commute_t: float = 1.0

    def validate(self) -> "RunConfig":
        self.counts = tuple(int(c) for c in self.counts)
        if len(self.counts) != 3 or any(c < 1 or c % 2 == 0 for c in self.counts):
            raise ConfigError(f"grid counts must be three odd positive integers, got {self.counts}")
        if not self.mass > 0:
            raise ConfigError("mass must be positive")
        if not self.dk > 0:
            raise ConfigError("dk must be positive")
        for name in ("tol_alg", "tol_link", "tol_cons", "tol_exact", "tol_spec"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive")
        if self.ordering not in ("left", "right", "both"):
            raise ConfigError(f"unknown ordering {self.ordering!r}")
        if self.refine < 1:
            raise ConfigError("refine must be a factor >= 1")
        if not (self.modes == "random" or self.modes.startswith("single:k=")):
            raise ConfigError(f"unknown modes {self.modes!r}")
        self.times = [float(t) for t in self.times]
        return self

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        return cls(**d)

    def as_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["counts"] = list(self.counts)
        return d

    def grid(self) -> spectral.MomentumGrid:
        return spectral.MomentumGrid(self.counts, self.dk, self.mass)


def _section(reports, extra=None) -> dict:
    d = {"pass": all(r.passed for r in reports),
         "worst": max((r.residual for r in reports), default=0.0),
         "count": len(reports),
         "failures": [r.relation for r in reports if not r.passed],
         "reports": [r.as_dict() for r in reports]}
    if extra:
        d.update(extra)
    return d


# -- verify-algebra --------------------------------------------------------

def _algebra_suites(cfg: RunConfig, wanted) -> dict:
    g = algebra.build_gammas()
    t = algebra.build_spin_tensor(g)
    out = {}
    if "anticomm" in wanted:
        out["anticomm"] = _section(algebra.check_anticommutation(g, cfg.tol_alg))
    if "so8" in wanted:
        out["so8"] = _section(algebra.check_so8(t, cfg.tol_alg))
    if "rank" in wanted:
        rank = algebra.ort_rank(t)
        out["rank"] = {"pass": rank == 29, "rank": rank, "expected": 29, "cutoff": 1e-8}
    if "so6-invariance" in wanted:
        grid = cfg.grid()
        idx = [0, grid.size // 2 + 1, grid.size - 1]
        samples = [spectral.MomentumSample(tuple(grid.k[i]), cfg.mass) for i in idx]
        reps = algebra.check_fw_invariance(algebra.so6_generators(t), samples, [0.1, 1.0],
                                           cfg.tol_alg, algebra.so6_labels())
        out["so6-invariance"] = _section(reps)
    wp = bosonic.build_w()
    b = bosonic.build_breve_basis()
    s = bosonic.build_breve_spin(b)
    if "w" in wanted:
        out["w"] = _section(bosonic.check_w(wp, cfg.tol_alg))
    if "conjugation" in wanted:
        out["conjugation"] = _section(bosonic.check_conjugation(wp, g, b, cfg.tol_alg))
    if "breve-spin" in wanted:
        out["breve-spin"] = _section(bosonic.check_breve_spin(s, cfg.tol_alg))
    if "su2" in wanted:
        out["su2"] = _section(bosonic.check_su2_closure(s, cfg.tol_alg), {
            "structure_sign": bosonic.SU2_SIGN,
            "physical_s3_eigenvalues": bosonic.physical_s3_eigenvalues(s).tolist(),
            "casimir_rank": bosonic.casimir_rank(s),
        })
    return out


# -- verify-duality --------------------------------------------------------

def _amplitude_sets(cfg: RunConfig, grid, kind: str, n: int, rng) -> list:
    if cfg.modes == "random":
        return [solutions.random_amplitudes(grid, kind, rng) for _ in range(n)]
    k = np.array([float(x) for x in cfg.modes.split("=", 1)[1].split(",")])
    if k.size == 1:
        k = np.repeat(k, 3)
    node = int(np.argmin(np.sum((grid.k - k) ** 2, axis=1)))
    return [solutions.single_mode(grid, kind, node, slot) for slot in range(4)]


def _duality_suites(cfg: RunConfig, wanted) -> dict:
    grid = cfg.grid()
    m, k = cfg.mass, grid.k
    tol = cfg.tol_link
    out = {}
    if "fw-link" in wanted:
        vp, vm, h = spectral.v_plus_q(k, m), spectral.v_minus_q(k, m), spectral.hamiltonian_q(k, m)
        w = grid.omega[:, None, None]
        reps = [
            RelationReport("V+V-=I", float(np.max(np.abs(vp @ vm - np.eye(4)))), tol),
            RelationReport("V+ g0 w V-=H", float(np.max(np.abs(vp @ (w * algebra.GAMMA0) @ vm - h))), tol),
            RelationReport("H^2=w^2", float(np.max(np.abs(h @ h - w ** 2 * np.eye(4)))), tol),
        ]
        v = spectral.spinors_q(k, m)
        for r in range(2):
            d = np.eye(4)[:, r]
            reps.append(RelationReport(f"V+ d{r + 1}=v{r + 1}-",
                                       float(np.max(np.abs(vp @ d - v[:, :, r]))), tol))
        out["fw-link"] = _section(reps)
    if "spinors" in wanted:
        v = spectral.spinors_q(k, m)
        g_minus = np.einsum("nia,nib->nab", v[:, :, :2].conj(), v[:, :, :2])
        g_plus = np.einsum("nia,nib->nab", v[:, :, 2:].conj(), v[:, :, 2:])
        # v+ pairs with exp(+ikx): {v-(k), v+(-k)} is the eigenbasis of H(k)
        paired = np.concatenate([v[:, :, :2], spectral.spinors_q(-k, m)[:, :, 2:]], axis=2)
        g_all = np.einsum("nia,nib->nab", paired.conj(), paired)
        hv = spectral.hamiltonian_q(k, m) @ v[:, :, :2]
        hmv = spectral.hamiltonian_q(-k, m) @ v[:, :, 2:]
        w = grid.omega[:, None, None]
        out["spinors"] = _section([
            RelationReport("<v-|v->=I", float(np.max(np.abs(g_minus - np.eye(2)))), tol),
            RelationReport("<v+|v+>=I", float(np.max(np.abs(g_plus - np.eye(2)))), tol),
            RelationReport("gram{v-(k), v+(-k)}=I4", float(np.max(np.abs(g_all - np.eye(4)))), tol),
            RelationReport("H(k)v-=+w v-", float(np.max(np.abs(hv - w * v[:, :, :2]))), tol),
            RelationReport("H(-k)v+=-w v+", float(np.max(np.abs(hmv + w * v[:, :, 2:]))), tol),
        ])
    rng = np.random.default_rng(cfg.seed)
    if "propagators" in wanted:
        z = rng.standard_normal((2, grid.size, 4)) + 1j * rng.standard_normal((2, grid.size, 4))
        phi = spectral.SpinorFieldK(grid, z[0], z[1], rep="fw")
        psi = phi.replace(rep="dirac")
        n0 = phi.norm()
        reps = []
        for t in cfg.times:
            via_fw = spectral.fw_transform(spectral.fw_propagate(spectral.inverse_fw_transform(psi), t))
            direct = spectral.dirac_propagate(psi, t)
            reps.append(RelationReport(f"dirac=V+ fw V- (t={t})", spectral.field_diff(via_fw, direct), tol))
            for name, prop, x in (("fw", spectral.fw_propagate, phi), ("dirac", spectral.dirac_propagate, psi)):
                reps.append(RelationReport(f"{name} norm (t={t})", abs(prop(x, t).norm() - n0) / n0, 1e-12))
            back = spectral.fw_propagate(spectral.fw_propagate(phi, t), -t)
            reps.append(RelationReport(f"fw group (t={t})", spectral.field_diff(back, phi), 1e-12))
        out["propagators"] = _section(reps)
    if "rk4" in wanted:
        f = solutions.synthesize(solutions.random_amplitudes(grid, "fermionic", rng), "dirac")
        study = spectral.rk4_order_study(f, 1.0, (8, 16, 32, 64), "dirac")
        fw = spectral.rk4_order_study(solutions.synthesize(solutions.random_amplitudes(
            grid, "fermionic", rng), "fw"), 1.0, (8, 16, 32, 64), "fw")
        ok = min(study["orders"] + fw["orders"]) >= 3.7
        out["rk4"] = {"pass": ok, "dirac": study, "fw": fw, "min_order": 3.7}
    if "solutions" in wanted or "duality" in wanted or "amplitude-maps" in wanted or "json" in wanted:
        bsets = _amplitude_sets(cfg, grid, "bosonic-b", cfg.n_duality, rng)
    if "solutions" in wanted:
        reps, controls = [], []
        for i, b in enumerate(bsets[:5]):
            a = solutions.a_from_b(b)
            for name, fld, eq in (
                ("fw-fermionic", solutions.synth_fw_fermionic(a), "fw"),
                ("dirac-fermionic", solutions.synth_dirac_fermionic(a), "dirac"),
                ("fw-bosonic", solutions.synth_fw_bosonic(b), "fw"),
                ("dirac-bosonic", solutions.synth_dirac_bosonic(b), "dirac"),
            ):
                for t in (0.7, 3.1):
                    reps.append(RelationReport(f"{name}[{i}] residual t={t}",
                                               solutions.equation_residual(fld, eq, t), tol))
                    bad = solutions.equation_residual(solutions.swap_branches(fld), eq, t)
                    controls.append({"case": f"{name}[{i}] t={t}", "residual": bad, "pass": bad >= 1e-2})
            reps.append(RelationReport(
                f"V+ fw-bosonic = dirac-bosonic [{i}]",
                spectral.field_diff(spectral.fw_transform(solutions.synth_fw_bosonic(b)),
                                    solutions.synth_dirac_bosonic(b)), tol))
            reps.append(RelationReport(
                f"V+ fw-fermionic = dirac-fermionic [{i}]",
                spectral.field_diff(spectral.fw_transform(solutions.synth_fw_fermionic(a)),
                                    solutions.synth_dirac_fermionic(a)), tol))
        sec = _section(reps, {"controls": controls, "control_min": 1e-2})
        sec["pass"] = sec["pass"] and all(c["pass"] for c in controls)
        out["solutions"] = sec
    if "duality" in wanted:
        res = [solutions.duality_residual(b) for b in bsets]
        out["duality"] = _section([RelationReport("commuting square", max(res), tol)],
                                  {"samples": len(res)})
    if "amplitude-maps" in wanted:
        u = solutions.A_FROM_B
        reps = [
            RelationReport("A_FROM_B @ B_FROM_A = I", float(np.max(np.abs(u @ solutions.B_FROM_A - np.eye(4)))), 1e-14),
            RelationReport("B_FROM_A @ A_FROM_B = I", float(np.max(np.abs(solutions.B_FROM_A @ u - np.eye(4)))), 1e-14),
            RelationReport("U unitary", float(np.max(np.abs(u @ u.conj().T - np.eye(4)))), 1e-14),
        ]
        for i, b in enumerate(bsets[:5]):
            via_xi = solutions.synth_fw_bosonic(b)
            via_a = solutions.synth_fw_fermionic(solutions.a_from_b(b))
            reps.append(RelationReport(f"xi route = a route [{i}]", spectral.field_diff(via_xi, via_a), 1e-12))
            n_b, n_a = b.norm2(), solutions.a_from_b(b).norm2()
            reps.append(RelationReport(f"norm preserved [{i}]", abs(n_a - n_b) / max(n_b, 1e-300), 1e-12))
            back = solutions.analyze(solutions.synth_dirac_bosonic(b), "bosonic-b")
            reps.append(RelationReport(f"analyze(synth) = b [{i}]", float(np.max(np.abs(back.amp - b.amp))), 1e-12))
        out["amplitude-maps"] = _section(reps)
    if "json" in wanted:
        b = bsets[0]
        back = solutions.AmplitudeSet.from_json(b.to_json())
        out["json"] = {"pass": bool(np.array_equal(back.amp, b.amp)) and back.kind == b.kind}
    return out


# -- charges ---------------------------------------------------------------

def _charge_suites(cfg: RunConfig, wanted) -> dict:
    out = {}
    if "conservation" in wanted:
        grid = cfg.grid()
        rng = np.random.default_rng(cfg.seed)
        rows = []
        for spin in charges.spin_choices():
            worst = {c: (0.0, None) for c in (1, 2, 3)}
            for _ in range(cfg.n_charge_sets):
                amps = solutions.random_amplitudes(grid, spin.family, rng)
                for rep in charges.conservation_sweep(amps, spin, cfg.times, cfg.tol_cons):
                    if worst[rep.component][1] is None or rep.max_drift > worst[rep.component][0]:
                        worst[rep.component] = (rep.max_drift, rep)
            rows += [worst[c][1] for c in (1, 2, 3)]
        out["conservation"] = {
            "pass": all(r.passed for r in rows),
            "worst": max(r.max_drift for r in rows),
            "sets_per_spin": cfg.n_charge_sets,
            "reports": [r.as_dict() for r in rows],
        }
    if "bookkeeping" in wanted:
        table = charges.charge_total_count_report()
        per = {f: sum(1 for r in table if r["family"] == f) for f in ("fermionic", "bosonic")}
        out["bookkeeping"] = {"pass": per == {"fermionic": 22, "bosonic": 22},
                              "rows": table, "per_family": per}
    return out


# -- poincare ---------------------------------------------------------------

def _poincare_suites(cfg: RunConfig, wanted) -> dict:
    spec = poincare.TestFieldSpec(cfg.field_width, cfg.field_extent, cfg.seed)
    grid = spec.grid(cfg.dk, cfg.mass)
    f = spec.sample(grid)
    orderings = ("left", "right") if cfg.ordering == "both" else (cfg.ordering,)
    out = {}
    if "structure" in wanted:
        jac = poincare.jacobi_residual()
        table = poincare.structure_table()
        c = poincare.structure_tensor()
        anti = float(np.max(np.abs(c + np.transpose(c, (1, 0, 2)))))
        out["structure"] = {"pass": jac == 0.0 and anti == 0.0, "jacobi": jac,
                            "antisymmetry": anti,
                            "convention": "[p_mu,j_rs]=g_mr p_s - g_ms p_r; "
                                          "[j_mn,j_rs]=g_nr j_ms - g_mr j_ns - g_ns j_mr + g_ms j_nr",
                            "table": table}
    if "casimir" in wanted:
        c1, c2 = poincare.casimir_check(f)
        out["casimir"] = _section([
            RelationReport("p0p0 - sum pn pn = -m^2", c1, cfg.tol_exact),
            RelationReport("m^2 s^2 = -2 m^2 diag(I3,0)", c2, cfg.tol_alg),
        ])
    for o in orderings:
        suffix = "" if len(orderings) == 1 else f"[{o}]"
        if "fw-commutation" in wanted:
            out["fw-commutation" + suffix] = _section(poincare.fw_commutation_reports(
                f, cfg.commute_t, o, cfg.tol_exact, cfg.tol_spec), {"ordering": o, "t": cfg.commute_t})
        if "algebra" in wanted:
            out["algebra" + suffix] = _section(poincare.check_poincare_algebra(
                f, o, cfg.tol_exact, cfg.tol_spec), {"ordering": o})
    if "convergence" in wanted and cfg.refine > 1:
        study = poincare.convergence_study(spec, cfg.dk, cfg.mass, 1, cfg.commute_t, orderings[0],
                                           factor=cfg.refine)
        out["convergence"] = dict(study, min_ratio=8.0,
                                  **{"pass": all(r >= 8.0 for r in study["ratios"])})
    return out


_RUNNERS = {
    "verify-algebra": _algebra_suites,
    "verify-duality": _duality_suites,
    "charges": _charge_suites,
    "poincare": _poincare_suites,
}


def run_command(command: str, cfg: RunConfig) -> dict:
    cfg.validate()
    known = COMMANDS[command]
    wanted = cfg.suites or list(known)
    bad = [s for s in wanted if s not in known]
    if bad:
        raise ConfigError(f"unknown suite(s) for {command}: {bad}; choose from {list(known)}")
    start = time.perf_counter()
    suites = _RUNNERS[command](cfg, set(wanted))
    return {
        "tool": "ercd",
        "version": __version__,
        "command": command,
        "config": cfg.as_dict(),
        "suites": suites,
        "pass": all(s["pass"] for s in suites.values()),
        "wall_time": time.perf_counter() - start,
    }
