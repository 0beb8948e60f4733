"""End-to-end acceptance checks, one test per criterion.

Each test prints a single PASS/FAIL line with the measured numbers so the
suite output doubles as an acceptance report.  Bounds are asserted exactly
as stated; two are expected to fail on this implementation and their
detail lines explain the mechanism:

* criterion 2: the squeeze phase starts a quarter turn off the secular
  line while r ~ 0 (coth(2r) pins the early motion), so the raw phase
  deviation transient reaches ~1.54 rad before tau = 5 even though the
  settled deviation is ~0.03 rad.
* criterion 7, number-basis clause: a dim=128 truncation resolves a
  squeezed vacuum only up to sinh(r)^2 = dim/20 (r ~ 1.63); the photon
  error crosses 1e-3 near r ~ 1.85, so the stated r <= 2 window cannot
  meet 1e-3 at this dimension (r = 2 would need dim >= 263).
"""

import math
import time

import numpy as np
import pytest

from pseudo_dce import cli
from pseudo_dce.drive import DriveParams
from pseudo_dce.dynamics import (InitialMoments, amplification_factor,
                                 analytic_squeeze, bogoliubov_ode_oracle,
                                 bogoliubov_uvw, evolve, mean_photon_general)
from pseudo_dce.dyson import DysonState, bogoliubov_matrix, epsilon_from_phi, phi_from_z
from pseudo_dce.fock import (FockSpace, TruncatedState, eta_matrix, propagate)
from pseudo_dce.hermitize import (approx_dyson_trajectory,
                                  coefficients_from_flow,
                                  hermitized_coefficients,
                                  integrate_constraints)
from pseudo_dce.scenario import run_preset
from pseudo_dce.verify import (VerifyReport, _moderate_state0,
                               _quasi_hermiticity_samples,
                               identity_suite_trajectories, run_verify)

CHI = 1.0002
VARPHI0 = 0.5 * math.pi

FIG1 = DriveParams(omega0=1.0, eps_mod=0.01, kappa=2.0,
                   alpha0_tilde=0.01, beta0_tilde=0.001)
FIG1_B4 = DriveParams(omega0=1.0, eps_mod=0.01, kappa=2.0,
                      alpha0_tilde=0.01, beta0_tilde=1e-4)
HERMITIAN = DriveParams(omega0=1.0, eps_mod=0.01, kappa=2.0,
                        alpha0_tilde=1.0, beta0_tilde=1.0)
MODERATE = DriveParams(omega0=1.0, eps_mod=0.01, kappa=2.0,
                       alpha0_tilde=0.6, beta0_tilde=0.2)


def report(num: int, ok: bool, detail: str) -> str:
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(line)
    return line


def wrap_angle(x):
    return (x + math.pi) % (2.0 * math.pi) - math.pi


@pytest.fixture(scope="module")
def fig1_traj50():
    t0 = time.perf_counter()
    tg = np.linspace(0.0, 50.0, 1001)
    traj = evolve(FIG1, tg, dyson_source="approximate", chi=CHI,
                  varphi0=VARPHI0, rtol=1e-10, atol=1e-13)
    return traj, tg, time.perf_counter() - t0


def test_criterion_01_hermitian_baseline():
    t0 = time.perf_counter()
    tg = np.linspace(0.0, 100.0, 1001)
    traj = evolve(HERMITIAN, tg, dyson_source="approximate", chi=CHI,
                  varphi0=VARPHI0)
    _, v = bogoliubov_ode_oracle(HERMITIAN, tg, dyson_source="approximate",
                                 chi=CHI, varphi0=VARPHI0)
    wall = time.perf_counter() - t0
    r_final = float(traj.r[-1])
    n_final = float(abs(v[-1]) ** 2)
    dev_r = abs(r_final - 0.5) / 0.5
    dev_n_target = abs(n_final - math.sinh(0.5) ** 2) / math.sinh(0.5) ** 2
    dev_n_self = (abs(n_final - math.sinh(r_final) ** 2)
                  / math.sinh(r_final) ** 2)
    ok = (dev_r < 0.02 and dev_n_target < 0.04 and dev_n_self < 0.04
          and wall < 1.0)
    msg = report(1, ok,
                 f"r(100)={r_final:.6f} dev {dev_r:.2%}; "
                 f"N={n_final:.6f} vs sinh^2(0.5) dev {dev_n_target:.2%}, "
                 f"vs sinh^2(r) dev {dev_n_self:.2e}; wall {wall:.2f}s")
    assert ok, msg


def test_criterion_02_phase_tracking(fig1_traj50):
    traj, tg, wall_traj = fig1_traj50
    t0 = time.perf_counter()
    phi_ana = np.array([analytic_squeeze(float(t), FIG1, CHI, 0.0, 0.0)[1]
                        for t in tg])
    dev = np.abs(wrap_angle(traj.phi_sq - phi_ana))
    worst = float(dev.max())
    settled = float(dev[tg >= 5.0].max())
    wall = wall_traj + time.perf_counter() - t0
    ok = worst < 0.1 and wall < 5.0
    msg = report(2, ok,
                 f"max reduced |dphi| {worst:.4f} rad (bound 0.1); "
                 f"tau>=5 tail {settled:.4f} rad; pinned-phase transient "
                 f"near r=0 is structural; wall {wall:.2f}s")
    assert ok, msg


def test_criterion_03_squeeze_tracking(fig1_traj50):
    traj, tg, wall_traj = fig1_traj50
    t0 = time.perf_counter()
    mask = tg >= 10.0
    worst = 0.0
    for i in np.nonzero(mask)[0]:
        r_ref, _ = analytic_squeeze(float(tg[i]), FIG1, CHI, 1e-8, 0.0)
        worst = max(worst, abs(float(traj.r[i]) - r_ref) / r_ref)
    wall = wall_traj + time.perf_counter() - t0
    ok = worst < 0.05 and wall < 5.0
    msg = report(3, ok, f"max rel |dr| {worst:.4f} on tau in [10, 50] "
                        f"(bound 0.05); wall {wall:.2f}s")
    assert ok, msg


def test_criterion_04_amplification_hierarchy():
    t0 = time.perf_counter()
    tg = np.linspace(0.0, 25.0, 501)
    n_runs = {}
    for label, p in (("b3", FIG1), ("b4", FIG1_B4), ("herm", HERMITIAN)):
        traj = evolve(p, tg, dyson_source="approximate", chi=CHI,
                      varphi0=VARPHI0, rtol=1e-10, atol=1e-13)
        n_runs[label] = traj.mean_photon()
    wall = time.perf_counter() - t0
    ratio = float(n_runs["b3"][-1] / n_runs["herm"][-1])
    late = tg > 1.0
    order = n_runs["b4"][late] / n_runs["b3"][late]
    min_order = float(order.min())
    ok = (3e5 <= ratio <= 5e6) and min_order > 1.0 and wall < 10.0
    msg = report(4, ok,
                 f"N_b3/N_herm at tau=25 = {ratio:.4e} (need [3e5, 5e6]); "
                 f"min N_b4/N_b3 over tau>1 = {min_order:.4f} (need > 1); "
                 f"wall {wall:.2f}s")
    assert ok, msg


def test_criterion_05_amplification_factor():
    exact = amplification_factor(1.0, 1.0, 0.5)
    ref = amplification_factor(0.01, 1e-3, CHI)
    ok = exact == 1.0 and abs(ref - 44.999) <= 1e-3
    msg = report(5, ok, f"balanced = {exact!r} (need exactly 1.0); "
                        f"reference = {ref:.6f} (need 44.999 +- 0.001)")
    assert ok, msg


def test_criterion_06_bogoliubov_identity():
    details = []
    worst_all = 0.0
    for label, u, v in identity_suite_trajectories():
        drift = float(np.abs(np.abs(u) ** 2 - np.abs(v) ** 2 - 1.0).max())
        worst_all = max(worst_all, drift)
        details.append(f"{label}: {drift:.2e}")
    ok = worst_all < 1e-9
    msg = report(6, ok, "; ".join(details) + " (bound 1e-9)")
    assert ok, msg


def test_criterion_07_photon_routes():
    tg = np.linspace(0.0, 20.0, 801)
    traj = evolve(FIG1, tg, dyson_source="approximate", chi=CHI,
                  varphi0=VARPHI0, rtol=1e-11, atol=1e-14)
    n_closed = traj.mean_photon()
    _, v = bogoliubov_ode_oracle(FIG1, tg, dyson_source="approximate",
                                 chi=CHI, varphi0=VARPHI0,
                                 rtol=1e-11, atol=1e-14)
    n_oracle = np.abs(v) ** 2

    # Pairwise clause: relative agreement where the signal is resolved,
    # absolute agreement below that floor.
    lit = n_closed > 1e-3
    rel = float((np.abs(n_closed - n_oracle)[lit] / n_closed[lit]).max())
    dark = float(np.abs(n_closed - n_oracle)[~lit].max())
    pair_ok = rel < 1e-4 and dark < 1e-6

    # Number-basis clause: dim=128 while r <= 2.
    r_lim = 2.0
    idx = int(np.searchsorted(traj.r, r_lim))
    sub = slice(0, min(idx + 1, tg.size))
    f = FockSpace(128)

    def coeffs(t):
        s = approx_dyson_trajectory(t, FIG1, VARPHI0, CHI)
        c = hermitized_coefficients(s, FIG1, t)
        return (c.W, c.T(), np.conj(c.T()))

    res = propagate(coeffs, f.vacuum(), tg[sub], f, rtol=1e-10, atol=1e-13)
    n_fock = np.array([TruncatedState(amplitudes=res.amplitudes[i]).mean_photon(f)
                       for i in range(res.t.size)])
    window = (n_closed[sub] > 1e-3) & (traj.r[sub] <= r_lim)
    fock_rel = np.abs(n_fock - n_closed[sub])[window] / n_closed[sub][window]
    fock_worst = float(fock_rel.max())
    crossed = np.nonzero(fock_rel > 1e-3)[0]
    r_window = traj.r[sub][window]
    r_cross = float(r_window[crossed[0]]) if crossed.size else float("nan")
    fock_ok = fock_worst < 1e-3

    ok = pair_ok and fock_ok
    msg = report(7, ok,
                 f"closed vs oracle rel {rel:.2e} (bound 1e-4), "
                 f"dark abs {dark:.2e} (floor 1e-6); number-basis dim=128 "
                 f"rel {fock_worst:.2e} over r<=2 (bound 1e-3), first "
                 f"crossing at r~{r_cross:.2f}; truncation resolves only "
                 f"sinh(r)^2 <= dim/20 i.e. r <= 1.63 at dim=128")
    assert ok, msg


def test_criterion_08_map_factorization():
    f = FockSpace(128)
    blk = slice(0, 41)
    worst_map = 0.0
    worst_conj = 0.0
    for eps0 in (0.1, 0.2, 0.3, 0.4, 0.5):
        for z in (0.1, 0.2, 0.3, 0.4):
            mu = 0.5 * eps0 * z
            e_g = eta_matrix(eps0, mu, f, form="gauss")
            e_e = eta_matrix(eps0, mu, f, form="exponential")
            num = np.linalg.norm((e_g - e_e)[blk, blk])
            den = np.linalg.norm(e_e[blk, blk])
            worst_map = max(worst_map, float(num / den))

            phi, _ = phi_from_z(z, eps0)
            d = DysonState(z_abs=z, Phi=phi, varphi=0.7)
            eta = eta_matrix(d.eps_map, d.mu(), f, form="gauss")
            eta_inv = eta_matrix(-d.eps_map, -d.mu(), f, form="gauss")
            m = bogoliubov_matrix(d)
            got = eta @ f.a @ eta_inv
            want = m[0, 0] * f.a + m[0, 1] * f.adag
            num = np.linalg.norm((got - want)[blk, blk])
            den = np.linalg.norm(want[blk, blk])
            worst_conj = max(worst_conj, float(num / den))

    worst_round = 0.0
    for z in np.linspace(0.05, 0.95, 10):
        for eps0 in np.linspace(0.05, 1.0, 10):
            phi, _ = phi_from_z(float(z), float(eps0))
            back = epsilon_from_phi(float(z), phi)
            worst_round = max(worst_round, abs(back - eps0) / eps0)

    ok = worst_map < 1e-8 and worst_conj < 1e-6 and worst_round < 1e-10
    msg = report(8, ok,
                 f"factorized vs exponential {worst_map:.2e} (bound 1e-8); "
                 f"conjugation {worst_conj:.2e} (bound 1e-6); "
                 f"strength roundtrip {worst_round:.2e} (bound 1e-10)")
    assert ok, msg


def test_criterion_09_metric_equation_of_motion():
    worst, ctrl = _quasi_hermiticity_samples((5.0, 15.0, 25.0, 35.0, 45.0))
    ratio = ctrl / worst
    ok = worst < 1e-5 and ratio >= 1e3
    msg = report(9, ok, f"worst residual {worst:.3e} (bound 1e-5); "
                        f"identity-metric control {ratio:.1e}x larger "
                        f"(need >= 1e3)")
    assert ok, msg


def test_criterion_10_constraint_residuals():
    tg = np.linspace(0.0, 50.0, 1001)
    traj = integrate_constraints(MODERATE, _moderate_state0(), tg,
                                 rtol=1e-11, atol=1e-14)
    im_w = v_t = 0.0
    for i in range(tg.size):
        W, T, V = coefficients_from_flow(traj.state_at(i), MODERATE,
                                         float(tg[i]))
        im_w = max(im_w, abs(W.imag))
        v_t = max(v_t, abs(V - np.conj(T)))
    ok = im_w < 1e-7 and v_t < 1e-7
    msg = report(10, ok, f"max|Im W| {im_w:.2e}, max|V - conj(T)| {v_t:.2e} "
                         f"(bounds 1e-7)")
    assert ok, msg


def test_criterion_11_budgets_and_exit_codes(tmp_path, monkeypatch, capsys):
    fast = run_verify("fast")
    full = run_verify("full")

    preset_walls = {}
    for name in ("fig1", "fig2", "fig3"):
        t0 = time.perf_counter()
        run_preset(name, out_dir=tmp_path / name)
        preset_walls[name] = time.perf_counter() - t0

    cfg_ok = tmp_path / "ok.cfg"
    cfg_ok.write_text("tau_max = 10\noracle = off\n")
    code_ok = cli.main(["run", "--config", str(cfg_ok),
                        "--out", str(tmp_path)])
    cfg_bad = tmp_path / "bad.cfg"
    cfg_bad.write_text("eps_mod = 1.5\n")
    code_bad = cli.main(["run", "--config", str(cfg_bad),
                         "--out", str(tmp_path)])
    cfg_sim = tmp_path / "sim.cfg"
    cfg_sim.write_text("tau_max = 10\noracle = off\n"
                       "dyson_source = integrated\n")
    code_sim = cli.main(["run", "--config", str(cfg_sim),
                         "--out", str(tmp_path)])
    # The real suite passes, so the verification-failure code is exercised
    # through the dispatch path with a synthetic failing report.
    failing = VerifyReport(level="fast", all_passed=False, total_seconds=0.0,
                           checks=[])
    monkeypatch.setattr(cli, "run_verify", lambda level: failing)
    code_ver = cli.main(["verify"])
    capsys.readouterr()

    ok = (fast.all_passed and fast.total_seconds < 30.0
          and full.all_passed and full.total_seconds < 300.0
          and all(w < 10.0 for w in preset_walls.values())
          and (code_ok, code_bad, code_sim, code_ver) == (0, 1, 2, 3))
    msg = report(11, ok,
                 f"verify fast {fast.total_seconds:.1f}s/30s "
                 f"(passed={fast.all_passed}), "
                 f"full {full.total_seconds:.1f}s/300s "
                 f"(passed={full.all_passed}); presets "
                 + ", ".join(f"{k} {v:.1f}s" for k, v in preset_walls.items())
                 + f"; exit codes {(code_ok, code_bad, code_sim, code_ver)}")
    assert ok, msg
