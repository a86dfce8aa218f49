"""Acceptance gate: headline results at full scale, one printed verdict per test.

Every test prints one `ACCEPTANCE <tag>: PASS|FAIL ...` line before asserting,
so a red run still reports the measured numbers. Tolerances are fixed here and
are not to be loosened to make a run pass; a genuine failure stays red.

Small helper policy: full-scale sweeps are shared via module-scoped fixtures
(they dominate the suite's runtime). Everything derives from one master seed.
"""

import math
import time

import numpy as np
import pytest

from ddmagsim.bloch import fidelity
from ddmagsim.engine import FiberSpec, run_ensemble
from ddmagsim.experiments import (
    ExperimentBase,
    sweep_fidelity_vs_separation,
    sweep_heatmap,
    sweep_rotation_vs_length,
    sweep_signal_vs_detuning,
)
from ddmagsim.field import FieldSpec, OpticsSpec, faraday_rotation_angle
from ddmagsim.noise import NoiseSpec

import su2oracle

MASTER_SEED = 20260816
REALIZATIONS = 1000


def verdict(tag, ok, detail):
    print("ACCEPTANCE %s: %s (%s)" % (tag, "PASS" if ok else "FAIL", detail))


def default_base(y=0.1, realizations=REALIZATIONS):
    return ExperimentBase(
        fiber=FiberSpec(
            length=500.0,
            optics=OpticsSpec(
                verdet=-32.0, refractive_index=1.45, waveplate_separation=y
            ),
            placement_error_fraction=0.0,
            dd_enabled=True,
            integration_step=None,
        ),
        field=FieldSpec(amplitude=1e-5),
        noise=NoiseSpec(
            coherence_length=3.0,
            total_phase_std=100.0,
            wavelength=1.064e-6,
            seed=0,
            layout="renewal",
            normalization="coherent",
        ),
        master_seed=MASTER_SEED,
        realizations=realizations,
    )


PLACEMENTS = [0.0, 0.04, 0.08, 0.12]
SEPARATIONS = list(np.geomspace(0.02, 3.0, 25))


@pytest.fixture(scope="module")
def fig3():
    res = sweep_fidelity_vs_separation(
        default_base(), SEPARATIONS, PLACEMENTS, REALIZATIONS
    )
    # curves[pf] = list of (separation, fidelity, stderr) ordered by separation
    curves = {}
    for sep, pf, dd, fid, se in res.rows:
        if dd == 1.0:
            curves.setdefault(pf, []).append((sep, fid, se))
    for pf in curves:
        curves[pf].sort()
    return curves


@pytest.fixture(scope="module")
def fig5():
    lengths = list(np.linspace(50.0, 500.0, 10))
    res = sweep_rotation_vs_length(default_base(), lengths, [0.12])
    ideal = sorted((r[0], r[3]) for r in res.rows if r[2] == 1.0)
    measured = sorted((r[0], r[3]) for r in res.rows if r[2] == 0.0)
    return ideal, measured


@pytest.fixture(scope="module")
def fig6():
    pfs = list(np.linspace(0.0, 0.12, 5))
    deltas = list(np.linspace(-4e-4, 4e-4, 41))
    deltas[20] = 0.0
    res = sweep_heatmap(default_base(realizations=400), pfs, deltas)
    cells = {}
    for pf, d, v in res.rows:
        cells.setdefault(pf, {})[d] = v
    return pfs, deltas, cells


def spot_fidelity(y, realizations=REALIZATIONS):
    base = default_base(y=y)
    res = sweep_fidelity_vs_separation(base, [y], [0.0], realizations)
    row = [r for r in res.rows if r[2] == 1.0][0]
    return row[3], row[4]


def test_no_dd_depolarization():
    base = default_base()
    fib = FiberSpec(
        length=base.fiber.length,
        optics=base.fiber.optics,
        placement_error_fraction=0.0,
        dd_enabled=False,
        integration_step=None,
    )
    t0 = time.monotonic()
    out = run_ensemble(fib, base.field, base.noise, REALIZATIONS, MASTER_SEED)
    f = fidelity(out.ensemble, out.desired_state)
    elapsed = time.monotonic() - t0
    ok = abs(f - 0.50) <= 0.02 and elapsed < 30.0
    verdict("no-dd-depolarization", ok,
            "fidelity=%.4f target 0.50+-0.02, runtime=%.1fs limit 30s"
            % (f, elapsed))
    assert abs(f - 0.50) <= 0.02
    assert elapsed < 30.0


def test_dd_preservation_threshold(fig3):
    f010, _ = spot_fidelity(0.10)
    f013, _ = spot_fidelity(0.13)
    f300, _ = spot_fidelity(3.0)
    thresholds = f010 > 0.95 and f013 > 0.95 and f300 < 0.60
    worst = 0.0
    for pf in PLACEMENTS:
        pts = fig3[pf]
        for (y0, f0, s0), (y1, f1, s1) in zip(pts, pts[1:]):
            worst = max(worst, f1 - f0 - 2.0 * (s0 + s1))
    monotone = worst <= 0.0
    ok = thresholds and monotone
    verdict("dd-preservation", ok,
            "F(0.10)=%.4f F(0.13)=%.4f (>0.95), F(3.0)=%.4f (<0.60), "
            "worst monotonicity excess=%.4f (<=0)"
            % (f010, f013, f300, worst))
    assert f010 > 0.95
    assert f013 > 0.95
    assert f300 < 0.60
    assert monotone


def test_placement_error_insensitivity(fig3):
    # overlap of the jittered curves within 2x their stderr at every point
    worst = -math.inf
    worst_at = None
    pfs = [0.04, 0.08, 0.12]
    for i, a in enumerate(pfs):
        for b in pfs[i + 1:]:
            for (y, fa, sa), (_, fb, sb) in zip(fig3[a], fig3[b]):
                excess = abs(fa - fb) - 2.0 * (sa + sb)
                if excess > worst:
                    worst, worst_at = excess, (a, b, y)
    ok = worst <= 0.0
    verdict("placement-insensitivity", ok,
            "worst overlap excess=%.4f at pf=%s/%s y=%.3gm (<=0)"
            % (worst, worst_at[0], worst_at[1], worst_at[2]))
    assert ok, (
        "placement-error curves separate beyond 2x stderr: excess %.4f "
        "at pf=%s vs %s, y=%.3g m" % (worst, *worst_at)
    )


def test_detuning_envelope():
    deltas = list(np.linspace(-0.05, 0.05, 501))
    deltas[250] = 0.0
    res = sweep_signal_vs_detuning(default_base(), deltas, 600)
    rows = np.asarray(res.rows)
    d, ratio, env = rows[:, 0], rows[:, 1], rows[:, 2]
    at_zero = ratio[250] == 1.0
    bound = np.minimum(1.0, env) + 0.01
    dominated = bool(np.all(np.abs(ratio) <= bound))
    pos = ratio[d > 0]
    crossings = int(np.count_nonzero(pos[:-1] * pos[1:] < 0))
    if abs(pos[-1]) < 1e-8:
        crossings += 1
    ok = at_zero and dominated and crossings >= 60
    verdict("detuning-envelope", ok,
            "ratio(0)=%r, max |ratio|-bound=%.2e (<=0), crossings=%d (>=60)"
            % (ratio[250], float(np.max(np.abs(ratio) - bound)), crossings))
    assert at_zero
    assert dominated
    assert crossings >= 60


def test_linearity_under_placement_error(fig5):
    ideal, measured = fig5
    lx = np.array([p[0] for p in ideal])
    ly = np.array([p[1] for p in ideal])
    mx = np.array([p[0] for p in measured])
    my = np.array([p[1] for p in measured])
    ideal_slope = np.polyfit(lx, ly, 1)[0]
    slope, intercept = np.polyfit(mx, my, 1)
    fit = slope * mx + intercept
    ss_res = float(np.sum((my - fit) ** 2))
    ss_tot = float(np.sum((my - np.mean(my)) ** 2))
    r2 = 1.0 - ss_res / ss_tot
    ratio = slope / ideal_slope
    ok = abs(ratio - 1.0) <= 0.03 and r2 > 0.99
    verdict("placement-linearity", ok,
            "slope ratio=%.4f target 1.00+-0.03, R^2=%.6f (>0.99)"
            % (ratio, r2))
    assert r2 > 0.99
    assert abs(ratio - 1.0) <= 0.03, (
        "fitted slope deviates %.1f%% from ideal (tolerance 3%%)"
        % (100.0 * abs(ratio - 1.0))
    )


def half_max_width(deltas, row):
    """Full width at half maximum around delta=0, linear interpolation."""
    center = deltas.index(0.0)
    peak = row[center]
    edges = []
    for direction in (-1, 1):
        i = center
        while True:
            j = i + direction
            if j < 0 or j >= len(deltas):
                raise AssertionError("half-max crossing outside grid")
            if row[j] < peak / 2.0:
                frac = (peak / 2.0 - row[i]) / (row[j] - row[i])
                edges.append(deltas[i] + frac * (deltas[j] - deltas[i]))
                break
            i = j
    return edges[1] - edges[0]


def test_bandwidth_non_widening(fig6):
    pfs, deltas, cells = fig6
    w0 = half_max_width(deltas, [cells[pfs[0]][d] for d in deltas])
    w12 = half_max_width(deltas, [cells[pfs[-1]][d] for d in deltas])
    ratio = w12 / w0
    ok = 0.85 <= ratio <= 1.15
    verdict("bandwidth-non-widening", ok,
            "FWHM(pf=0.12)/FWHM(pf=0)=%.4f target 1.00+-0.15" % ratio)
    assert 0.85 <= ratio <= 1.15


def test_verdet_desk_checks():
    a = faraday_rotation_angle(1.1, 0.2, 3.5)
    b = faraday_rotation_angle(-32.0, 10e-6, 4.0)
    deg = math.degrees(a)
    ok = (a == pytest.approx(0.77, rel=1e-12)
          and abs(deg - 45.0) <= 2.0
          and b == pytest.approx(-1.28e-3, rel=1e-12))
    verdict("verdet-desk-checks", ok,
            "1.1*0.2*3.5=%.4f rad=%.2f deg (45+-2); |-32*1e-5*4|=%.3g rad; "
            "a published value of 128e-6 rad is not reproducible from these "
            "inputs (documented discrepancy, not a target)" % (a, deg, abs(b)))
    assert a == pytest.approx(0.77, rel=1e-12)
    assert abs(deg - 45.0) <= 2.0
    assert b == pytest.approx(-1.28e-3, rel=1e-12)


def test_oracle_equivalence():
    from ddmagsim.bloch import (
        Axis,
        AxisRotation,
        PolarizationState,
        apply_pi_pulse_x,
        apply_rotation,
    )

    rng = np.random.default_rng(8161)
    worst = 0.0
    for _ in range(1000):
        n_ops = int(rng.integers(1, 60))
        ops = []
        for _ in range(n_ops):
            if rng.random() < 0.3:
                ops.append(("PI", math.pi))
            else:
                axis = ("X", "Y", "Z")[int(rng.integers(3))]
                ops.append((axis, float(rng.uniform(-8.0, 8.0))))
        theta = math.acos(float(rng.uniform(-1.0, 1.0)))
        phi = float(rng.uniform(-math.pi, math.pi))
        r0 = (math.sin(theta) * math.cos(phi),
              math.sin(theta) * math.sin(phi),
              math.cos(theta))
        s = PolarizationState(np.array(r0))
        for axis, angle in ops:
            if axis == "PI":
                s = apply_pi_pulse_x(s)
            else:
                s = apply_rotation(s, AxisRotation(Axis[axis], angle))
        oracle = su2oracle.apply_sequence(
            r0, [("X" if a == "PI" else a, ang) for a, ang in ops]
        )
        worst = max(worst, float(np.max(np.abs(s.r - oracle))))
    ok = worst <= 1e-9
    verdict("oracle-equivalence", ok,
            "1000 sequences, worst componentwise gap=%.2e (<=1e-9)" % worst)
    assert worst <= 1e-9


def test_determinism(tmp_path, monkeypatch):
    from ddmagsim.cli import main

    base = default_base(realizations=64)
    argv = [
        "fig3",
        "--set", "fiber.length=40",
        "--set", "sweep.separations=0.1,0.5",
        "--set", "sweep.placement_fractions=0,0.12",
        "--realizations", "64",
    ]
    a = sweep_fidelity_vs_separation(base, [0.1, 0.5], [0.0, 0.12], 64)
    b = sweep_fidelity_vs_separation(base, [0.1, 0.5], [0.0, 0.12], 64)
    rows_equal = a.rows == b.rows

    out1, out2 = tmp_path / "t1.csv", tmp_path / "t2.csv"
    monkeypatch.setenv("DDMAGSIM_THREADS", "1")
    assert main([*argv, "--out", str(out1)]) == 0
    monkeypatch.setenv("DDMAGSIM_THREADS", "4")
    assert main([*argv, "--out", str(out2)]) == 0
    strip = lambda p: [
        l for l in p.read_text(encoding="utf-8").split("\n")
        if not l.startswith("# timestamp:")
    ]
    bytes_equal = strip(out1) == strip(out2)
    ok = rows_equal and bytes_equal
    verdict("determinism", ok,
            "repeat rows identical=%s, thread-count invariant=%s"
            % (rows_equal, bytes_equal))
    assert rows_equal
    assert bytes_equal
