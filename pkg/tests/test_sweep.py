import io
import json
import math

import numpy as np
import pytest

from starkphase import (Axis, Method, PulseShape, SweepSpec, SystemSpec, design_command,
                        figure_preset, propagate, run_sweep)
from starkphase.errors import InvalidSpecError, UnattainableError
from starkphase.sweep import FIGURES


@pytest.mark.parametrize("name", FIGURES)
def test_presets_build(name):
    spec = figure_preset(name, points=7)
    assert len(spec.grid) == 7
    assert spec.oracle
    assert spec.notes


def test_preset_contents():
    f2 = figure_preset("fig2")
    assert f2.system.pulse_a.omega0 == 8.0 and f2.axis is Axis.DETUNING
    f4 = figure_preset("FIG4")
    assert Method.EXACT_RZ in f4.methods
    f5 = figure_preset("FIG5", points=11)
    assert f5.grid[0] == 0.0 and f5.grid[-1] == pytest.approx(10.0)
    assert f5.system.detuning2 == 20.0
    f7 = figure_preset("FIG7")
    assert Method.AE3_V in f7.methods and f7.system.detuning3 == 20.0
    with pytest.raises(InvalidSpecError):
        figure_preset("FIG9")


def test_system_at_keeps_ratios():
    g = PulseShape.gaussian(1.0)
    spec = SweepSpec(SystemSpec.ladder(g, g.scaled(2.0), 10.0, 20.0), Axis.RABI, [1.0, 3.0],
                     [Method.ADIABATIC3])
    s = spec.system_at(3.0)
    assert (s.pulse_a.omega0, s.pulse_b.omega0) == (3.0, 6.0)
    spec = SweepSpec(SystemSpec.ladder(g, g, 10.0, 20.0), Axis.DETUNING, [5.0], [])
    s = spec.system_at(5.0)
    assert (s.detuning2, s.detuning3) == (5.0, 10.0)


def test_single_point_matches_direct_calls():
    s = SystemSpec.two_state(PulseShape.sech(4.0), 20.0)
    res = run_sweep(SweepSpec(s, Axis.DETUNING, [20.0], [Method.AE2, Method.EXACT_RZ]))
    row = res.rows[0]
    assert row.phases[Method.NUMERIC] == pytest.approx(propagate(s).phase1, abs=1e-14)
    assert row.phases[Method.AE2] == pytest.approx(0.3976666667, abs=1e-9)
    assert row.errors[Method.EXACT_RZ] < 1e-8
    assert not row.flags


def test_failed_cell_is_flagged_and_sweep_continues():
    s = SystemSpec.two_state(PulseShape.gaussian(2.0), 1.0)
    res = run_sweep(SweepSpec(s, Axis.DETUNING, [-1.0, 0.0, 1.0], [Method.AE, Method.ADIABATIC]))
    assert res.rows[1].flags == {Method.AE: "ZeroDetuningError"}
    assert math.isnan(res.column(Method.AE)[1])
    assert np.all(np.isfinite(res.column(Method.ADIABATIC)))
    buf = io.StringIO()
    res.write_csv(buf)
    assert "ae:ZeroDetuningError" in buf.getvalue()
    assert not res.oracle_failed


def test_exact_method_needs_sech():
    s = SystemSpec.two_state(PulseShape.gaussian(2.0), 1.0)
    res = run_sweep(SweepSpec(s, Axis.DETUNING, [1.0], [Method.EXACT_RZ], oracle=False))
    assert res.rows[0].flags[Method.EXACT_RZ] == "InvalidSpecError"


def test_csv_is_deterministic(tmp_path):
    spec = figure_preset("FIG4", points=5)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run_sweep(spec).write_csv(a)
    run_sweep(spec, workers=2).write_csv(b)
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0].split(",")[:3] == ["axis", "numeric_phase", "ae_phase"]
    assert len(lines) == 6


def test_oracle_phase_is_continuous_over_many_cycles():
    # at small detuning the sech phase winds through several multiples of 2 pi
    spec = SweepSpec(SystemSpec.two_state(PulseShape.sech(1.0), 1.0), Axis.RABI,
                     np.linspace(0.0, 12.0, 121), [Method.EXACT_RZ, Method.ADIABATIC])
    res = run_sweep(spec)
    ph = res.column(Method.NUMERIC)
    assert ph[0] == 0.0
    assert np.max(np.abs(np.diff(ph))) < 1.0
    assert np.max(res.column(Method.EXACT_RZ, "error")) < 1e-6


def test_fig2_ordering_on_small_grid():
    spec = SweepSpec(figure_preset("FIG2").system, Axis.DETUNING, [40.0, 60.0, 80.0],
                     [Method.AE, Method.AE2, Method.ADIABATIC, Method.SUPERADIABATIC])
    res = run_sweep(spec)
    e = {m: res.column(m, "error") for m in spec.methods}
    assert np.all(e[Method.SUPERADIABATIC] < e[Method.ADIABATIC])
    assert np.all(e[Method.SUPERADIABATIC] < e[Method.AE2])
    assert np.all(e[Method.AE2] < e[Method.AE])
    assert np.all(e[Method.ADIABATIC] < e[Method.AE])


def test_lossy_columns():
    res = run_sweep(figure_preset("FIG5", points=4))
    head = res.header()
    assert "lossy_population1" in head and "numeric_population1" in head
    pops = res.column(Method.LOSSY, "population")
    assert pops[0] == 1.0 and np.all(np.diff(pops) < 0)


def test_json_output(tmp_path):
    res = run_sweep(SweepSpec(SystemSpec.two_state(PulseShape.gaussian(2.0), 1.0), Axis.DETUNING,
                              [0.0, 1.0], [Method.AE], oracle=False, notes="check"))
    path = tmp_path / "out.json"
    res.write_json(path)
    d = json.loads(path.read_text())
    assert d["metadata"]["tool"] == "starkphase"
    assert d["metadata"]["notes"] == "check"
    assert d["rows"][0]["ae_phase"] is None
    assert d["rows"][1]["ae_phase"] == pytest.approx(math.sqrt(math.pi / 2))


@pytest.mark.parametrize("kwargs", [
    dict(grid=[]),
    dict(grid=[1.0, 3.0, 2.0]),
    dict(methods=[Method.AE3_V]),
    dict(methods=[Method.NUMERIC]),
    dict(axis=Axis.LOSS, grid=[-1.0]),
])
def test_spec_validation(kwargs):
    base = dict(system=SystemSpec.two_state(PulseShape.gaussian(2.0), 1.0), axis=Axis.DETUNING,
                grid=[1.0], methods=[Method.AE])
    base.update(kwargs)
    with pytest.raises(InvalidSpecError):
        SweepSpec(**base)


def test_loss_axis_rejected_for_three_states():
    g = PulseShape.gaussian(1.0)
    with pytest.raises(InvalidSpecError):
        SweepSpec(SystemSpec.v(g, g, 1.0, 2.0), Axis.LOSS, [0.0])


def test_design_two_state():
    rep = design_command(math.pi / 2)
    assert rep.alpha == 2.0 and rep.delta == pytest.approx(1.0, abs=1e-12)
    assert rep.area == pytest.approx(2 * math.pi)
    assert rep.phase_residual < 1e-6
    assert rep.transition_probability < 1e-8
    assert any("detuning*T" in line for line in rep.lines())


def test_design_ladder():
    rep = design_command(math.pi / 2, system="ladder")
    assert rep.alpha == pytest.approx(2 * math.sqrt(2))
    assert rep.delta == pytest.approx(1 + math.sqrt(2), abs=1e-10)
    assert rep.phase_residual < 1e-6
    assert rep.transition_probability < 1e-8


def test_design_higher_order_and_unattainable():
    rep = design_command(4.0, n=2, verify=False)
    assert rep.numeric_phase is None and rep.alpha == 4.0
    with pytest.raises(UnattainableError):
        design_command(4.0, n=1)
    with pytest.raises(InvalidSpecError):
        design_command(1.0, system="v")
