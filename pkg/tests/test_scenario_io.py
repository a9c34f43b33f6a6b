import io
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gridfreq.csvio import (METRICS_HEADER, TRACE_HEADER, metrics_rows,
                            read_metrics_csv, read_trace_csv,
                            write_metrics_csv, write_trace_csv)
from gridfreq.engine import SimConfig, Trace, run_simulation
from gridfreq.metrics import FrequencyMetrics, compare_controllers
from gridfreq.scenario import (Scenario, ScenarioError, parse_scenario,
                               parse_set_value, preset_scenario,
                               scenario_from_dict, serialize_scenario,
                               set_param, valid_param_paths)

CANONICAL = """
{"name":"ei80-droop","preset":"ei80",
 "system":{"h_sys":2.0,"d_load":1.0,
   "governor":{"kappa":0.3,"r_gov":0.05,"t_gov":8.0},
   "pv":{"c_pv":0.4,"headroom":0.05,"t_inv":0.05}},
 "controller":{"kind":"droop",
   "droop":{"r":0.05,"deadband":0.0006,"t_lag":0.1},
   "inertia":{"k":10.0,"t_lag":0.1,"t_washout":0.1,
              "recovery_clamp":false}},
 "contingency":{"dp":0.009,"t_event":1.0},
 "sim":{"dt":0.005,"t_end":60.0,"sample_interval":0.01,
        "rocof_window":0.1}}
"""


class TestParseScenario:
    def test_canonical_document(self):
        s = parse_scenario(CANONICAL)
        assert s.name == "ei80-droop"
        assert s.system.h_sys == 2.0
        assert s.system.governor.t_gov == 8.0
        assert s.system.pv.c_pv == 0.4
        assert s.controller.kind == "droop"
        assert s.controller.droop.deadband == 0.0006
        assert s.controller.inertia.k == 10.0
        assert s.controller.inertia.recovery_clamp is False
        assert s.contingency.dp == 0.009
        assert s.sim.dt == 0.005

    def test_preset_fills_missing_fields(self):
        s = parse_scenario('{"preset": "ei80"}')
        assert s.system.h_sys == 2.0
        assert s.contingency.dp == 0.009
        assert s.name == "ei80"

    def test_explicit_value_overrides_preset(self):
        s = parse_scenario('{"preset": "ei80", "system": {"h_sys": 3.5}}')
        assert s.system.h_sys == 3.5
        assert s.contingency.dp == 0.009

    def test_negative_h_sys_rejected(self):
        with pytest.raises(ScenarioError, match="h_sys must be > 0"):
            parse_scenario('{"system": {"h_sys": -1},'
                           ' "contingency": {"dp": 0.01}}')

    def test_unknown_top_level_key_rejected(self):
        with pytest.raises(ScenarioError, match="unknown key"):
            parse_scenario('{"preset": "ei80", "grid": {}}')

    def test_unknown_nested_key_rejected(self):
        with pytest.raises(ScenarioError, match="system.hsys"):
            parse_scenario('{"preset": "ei80", "system": {"hsys": 2.0}}')

    def test_missing_required_fields_without_preset(self):
        with pytest.raises(ScenarioError, match="h_sys"):
            parse_scenario('{"contingency": {"dp": 0.01}}')
        with pytest.raises(ScenarioError, match="dp"):
            parse_scenario('{"system": {"h_sys": 2.0}}')

    def test_syntax_error_reports_position(self):
        with pytest.raises(ScenarioError, match="line"):
            parse_scenario('{"preset": "ei80",}')

    def test_unknown_preset_lists_valid(self):
        with pytest.raises(ScenarioError, match="ercot80"):
            parse_scenario('{"preset": "wecc"}')

    def test_wrong_type_rejected(self):
        with pytest.raises(ScenarioError, match="must be a number"):
            parse_scenario('{"preset": "ei80",'
                           ' "system": {"h_sys": "two"}}')
        with pytest.raises(ScenarioError, match="true or false"):
            parse_scenario(
                '{"preset": "ei80", "controller":'
                ' {"inertia": {"recovery_clamp": 1}}}')

    def test_roundtrip_presets(self):
        for name in ("ei80", "ercot80"):
            s = preset_scenario(name, controller="combined")
            again = parse_scenario(serialize_scenario(s))
            assert again == s

    def test_roundtrip_modified_scenario(self):
        s = preset_scenario("ercot80")
        s = set_param(s, "system.pv.rate_limit", 0.25)
        s = set_param(s, "controller.inertia.recovery_clamp", True)
        again = parse_scenario(serialize_scenario(s))
        assert again == s

    @given(st.floats(min_value=0.5, max_value=10.0),
           st.floats(min_value=0.0, max_value=2.0),
           st.floats(min_value=1e-4, max_value=0.2),
           st.floats(min_value=0.0, max_value=0.9),
           st.floats(min_value=1e-3, max_value=0.01),
           st.booleans())
    def test_roundtrip_random_fields(self, h_sys, d_load, dp, headroom,
                                     deadband, clamp):
        s = preset_scenario("ei80")
        s = set_param(s, "system.h_sys", h_sys)
        s = set_param(s, "system.d_load", d_load)
        s = set_param(s, "contingency.dp", dp)
        s = set_param(s, "system.pv.headroom", headroom)
        s = set_param(s, "controller.droop.deadband", deadband)
        s = set_param(s, "controller.inertia.recovery_clamp", clamp)
        assert parse_scenario(serialize_scenario(s)) == s


class TestSetParam:
    def test_set_nested_value(self):
        s = preset_scenario("ei80")
        s2 = set_param(s, "system.governor.t_gov", 6.0)
        assert s2.system.governor.t_gov == 6.0
        assert s.system.governor.t_gov == 8.0  # original untouched

    def test_unknown_path_lists_valid_paths(self):
        s = preset_scenario("ei80")
        with pytest.raises(ScenarioError, match="system.h_sys"):
            set_param(s, "system.bogus", 1.0)

    def test_paths_cover_all_sections(self):
        paths = valid_param_paths()
        for expected in ("system.h_sys", "system.d_load",
                         "system.governor.kappa", "system.pv.headroom",
                         "controller.droop.r", "controller.inertia.k",
                         "contingency.dp", "sim.dt"):
            assert expected in paths

    def test_invalid_value_reports_path(self):
        s = preset_scenario("ei80")
        with pytest.raises(ScenarioError, match="system.h_sys"):
            set_param(s, "system.h_sys", -2.0)

    def test_parse_set_value(self):
        assert parse_set_value("0.25") == 0.25
        assert parse_set_value("true") is True
        assert parse_set_value("false") is False
        assert parse_set_value("none") is None
        with pytest.raises(ScenarioError):
            parse_set_value("fast")


class TestTraceCsv:
    def test_header_exact(self):
        sink = io.StringIO()
        write_trace_csv(Trace(), sink)
        assert sink.getvalue() == TRACE_HEADER + "\n"
        assert TRACE_HEADER == ("t_s,f_hz,rocof_hz_per_s,dp_gov_pu,"
                                "dp_pv_pu,dp_pv_droop_pu,dp_pv_inertia_pu")

    def test_pre_event_row_is_exact_zeroes(self):
        s = preset_scenario("ei80", controller="droop")
        trace = run_simulation(s, sim=SimConfig(t_end=10.0))
        sink = io.StringIO()
        write_trace_csv(trace, sink)
        first_row = sink.getvalue().splitlines()[1]
        assert first_row == ("0.000000,60.000000,0.000000,0.000000,"
                             "0.000000,0.000000,0.000000")

    def test_roundtrip_within_formatting_precision(self):
        s = preset_scenario("ercot80", controller="combined")
        trace = run_simulation(s, sim=SimConfig(t_end=10.0))
        sink = io.StringIO()
        write_trace_csv(trace, sink)
        again = read_trace_csv(io.StringIO(sink.getvalue()))
        assert len(again) == len(trace)
        for a, b in zip(trace.f_hz, again.f_hz):
            assert abs(a - b) <= 1e-6
        for a, b in zip(trace.dp_pv_pu, again.dp_pv_pu):
            assert abs(a - b) <= 1e-6

    def test_write_is_deterministic(self):
        s = preset_scenario("ei80", controller="inertia")
        sim = SimConfig(t_end=5.0)
        out1, out2 = io.StringIO(), io.StringIO()
        write_trace_csv(run_simulation(s, sim=sim), out1)
        write_trace_csv(run_simulation(s, sim=sim), out2)
        assert out1.getvalue() == out2.getvalue()

    def test_bad_header_rejected(self):
        with pytest.raises(ValueError, match="header"):
            read_trace_csv(io.StringIO("time,freq\n"))


class TestMetricsCsv:
    def test_header_and_order(self):
        s = preset_scenario("ei80")
        table = compare_controllers(s, sim=SimConfig(t_end=20.0))
        sink = io.StringIO()
        write_metrics_csv(metrics_rows(s.name, table), sink)
        lines = sink.getvalue().splitlines()
        assert lines[0] == METRICS_HEADER
        kinds = [line.split(",")[1] for line in lines[1:]]
        assert kinds == ["none", "droop", "inertia", "combined"]

    def test_empty_table(self):
        sink = io.StringIO()
        write_metrics_csv([], sink)
        assert sink.getvalue() == METRICS_HEADER + "\n"

    def test_roundtrip(self):
        m = FrequencyMetrics(nadir_hz=59.71234, nadir_time_s=2.34,
                             max_abs_rocof_hz_per_s=0.45678,
                             settling_freq_hz=59.876543)
        sink = io.StringIO()
        write_metrics_csv([("demo", "droop", m)], sink)
        rows = read_metrics_csv(io.StringIO(sink.getvalue()))
        assert rows[0][0] == "demo"
        assert rows[0][1] == "droop"
        assert rows[0][2].nadir_hz == pytest.approx(m.nadir_hz, abs=1e-6)
        assert rows[0][2].settling_freq_hz == pytest.approx(
            m.settling_freq_hz, abs=1e-6)


class TestScenarioDocForm:
    def test_dict_form_parses_identically(self):
        doc = json.loads(CANONICAL)
        assert scenario_from_dict(doc) == parse_scenario(CANONICAL)

    def test_scenario_equality_is_structural(self):
        assert preset_scenario("ei80") == preset_scenario("ei80")
        assert preset_scenario("ei80") != preset_scenario("ercot80")
