"""CSV serialization for traces and metrics tables.

Formatting is fixed at six decimal places with ``\\n`` newlines so repeated
runs of the same command produce byte-identical files, suitable for
golden-file comparisons.
"""

from __future__ import annotations

from typing import Iterable, TextIO

from .engine import Trace
from .metrics import FrequencyMetrics

TRACE_HEADER = ("t_s,f_hz,rocof_hz_per_s,dp_gov_pu,dp_pv_pu,"
                "dp_pv_droop_pu,dp_pv_inertia_pu")
METRICS_HEADER = ("scenario,controller,nadir_hz,nadir_time_s,"
                  "max_abs_rocof_hz_per_s,settling_freq_hz")


def _fmt(x: float) -> str:
    # x + 0.0 canonicalizes -0.0 so zero always prints as 0.000000
    return f"{x + 0.0:.6f}"


def write_trace_csv(trace: Trace, sink: TextIO) -> None:
    """Write one row per sample with the fixed trace header."""
    sink.write(TRACE_HEADER + "\n")
    for i in range(len(trace)):
        sink.write(",".join((
            _fmt(trace.t[i]), _fmt(trace.f_hz[i]),
            _fmt(trace.rocof_hz_per_s[i]), _fmt(trace.dp_gov_pu[i]),
            _fmt(trace.dp_pv_pu[i]), _fmt(trace.dp_pv_droop_pu[i]),
            _fmt(trace.dp_pv_inertia_pu[i]))) + "\n")


def read_trace_csv(source: TextIO) -> Trace:
    """Parse a trace written by :func:`write_trace_csv`."""
    header = source.readline().rstrip("\n")
    if header != TRACE_HEADER:
        raise ValueError(f"unexpected trace header: {header!r}")
    trace = Trace()
    for line in source:
        line = line.strip()
        if not line:
            continue
        t, f, r, gov, pv, pvd, pvi = (float(x) for x in line.split(","))
        trace.t.append(t)
        trace.f_hz.append(f)
        trace.rocof_hz_per_s.append(r)
        trace.dp_gov_pu.append(gov)
        trace.dp_pv_pu.append(pv)
        trace.dp_pv_droop_pu.append(pvd)
        trace.dp_pv_inertia_pu.append(pvi)
    return trace


def write_metrics_csv(rows: Iterable[tuple[str, str, FrequencyMetrics]],
                      sink: TextIO) -> None:
    """Write (scenario, controller, metrics) rows in the order given."""
    sink.write(METRICS_HEADER + "\n")
    for scenario, controller, m in rows:
        sink.write(
            f"{scenario},{controller},{_fmt(m.nadir_hz)},"
            f"{_fmt(m.nadir_time_s)},{_fmt(m.max_abs_rocof_hz_per_s)},"
            f"{_fmt(m.settling_freq_hz)}\n"
        )


def read_metrics_csv(source: TextIO) -> list[tuple[str, str,
                                                   FrequencyMetrics]]:
    """Parse a metrics table written by :func:`write_metrics_csv`."""
    header = source.readline().rstrip("\n")
    if header != METRICS_HEADER:
        raise ValueError(f"unexpected metrics header: {header!r}")
    rows = []
    for line in source:
        line = line.strip()
        if not line:
            continue
        scenario, controller, nadir, t_nadir, rocof, settling = \
            line.split(",")
        rows.append((scenario, controller, FrequencyMetrics(
            nadir_hz=float(nadir),
            nadir_time_s=float(t_nadir),
            max_abs_rocof_hz_per_s=float(rocof),
            settling_freq_hz=float(settling),
        )))
    return rows


def metrics_rows(scenario_name: str, table: dict[str, FrequencyMetrics]
                 ) -> list[tuple[str, str, FrequencyMetrics]]:
    """Flatten a controller-comparison table into CSV rows."""
    return [(scenario_name, kind, m) for kind, m in table.items()]
