"""Text rendering of ledgers, factor reports, sweeps and simulation results."""

from __future__ import annotations

import csv
import enum
import io
import math
from typing import Iterable, Sequence

import numpy as np

from .factors import NoiseFactorReport
from .montecarlo import SimulationResult
from .propagation import PropagationLedger, stage_factor_from_snr

SCI_UPPER = 1e12
SCI_LOWER = 1e-12
Z_BAND = 4.0


class ReportFormat(str, enum.Enum):
    TABLE = "table"
    CSV = "csv"


def format_number(value: float) -> str:
    """Shortest round-trip decimal for ``value``; scientific outside [1e-12, 1e12).

    Locale independent, always '.' as decimal separator.
    """
    value = float(value)
    if not math.isfinite(value):
        return repr(value)
    if value != 0.0 and not SCI_LOWER <= abs(value) < SCI_UPPER:
        return np.format_float_scientific(value, unique=True, trim="-")
    return np.format_float_positional(value, unique=True, trim="0")


FACTOR_COLUMNS = ["stage", "gain", "added_noise", "friis_factor", "corrected_factor",
                  "friis_figure_db", "corrected_figure_db", "delta"]
TOTAL_COLUMNS = ["total_direct", "total_friis", "total_corrected_product", "max_total_discrepancy"]
LEDGER_COLUMNS = ["input_signal", "input_noise", "output_signal", "output_noise",
                  "input_snr", "output_snr", "snr_stage_factor"]


def _factor_cells(row) -> list[float]:
    return [row.gain, row.added_noise, row.friis_factor, row.corrected_factor,
            row.friis_figure_db, row.corrected_figure_db, row.delta]


def _total_cells(report: NoiseFactorReport) -> list[float]:
    return [report.total_direct, report.total_friis, report.total_corrected_product,
            report.max_total_discrepancy]


def _csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(header)
    for row in rows:
        writer.writerow([c if isinstance(c, str) else format_number(c) for c in row])
    return buf.getvalue()


def _table(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [[c if isinstance(c, str) else format_number(c) for c in row] for row in rows]
    widths = [max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths)),
             "  ".join("-" * w for w in widths)]
    lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    return "\n".join(lines) + "\n"


def _totals_block(report: NoiseFactorReport) -> str:
    names = ["total factor (SNR_i/SNR_o)", "total factor (Friis composition)",
             "total factor (corrected product)", "max pairwise relative discrepancy"]
    width = max(len(n) for n in names)
    return "".join(f"{n.ljust(width)}  {format_number(v)}\n" for n, v in zip(names, _total_cells(report)))


def emit_report(report: NoiseFactorReport, format: ReportFormat | str = ReportFormat.TABLE) -> str:
    """Per-stage Friis/corrected comparison followed by the three totals."""
    format = ReportFormat(format)
    stage_rows = [[str(r.index)] + _factor_cells(r) for r in report.rows]
    if format is ReportFormat.CSV:
        blank = [""] * len(TOTAL_COLUMNS)
        rows = [r + blank for r in stage_rows]
        rows.append(["total"] + [""] * (len(FACTOR_COLUMNS) - 1) + _total_cells(report))
        return _csv(FACTOR_COLUMNS + TOTAL_COLUMNS, rows)
    out = ""
    if stage_rows:
        out += _table(FACTOR_COLUMNS, stage_rows) + "\n"
    return out + _totals_block(report)


def emit_analysis(ledger: PropagationLedger, report: NoiseFactorReport,
                  format: ReportFormat | str = ReportFormat.TABLE) -> str:
    """Propagation ledger joined with the factor comparison, stage by stage."""
    format = ReportFormat(format)
    ledger_rows = [
        [str(e.index), e.input_signal, e.input_noise, e.output_signal, e.output_noise,
         e.input_snr, e.output_snr, stage_factor_from_snr(ledger, e.index)]
        for e in ledger.entries
    ]
    if format is ReportFormat.CSV:
        header = ["stage", "gain", "added_noise"] + LEDGER_COLUMNS + FACTOR_COLUMNS[3:] + TOTAL_COLUMNS
        rows = []
        for lrow, frow in zip(ledger_rows, report.rows):
            rows.append([lrow[0], frow.gain, frow.added_noise] + lrow[1:] + _factor_cells(frow)[2:]
                        + [""] * len(TOTAL_COLUMNS))
        rows.append(["total"] + [""] * (len(header) - 1 - len(TOTAL_COLUMNS)) + _total_cells(report))
        return _csv(header, rows)
    out = (f"source signal {format_number(ledger.source_signal)}, "
           f"noise {format_number(ledger.source_noise)}, SNR {format_number(ledger.source_snr)}\n"
           f"output signal {format_number(ledger.output_signal)}, "
           f"noise {format_number(ledger.output_noise)}, SNR {format_number(ledger.output_snr)}\n\n")
    if ledger_rows:
        out += _table(["stage"] + LEDGER_COLUMNS, ledger_rows) + "\n"
    return out + emit_report(report, ReportFormat.TABLE)


def emit_sweep(target: str, results: Sequence[tuple[float, NoiseFactorReport]],
               format: ReportFormat | str = ReportFormat.CSV) -> str:
    """One block of stage rows plus a totals row per swept value."""
    format = ReportFormat(format)
    header = ["target", "value"] + FACTOR_COLUMNS + TOTAL_COLUMNS
    rows = []
    for value, report in results:
        for r in report.rows:
            rows.append([target, value, str(r.index)] + _factor_cells(r) + [""] * len(TOTAL_COLUMNS))
        rows.append([target, value, "total"] + [""] * (len(FACTOR_COLUMNS) - 1) + _total_cells(report))
    if format is ReportFormat.CSV:
        return _csv(header, rows)
    return _table(header, rows)


SIMULATION_COLUMNS = ["quantity", "index", "analytic", "estimate", "standard_error", "deviation_se", "within_4se"]


def simulation_rows(result: SimulationResult) -> list[list]:
    rows = []

    def add(quantity, index, analytic, estimate, se):
        dev = (estimate - analytic) / se if se > 0 else (0.0 if estimate == analytic else math.inf)
        rows.append([quantity, str(index), float(analytic), float(estimate), float(se), float(dev),
                     "yes" if abs(dev) <= Z_BAND else "no"])

    for i in range(result.chain.n + 1):
        add("noise_power", i, result.analytic_noise_power[i], result.noise_power[i], result.noise_power_se[i])
    for x in range(1, result.chain.n + 1):
        add("stage_factor", x, result.analytic_stage_factors[x - 1], result.stage_factors[x - 1],
            result.stage_factor_se[x - 1])
    add("total_factor", "total", result.analytic_total_factor, result.total_factor, result.total_factor_se)
    return rows


def emit_simulation(result: SimulationResult, format: ReportFormat | str = ReportFormat.TABLE) -> str:
    """Analytic versus estimated powers and factors with 4-sigma agreement flags."""
    format = ReportFormat(format)
    rows = simulation_rows(result)
    if format is ReportFormat.CSV:
        return _csv(SIMULATION_COLUMNS, rows)
    total = rows[-1]
    band = Z_BAND * result.total_factor_se
    head = (f"samples {result.sample_count}, seed {result.seed}\n"
            f"total factor: analytic {format_number(total[2])}, estimate {format_number(total[3])}, "
            f"|difference| {format_number(abs(total[3] - total[2]))} "
            f"(4-SE band {format_number(band)}) {'PASS' if total[6] == 'yes' else 'FAIL'}\n\n")
    return head + _table(SIMULATION_COLUMNS, rows)
