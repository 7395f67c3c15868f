"""Renders reports, sweeps and threshold results as tables, JSON or CSV."""

import csv
import io
import json
import math
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Sequence, Tuple, Type

from wywitness.commands import SweepRow, ThresholdResult
from wywitness.criteria import CriterionReport, literature_reports
from wywitness.keys import SWEEP_HEADER
from wywitness.serial import report_to_dict
from wywitness.utils import format_float

Metadata = Sequence[Tuple[str, str]]


def _sweep_record(row: SweepRow, observables: str, report: CriterionReport):
    return {
        "param": format_float(row.param_value),
        "criterion": report.criterion.value,
        "observables": observables,
        "lhs_re": format_float(report.lhs.real),
        "lhs_im": format_float(report.lhs.imag),
        "rhs": format_float(report.rhs),
        "margin": format_float(report.margin),
        "verdict": report.verdict.value,
        "min_pt_eig": format_float(row.min_pt_eigenvalue),
    }


class Renderer(ABC):
    """Abstract base class for output formats.

    Each method returns the complete text to print or write, ending in a newline.

    """

    @abstractmethod
    def render_reports(self, reports: Sequence[CriterionReport]) -> str:
        ...

    @abstractmethod
    def render_sweep(
        self, rows: Sequence[SweepRow], metadata: Metadata, annotate: bool = False
    ) -> str:
        ...

    @abstractmethod
    def render_threshold(self, result: ThresholdResult, metadata: Metadata) -> str:
        ...


class TableRenderer(Renderer):
    """Renders aligned plain-text tables for reading in a terminal."""

    @staticmethod
    def _number(value: Optional[float]) -> str:
        if value is None:
            return "-"
        return f"{value:.6g}"

    def _complex(self, z: complex) -> str:
        if z.imag == 0 or math.isnan(z.imag):
            return self._number(z.real)
        return f"{z.real:.6g}{z.imag:+.6g}j"

    def render_reports(self, reports: Sequence[CriterionReport]) -> str:
        lines = [
            f"{'criterion':<12} {'verdict':<13} {'lhs':>24} {'rhs':>13} {'margin':>13}"
        ]
        for report in reports:
            lines.append(
                f"{report.criterion.value:<12} {report.verdict.value:<13} "
                f"{self._complex(report.lhs):>24} {self._number(report.rhs):>13} "
                f"{self._number(report.margin):>13}"
            )
            if report.branch_values:
                branches = ", ".join(self._complex(z) for z in report.branch_values)
                lines.append(f"    branches: {branches}")
            if report.min_pt_eigenvalue is not None:
                lines.append(
                    f"    min eig(rho^PT): {self._number(report.min_pt_eigenvalue)}"
                )
            if report.route_gap is not None:
                lines.append(f"    route gap: {self._number(report.route_gap)}")
            if report.diagnostics:
                flags = ", ".join(diagnostic.value for diagnostic in report.diagnostics)
                lines.append(f"    diagnostics: {flags}")
            if report.note:
                lines.append(f"    note: {report.note}")
        return "\n".join(lines) + "\n"

    def render_sweep(
        self, rows: Sequence[SweepRow], metadata: Metadata, annotate: bool = False
    ) -> str:
        lines = [f"{key}: {value}" for key, value in metadata]
        lines.append(
            f"{'param':>10} {'criterion':<12} {'observables':<11} {'verdict':<10} "
            f"{'margin':>13}"
        )
        for row in rows:
            for observables, report in row.reports:
                lines.append(
                    f"{row.param_value:>10.6g} {report.criterion.value:<12} "
                    f"{observables:<11} {report.verdict.value:<10} "
                    f"{self._number(report.margin):>13}"
                )
        if annotate:
            for report in literature_reports():
                lines.append(
                    f"{report.criterion.value}: threshold {report.rhs:.6g} "
                    f"({report.note}, NOT_COMPUTED)"
                )
        return "\n".join(lines) + "\n"

    def render_threshold(self, result: ThresholdResult, metadata: Metadata) -> str:
        lines = [f"{key}: {value}" for key, value in metadata]
        lines.append(f"threshold: {result.value:.12g}")
        lo, hi = result.bracket
        lines.append(f"bracket: [{lo:.12g}, {hi:.12g}]")
        if len(result.flips) > 1:
            for lo, hi in result.flips[1:]:
                lines.append(f"further flip: [{lo:.12g}, {hi:.12g}]")
        lines.append(f"evaluations: {result.evaluations}")
        return "\n".join(lines) + "\n"


class JsonRenderer(Renderer):
    """Renders indented JSON; non-finite numbers become null."""

    @staticmethod
    def _dump(obj: Any) -> str:
        return json.dumps(obj, indent=2, allow_nan=False) + "\n"

    def render_reports(self, reports: Sequence[CriterionReport]) -> str:
        return self._dump([report_to_dict(report) for report in reports])

    def render_sweep(
        self, rows: Sequence[SweepRow], metadata: Metadata, annotate: bool = False
    ) -> str:
        obj: Dict[str, Any] = {
            "metadata": dict(metadata),
            "rows": [
                {
                    "param": row.param_value,
                    "min_pt_eigenvalue": row.min_pt_eigenvalue,
                    "reports": [
                        dict(observables=observables, **report_to_dict(report))
                        for observables, report in row.reports
                    ],
                }
                for row in rows
            ],
        }
        if annotate:
            obj["literature"] = [report_to_dict(r) for r in literature_reports()]
        return self._dump(obj)

    def render_threshold(self, result: ThresholdResult, metadata: Metadata) -> str:
        return self._dump(
            {
                "metadata": dict(metadata),
                "value": result.value,
                "bracket": list(result.bracket),
                "flips": [list(flip) for flip in result.flips],
                "evaluations": result.evaluations,
            }
        )


class CsvRenderer(Renderer):
    """Renders CSV with ``#``-prefixed metadata lines.

    Output contains no timestamps, so identical inputs give byte-identical files.

    """

    @staticmethod
    def _comments(metadata: Metadata) -> List[str]:
        return [f"# {key}: {value}\n" for key, value in metadata]

    @staticmethod
    def _write(fieldnames: Sequence[str], records: Sequence[Dict[str, str]]) -> str:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        writer.writerows(records)
        return buffer.getvalue()

    def render_reports(self, reports: Sequence[CriterionReport]) -> str:
        fieldnames = (
            "criterion",
            "lhs_re",
            "lhs_im",
            "rhs",
            "margin",
            "verdict",
            "min_pt_eig",
            "diagnostics",
        )
        records = [
            {
                "criterion": report.criterion.value,
                "lhs_re": format_float(report.lhs.real),
                "lhs_im": format_float(report.lhs.imag),
                "rhs": format_float(report.rhs),
                "margin": format_float(report.margin),
                "verdict": report.verdict.value,
                "min_pt_eig": format_float(report.min_pt_eigenvalue),
                "diagnostics": ";".join(d.value for d in report.diagnostics),
            }
            for report in reports
        ]
        return self._write(fieldnames, records)

    def render_sweep(
        self, rows: Sequence[SweepRow], metadata: Metadata, annotate: bool = False
    ) -> str:
        lines = self._comments(metadata)
        if annotate:
            for report in literature_reports():
                lines.append(
                    f"# {report.criterion.value},threshold,{format_float(report.rhs)},"
                    f"{report.verdict.value},{report.note}\n"
                )
        records = [
            _sweep_record(row, observables, report)
            for row in rows
            for observables, report in row.reports
        ]
        return "".join(lines) + self._write(SWEEP_HEADER, records)

    def render_threshold(self, result: ThresholdResult, metadata: Metadata) -> str:
        records = [
            {
                "value": format_float((lo + hi) / 2),
                "lo": format_float(lo),
                "hi": format_float(hi),
                "evaluations": str(result.evaluations),
            }
            for lo, hi in result.flips
        ]
        fieldnames = ("value", "lo", "hi", "evaluations")
        return "".join(self._comments(metadata)) + self._write(fieldnames, records)


RENDERERS: Dict[str, Type[Renderer]] = {
    "table": TableRenderer,
    "json": JsonRenderer,
    "csv": CsvRenderer,
}


def get_renderer(name: str) -> Renderer:
    """Returns a renderer instance for ``table``, ``json`` or ``csv``.

    Raises:
        KeyError: If the format is unknown.

    """
    try:
        return RENDERERS[name]()
    except KeyError:
        raise KeyError(f"Unknown output format '{name}'.") from None
