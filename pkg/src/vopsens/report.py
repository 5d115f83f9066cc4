"""Structured analysis reports.

Reports are plain dictionaries with deterministic content: rationals
serialize as ``num/den`` strings, floats as shortest round-trip
decimals, rows in canonical order.  Two byte-identical invocations
differ only in the ``timing_seconds`` field.
"""

from __future__ import annotations

import json
import time

from . import __version__
from .coderivative import CoderivSet, QualReport
from .geometry import HPolyhedron, PolyCone, lp_feasible, vertices
from .problems import ParametricProblem, problem_digest
from .rationals import format_rat, zeros


def _ser_rows(matrix):
    return [[format_rat(a) for a in row] for row in matrix]


def poly_record(poly: HPolyhedron) -> dict:
    canon = poly.canonical()
    empty = not lp_feasible(canon)
    record = {
        "dim": canon.dim,
        "ineq": _ser_rows(canon.ineq_matrix),
        "ineq_rhs": [format_rat(a) for a in canon.ineq_rhs],
        "eq": _ser_rows(canon.eq_matrix),
        "eq_rhs": [format_rat(a) for a in canon.eq_rhs],
        "empty": empty,
    }
    if not empty:
        record["vertices"] = _ser_rows(vertices(canon))
        recession = HPolyhedron(
            canon.dim,
            canon.ineq_matrix,
            zeros(len(canon.ineq_matrix)),
            canon.eq_matrix,
            zeros(len(canon.eq_matrix)),
        )
        record["recession_rays"] = _ser_rows(
            PolyCone.from_halfspaces(recession.canonical()).generators()
        )
    return record


def cone_record(cone: PolyCone) -> dict:
    return {
        "dim": cone.dim,
        "generators": _ser_rows(cone.generators()),
    }


def coderivative_record(result: CoderivSet) -> dict:
    return {
        "query": [format_rat(a) for a in result.query],
        "provenance": result.provenance,
        "exact": result.exact,
        "tolerance": result.tolerance,
        "set": poly_record(result.polyhedron),
    }


def qualification_record(report: QualReport) -> dict:
    return {
        "condition_i": {
            "holds": report.condition_i_holds,
            "cone": None
            if report.condition_i_cone is None
            else cone_record(report.condition_i_cone),
        },
        "condition_ii": {
            "holds": report.condition_ii_holds,
            "cone": None
            if report.condition_ii_cone is None
            else cone_record(report.condition_ii_cone),
        },
    }


def base_report(problem: ParametricProblem, command: str) -> dict:
    return {
        "tool": "vopsens",
        "version": __version__,
        "command": command,
        "problem": problem.name or "<inline>",
        "problem_digest": problem_digest(problem),
    }


def finish_report(report: dict, started: float) -> dict:
    report["timing_seconds"] = round(time.perf_counter() - started, 6)
    return report


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _text_lines(value, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for key in sorted(value):
            inner = value[key]
            if isinstance(inner, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(inner, indent + 1))
            else:
                lines.append(f"{pad}{key}: {inner}")
    elif isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            lines.append(f"{pad}{value}")
        else:
            for v in value:
                lines.extend(_text_lines(v, indent))
                lines.append(f"{pad}-")
            if lines and lines[-1] == f"{pad}-":
                lines.pop()
    else:
        lines.append(f"{pad}{value}")
    return lines


def to_text(report: dict) -> str:
    return "\n".join(_text_lines(report)) + "\n"


def emit(report: dict, fmt: str = "json", out_path: str | None = None) -> str:
    body = to_json(report) if fmt == "json" else to_text(report)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(body)
    return body
