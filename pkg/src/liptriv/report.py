"""JSON report emission with a stable schema and deterministic bytes.

Top-level keys, in order: tool_version, input, field, invariance_dim,
projection_matrix, reduced_map, jelonek_generators, critical_generators,
ltv, then the verdict-specific extras (reason / ltv_complement / ltv_real),
then checks.  The same report object always serializes to identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import __version__
from .classifier import LtvReport
from .parsing import print_polynomial
from .polycore import PolyMap
from .rational import RationalMap

_LTV_LABEL = {
    "empty": "empty",
    "all_values": "all values",
    "complement": "complement",
    "real_complement": "real complement",
    "undetermined": "undetermined",
    "not_applicable": "not applicable",
}


def _frac(x: Fraction) -> str:
    return str(x)


def _matrix(rows) -> list[list[str]]:
    return [[_frac(x) for x in row] for row in rows]


def input_block(src: PolyMap | RationalMap) -> dict:
    if isinstance(src, RationalMap):
        components = []
        for num, den in zip(src.numerators, src.denominators):
            if den.is_constant() and den.constant_value() == 1:
                components.append(print_polynomial(num))
            else:
                components.append(
                    f"({print_polynomial(num)}) / ({print_polynomial(den)})"
                )
        kind = "ratmap"
    else:
        components = [print_polynomial(c) for c in src.components]
        kind = "map"
    return {
        "kind": kind,
        "name": src.name,
        "ring": list(src.vars),
        "components": components,
        "n": src.n,
        "p": src.p,
    }


def schema_skeleton(src, field_name: str) -> dict:
    """All schema keys present, unfilled analysis fields null."""
    return {
        "tool_version": __version__,
        "input": input_block(src),
        "field": field_name,
        "invariance_dim": None,
        "projection_matrix": None,
        "reduced_map": None,
        "jelonek_generators": None,
        "critical_generators": None,
        "ltv": None,
        "checks": [],
    }


def report_document(report: LtvReport) -> dict:
    """Schema-shaped plain dict, ready for json.dumps."""
    doc: dict = {"tool_version": __version__}
    doc["input"] = input_block(report.source)
    doc["field"] = report.field

    if report.factorization is not None:
        fact = report.factorization
        doc["invariance_dim"] = fact.V.dim
        doc["invariance_basis"] = _matrix(fact.V.basis)
        doc["projection_matrix"] = _matrix(fact.pi.rows)
        doc["reduced_map"] = [print_polynomial(c) for c in fact.g.components]
        doc["reduced_vars"] = list(fact.g.vars)
        doc["reduced_dim"] = fact.m
    else:
        doc["invariance_dim"] = None
        doc["projection_matrix"] = None
        doc["reduced_map"] = None

    doc["jelonek_generators"] = (
        [print_polynomial(g) for g in report.jelonek.ideal.generators]
        if report.jelonek is not None
        else None
    )
    doc["critical_generators"] = (
        [print_polynomial(g) for g in report.critical.ideal.generators]
        if report.critical is not None
        else None
    )

    ltv = report.ltv
    doc["ltv"] = _LTV_LABEL[ltv.kind]
    if ltv.reason:
        doc["reason"] = ltv.reason
    if ltv.kind == "complement":
        doc["ltv_complement"] = [print_polynomial(g) for g in ltv.generators]
    if ltv.kind == "real_complement" or (
        ltv.kind == "undetermined" and (ltv.critical_candidates or ltv.probe_table)
    ):
        real_block: dict = {}
        if ltv.generators:
            real_block["exact_complement_generators"] = [
                print_polynomial(g) for g in ltv.generators
            ]
        if ltv.critical_candidates:
            real_block["critical_candidates"] = [
                {
                    "interval": [_frac(r.interval[0]), _frac(r.interval[1])],
                    "approx": r.approx,
                    "status": r.status,
                    "witness": list(r.witness) if r.witness else None,
                }
                for r in ltv.critical_candidates
            ]
        if ltv.probe_table:
            real_block["probe_table"] = [
                {"value": list(v), "verdict": verdict, "mode": mode}
                for v, verdict, mode in ltv.probe_table
            ]
        if ltv.note:
            real_block["note"] = ltv.note
        doc["ltv_real"] = real_block

    if report.flags:
        doc["flags"] = dict(sorted(report.flags.items()))
    doc["seed"] = report.seed
    doc["checks"] = [
        {"name": c.name, "verdict": c.verdict, "data": c.data} for c in report.checks
    ]
    return doc


def emit_report(report: LtvReport) -> str:
    """Deterministic JSON text for the report (stable key order, trailing newline)."""
    return json.dumps(report_document(report), indent=2, allow_nan=False) + "\n"


def render_text(report: LtvReport) -> str:
    """Compact human-readable summary for terminal output."""
    doc = report_document(report)
    lines = []
    src = doc["input"]
    lines.append(f"mapping {src['name']}: K^{src['n']} -> K^{src['p']}  [{doc['field']}]")
    lines.append("  components: " + ", ".join(src["components"]))
    if doc.get("invariance_dim") is not None:
        lines.append(
            f"  invariance subspace: dim {doc['invariance_dim']}"
            + (
                "  basis " + "; ".join(str(v) for v in doc.get("invariance_basis", []))
                if doc.get("invariance_basis")
                else ""
            )
        )
        lines.append(f"  reduced map (m = {doc['reduced_dim']}): " + ", ".join(doc["reduced_map"]))
    if doc.get("jelonek_generators") is not None:
        lines.append("  jelonek ideal: <" + ", ".join(doc["jelonek_generators"] or ["0"]) + ">")
    if doc.get("critical_generators") is not None:
        lines.append("  critical ideal: <" + ", ".join(doc["critical_generators"] or ["0"]) + ">")
    lines.append(f"  Ltv: {doc['ltv']}")
    if doc.get("reason"):
        lines.append(f"    reason: {doc['reason']}")
    if doc.get("ltv_complement") is not None:
        lines.append("    complement of V(" + ", ".join(doc["ltv_complement"]) + ")")
    real_block = doc.get("ltv_real")
    if real_block:
        if "exact_complement_generators" in real_block:
            lines.append(
                "    exact part: complement of V("
                + ", ".join(real_block["exact_complement_generators"])
                + ")"
            )
        for entry in real_block.get("critical_candidates", []):
            lines.append(
                f"    critical candidate {entry['approx']}: {entry['status']}"
            )
        for entry in real_block.get("probe_table", []):
            lines.append(
                f"    probe c={entry['value']}: {entry['verdict']} ({entry['mode']})"
            )
    for check in doc["checks"]:
        lines.append(f"  check {check['name']}: {check['verdict']}")
    if doc.get("flags"):
        for key, value in doc["flags"].items():
            lines.append(f"  flag {key}: {value}")
    return "\n".join(lines) + "\n"
