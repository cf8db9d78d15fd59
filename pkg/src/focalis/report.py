"""Report serialization: exact JSON and a human-readable text summary.

Field scalars are serialized without precision loss: rationals become
strings like "3/7" (or "5" when integral) and quadratic irrationalities
become {"a": ..., "b": ..., "d": ...} objects meaning a + b*sqrt(d).
Structural integers (ranks, degrees, counts, multiplicities) stay JSON
numbers.  Serialization is deterministic: the same report serializes to
the same bytes.
"""

import json
from fractions import Fraction

from .fields import QExt
from .congruence import SamplePoint


def encode_scalar(x):
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, QExt):
        return {"a": str(x.a), "b": str(x.b), "d": x.d}
    if isinstance(x, str):
        return x
    return str(x)


def encode_value(x):
    """Recursively encode nested report data into JSON-ready values."""
    if isinstance(x, dict):
        return {str(k): encode_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode_value(v) for v in x]
    if isinstance(x, SamplePoint):
        return {"u": str(x.u), "v": str(x.v)}
    return encode_scalar(x)


def _component_entry(comp):
    return {
        "locus": comp.locus_kind,
        "multiplicities": list(comp.profile or []),
        "degree": comp.degree,
        "squarefree_degree": comp.squarefree_degree,
        "is_dev": comp.is_dev,
        "direction": encode_value(list(comp.direction)) if comp.direction
        is not None else None,
    }


def _sample_entry(rec):
    return {
        "point": encode_value(rec.point),
        "conic_rank": rec.conic_rank,
        "dev_tag": rec.dev_tag,
        "dev_form_degree": rec.dev_degree,
        "second_order": {c.label: _component_entry(c)
                         for c in sorted(rec.components,
                                         key=lambda c: c.label)},
    }


def report_to_dict(report, input_label):
    """The report as a plain dict matching docs/report-schema.json."""
    return {
        "input": input_label,
        "mode": report.mode,
        "seed": report.seed,
        "samples": [_sample_entry(r) for r in report.samples],
        "class": report.cclass.tag,
        "subclass": report.cclass.sub,
        "segre": report.segre,
        "probes": encode_value(report.probes),
        "warnings": list(report.warnings),
        "error": None,
    }


def error_to_dict(exc, input_label, mode, seed):
    """A report-shaped document for a failed analysis."""
    payload = exc.payload() if hasattr(exc, "payload") else {
        "kind": "error", "message": str(exc)}
    return {
        "input": input_label,
        "mode": mode,
        "seed": seed,
        "samples": [],
        "class": None,
        "subclass": None,
        "segre": None,
        "probes": {},
        "warnings": [],
        "error": encode_value(payload),
    }


def to_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _fmt_point(p):
    return f"({p.u}, {p.v})"


def _fmt_components(rec):
    parts = []
    for c in sorted(rec.components, key=lambda c: c.label):
        if c.locus_kind == "whole":
            parts.append(f"{c.label}:whole")
        else:
            mult = "+".join(str(m) for m in c.profile) if c.profile else "0"
            parts.append(f"{c.label}:pts[{mult}]")
    return " ".join(parts) if parts else "-"


def report_to_text(report, input_label) -> str:
    """Human summary with the per-sample table."""
    lines = []
    lines.append(f"input: {input_label}")
    lines.append(f"mode: {report.mode}   seed: {report.seed}   "
                 f"samples: {len(report.samples)} usable of "
                 f"{report.n_samples} requested")
    lines.append(f"class: {report.cclass.label()}")
    lines.append(f"segre: {report.segre if report.segre else '-'}")
    lines.append("")

    header = f"{'point':>16}  {'rank':>4}  {'dev tag':<12} second-order"
    lines.append(header)
    lines.append("-" * len(header))
    for rec in report.samples:
        lines.append(f"{_fmt_point(rec.point):>16}  {rec.conic_rank:>4}  "
                     f"{rec.dev_tag:<12} {_fmt_components(rec)}")
    lines.append("")

    if report.probes:
        lines.append("probes:")
        encoded = encode_value(report.probes)
        for key in sorted(encoded):
            lines.append(f"  {key}: "
                         f"{json.dumps(encoded[key], sort_keys=True)}")
    if report.warnings:
        lines.append("warnings:")
        for w in report.warnings:
            lines.append(f"  - {w}")
    return "\n".join(lines) + "\n"
