"""Report files (JSON / CSV) and SVG plots."""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .certifier import VERDICTS, InequalityReport, TightnessResult

SCHEMA_VERSION = 1


def to_record(item) -> dict[str, Any]:
    """A JSON-normalised dict for a report, tightness result or plain dict."""
    if dataclasses.is_dataclass(item):
        item = dataclasses.asdict(item)
    return json.loads(json.dumps(item, default=_jsonable))


def _jsonable(obj):
    if hasattr(obj, "tolist"):
        return obj.tolist()
    if hasattr(obj, "to_text"):
        return obj.to_text()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def verdict_counts(records: Sequence[dict]) -> dict[str, int]:
    counts = {v: 0 for v in VERDICTS}
    for r in records:
        if r.get("verdict") in counts:
            counts[r["verdict"]] += 1
    return counts


def build_document(items, config: dict | None = None, command: str | None = None,
                   runtime: float = 0.0, summary: dict | None = None) -> dict:
    records = [to_record(r) for r in items]
    doc_summary = {"records": len(records), "verdicts": verdict_counts(records)}
    doc_summary.update(summary or {})
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "command": command,
        "config": config or {},
        "runtime_seconds": runtime,
        "summary": to_record(doc_summary),
        "records": records,
    }


def write_report(items, path: str | Path, fmt: str = "json", config: dict | None = None,
                 command: str | None = None, runtime: float = 0.0,
                 summary: dict | None = None) -> dict:
    """Write records to ``path``; returns the document that was written."""
    if fmt not in ("json", "csv"):
        raise ValueError(f"unknown report format {fmt!r}")
    doc = build_document(items, config, command, runtime, summary)
    path = Path(path)
    if fmt == "json":
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        path.write_text(_to_csv(doc), newline="")
    return doc


# CSV ------------------------------------------------------------------------

def _flatten(rec: dict, prefix: str = "") -> dict[str, Any]:
    out: dict[str, Any] = {}
    for k, v in rec.items():
        name = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, name + "."))
        else:
            out[name] = v
    return out


def _cell(v) -> str:
    if isinstance(v, str):
        try:
            json.loads(v)
        except ValueError:
            return v
    return json.dumps(v)


def _parse_cell(text: str):
    try:
        return json.loads(text)
    except ValueError:
        return text


def _to_csv(doc: dict) -> str:
    buf = io.StringIO()
    meta = {k: doc[k] for k in ("schema_version", "tool_version", "command",
                                "runtime_seconds", "summary", "config")}
    for k, v in meta.items():
        buf.write(f"# {k}: {json.dumps(v, sort_keys=True)}\n")
    rows = [_flatten(r) for r in doc["records"]]
    header: list[str] = []
    for row in rows:
        for k in row:
            if k not in header:
                header.append(k)
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if k not in row else _cell(row[k]) for k in header])
    return buf.getvalue()


def _unflatten(row: dict[str, Any]) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for key, value in row.items():
        node = out
        parts = key.split(".")
        for part in parts[:-1]:
            node = node.setdefault(part, {})
        node[parts[-1]] = value
    return out


def read_report(path: str | Path) -> dict:
    """Parse a JSON or CSV report back into the document structure."""
    path = Path(path)
    text = path.read_text()
    if text.lstrip().startswith("{"):
        return json.loads(text)
    doc: dict[str, Any] = {}
    lines = text.splitlines()
    body_start = 0
    for i, line in enumerate(lines):
        if not line.startswith("# "):
            body_start = i
            break
        key, _, value = line[2:].partition(": ")
        doc[key] = json.loads(value)
    else:
        body_start = len(lines)
    records = []
    body = lines[body_start:]
    if body:
        reader = csv.reader(body)
        header = next(reader)
        for cells in reader:
            row = {k: _parse_cell(c) for k, c in zip(header, cells) if c != ""}
            records.append(_unflatten(row))
    doc["records"] = records
    return doc


# plots ----------------------------------------------------------------------

def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    matplotlib.rcParams["svg.hashsalt"] = "remez-lab"
    matplotlib.rcParams["svg.fonttype"] = "none"
    return plt


def emit_plot(data, path: str | Path) -> Path:
    """Write an SVG plot of inequality margins or of the tightness curves.

    ``data`` is a sequence of :class:`InequalityReport` (margin against the
    measure of A, or against the threshold for level-set reports; one panel
    per suite) or of :class:`TightnessResult` (for each degree: the exact
    restricted integral, the ``eps^(d+1)/(d+1)`` bound and the integral
    predicted by the integral Remez bound, against eps).
    """
    items = list(data)
    if not items:
        raise ValueError("nothing to plot")
    plt = _pyplot()
    if all(isinstance(x, TightnessResult) for x in items):
        fig = _tightness_figure(plt, items)
    elif all(isinstance(x, InequalityReport) for x in items):
        fig = _margin_figure(plt, items)
    else:
        raise TypeError("emit_plot takes reports or tightness results, not a mixture")
    path = Path(path)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def _margin_figure(plt, reports):
    suites = sorted({r.suite for r in reports})
    fig, axes = plt.subplots(1, len(suites), figsize=(5 * len(suites), 4), squeeze=False)
    for ax, suite in zip(axes[0], suites):
        rows = [r for r in reports if r.suite == suite]
        if suite == "cw":
            xs = [r.threshold for r in rows]
            ax.set_xlabel("threshold t")
            ax.set_xscale("log")
        else:
            xs = [r.mu_A.value if r.mu_A is not None else math.nan for r in rows]
            ax.set_xlabel("measure of A")
        ys = [r.margin for r in rows]
        colors = ["tab:red" if r.verdict == "violated" else "tab:blue" for r in rows]
        ax.scatter(xs, ys, s=6, c=colors, label=f"{suite} ({len(rows)})")
        ax.axhline(0.0, color="black", lw=0.8)
        ax.set_ylabel("margin")
        ax.set_title(suite)
        ax.legend(loc="best")
    fig.tight_layout()
    return fig


def _tightness_figure(plt, results):
    degrees = sorted({r.d for r in results})
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for d in degrees:
        rows = sorted((r for r in results if r.d == d), key=lambda r: r.eps)
        eps = [r.eps for r in rows]
        ax.plot(eps, [r.restricted_integral for r in rows], "-o", ms=3,
                label=f"d={d}: exact integral over [0, eps]")
        ax.plot(eps, [r.upper_bound for r in rows], "--",
                label=f"d={d}: eps^(d+1)/(d+1)")
        ax.plot(eps, [r.predicted_lower * r.mu_A for r in rows], ":",
                label=f"d={d}: integral Remez prediction")
    ax.set_xlabel("eps")
    ax.set_yscale("log")
    ax.set_ylabel("integral of t^d e^-t over [0, eps]")
    ax.legend(loc="best", fontsize="small")
    fig.tight_layout()
    return fig
