"""Experiment reports and their json / csv / text renderings."""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

SCHEMA_VERSION = 1
CSV_COLUMNS = (
    "mode", "d", "n", "law", "samples", "seed", "estimate", "theory",
    "ci_low", "ci_high", "z", "degenerate", "wall_ms",
)


class ReportError(OSError):
    pass


@dataclass
class ExperimentReport:
    config: dict
    estimate: float
    theory_approx: float
    theory_exact: Fraction | None
    ci_low: float | None
    ci_high: float | None
    z_score: float | None
    trials_total: int
    trials_degenerate: int
    check_passed: bool
    rng_fingerprint: str
    counts: dict = field(default_factory=dict)
    oracle_exact: dict | None = None
    certificates: list | None = None
    wall_time_ms: float = 0.0

    def to_dict(self, include_wall_time: bool = True) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "config": self.config,
            "estimate": self.estimate,
            "theory_approx": self.theory_approx,
            "theory_exact": None if self.theory_exact is None else str(self.theory_exact),
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "z_score": _finite_or_none(self.z_score),
            "trials_total": self.trials_total,
            "trials_degenerate": self.trials_degenerate,
            "check_passed": self.check_passed,
            "rng_fingerprint": self.rng_fingerprint,
            "counts": self.counts,
            "oracle_exact": self.oracle_exact,
            "certificates": self.certificates,
        }
        if include_wall_time:
            out["wall_time_ms"] = self.wall_time_ms
        return out

    def csv_row(self) -> list:
        c = self.config
        return [
            c["mode"], c["d"], _blank(c.get("n")), _blank(c.get("law")), c["samples"], c["seed"],
            _num(self.estimate), _num(self.theory_approx), _num(self.ci_low), _num(self.ci_high),
            _num(self.z_score), self.trials_degenerate, _num(self.wall_time_ms),
        ]

    def summary(self) -> str:
        c = self.config
        label = c["mode"] + f" d={c['d']}"
        if c.get("n") is not None:
            label += f" n={c['n']}"
        if c.get("law"):
            label += f" law={c['law']}"
        if c.get("baseline_target"):
            label += f" target={c['baseline_target']}"
        theory = str(self.theory_exact) if self.theory_exact is not None else f"{self.theory_approx:.6f}"
        lines = [
            label,
            f"  estimate   {self.estimate:.6f}",
            f"  theory     {theory} ({self.theory_approx:.6f})",
        ]
        if self.oracle_exact is not None:
            lines.append(
                f"  exact      {self.oracle_exact['convex_count']}/{self.oracle_exact['total']}"
                f" over {len(self.certificates or [])} input sets"
            )
        else:
            lines.append(f"  99% CI     [{self.ci_low:.6f}, {self.ci_high:.6f}]")
            lines.append(f"  z          {self.z_score:+.3f}")
        lines.append(f"  trials     {self.trials_total} ({self.trials_degenerate} degenerate)")
        lines.append(f"  check      {'PASS' if self.check_passed else 'FAIL'}")
        lines.append(f"  wall time  {self.wall_time_ms:.0f} ms")
        return "\n".join(lines)


def _finite_or_none(x):
    if x is None or not math.isfinite(x):
        return None
    return x


def _blank(x):
    return "" if x is None else x


def _num(x) -> str:
    if x is None:
        return ""
    return repr(float(x))


def render(reports, fmt: str) -> str:
    if isinstance(reports, ExperimentReport):
        reports = [reports]
    if fmt == "json":
        payload = [r.to_dict() for r in reports]
        return json.dumps(payload[0] if len(payload) == 1 else payload, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in reports:
            writer.writerow(r.csv_row())
        return buf.getvalue()
    if fmt == "text":
        return "\n\n".join(r.summary() for r in reports) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def emit_report(reports, fmt: str = "text", path: str | Path | None = None) -> None:
    """Write one report (or a list of them) to ``path``, or stdout when ``path`` is None."""
    text = render(reports, fmt)
    if path is None:
        sys.stdout.write(text)
        return
    path = Path(path)
    try:
        path.write_text(text)
    except OSError as exc:
        raise ReportError(f"cannot write report to {path}: {exc}") from exc
