"""Verification records and their serialisations (text, JSON lines, CSV)."""
from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import mpmath as mp

PASS = "PASS"
FAIL = "FAIL"
REPORT_ONLY = "REPORT_ONLY"
STATUSES = (PASS, FAIL, REPORT_ONLY)

FIELDS = ("check_id", "inputs", "lhs", "rhs", "abs_error", "tolerance", "status", "wall_time_ms")


@dataclass(frozen=True)
class VerificationReport:
    check_id: str
    inputs: dict
    lhs: str
    rhs: str
    abs_error: str
    tolerance: str
    status: str
    wall_time_ms: int = 0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in FIELDS}


def render(x: Any, digits: int) -> str:
    """Locale-free decimal rendering; exact rationals stay exact."""
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    if isinstance(x, mp.mpc):
        re, im = x.real, x.imag
        if im == 0:
            return mp.nstr(re, digits)
        # imaginary parts here are quadrature noise; keep them short
        sign = "+" if im >= 0 else "-"
        return mp.nstr(re, digits) + sign + mp.nstr(abs(im), 5) + "j"
    if isinstance(x, mp.mpf):
        return mp.nstr(x, digits)
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _render_err(x: Any) -> str:
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    return mp.nstr(x, 5)


def make_report(
    check_id: str,
    inputs: dict,
    lhs: Any,
    rhs: Any,
    tolerance: Any,
    *,
    digits: int = 30,
    report_only: bool = False,
    started: float | None = None,
    abs_error: Any = None,
) -> VerificationReport:
    """Build a report; PASS iff |lhs - rhs| <= tolerance (unless report-only).

    Exact (Fraction) operands are compared exactly.  A zero tolerance on
    exact operands therefore means exact equality.
    """
    # compare well above the rendering precision; the mpmath default is 53 bits
    prec = max(mp.mp.prec, math.ceil((digits + 30) * math.log2(10)))
    with mp.workprec(prec):
        if abs_error is None:
            if isinstance(lhs, (int, Fraction)) and isinstance(rhs, (int, Fraction)):
                abs_error = abs(Fraction(lhs) - Fraction(rhs))
            else:
                abs_error = abs(_to_mp(lhs) - _to_mp(rhs))
        if report_only:
            status = REPORT_ONLY
        else:
            if isinstance(abs_error, (int, Fraction)) and isinstance(tolerance, (int, Fraction)):
                ok = abs_error <= tolerance
            else:
                ok = _to_mp(abs_error) <= _to_mp(tolerance)
            status = PASS if ok else FAIL
    elapsed = 0 if started is None else int(round((time.perf_counter() - started) * 1000))
    return VerificationReport(
        check_id=check_id,
        inputs={k: _plain(v) for k, v in inputs.items()},
        lhs=render(lhs, digits),
        rhs=render(rhs, digits),
        abs_error=_render_err(abs_error),
        tolerance=_render_err(tolerance),
        status=status,
        wall_time_ms=elapsed,
    )


def _to_mp(x):
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return x if isinstance(x, (mp.mpf, mp.mpc)) else mp.mpf(x)


def _plain(v):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, float):
        return repr(v)
    return str(v)


# -- serialisation -----------------------------------------------------------


def emit_json(report: VerificationReport) -> str:
    return json.dumps(report.as_dict(), separators=(",", ":"), ensure_ascii=True)


def emit_csv(report: VerificationReport, header: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    if header:
        w.writerow(FIELDS)
    row = report.as_dict()
    row["inputs"] = json.dumps(row["inputs"], separators=(",", ":"), sort_keys=False)
    w.writerow([row[k] for k in FIELDS])
    return buf.getvalue()


def _inputs_text(inputs: dict) -> str:
    return ",".join(f"{k}={v}" for k, v in inputs.items())


def emit_text(report: VerificationReport) -> str:
    return (
        f"{report.status:<11} {report.check_id:<28} {_inputs_text(report.inputs):<18} "
        f"err={report.abs_error:<12} tol={report.tolerance:<10} {report.wall_time_ms:>6}ms\n"
        f"{'':11} lhs={report.lhs}\n{'':11} rhs={report.rhs}\n"
    )


class Emitter:
    """Serialises a stream of reports; the CSV header goes out once."""

    def __init__(self, fmt: str, stream):
        if fmt not in ("text", "json", "csv"):
            raise ValueError(f"unknown format {fmt!r}")
        self.fmt = fmt
        self.stream = stream
        self._header_done = False

    def __call__(self, report: VerificationReport) -> None:
        self.stream.write(emit(report, self.fmt, header=not self._header_done))
        self._header_done = True


def emit(report: VerificationReport, fmt: str, header: bool = False) -> str:
    if fmt == "json":
        return emit_json(report) + "\n"
    if fmt == "csv":
        return emit_csv(report, header=header)
    if fmt == "text":
        return emit_text(report)
    raise ValueError(f"unknown format {fmt!r}")
