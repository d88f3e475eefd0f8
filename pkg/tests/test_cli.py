import csv
import io
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bernsum.cli import RunConfig, main, run
from bernsum.report import (
    FIELDS,
    Emitter,
    VerificationReport,
    emit,
    make_report,
)


def _report(status="PASS"):
    return VerificationReport("demo", {"n": 4}, "0", "0", "0", "0", status, 12)


class TestReport:
    def test_status_rule(self):
        assert make_report("x", {}, 1, 1, 0).status == "PASS"
        assert make_report("x", {}, 1, 2, 0).status == "FAIL"
        assert make_report("x", {}, 1, 2, 0, report_only=True).status == "REPORT_ONLY"

    def test_bad_status(self):
        with pytest.raises(ValueError):
            VerificationReport("x", {}, "", "", "", "", "MAYBE")

    def test_json_single_line(self):
        line = emit(_report(), "json")
        assert line.count("\n") == 1
        assert '"status":"PASS"' in line
        assert list(json.loads(line)) == list(FIELDS)

    def test_csv_header_once(self):
        buf = io.StringIO()
        e = Emitter("csv", buf)
        for _ in range(3):
            e(_report())
        rows = list(csv.reader(io.StringIO(buf.getvalue())))
        assert rows[0] == list(FIELDS)
        assert sum(r == list(FIELDS) for r in rows) == 1
        assert len(rows) == 4

    @pytest.mark.parametrize("fmt", ["json", "csv", "text"])
    def test_identical_bytes(self, fmt):
        assert emit(_report(), fmt) == emit(_report(), fmt)

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            emit(_report(), "xml")

    @given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
    def test_exact_rendering(self, p, q):
        from fractions import Fraction

        r = make_report("x", {}, Fraction(p, q), Fraction(p, q), 0)
        assert Fraction(r.lhs) == Fraction(p, q)
        assert r.abs_error == "0"


class TestRun:
    def test_matiyasevich_count(self):
        status, reports = run("matiyasevich", RunConfig(n_max=100))
        assert status == 0
        assert len(reports) == 49
        assert all(r.status == "PASS" for r in reports)
        assert [r.inputs["n"] for r in reports] == list(range(4, 101, 2))

    def test_hybrid_digits_40(self):
        status, reports = run("hybrid", RunConfig(digits=40, n_max=2))
        assert status == 0
        h0 = next(r for r in reports if r.check_id == "hybrid_h0")
        assert h0.status == "PASS"
        assert h0.lhs[:42] == h0.rhs[:42]
        table = [r for r in reports if r.check_id == "h_table"]
        assert len(table) == 2 and all(r.status == "REPORT_ONLY" for r in table)

    def test_lemmas_structure(self):
        status, reports = run("lemmas", RunConfig(digits=20, n_max=4))
        assert status == 0
        sums = [r for r in reports if r.check_id == "lemma_sum"]
        assert [r.inputs["n"] for r in sums] == [1, 2, 3, 4]
        assert all(r.status == "PASS" for r in sums)
        assert all(r.status == "REPORT_ONLY" for r in reports if r.check_id == "lemma2")

    def test_strict_lemma2(self):
        status, reports = run("lemmas", RunConfig(digits=20, n_max=2, strict_lemma2=15))
        assert status == 0
        assert all(r.status == "PASS" for r in reports if r.check_id == "lemma2")

    def test_forced_failure(self):
        status, reports = run("euler-sums", RunConfig(digits=20, tolerance="0"))
        assert status == 1
        assert any(r.status == "FAIL" for r in reports)

    def test_forced_failure_on_quadrature_suite(self):
        status, reports = run("lemmas", RunConfig(digits=15, n_max=1, tolerance="0"))
        assert status == 1

    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            run("nope", RunConfig())


class TestMain:
    def test_exit_codes(self, capsys):
        assert main(["matiyasevich", "--n-max", "10", "--format", "json"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert len(out) == 4
        assert main(["asymptotic", "--tolerance", "0"]) == 1
        capsys.readouterr()

    @pytest.mark.parametrize(
        "argv",
        [
            ["bogus"],
            ["lemmas", "--radius", "7"],
            ["lemmas", "--radius", "0"],
            ["series", "--digits", "0"],
            ["series", "--format", "xml"],
            ["series", "--tolerance", "abc"],
        ],
    )
    def test_usage_errors(self, argv, capsys):
        assert main(argv) == 2
        assert capsys.readouterr().out == ""

    @pytest.mark.parametrize("fmt", ["json", "csv"])
    def test_byte_identical_runs(self, fmt, capsys):
        argv = ["norlund", "--n-max", "12", "--format", fmt]
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        second = capsys.readouterr().out
        assert first == second
        assert first

    def test_deterministic_numeric_suite(self, capsys):
        argv = ["glaisher", "--n-max", "3", "--format", "json", "--digits", "20"]
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        assert capsys.readouterr().out == first

    def test_text_format(self, capsys):
        assert main(["series", "--n-max", "3"]) == 0
        assert "PASS" in capsys.readouterr().out

    def test_diagnostics_to_stderr(self, capsys):
        main(["matiyasevich", "--n-max", "4", "-v", "--format", "json"])
        cap = capsys.readouterr()
        assert "running matiyasevich" in cap.err
        assert "running" not in cap.out
