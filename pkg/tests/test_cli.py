import json
import subprocess
import sys
from io import StringIO

import pytest

from higgsdt.cli import main
from higgsdt.output import OutputRecord, dumps, latex_poly, pairs_to_poly, poly_to_pairs
from higgsdt.ring import LaurentPoly


def run(*argv):
    out, err = StringIO(), StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


class TestOmega:
    def test_text(self):
        code, out, _ = run("omega", "--ell", "1", "--rank", "3")
        assert code == 0 and out.strip() == "w^10 + w^8"

    def test_default_degree_is_one(self):
        _, a, _ = run("omega", "--ell", "2", "--rank", "2")
        _, b, _ = run("omega", "--ell", "2", "--rank", "2", "--degree", "1")
        assert a == b == "w^9 + w^7\n"

    def test_json(self):
        code, out, _ = run("omega", "--ell", "1", "--rank", "2", "--degree", "3", "--format", "json")
        data = json.loads(out)
        assert code == 0
        assert data["poly"] == [[5, 1]]
        assert (data["ell"], data["r"], data["d"], data["kind"]) == (1, 2, 3, "omega_L")
        assert isinstance(data["ms"], float)

    def test_json_is_canonical(self):
        _, out, _ = run("omega", "--ell", "1", "--rank", "4", "--format", "json")
        assert dumps(json.loads(out)) == out.strip()
        assert OutputRecord.from_json(out).to_json() == out.strip()

    def test_text_and_json_agree(self):
        _, text, _ = run("omega", "--ell", "2", "--rank", "3", "--degree", "5")
        _, js, _ = run("omega", "--ell", "2", "--rank", "3", "--degree", "5", "--format", "json")
        assert OutputRecord.from_json(js).text() == text.strip()

    @pytest.mark.parametrize("argv", [
        ("omega", "--ell", "1", "--rank", "0"),
        ("omega", "--ell", "-1", "--rank", "2"),
        ("omega", "--ell", "x", "--rank", "2"),
        ("omega", "--rank", "2"),
        ("omega", "--ell", "1", "--rank", "2", "--format", "yaml"),
        (),
    ])
    def test_usage_errors(self, argv):
        assert run(*argv)[0] == 2


class TestTable:
    def test_text_rows(self):
        code, out, _ = run("table", "--ell", "1", "--rmax", "3")
        assert code == 0
        assert out.splitlines() == [
            "Omega_1(1) [d=1] = w^2",
            "Omega_1(2) [d=3] = w^5",
            "Omega_1(3) [d=4] = w^10 + w^8",
        ]

    def test_single_row(self):
        _, out, _ = run("table", "--ell", "3", "--rmax", "1")
        assert out.strip().endswith("= w^4")

    def test_json(self):
        _, out, _ = run("table", "--ell", "2", "--rmax", "3", "--format", "json")
        rows = json.loads(out)
        assert [row["r"] for row in rows] == [1, 2, 3]
        assert pairs_to_poly(rows[1]["poly"]) == LaurentPoly({9: 1, 7: 1})

    def test_latex(self):
        _, out, _ = run("table", "--ell", "3", "--rmax", "2", "--format", "latex")
        assert out.splitlines()[1] == r"\Omega_{3}(2) &= w^{13}+w^{11}+2\,w^{9}\\"

    def test_zero_rows_rejected(self):
        assert run("table", "--ell", "1", "--rmax", "0")[0] == 2


class TestQuiverOmega:
    def test_text(self):
        assert run("quiver-omega", "--ell", "1", "--dimvec", "1:1,2:1")[1] == "w^5\n"

    def test_json_records_vector(self):
        _, out, _ = run("quiver-omega", "--ell", "2", "--dimvec", "3:1", "--format", "json")
        data = json.loads(out)
        assert data["dimvec"] == "3:1" and data["poly"] == [[3, 1]] and data["kind"] == "omega_Q"

    def test_empty_vector(self):
        assert run("quiver-omega", "--ell", "1", "--dimvec", "")[1] == "0\n"

    @pytest.mark.parametrize("bad", ["1:x", "1", "1:1,1:1"])
    def test_bad_vector(self, bad):
        assert run("quiver-omega", "--ell", "1", "--dimvec", bad)[0] == 2


class TestCheck:
    def test_theorem2(self):
        code, out, _ = run("check", "theorem2", "--ell", "1", "--rank", "2", "--degree", "3")
        assert code == 0 and "PASS" in out and "Omega_Q(1:1,2:1) = w^5" in out

    def test_theorem2_unstable_degree(self):
        code, _, err = run("check", "theorem2", "--ell", "1", "--rank", "3", "--degree", "3")
        assert code == 2 and "degree" in err

    def test_d_independence(self):
        code, out, _ = run("check", "d-independence", "--ell", "1", "--rank", "2", "--degrees", "1,2,3,4,5")
        assert code == 0 and out.count("w^5") == 5

    def test_d_independence_rejects_nonpositive(self):
        assert run("check", "d-independence", "--ell", "1", "--rank", "2", "--degrees", "0,1")[0] == 2

    def test_shift(self):
        code, out, _ = run("check", "shift", "--ell", "1", "--dimvec", "1:1,2:1", "--by", "-3")
        assert code == 0 and "PASS" in out

    def test_hn_product(self):
        code, out, _ = run("check", "hn-product", "--ell", "1", "--rmax", "3", "--dmax", "4")
        assert code == 0 and "PASS" in out

    def test_missing_check_name(self):
        assert run("check")[0] == 2


class TestSelftest:
    def test_quick(self, monkeypatch):
        monkeypatch.delenv("HIGGSDT_WORKERS", raising=False)
        code, out, _ = run("selftest", "--quick")
        assert code == 0
        assert out.splitlines()[-1] == "9/9 entries match"

    def test_quick_json(self, monkeypatch):
        monkeypatch.delenv("HIGGSDT_WORKERS", raising=False)
        code, out, _ = run("selftest", "--quick", "--format", "json")
        data = json.loads(out)
        assert code == 0 and data["passed"] and len(data["entries"]) == 9

    def test_parallel_matches_serial(self, monkeypatch):
        monkeypatch.setenv("HIGGSDT_WORKERS", "2")
        code, out, _ = run("selftest", "--quick", "--format", "json")
        assert code == 0 and json.loads(out)["passed"]


def test_integrality_error_exits_one(monkeypatch):
    from higgsdt import invariants as inv
    from higgsdt.errors import IntegralityViolation

    def boom(*_):
        raise IntegralityViolation("forced")

    monkeypatch.setattr(inv, "omega_L", boom)
    code, _, err = run("omega", "--ell", "1", "--rank", "2")
    assert code == 1 and "IntegralityViolation" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "higgsdt", "omega", "--ell", "1", "--rank", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "w^2\n"


class TestOutputHelpers:
    def test_pairs_roundtrip(self):
        p = LaurentPoly({5: 2, -1: 3})
        assert poly_to_pairs(p) == [[5, 2], [-1, 3]]
        assert pairs_to_poly(poly_to_pairs(p)) == p

    def test_rational_rejected(self):
        from fractions import Fraction
        with pytest.raises(ValueError):
            poly_to_pairs(LaurentPoly({1: Fraction(1, 2)}))

    def test_latex(self):
        assert latex_poly(LaurentPoly({10: 1, 8: 1})) == "w^{10}+w^{8}"
        assert latex_poly(LaurentPoly({1: -2, 0: 3})) == r"-2\,w+3"
        assert latex_poly(LaurentPoly()) == "0"
