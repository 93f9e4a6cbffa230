import json

import numpy as np
import pytest

from pptrace import field_tower as ft
from pptrace import oracle
from pptrace.cli import EXIT_DOMAIN, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, Report, main
from pptrace.families import FamilyId, PermSpec, build_inverse, eval_forward, eval_inverse


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def kv(out):
    return dict(line.split("=", 1) for line in out.strip().splitlines())


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out)


def usage_error(capsys, *argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    capsys.readouterr()
    return exc.value.code


# -- verify -----------------------------------------------------------------------


def test_verify_f1_in_subfield(capsys):
    code, out = run(capsys, "verify", "--m", "3", "--family", "f1", "--gamma", "0x01")
    r = kv(out)
    assert code == EXIT_OK
    assert r["permutation"] == "true" and r["roundtrip"] == "ok"
    assert r["predicate"] == r["bijective"] == "true"
    assert r["branch"] == "Subfield" and r["command"] == "verify"
    assert (r["m"], r["modulus"], r["c"], r["family"], r["gamma"]) == ("3", "0xb", "0x1", "f1", "0x01")


def test_verify_f1_outside_subfield_has_witness(capsys):
    code, r = run_json(capsys, "verify", "--m", "3", "--family", "f1", "--gamma", "0x08")
    assert code == EXIT_OK
    assert r["permutation"] is False and r["bijective"] is False
    pair, image = r["collision"].split("->")
    x1, x2 = (int(v, 16) for v in pair.split(","))
    p = ft.make_params(3)
    spec = PermSpec(p, FamilyId.F1, ft.decode(p, 0x08))
    assert x1 != x2
    assert eval_forward(spec, ft.decode(p, x1)) == eval_forward(spec, ft.decode(p, x2))
    assert int(image, 16) == ft.encode(p, eval_forward(spec, ft.decode(p, x1)))


def test_verify_f5_even_m_not_applicable(capsys):
    code, out = run(capsys, "verify", "--m", "4", "--family", "f5", "--gamma", "0x10")
    assert code == EXIT_DOMAIN
    assert kv(out)["permutation"] == "not-applicable"


def test_verify_large_m_skips_exhaustive(capsys):
    code, r = run_json(capsys, "verify", "--m", "11", "--family", "f3", "--gamma", "0x805")
    assert code == EXIT_OK
    assert r["exhaustive"] == "skipped"
    assert r["permutation"] is True and r["branch"] == "TraceOne"


def test_verify_disagreement_exits_3(capsys, monkeypatch):
    monkeypatch.setattr("pptrace.cli.is_permutation_condition", lambda spec: True)
    code, r = run_json(capsys, "verify", "--m", "3", "--family", "f1", "--gamma", "0x08")
    assert code == EXIT_INTERNAL
    assert r["permutation"] == "unknown" and "error" in r


@pytest.mark.parametrize("fam", ["f1", "f2", "f3", "f4", "f5", "f6"])
def test_verify_every_family(capsys, fam):
    code, r = run_json(capsys, "verify", "--m", "3", "--family", fam, "--gamma", "0x00")
    assert code == EXIT_OK and r["permutation"] is True and r["roundtrip"] == "ok"


# -- invert -----------------------------------------------------------------------


def test_invert_zero_gamma(capsys):
    code, r = run_json(capsys, "invert", "--m", "3", "--family", "f2", "--gamma", "0", "--x", "0x2A")
    assert code == EXIT_OK
    assert r["x"] == r["f_x"] == r["finv_x"] == r["finv_f_x"] == "0x2a"


def test_invert_f3_trace_one_branch(capsys):
    code, out = run(capsys, "invert", "--m", "3", "--family", "f3", "--gamma", "0x08", "--x", "0x13")
    r = kv(out)
    assert code == EXIT_OK
    assert r["branch"] == "TraceOne" and r["t"] == "5"
    assert r["finv_f_x"] == "0x13"


@pytest.mark.parametrize("x", range(0, 64, 7))
def test_invert_f1_roundtrip(capsys, x):
    code, r = run_json(capsys, "invert", "--m", "3", "--family", "f1", "--gamma", "0x02", "--x", hex(x))
    assert code == EXIT_OK and int(r["finv_f_x"], 16) == x
    p = ft.make_params(3)
    spec = PermSpec(p, FamilyId.F1, ft.decode(p, 2))
    assert int(r["f_x"], 16) == ft.encode(p, eval_forward(spec, ft.decode(p, x)))
    assert int(r["finv_x"], 16) == ft.encode(p, eval_inverse(build_inverse(spec), ft.decode(p, x)))


def test_invert_not_a_permutation(capsys):
    code, r = run_json(capsys, "invert", "--m", "3", "--family", "f1", "--gamma", "0x08", "--x", "1")
    assert code == EXIT_DOMAIN and "error" in r


# -- interpolate ------------------------------------------------------------------


def test_interpolate_identity(capsys):
    code, out = run(capsys, "interpolate", "--m", "3", "--family", "f4", "--gamma", "0")
    assert code == EXIT_OK
    assert out == "1 0x1\n"


def test_interpolate_f1_m2_matches_closed_form(capsys):
    code, out = run(capsys, "interpolate", "--m", "2", "--family", "f1", "--gamma", "1")
    assert code == EXIT_OK
    p = ft.make_params(2)
    coeffs = oracle.CoeffVector(p, np.zeros(p.q2, dtype=np.int64))
    for line in out.splitlines():
        i, c = line.split()
        coeffs.coeffs[int(i)] = int(c, 16)
    spec = PermSpec(p, FamilyId.F1, ft.one(p))
    form = build_inverse(spec)
    xs = ft.all_elements(p)
    assert bool(ft.equal(oracle.poly_eval(coeffs, xs), eval_inverse(form, xs)).all())


def test_interpolate_json(capsys):
    code, r = run_json(capsys, "interpolate", "--m", "2", "--family", "f1", "--gamma", "1")
    assert code == EXIT_OK
    assert [i for i, _ in r["coefficients"]] == [1, 3, 6, 9, 12]


@pytest.mark.parametrize("argv", [
    ("--m", "7", "--family", "f1", "--gamma", "0"),
    ("--m", "3", "--family", "f1", "--gamma", "0x08"),
])
def test_interpolate_domain_errors(capsys, argv):
    code, r = run_json(capsys, "interpolate", *argv)
    assert code == EXIT_DOMAIN and "error" in r


# -- tabulate ---------------------------------------------------------------------


def test_tabulate_writes_table(capsys, tmp_path):
    out = tmp_path / "f.bin"
    code, r = run_json(capsys, "tabulate", "--m", "3", "--family", "f6", "--gamma", "0x09", "--out", str(out))
    assert code == EXIT_OK and r["out"] == str(out)
    spec, table = oracle.read_table(out)
    assert spec.family is FamilyId.F6 and ft.encode(spec.params, spec.gamma) == 0x09
    assert oracle.is_bijection(table)


def test_tabulate_too_large(capsys, tmp_path):
    code, r = run_json(capsys, "tabulate", "--m", "11", "--family", "f1", "--gamma", "0", "--out", str(tmp_path / "x"))
    assert code == EXIT_DOMAIN


# -- selftest ---------------------------------------------------------------------


def test_selftest_max_m_3(capsys):
    code, out = run(capsys, "selftest", "--max-m", "3")
    r = kv(out)
    assert code == EXIT_OK
    assert all(r[f"criterion_{i}"] == "pass" for i in range(1, 10))
    assert float(r["elapsed_s"]) < 2.0


def test_selftest_failure_exit_3(capsys, monkeypatch):
    from pptrace import selftest

    failing = selftest.CriterionResult(1, "forced", False, 0, 0.0, None, "witness-here")
    monkeypatch.setattr(selftest, "run_all", lambda max_m, stop_on_failure: [failing])
    code, r = run_json(capsys, "selftest", "--max-m", "2")
    assert code == EXIT_INTERNAL
    assert r["criterion_1"] == "fail" and r["witness"] == "witness-here"


# -- usage errors -----------------------------------------------------------------


@pytest.mark.parametrize("argv", [
    ("selftest", "--max-m", "9"),
    ("selftest", "--max-m", "1"),
    ("verify", "--m", "3", "--family", "f7", "--gamma", "0"),
    ("verify", "--m", "3", "--family", "f1", "--gamma", "0x40"),
    ("verify", "--m", "3", "--family", "f1", "--gamma", "zz"),
    ("verify", "--m", "3", "--modulus", "0xf", "--family", "f1", "--gamma", "0"),
    ("verify", "--m", "17", "--family", "f1", "--gamma", "0"),
    ("invert", "--m", "3", "--family", "f1", "--gamma", "0", "--x", "0x100"),
    ("invert", "--m", "3", "--family", "f1", "--gamma", "0"),
    (),
])
def test_usage_errors_exit_2(capsys, argv):
    assert usage_error(capsys, *argv) == EXIT_USAGE


def test_custom_modulus(capsys):
    code, r = run_json(capsys, "verify", "--m", "3", "--modulus", "0xd", "--family", "f2", "--gamma", "0x05")
    assert code == EXIT_OK and r["modulus"] == "0xd" and r["roundtrip"] == "ok"


def test_report_text_rendering(capsys):
    Report(a=True, b=None, c=3).emit(False)
    assert capsys.readouterr().out == "a=true\nb=none\nc=3\n"


def test_verify_large_m_sampled_collision(capsys):
    code, r = run_json(capsys, "verify", "--m", "12", "--family", "f3", "--gamma", "0x1005")
    assert code == EXIT_OK and r["permutation"] is False
    x1, x2 = (int(v, 16) for v in r["collision"].split(","))
    p = ft.make_params(12)
    spec = PermSpec(p, FamilyId.F3, ft.decode(p, 0x1005))
    assert x1 != x2
    assert eval_forward(spec, ft.decode(p, x1)) == eval_forward(spec, ft.decode(p, x2))
