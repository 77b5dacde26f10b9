"""The text input format and the command line driver."""

import json
from fractions import Fraction

import pytest

from mulhopf.algebra import InputError
from mulhopf.cli import build_parser, main
from mulhopf.fields import QQ
from mulhopf.gallery import kfun_cyclic, zero1
from mulhopf.specfile import SpecError, build_bundle, derive_rho, parse_spec

GROUP_SPEC = """\
# group algebra of Z/2: e is the identity, g the generator
field Q
basis e g
mul e e = 1*e
mul e g = 1*g
mul g e = 1*g
mul g g = 1*e
unit = 1*e
delta e (e,e) = 1*(e,e)
delta e (e,g) = 1*(e,g)
delta e (g,e) = 1*(g,e)
delta e (g,g) = 1*(g,g)
delta g (e,e) = 1*(g,g)
delta g (e,g) = 1*(g,e)
delta g (g,e) = 1*(e,g)
delta g (g,g) = 1*(e,e)
epsilon e = 1
epsilon g = 1
antipode e = 1*e
antipode g = 1*g
"""


# --- parsing --------------------------------------------------------------


def test_minimal_spec():
    spec = parse_spec("field Q\nbasis a b\n")
    assert spec.field is QQ
    assert spec.ids == ["a", "b"]
    assert spec.finite


def test_prime_field_header():
    spec = parse_spec("field Fp 5\nbasis x\n")
    assert spec.field.p == 5


def test_element_text_with_fractions():
    spec = parse_spec("field Q\nbasis a b\nmul a a = 2*a + 1/3*b\n")
    assert spec.mul[("a", "a")] == {"a": Fraction(2), "b": Fraction(1, 3)}


def test_element_text_roundtrips_through_str():
    A = kfun_cyclic(3).algebra
    x = A.basis_element(0).scale(QQ.coerce(-2)) + A.basis_element(2).scale(Fraction(1, 3))
    text = f"field Q\nbasis d0 d1 d2\nmul d0 d0 = {x}\n"
    spec = parse_spec(text)
    assert spec.mul[("d0", "d0")] == {"d0": Fraction(-2), "d2": Fraction(1, 3)}


def test_full_spec_parses_all_sections():
    spec = parse_spec(GROUP_SPEC)
    assert spec.unit == {"e": QQ.one}
    assert spec.delta["g"][("e", "g")] == {("g", "e"): QQ.one}
    assert spec.epsilon == {"e": QQ.one, "g": QQ.one}
    assert spec.antipode == {"e": {"e": QQ.one}, "g": {"g": QQ.one}}


def test_oracle_spec():
    spec = parse_spec("field Q\noracle kfin_Z\nwindow 3\n")
    assert spec.oracle == ("kfin_Z", [])
    assert spec.window == 3
    assert not spec.finite
    entry = build_bundle(spec)
    assert not entry.algebra.finite
    assert entry.default_window == 3


def test_oracle_spec_with_parameter():
    entry = build_bundle(parse_spec("field Q\noracle kfun_cyclic 3\n"))
    assert entry.algebra.finite
    assert len(entry.algebra.basis.ids) == 3


@pytest.mark.parametrize("text, fragment", [
    ("basis a\nfield Q\n", "field"),
    ("field Q\nbasis a b\nmul a c = 1*a\n", "undeclared"),
    ("field Fp 4\nbasis a\n", "modulus"),
    ("field Q\nbasis a\nmul a a = 1*a\nmul a a = 1*a\n", "duplicate"),
    ("field Q\nbasis a\noracle kfin_Z\n", "oracle"),
    ("field Q\nbasis a\ncoaction a (a,a) = 1*(a,a)\n", "coaction"),
    ("basis a\n", "field"),
    ("field Q\nbasis a\nmul a a = spam\n", "term"),
    ("field Q\nbasis a\nwindow zero\n", "window"),
    ("field Q\n", "basis"),
])
def test_rejected_specs_mention_the_problem(text, fragment):
    with pytest.raises(SpecError) as err:
        parse_spec(text)
    assert fragment in str(err.value).lower()


def test_error_carries_line_number():
    with pytest.raises(SpecError) as err:
        parse_spec("field Q\nbasis a b\nmul a c = 1*a\n")
    assert "line 3" in str(err.value)


def test_unknown_oracle_rejected_at_build():
    spec = parse_spec("field Q\noracle nothing_here\n")
    with pytest.raises((SpecError, InputError)):
        build_bundle(spec)


# --- completing the right action ------------------------------------------


def test_derive_rho_on_group_algebra():
    # left multiplication by g completes to right multiplication by g
    spec = parse_spec(GROUP_SPEC)
    entry = build_bundle(spec)
    A = entry.algebra
    rho = derive_rho(A, {"e": {"g": QQ.one}, "g": {"e": QQ.one}}, what="test")
    assert rho == {"e": {"g": QQ.one}, "g": {"e": QQ.one}}


def test_derive_rho_rejects_right_annihilators():
    with pytest.raises(InputError) as err:
        derive_rho(zero1().algebra, {"z": {}}, what="test")
    assert "annihilator" in str(err.value)


def test_derive_rho_rejects_one_sided_tables():
    A = kfun_cyclic(2).algebra
    with pytest.raises(InputError) as err:
        derive_rho(A, {0: {1: QQ.one}}, what="test")
    assert "two-sided" in str(err.value)


# --- bundles from files ---------------------------------------------------


def test_build_bundle_produces_a_working_bialgebra(tmp_path):
    entry = build_bundle(parse_spec(GROUP_SPEC))
    b = entry.bialgebra
    assert b is not None
    assert b.counit_witness == entry.algebra.basis_element("e")
    assert b.antipode is not None
    # the group algebra of Z/2 is a Hopf algebra
    rc = run_cli(["check-hopf", write_spec(tmp_path, GROUP_SPEC)])[0]
    assert rc == 0


def write_spec(tmp_path, text, name="case.spec"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def run_cli(argv, capsys=None):
    rc = main(argv)
    if capsys is None:
        return rc, None, None
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


# --- exit codes -----------------------------------------------------------


def test_exit_0_and_classification_line(capsys):
    rc, out, _ = run_cli(["classify", "gallery:kfun_cyclic(2)"], capsys)
    assert rc == 0
    assert "classification: multiplier Hopf algebra (proven; finite)" in out


def test_exit_1_on_failed_axiom(capsys):
    rc, out, _ = run_cli(["check-algebra", "gallery:zero1"], capsys)
    assert rc == 1
    assert "idempotency: failed" in out
    assert "witness=1*z" in out


def test_exit_2_on_window_insufficiency(tmp_path, capsys):
    # epsilon given on only part of the basis: the counit check walks off
    # the table and the run stops with a partial report
    partial = GROUP_SPEC.replace("epsilon g = 1\n", "")
    rc, out, err = run_cli(["check-bialgebra", write_spec(tmp_path, partial)],
                           capsys)
    assert rc == 2
    assert "window insufficient" in err
    assert "coassociativity: proven" in out


def test_exit_3_on_bad_input(tmp_path, capsys):
    rc, _, err = run_cli(["classify", write_spec(tmp_path, "field Q\nbasis a\nmul a b = 1*a\n")], capsys)
    assert rc == 3
    assert "line 3" in err
    rc, _, err = run_cli(["classify", str(tmp_path / "missing.spec")], capsys)
    assert rc == 3
    rc, _, err = run_cli(["classify", "gallery:who_knows"], capsys)
    assert rc == 3
    assert "known:" in err


# --- reports --------------------------------------------------------------


def test_json_report_schema(capsys):
    rc, out, _ = run_cli(["classify", "gallery:kfun_cyclic(2)",
                          "--report", "json", "--seed", "5"], capsys)
    assert rc == 0
    data = json.loads(out)
    assert data["tool"]["name"] == "mulhopf"
    assert data["command"] == "classify"
    assert data["input"]["digest"].startswith("sha256:")
    assert data["input"]["seed"] == 5
    for entry in data["entries"]:
        assert set(entry) == {"axiom", "status", "window", "witness",
                              "detail", "timing_ms"}
        assert entry["timing_ms"] is None
    assert data["tables"]["epsilon"] == {"d0": "1", "d1": "0"}
    assert data["tables"]["antipode"] == {"d0": "1*d0", "d1": "1*d1"}
    assert data["classification"] == "multiplier Hopf algebra (proven; finite)"


def test_json_reports_are_byte_identical_across_runs(capsys):
    argv = ["classify", "gallery:kfun_cyclic(3)", "--report", "json", "--seed", "11"]
    _, first, _ = run_cli(argv, capsys)
    _, second, _ = run_cli(argv, capsys)
    assert first == second


def test_jobs_do_not_change_the_report(capsys):
    base = ["check-bialgebra", "gallery:kfun_cyclic(3)", "--report", "json"]
    _, sequential, _ = run_cli(base + ["--jobs", "1"], capsys)
    _, threaded, _ = run_cli(base + ["--jobs", "4"], capsys)
    assert sequential == threaded


def test_timing_flag_fills_timing_ms(capsys):
    rc, out, _ = run_cli(["check-algebra", "gallery:kfun_cyclic(2)",
                          "--report", "json", "--timing"], capsys)
    assert rc == 0
    data = json.loads(out)
    assert all(isinstance(e["timing_ms"], (int, float)) for e in data["entries"])


def test_jobs_default_comes_from_the_environment(monkeypatch):
    monkeypatch.setenv("MULHOPF_JOBS", "6")
    args = build_parser().parse_args(["classify", "gallery:zero1"])
    assert args.jobs == 6


def test_synthesize_counit_emits_table(capsys):
    rc, out, _ = run_cli(["synthesize-counit", "gallery:kfun_cyclic(3)",
                          "--report", "json"], capsys)
    assert rc == 0
    data = json.loads(out)
    assert data["tables"]["epsilon"] == {"d0": "1", "d1": "0", "d2": "0"}


def test_check_comodule_accepts_a_coaction_spec(tmp_path, capsys):
    coacting = GROUP_SPEC + "".join(
        line.replace("delta", "coaction")
        for line in GROUP_SPEC.splitlines(keepends=True)
        if line.startswith("delta"))
    rc, out, _ = run_cli(["check-comodule", write_spec(tmp_path, coacting)],
                         capsys)
    assert rc == 0
    assert "comodule counit: proven" in out


def test_declared_antipode_goes_through_both_characterizations(tmp_path, capsys):
    rc, out, _ = run_cli(["check-hopf", write_spec(tmp_path, GROUP_SPEC)], capsys)
    assert rc == 0
    assert "antipode: proven" in out
    assert "convolution inverse: proven" in out
