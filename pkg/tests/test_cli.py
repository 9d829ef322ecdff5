import json
from importlib import resources

from tiltrig.cli import main


DATA = resources.files("tiltrig").joinpath("data")
SL2 = str(DATA.joinpath("sl2block.alg"))
CE3 = str(DATA.joinpath("ce3.alg"))
REP = str(DATA.joinpath("sl2_P1.rep"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_algebra_check(capsys):
    code, out, _ = run(capsys, "algebra", "check", SL2)
    assert code == 0 and "dim 5" in out


def test_algebra_check_missing_file(capsys):
    code, _, err = run(capsys, "algebra", "check", "/nonexistent.alg")
    assert code == 2 and "error" in err


def test_parse_error_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.alg"
    bad.write_text("field 0\nvertex 1\nbogus\n")
    code, _, err = run(capsys, "algebra", "check", str(bad))
    assert code == 2 and "line 3" in err


def test_module_series(capsys):
    code, out, _ = run(capsys, "module", "series", REP, "--type", "radical")
    assert code == 0 and out.strip() == "1 | 2 | 1"
    code, out, _ = run(capsys, "module", "series", REP, "--type", "socle")
    assert code == 0 and out.strip() == "1 | 2 | 1"


def test_qh_verify_exit_codes(tmp_path, capsys):
    code, out, _ = run(capsys, "qh", "verify", SL2)
    assert code == 0 and "PASS" in out
    reversed_alg = tmp_path / "rev.alg"
    reversed_alg.write_text(
        "field 0\nvertex 1 2\norder 2 < 1\narrow a 1 2\narrow b 2 1\nrelation 1*b.a\nduality a=b\n"
    )
    code, out, _ = run(capsys, "qh", "verify", str(reversed_alg))
    assert code == 1 and "FAIL" in out


def test_tilting_build(capsys):
    code, out, _ = run(capsys, "tilting", "build", SL2, "--weight", "2")
    assert code == 0 and "1 | 2 | 1" in out


def test_rigidity_check_json_and_exit(capsys):
    code, out, _ = run(capsys, "--format", "json", "rigidity", "check", SL2, "--weight", "2", "--method", "both")
    assert code == 0
    payload = json.loads(out)
    assert payload["consistent"] is True
    assert payload["rigid_theorem"] is True
    assert payload["rigid_oracle"] is True
    code, out, _ = run(capsys, "--format", "json", "rigidity", "check", CE3, "--weight", "3")
    assert code == 1
    payload = json.loads(out)
    assert payload["rigid_theorem"] == "n/a" and payload["rigid_oracle"] is False
    assert payload["consistent"] is True


def test_rigidity_deterministic(capsys):
    _, out1, _ = run(capsys, "--format", "json", "rigidity", "check", SL2, "--weight", "2")
    _, out2, _ = run(capsys, "--format", "json", "rigidity", "check", SL2, "--weight", "2")
    assert out1 == out2


def test_sl4_wallcross_text(capsys):
    code, out, _ = run(capsys, "sl4", "wallcross", "s2", "L", "3")
    assert code == 0 and out.strip() == "fl + 2·3 + 2"
    code, out, _ = run(capsys, "sl4", "wallcross", "s2", "L", "2")
    assert code == 0 and out.strip() == "0"
    code, _, err = run(capsys, "sl4", "wallcross", "s0", "L", "3")
    assert code == 2 and "insufficient alcove data" in err


def test_sl4_projectives_match_golden(capsys):
    code, out, _ = run(capsys, "sl4", "projectives")
    assert code == 0
    golden = DATA.joinpath("sl4.projectives.lay").read_text(encoding="utf-8")
    golden_lines = [l.strip() for l in golden.splitlines() if l.strip() and not l.startswith("#")]
    assert out.strip().splitlines() == golden_lines


def test_sl4_tiltings_match_golden(capsys):
    code, out, _ = run(capsys, "sl4", "tiltings")
    assert code == 0
    golden = DATA.joinpath("sl4.tiltings.lay").read_text(encoding="utf-8")
    golden_lines = [l.strip() for l in golden.splitlines() if l.strip() and not l.startswith("#")]
    assert out.strip().splitlines() == golden_lines


def test_sl4_homdim(capsys):
    code, out, _ = run(capsys, "sl4", "homdim", "4", "4,3,3',2")
    assert code == 0 and out.strip() == "1"
    code, out, _ = run(capsys, "sl4", "homdim", "3", "5,4,fl,fl',3,3'")
    assert code == 0 and out.strip() == "1"


def test_render_dot(capsys):
    from tiltrig.coeffquiver import dot_is_wellformed

    code, out, _ = run(capsys, "render", REP, "--dot")
    assert code == 0 and dot_is_wellformed(out)


def test_field_override(capsys):
    code, out, _ = run(capsys, "--format", "json", "--field", "2", "algebra", "check", SL2)
    assert code == 0 and json.loads(out)["field"] == 2
