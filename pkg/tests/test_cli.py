"""Tests for the command-line front end."""

import json
import math

import pytest
from click.testing import CliRunner

from fracspde.cli import main, run
from fracspde.report.schemas import validate_document

HEAT = ["--alpha", "2", "--beta", "1", "--nu", "2", "--d", "1"]
WAVE = ["--alpha", "2", "--beta", "2", "--gamma", "0", "--nu", "2", "--d", "1"]
WHITE = ["--H", "0.5", "--ell", "1"]


@pytest.fixture
def invoke(tmp_path):
    """Run a command with --output-dir and return (result, document or text)."""

    def _invoke(*args, fmt="json", out=None):
        out = out or tmp_path
        runner = CliRunner()
        result = runner.invoke(main, ["--quiet", "--output-dir", str(out), "--format", fmt, *args])
        assert result.exit_code == 0, result.output
        name = args[0] if args[0] != "kernel" else f"kernel-{args[1]}"
        text = (out / f"{name}.{fmt}").read_text(encoding="utf-8")
        return json.loads(text) if fmt == "json" else text

    return _invoke


def test_check_wave_not_solvable(invoke):
    document = invoke("check", "--alpha", "2", "--beta", "2", "--gamma", "0", "--H", "0.5", "--ell", "2", "--d", "2")
    assert document["verdict"]["status"] == "NotSolvable"
    assert document["provenance"]["command"] == "check"
    assert "moduli_samples" not in document
    validate_document("check", document)


def test_check_solvable_reports_moduli(invoke):
    document = invoke("check", *HEAT, *WHITE)
    assert document["verdict"]["status"] == "Solvable"
    assert document["moduli_samples"]["r"] == [0.1, 0.01, 0.001]
    validate_document("check", document)


def test_exponents_stochastic_heat(invoke):
    document = invoke("exponents", *HEAT, *WHITE)
    assert document["exponents"]["rho"] == pytest.approx(0.25)
    assert document["exponents"]["rho_tilde"] == pytest.approx(0.5)
    validate_document("exponents", document)


def test_exponents_csv(invoke):
    text = invoke("exponents", *HEAT, *WHITE, fmt="csv")
    lines = text.splitlines()
    assert lines[0] == "key,value"
    assert "exponents.rho,0.25" in lines


def test_kconst_wave(invoke):
    document = invoke("kconst", *WAVE, *WHITE)
    assert document["closed"]["case_tag"] == "K-2"
    assert document["closed"]["value"] == pytest.approx(math.pi**2, rel=1e-12)
    assert document["oracle"]["method"] == "quadrature"
    assert document["relative_difference"] < 1e-6
    validate_document("kconst", document)


def test_outputs_are_byte_reproducible(invoke, tmp_path):
    args = ("kconst", *HEAT, *WHITE, "--no-oracle")
    invoke(*args, out=tmp_path / "a")
    invoke(*args, out=tmp_path / "b")
    assert (tmp_path / "a" / "kconst.json").read_bytes() == (tmp_path / "b" / "kconst.json").read_bytes()


def test_kernel_eval_heat(invoke):
    document = invoke("kernel", "eval", *HEAT, "--t", "1", "--r", "0.5,1")
    for row in document["rows"]:
        expected = math.exp(-row["r"] ** 2 / 4.0) / math.sqrt(4.0 * math.pi)
        assert row["value"] == pytest.approx(expected, rel=1e-6)
    validate_document("kernel-eval", document)


def test_kernel_expand_and_asym(invoke):
    expand = invoke("kernel", "expand", "--alpha", "1.5", "--beta", "1", "--terms", "5")
    assert len(expand["expansion"]["terms"]) == 5
    validate_document("kernel-expand", expand)
    asym = invoke("kernel", "asym", "--alpha", "1", "--beta", "0.5", "--nu", "2", "--r", "40,80")
    assert asym["asymptote"]["form"] == "power_law"
    assert all(row["kernel"] is None for row in asym["rows"])
    validate_document("kernel-asym", asym)


def test_varinc_heat_time_slope(invoke):
    document = invoke("varinc", *HEAT, *WHITE, "--axis", "time")
    assert document["expected_slope"] == pytest.approx(0.5)
    assert document["fit"]["slope"] == pytest.approx(0.5, abs=0.05)
    validate_document("varinc", document)


def test_simulate_is_reproducible(invoke, tmp_path):
    args = ("simulate", *HEAT, *WHITE, "--t", "0.5,1", "--x", "0", "--mode-count", "64", "--tau-max", "50",
            "--replicates", "2", "--seed", "9")
    first = invoke(*args, out=tmp_path / "a")
    invoke(*args, out=tmp_path / "b")
    assert (tmp_path / "a" / "simulate.json").read_bytes() == (tmp_path / "b" / "simulate.json").read_bytes()
    assert first["provenance"]["seed"] == 9
    assert len(first["values"]) == 2
    validate_document("simulate", first)


def test_smallball_small_run(invoke):
    document = invoke(
        "smallball", *HEAT, *WHITE, "--interval", "0.5,1", "--eps", "0.5,1,2,100",
        "--samples", "400", "--grid", "6", "--batch", "100",
    )
    assert document["prob"][-1] == 1.0
    assert document["expected_exponent"] == pytest.approx(4.0)
    validate_document("smallball", document)


@pytest.mark.slow
def test_condvar_two_sided(invoke):
    document = invoke("condvar", *HEAT, *WHITE, "--configs", "5", "--given", "4")
    assert document["min_ratio"] > 0.0
    assert document["violations"] == []
    assert document["exponent"] == pytest.approx(0.5)
    validate_document("condvar", document)


def test_schema_command():
    result = CliRunner().invoke(main, ["schema", "kconst"])
    assert result.exit_code == 0
    schema = json.loads(result.output)
    assert "provenance" in schema["properties"]


def test_compare_command(invoke, tmp_path):
    invoke("exponents", *HEAT, *WHITE, out=tmp_path / "a")
    invoke("exponents", *HEAT, *WHITE, out=tmp_path / "b")
    invoke("exponents", *HEAT, "--H", "0.7", "--ell", "1", out=tmp_path / "c")
    runner = CliRunner()
    same = runner.invoke(main, ["compare", str(tmp_path / "a" / "exponents.json"), str(tmp_path / "b" / "exponents.json")])
    assert same.exit_code == 0
    assert "No differences." in same.output
    different = runner.invoke(
        main, ["compare", str(tmp_path / "a" / "exponents.json"), str(tmp_path / "c" / "exponents.json")]
    )
    assert "## Changed Values" in different.output
    assert "rho0" in different.output


@pytest.mark.parametrize(
    "args, code",
    [
        (["kconst", *WAVE, "--H", "0.5", "--ell", "1.5"], 2),
        (["exponents", *HEAT, *WHITE, "--bogus"], 64),
        (["exponents", *HEAT, "--H", "0.5", "--ell", "2"], 64),
        (["exponents", *HEAT, "--H", "1.2", "--ell", "1"], 64),
        (["schema", "nothing"], 64),
    ],
)
def test_exit_codes(args, code):
    with pytest.raises(SystemExit) as exc:
        run(["--quiet", *args])
    assert exc.value.code == code


def test_success_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["--quiet", "exponents", *HEAT, *WHITE])
    assert exc.value.code == 0
    assert json.loads(capsys.readouterr().out)["exponents"]["rho0"] == pytest.approx(0.25)
