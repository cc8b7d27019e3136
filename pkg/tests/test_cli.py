import json

import pytest

from icosashimura.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_verify_all(capsys):
    code, rep = run_json(capsys, "verify", "all", "--bound", "3")
    assert code == 0
    assert rep["schema_version"] == 1 and rep["command"] == "verify"
    assert len(rep["verdicts"]) == 14
    assert all(v["status"] == "pass" for v in rep["verdicts"])
    assert "timings" not in rep


def test_report_is_byte_stable(capsys):
    _, a = run(capsys, "verify", "pairing")
    _, b = run(capsys, "verify", "pairing")
    assert a == b


def test_flags_before_or_after_subcommand(capsys):
    _, a = run(capsys, "--format", "text", "verify", "psi5")
    _, b = run(capsys, "verify", "psi5", "--format", "text")
    assert a == b and "[         PASS]" in a
    _, rep = run_json(capsys, "verify", "psi5", "--timings")
    assert "psi5" in rep["timings"]


@pytest.mark.parametrize("D,delta,witness", [(6, 5, [5, -1]), (14, 12, [6, -1]), (14, 21, [7, -1]),
                                             (6, 21, [9, -2])])
def test_qform_witness(capsys, D, delta, witness):
    code, rep = run_json(capsys, "qform", str(D), "--delta", str(delta))
    assert code == 0
    v = rep["verdicts"][0]
    assert v["result"] == "represented" and v["witness"] == witness and v["singular_relation_holds"]


def test_qform_negative_answer_is_a_pass(capsys):
    code, rep = run_json(capsys, "qform", "15", "--delta", "21")
    assert code == 0 and rep["verdicts"][0]["result"] == "not-represented"


def test_qform_rejects_bad_discriminant(capsys):
    with pytest.raises(ValueError):
        main(["qform", "6", "--delta", "7"])


def test_theta_diagonal(capsys):
    code, rep = run_json(capsys, "theta", "--z1", "1+1i")
    assert code == 0
    assert abs(rep["X"]["re"] - 25 / 27) < 1e-10
    assert [v["status"] for v in rep["verdicts"]] == ["pass"] * 3


def test_theta_shimura6_csv(capsys, tmp_path):
    path = tmp_path / "trace.csv"
    code, rep = run_json(capsys, "theta", "--shimura6", "--samples", "2", "--csv", str(path))
    assert code == 0 and len(rep["verdicts"]) == 2
    assert path.read_text().splitlines()[0] == "w_re,w_im,residual"


def test_theta_needs_input():
    with pytest.raises(SystemExit):
        main(["theta"])


def test_plot_writes_files(capsys, tmp_path):
    prefix = tmp_path / "fig"
    code, rep = run_json(capsys, "plot", "figure5", "--prefix", str(prefix), "--grid", "20", "--samples", "11")
    assert code == 0
    assert (tmp_path / "fig.csv").exists() and (tmp_path / "fig.svg").exists()
    assert len(rep["files"]) == 2


def test_plot_bad_window():
    with pytest.raises(SystemExit):
        main(["plot", "figure5", "--window", "1,0,0,1"])


def test_curves(capsys):
    code, rep = run_json(capsys, "curves", "--name", "L1")
    assert code == 0
    roots = {r["t"]: r["multiplicity"] for r in rep["curves"][0]["c0_roots"]}
    assert roots == {"0": 2, "25/27": 1, "-64/135": 2}
    assert rep["curves"][0]["passes_cusp"] is True
    with pytest.raises(SystemExit):
        main(["curves", "--name", "R9"])


def test_eliminate_58(capsys, tmp_path):
    dump = tmp_path / "gens.json"
    code, rep = run_json(capsys, "eliminate", "5,8", "--dump-generators", str(dump))
    assert code == 0
    assert rep["generator_degrees"] == [25]
    assert len(json.loads(dump.read_text())) == 1


def test_eliminate_timeout_is_indeterminate(capsys):
    code, rep = run_json(capsys, "eliminate", "5,12", "--max-seconds", "0.5")
    assert code == 2
    assert rep["verdicts"][0]["status"] == "indeterminate"


def test_eliminate_sample_rejects_unknown_component():
    with pytest.raises(SystemExit):
        main(["eliminate", "5,8", "--sample", "--components", "R3"])
