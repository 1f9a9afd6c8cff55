import json

import numpy as np
import pytest

from banachlab.cli import config_to_argv, main, UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if code == 0 and out else None), err


def test_norm_l1(capsys):
    code, rep, _ = run(capsys, "norm", "--vector", "[3, -4]", "--norm", "l1")
    assert code == 0 and rep["result"]["norm"] == 7.0
    assert rep["tool"] == "banachlab" and rep["command"] == "norm"


def test_norm_orlicz_with_modular(capsys):
    code, rep, _ = run(capsys, "norm", "--vector", "[1, 1]", "--norm", "F", "--modular")
    assert code == 0
    assert rep["result"]["norm"] == pytest.approx(1.773751172126626837, rel=1e-12)
    assert rep["result"]["modular"] == 2.0


def test_ubc_oracle(capsys):
    code, rep, _ = run(capsys, "ubc", "--basis", "[[1, 0], [1, 1]]", "--norm", "l1", "--seed", "0",
                       "--count", "32", "--exhaustive-signs")
    assert code == 0
    assert 2.95 <= rep["result"]["lower_bound"] <= 3.0 + 1e-12
    assert rep["result"]["exhaustive_signs"] is True


def test_sampled_command_needs_seed(capsys):
    code, _, err = run(capsys, "ubc", "--basis", "[[1, 0]]")
    assert code == 1 and "--seed" in err


def test_malformed_json_exit_1(capsys):
    code, _, err = run(capsys, "match", "--matrix", "[[1, 2], [3")
    assert code == 1 and "invalid JSON" in err


def test_unknown_subcommand_exit_1(capsys):
    assert run(capsys, "frobnicate")[0] == 1


def test_precondition_exit_2(capsys):
    code, _, err = run(capsys, "match", "--matrix", "[[1, 2], [2, 4]]")
    assert code == 2 and "singular" in err


def test_conditioning_exit_3(capsys):
    code, _, err = run(capsys, "jointbasis", "--grams2", "[[[1, 0], [0, 1e6]]]",
                       "--gramsE", "[[[1, 0.99999999999999], [0.99999999999999, 1]]]")
    assert code == 3 and "ConditioningError" in err


def test_project_diag(capsys):
    code, rep, _ = run(capsys, "project", "--matrix", "[[0, 0], [0, 1]]", "--delta", "1")
    assert code == 0
    assert rep["result"]["P"] == [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]] or \
        np.allclose(np.asarray(rep["result"]["P"]).reshape(-1)[:4], [1, 0, 0, 0])
    assert rep["result"]["rank"] == 1


def test_project_needs_delta_or_group(capsys):
    assert run(capsys, "project", "--matrix", "[[0, 0], [0, 1]]")[0] == 1


def test_eig_and_split(capsys):
    code, rep, _ = run(capsys, "eig", "--matrix", "[[2, 0], [0, 5]]")
    assert code == 0
    code, rep, _ = run(capsys, "split", "--eigs", "[0, 0.1, 1]", "--delta", "1", "--n", "6")
    assert code == 0 and rep["result"]["group_one"] == [0]


def test_triangularize(capsys):
    code, rep, _ = run(capsys, "triangularize", "--generators", "[[[1, 1], [0, 1]]]")
    assert code == 0 and rep["result"]["residual"] < 1e-8


def test_verify_g_inequality(capsys):
    code, rep, _ = run(capsys, "verify", "--lemma", "41", "--p", "2", "--seed", "1", "--count", "1000")
    assert code == 0 and rep["result"]["violators"] == []


def test_verify_modular_identity(capsys):
    code, rep, _ = run(capsys, "verify", "--lemma", "42", "--seed", "1", "--count", "50")
    assert code == 0 and rep["result"]["worst_slack"] > -1e-12


def test_twisted_writes_csv(capsys, tmp_path):
    out = tmp_path / "growth.json"
    code = main(["twisted", "--sizes", "2,4", "--seed", "0", "--count", "8", "--rounds", "3",
                 "--out", str(out)])
    assert code == 0
    rows = (tmp_path / "growth.csv").read_text().splitlines()
    assert rows[0] == "n,ubc,absoluteness,splitting,exhaustive_signs" and len(rows) == 3


def mask_timestamp(text):
    return "\n".join(line for line in text.splitlines() if '"timestamp"' not in line)


def test_report_deterministic_modulo_timestamp(tmp_path):
    out = tmp_path / "r.json"
    argv = ["ubc", "--basis", "[[1, 0, 0], [1, 1, 0], [1, 1, 1]]", "--norm", "l2", "--seed", "7",
            "--count", "32", "--out", str(out)]
    texts = []
    for _ in range(2):
        assert main(argv) == 0
        texts.append(out.read_text())
    assert mask_timestamp(texts[0]) == mask_timestamp(texts[1])


def test_run_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"command": "norm", "params": {"vector": [3, -4], "norm": "linf"}}))
    code, rep, _ = run(capsys, "run", str(cfg))
    assert code == 0 and rep["result"]["norm"] == 4.0


def test_config_rejects_unknown_keys():
    with pytest.raises(UsageError):
        config_to_argv({"command": "norm", "colour": "blue"})
    assert config_to_argv({"command": "verify", "params": {"lemma": "41", "hunt": True}, "seed": 3}) == \
        ["verify", "--lemma", "41", "--hunt", "--seed", "3"]
