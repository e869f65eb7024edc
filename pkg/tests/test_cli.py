import json
import shutil
import subprocess
import sys

import pytest

from reflex.cli import main
from reflex.dataset import data_dir


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def small_dir(tmp_path):
    """Private copy of one small dataset and the generator table."""
    for name in ("u_u2_a1_2", "table1"):
        shutil.copy(data_dir() / f"{name}.json", tmp_path / f"{name}.json")
    return tmp_path


def rewrite(path, fn):
    doc = json.loads(path.read_text())
    fn(doc)
    path.write_text(json.dumps(doc))


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    assert "appendix_a" in out.split() and "table1" not in out.split()


def test_lattice_info_json(capsys):
    code, out, _ = run(capsys, "lattice-info", "appendix_a", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == "1"
    assert doc["invariant_factors"] == [2, 4, 4, 4, 4] and doc["order"] == 512
    assert doc["signature"] == [3, 2]


def test_enumerate_two_u2_two_a1(capsys):
    code, out, _ = run(capsys, "enumerate", "two_u2_two_a1", "--order", "2", "--norm", "1/2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 20 and len(doc["items"]) == 20


def test_enumerate_pm_text(capsys):
    code, out, _ = run(capsys, "enumerate", "appendix_b", "--order", "3", "--norm", "2/3", "--pm")
    assert code == 0 and out.startswith("45 pm classes")


def test_enumerate_bad_norm(capsys):
    code, _, err = run(capsys, "enumerate", "appendix_a", "--norm", "half")
    assert code == 2 and "--norm" in err


def test_table1_passes(capsys):
    code, out, _ = run(capsys, "table1", "--format", "json", "--no-runtime")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "pass"
    rows = [c for c in doc["checks"] if c["check_id"].endswith(".jacobian_weight")]
    assert len(rows) == 16


def test_verify_passing_dataset(capsys):
    code, out, _ = run(capsys, "verify", "u_u2_a1_2")
    assert code == 0 and "FAIL" not in out


def test_verify_failing_expectation_exits_1(capsys):
    # the shipped U(4)+U(2)+A1 block expects 11 order-2 norm-1/2 cosets; there are 12
    code, out, _ = run(capsys, "verify", "u4_u2_a1", "--format", "json", "--no-runtime")
    doc = json.loads(out)
    assert code == 1 and doc["status"] == "fail"
    (bad,) = [c for c in doc["checks"] if c["status"] == "fail"]
    assert bad["check_id"] == "cosets.norm_half_order_2.count"
    assert bad["expected"] == 11 and bad["actual"] == 12
    # every surplus coset is listed verbatim
    assert bad["detail"].count("{(") == 12


def test_verify_modified_expectation_exits_1(capsys, small_dir):
    rewrite(small_dir / "u_u2_a1_2.json", lambda d: d["expected"]["coset_counts"][0].update(count=4))
    code, out, _ = run(capsys, "verify", "u_u2_a1_2", "--data-dir", str(small_dir))
    assert code == 1 and "FAIL" in out


def test_unknown_dataset_exits_2(capsys):
    code, _, err = run(capsys, "verify", "no_such_lattice")
    assert code == 2 and "no_such_lattice" in err


def test_malformed_json_exits_2(capsys, small_dir):
    (small_dir / "u_u2_a1_2.json").write_text('{"schema": "1", "name": ')
    code, _, err = run(capsys, "verify", "u_u2_a1_2", "--data-dir", str(small_dir))
    assert code == 2 and "line" in err


def test_bad_rational_exits_2(capsys, small_dir):
    def corrupt(d):
        d["candidates"][0]["terms"][0]["cosets"][0][2] = "1/0"

    rewrite(small_dir / "u_u2_a1_2.json", corrupt)
    code, _, err = run(capsys, "verify", "u_u2_a1_2", "--data-dir", str(small_dir))
    assert code == 2 and "1/0" in err


def test_non_dual_coset_names_candidate(capsys, small_dir):
    def corrupt(d):
        d["candidates"][0]["terms"][0]["cosets"][0] = ["1/3", "0", "1/4", "0", "0"]

    rewrite(small_dir / "u_u2_a1_2.json", corrupt)
    code, _, err = run(capsys, "verify", "u_u2_a1_2", "--data-dir", str(small_dir))
    assert code == 2 and "Psi_8" in err


def test_wrong_exponent_exits_2(capsys, small_dir):
    rewrite(small_dir / "u_u2_a1_2.json", lambda d: d["candidates"][0]["terms"][1].update(exponent="-1/3"))
    code, _, err = run(capsys, "verify", "u_u2_a1_2", "--data-dir", str(small_dir))
    assert code == 2 and "Psi_8" in err


def test_odd_gram_exits_2(capsys, small_dir):
    def corrupt(d):
        d["gram"][4][4] = 3

    rewrite(small_dir / "u_u2_a1_2.json", corrupt)
    code, _, err = run(capsys, "lattice-info", "u_u2_a1_2", "--data-dir", str(small_dir))
    assert code == 2 and err


def test_wrong_schema_exits_2(capsys, small_dir):
    rewrite(small_dir / "u_u2_a1_2.json", lambda d: d.update(schema="2"))
    code, _, err = run(capsys, "lattice-info", "u_u2_a1_2", "--data-dir", str(small_dir))
    assert code == 2 and "schema" in err


def test_starsets_without_graph_exits_2(capsys):
    code, _, _ = run(capsys, "starsets", "u_u2_a1_2")
    assert code == 2


def test_bad_jobs_exits_2(capsys):
    code, _, err = run(capsys, "verify", "u_u2_a1_2", "--jobs", "0")
    assert code == 2 and "--jobs" in err


def test_data_dir_environment(capsys, small_dir, monkeypatch):
    monkeypatch.setenv("REFLEX_DATA_DIR", str(small_dir))
    code, out, _ = run(capsys, "list")
    assert code == 0 and out.split() == ["u_u2_a1_2"]
    code, out, _ = run(capsys, "list", "--data-dir", str(small_dir / "nowhere"))
    assert code == 2


def test_json_reports_are_byte_identical(capsys):
    outs = []
    for jobs in ("1", "3", "1"):
        code, out, _ = run(capsys, "verify", "appendix_b", "--format", "json", "--no-runtime", "--jobs", jobs)
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1] == outs[2]
    assert "runtime" not in outs[0]


def test_json_with_runtime_has_timings(capsys):
    code, out, _ = run(capsys, "verify", "u_u2_a1_2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and all("runtime" in c for c in doc["checks"])


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "reflex.cli", "enumerate", "u_u2_a1_2", "--order", "4", "--norm", "1/4", "--pm"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("3 pm classes")
