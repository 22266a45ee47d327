"""CLI contract: exit codes, machine-readable lines, verify/ratio flows."""

import json

import pytest

from intervalcover.cli import main
from intervalcover.files import parse_solution


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def gen(tmp_path, capsys, name, *extra):
    path = tmp_path / name
    code, _, err = run(capsys, "generate", "--seed", "7", "--output", str(path), *extra)
    assert code == 0, err
    return path


def test_generate_then_solve_partial(tmp_path, capsys):
    inst = gen(tmp_path, capsys, "inst.json", "--profile", "uniform-random", "--k", "3")
    out = tmp_path / "sol.json"
    code, stdout, _ = run(capsys, "solve", "--problem", "partial",
                          "--input", str(inst), "--output", str(out))
    assert code == 0
    line = json.loads(stdout.strip().splitlines()[-1])
    assert line["status"] == "feasible"
    assert isinstance(line["cost"], int)
    doc = parse_solution(out.read_text())
    assert doc.problem == "partial" and doc.cost == line["cost"]

    code, stdout, _ = run(capsys, "verify", "--input", str(inst), "--solution", str(out))
    assert code == 0
    assert json.loads(stdout.strip())["feasible"] is True


def test_solve_k0_cost_zero(tmp_path, capsys):
    inst = gen(tmp_path, capsys, "inst.json", "--k", "0")
    code, stdout, _ = run(capsys, "solve", "--problem", "partial", "--input", str(inst))
    assert code == 0
    assert json.loads(stdout.strip())["cost"] == 0


def test_solve_infeasible_fullcover_exit_2(tmp_path, capsys):
    path = tmp_path / "inst.json"
    path.write_text(json.dumps({
        "version": 1, "T": 2,
        "jobs": [{"s": 1, "e": 2}],
        "resources": [{"s": 1, "e": 1, "w": 1, "c": 1}],
    }))
    code, stdout, _ = run(capsys, "solve", "--problem", "fullcover", "--input", str(path))
    assert code == 2
    assert json.loads(stdout.strip())["status"] == "infeasible"


def test_solve_exact_tags_optimal(tmp_path, capsys):
    inst = gen(tmp_path, capsys, "inst.json", "--k", "2")
    code, stdout, _ = run(capsys, "solve", "--problem", "partial",
                          "--algorithm", "exact", "--input", str(inst))
    assert code == 0
    assert json.loads(stdout.strip())["optimal"] is True


def test_approx_at_least_exact(tmp_path, capsys):
    for seed in ("3", "4", "5"):
        path = tmp_path / f"i{seed}.json"
        code, _, _ = run(capsys, "generate", "--seed", seed, "--output", str(path))
        assert code == 0
        code, out_a, _ = run(capsys, "solve", "--problem", "partial", "--input", str(path))
        code_e, out_e, _ = run(capsys, "solve", "--problem", "partial",
                               "--algorithm", "exact", "--input", str(path))
        if code == 2 or code_e == 2:
            assert code == code_e
            continue
        assert json.loads(out_a.strip())["cost"] >= json.loads(out_e.strip())["cost"]


def test_verify_detects_tampering(tmp_path, capsys):
    inst = gen(tmp_path, capsys, "inst.json", "--k", "3")
    out = tmp_path / "sol.json"
    code, _, _ = run(capsys, "solve", "--problem", "partial",
                     "--input", str(inst), "--output", str(out))
    if code == 2:
        pytest.skip("seed produced an uncoverable instance")
    doc = json.loads(out.read_text())
    if not doc["counts"]:
        pytest.skip("empty multiset cannot be tampered with")
    rid = sorted(doc["counts"])[0]
    if doc["counts"][rid] == 1:
        del doc["counts"][rid]
    else:
        doc["counts"][rid] -= 1
    out.write_text(json.dumps(doc))
    code, stdout, _ = run(capsys, "verify", "--input", str(inst), "--solution", str(out))
    assert code == 2
    assert json.loads(stdout.strip())["feasible"] in (False, True)  # cost mismatch also fails


def test_lspc_solve_and_verify(tmp_path, capsys):
    inst = gen(tmp_path, capsys, "lspc.json", "--profile", "lspc-random")
    out = tmp_path / "sol.json"
    code, stdout, _ = run(capsys, "solve", "--problem", "lspc",
                          "--input", str(inst), "--output", str(out))
    if code == 2:
        pytest.skip("seed produced an infeasible lspc instance")
    assert code == 0
    code, stdout, _ = run(capsys, "verify", "--input", str(inst), "--solution", str(out))
    assert code == 0


def test_prize_solve(tmp_path, capsys):
    inst = gen(tmp_path, capsys, "inst.json", "--penalties")
    code, stdout, _ = run(capsys, "solve", "--problem", "prize", "--input", str(inst))
    assert code == 0
    line = json.loads(stdout.strip())
    assert line["optimal"] is True


def test_parse_error_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    code, _, err = run(capsys, "solve", "--problem", "partial", "--input", str(bad))
    assert code == 1
    assert "error" in err


def test_missing_k_exit_1(tmp_path, capsys):
    inst = gen(tmp_path, capsys, "inst.json", "--penalties")
    code, _, err = run(capsys, "solve", "--problem", "partial", "--input", str(inst))
    assert code == 1


def test_ratio_partial(capsys):
    code, stdout, _ = run(capsys, "ratio", "--problem", "partial", "--seeds", "0..6")
    assert code == 0
    lines = stdout.strip().splitlines()
    assert lines[-1].startswith("max-ratio")
    seeds = [int(line.split("\t")[0]) for line in lines[:-1]]
    assert seeds == sorted(seeds)


def test_ratio_partial_stays_under_certified_bound(capsys):
    from fractions import Fraction

    code, stdout, _ = run(capsys, "ratio", "--problem", "partial", "--seeds", "0..49")
    assert code == 0
    for line in stdout.strip().splitlines()[:-1]:
        fields = dict(part.split("=", 1) for part in line.split("\t")[1:]
                      if "=" in part and not part.startswith("("))
        if "bound" not in fields or fields["ratio"] in ("-", "0/0"):
            continue
        num, _, den = fields["ratio"].partition("/")
        assert Fraction(int(num), int(den)) <= int(fields["bound"])


def test_ratio_prize_is_exact(capsys):
    code, stdout, _ = run(capsys, "ratio", "--problem", "prize", "--seeds", "0..5")
    assert code == 0
    for line in stdout.strip().splitlines()[:-1]:
        if "ratio=-" in line or "INFEASIBLE" in line:
            continue
        assert "ratio=1/1" in line or "ratio=0/0" in line


def test_ratio_bad_seed_range(capsys):
    code, _, err = run(capsys, "ratio", "--seeds", "5..1")
    assert code == 1
