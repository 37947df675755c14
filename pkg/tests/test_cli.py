import json

import pytest

jsonschema = pytest.importorskip("jsonschema")

from pafp.cli import main
from pafp.textio import parse_instance

SCHEMA_DIR = "docs"


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture()
def chain_file(tmp_path):
    f = tmp_path / "chain.pafp"
    f.write_text("pafp 1\nnodes 4\nsource 0\ntarget 3\nedge 0 1\nedge 1 2\nedge 2 3\npair 1 2\n")
    return str(f)


@pytest.fixture()
def diamond_file(tmp_path):
    f = tmp_path / "diamond.pafp"
    f.write_text(
        "pafp 1\nnodes 4\nsource 0\ntarget 3\nedge 0 1\nedge 1 3\nedge 0 2\nedge 2 3\npair 1 2\n"
    )
    return str(f)


def test_solve_exit_codes(capsys, chain_file, diamond_file):
    code, out, _ = run(capsys, ["solve", diamond_file])
    assert code == 0 and "found: True" in out
    code, _, _ = run(capsys, ["solve", chain_file])
    assert code == 1
    code, _, err = run(capsys, ["solve", chain_file + ".missing"])
    assert code == 2 and "error" in err


def test_solve_wrong_class_is_exit_2(capsys, tmp_path):
    f = tmp_path / "halving.pafp"
    f.write_text(
        "pafp 1\nnodes 6\nsource 0\ntarget 5\nedge 0 5\npair 1 3\npair 2 4\n"
    )
    code, _, err = run(capsys, ["solve", str(f), "--solver", "cubic"])
    assert code == 2
    assert "halving" in err


def test_cubic_and_matrix_agree(capsys, tmp_path):
    f = tmp_path / "wp.pafp"
    code, out, _ = run(
        capsys,
        ["gen", "--class", "well-parenthesized", "--n", "60", "--pairs", "6", "--seed", "5", "-o", str(f)],
    )
    assert code == 0
    code1, out1, _ = run(capsys, ["solve", str(f), "--solver", "cubic", "--json"])
    code2, out2, _ = run(capsys, ["solve", str(f), "--solver", "matrix", "--json"])
    r1, r2 = json.loads(out1), json.loads(out2)
    assert code1 == code2
    assert r1["found"] == r2["found"]
    assert r1["path"] == r2["path"]  # deterministic reconstruction off equal tables


def test_solve_json_schema(capsys, diamond_file):
    code, out, _ = run(capsys, ["solve", diamond_file, "--json"])
    schema = json.load(open(f"{SCHEMA_DIR}/solve_report.schema.json"))
    jsonschema.validate(json.loads(out), schema)


def test_min_violations_flag(capsys, chain_file):
    code, out, _ = run(capsys, ["solve", chain_file, "--min-violations", "--json"])
    assert code == 1
    report = json.loads(out)
    assert report["min_violations"] == 1
    assert report["path"] == [0, 1, 2, 3]
    schema = json.load(open(f"{SCHEMA_DIR}/solve_report.schema.json"))
    jsonschema.validate(report, schema)


def test_classify_command(capsys, tmp_path):
    f = tmp_path / "h.pafp"
    run(capsys, ["gen", "--class", "halving", "--n", "16", "--pairs", "3", "--seed", "2", "-o", str(f)])
    code, out, _ = run(capsys, ["classify", str(f)])
    assert code == 0
    assert "class: halving" in out


def test_gen_writes_parseable_instances(capsys, tmp_path):
    f = tmp_path / "gen.pafp"
    code, _, _ = run(capsys, ["gen", "--class", "nested", "--n", "20", "--pairs", "3", "--seed", "9", "-o", str(f)])
    assert code == 0
    inst = parse_instance(open(f).read())
    assert inst.n == 20


def test_reduce_ordered_is_nesting_free(capsys, tmp_path):
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 2 2\n1 -2 1 0\n-1 2 2 0\n")
    out_file = tmp_path / "g.pafp"
    code, _, _ = run(capsys, ["reduce", str(cnf), "--to", "ordered", "-o", str(out_file)])
    assert code == 0
    code, out, _ = run(capsys, ["classify", str(out_file), "--json"])
    assert json.loads(out)["has_nested"] is False


def test_reduce_overlapping_and_annotation(capsys, tmp_path):
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 1 1\n1 1 1 0\n")
    out_file = tmp_path / "g.pafp"
    ann_file = tmp_path / "tags.json"
    code, _, _ = run(
        capsys,
        ["reduce", str(cnf), "--to", "overlapping", "-o", str(out_file), "--annotate", str(ann_file)],
    )
    assert code == 0
    tags = json.load(open(ann_file))
    assert any("var(1" in t for t in tags.values())
    inst = parse_instance(open(out_file).read())
    assert inst.n == 8


def test_reduce_nested_from_halving(capsys, tmp_path):
    f = tmp_path / "h.pafp"
    f.write_text(
        "pafp 1\nnodes 6\nsource 0\ntarget 5\nedge 0 1\nedge 1 2\nedge 2 3\nedge 3 4\nedge 4 5\npair 1 3\npair 2 4\n"
    )
    out_file = tmp_path / "n.pafp"
    code, _, _ = run(capsys, ["reduce", str(f), "--to", "nested", "--pair", "2", "-o", str(out_file)])
    assert code == 0
    code, out, _ = run(capsys, ["classify", str(out_file)])
    assert "class: nested" in out


def test_verify_names_the_violated_pair(capsys, chain_file):
    code, out, _ = run(capsys, ["verify", chain_file, "0", "1", "2", "3"])
    assert code == 1
    assert "violated_pair: [1, 2]" in out


def test_verify_structural_error_is_exit_2(capsys, chain_file):
    code, _, err = run(capsys, ["verify", chain_file, "0", "2", "3"])
    assert code == 2


def test_verify_safe_path(capsys, diamond_file):
    code, out, _ = run(capsys, ["verify", diamond_file, "0", "1", "3"])
    assert code == 0


def test_bench_single_size_no_slope(capsys):
    code, out, _ = run(capsys, ["bench", "--solvers", "cubic", "--sizes", "64", "--repeats", "1", "--json"])
    assert code == 0
    report = json.loads(out)
    assert report["slopes"]["cubic"] is None
    schema = json.load(open(f"{SCHEMA_DIR}/bench_report.schema.json"))
    jsonschema.validate(report, schema)


def test_bench_csv_and_multiple_solvers(capsys, tmp_path):
    csv_file = tmp_path / "bench.csv"
    code, out, _ = run(
        capsys,
        ["bench", "--solvers", "cubic,matrix", "--sizes", "32,64", "--repeats", "1", "--csv", str(csv_file)],
    )
    assert code == 0
    lines = csv_file.read_text().strip().splitlines()
    assert lines[0] == "solver,n,seconds,repeats,skipped"
    assert len(lines) == 5
