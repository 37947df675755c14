import random

import pytest

from pafp import Formula3Sat, Instance, parse_dimacs, parse_instance, serialize_instance
from pafp.errors import DimacsError, InstanceSemanticError, InstanceSyntaxError

from support import random_instance_with_sharing

SAMPLE = """\
pafp 1
# a comment
nodes 4
source 0
target 3
edge 0 1    # inline comment
edge 1 3
pair 1 2
"""


def test_parse_sample():
    inst = parse_instance(SAMPLE)
    assert inst == Instance(n=4, edges=[(0, 1), (1, 3)], pairs=[(1, 2)], source=0, target=3)


def test_round_trip_random_instances():
    rng = random.Random(31)
    for _ in range(100):
        inst = random_instance_with_sharing(rng, rng.randint(4, 20), 5)
        assert parse_instance(serialize_instance(inst)) == inst


def test_missing_header():
    with pytest.raises(InstanceSyntaxError):
        parse_instance("nodes 4\nsource 0\ntarget 3\n")


def test_backward_edge_is_line_addressed():
    text = "pafp 1\nnodes 4\nsource 0\ntarget 3\nedge 3 1\n"
    with pytest.raises(InstanceSemanticError) as exc:
        parse_instance(text)
    assert exc.value.line == 5
    assert "edge not forward" in str(exc.value)


def test_missing_target():
    with pytest.raises(InstanceSemanticError) as exc:
        parse_instance("pafp 1\nnodes 4\nsource 0\nedge 0 1\n")
    assert "target" in str(exc.value)


def test_unknown_directive_and_bad_integer():
    with pytest.raises(InstanceSyntaxError):
        parse_instance("pafp 1\nnodes 4\nsource 0\ntarget 3\nvertex 1\n")
    with pytest.raises(InstanceSyntaxError):
        parse_instance("pafp 1\nnodes x\nsource 0\ntarget 3\n")


def test_duplicate_scalar_and_ranges():
    with pytest.raises(InstanceSemanticError):
        parse_instance("pafp 1\nnodes 4\nnodes 5\nsource 0\ntarget 3\n")
    with pytest.raises(InstanceSemanticError):
        parse_instance("pafp 1\nnodes 4\nsource 0\ntarget 9\n")
    with pytest.raises(InstanceSemanticError):
        parse_instance("pafp 1\nnodes 4\nsource 0\ntarget 3\npair 2 2\n")


def test_serialize_sorted_and_stable():
    inst = Instance(n=5, edges=[(2, 3), (0, 1)], pairs=[(3, 4), (1, 2)], source=0, target=4)
    text = serialize_instance(inst)
    lines = text.strip().splitlines()
    assert lines[0] == "pafp 1"
    edge_lines = [l for l in lines if l.startswith("edge")]
    assert edge_lines == sorted(edge_lines)
    assert parse_instance(text) == inst


# ---------------------------------------------------------------------------
# DIMACS


def test_dimacs_basic():
    formula = parse_dimacs("c header\np cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n")
    assert formula == Formula3Sat(
        3,
        (
            ((1, False), (2, True), (3, False)),
            ((1, True), (2, False), (3, True)),
        ),
    )


def test_dimacs_multiline_clause():
    formula = parse_dimacs("p cnf 2 1\n1 -2\n1 0\n")
    assert formula.clauses == (((1, False), (2, True), (1, False)),)


def test_dimacs_rejects_non_three_literal_clauses():
    with pytest.raises(DimacsError):
        parse_dimacs("p cnf 2 1\n1 -2 0\n")  # two literals
    with pytest.raises(DimacsError):
        parse_dimacs("p cnf 2 1\n1 -2 1 2 0\n")  # four literals


def test_dimacs_errors():
    with pytest.raises(DimacsError):
        parse_dimacs("1 2 3 0\n")  # clause before the problem line
    with pytest.raises(DimacsError):
        parse_dimacs("p cnf 2 1\n1 9 1 0\n")  # variable out of range
    with pytest.raises(DimacsError):
        parse_dimacs("p cnf 2 2\n1 2 1 0\n")  # clause count mismatch
    with pytest.raises(DimacsError):
        parse_dimacs("p cnf 2 1\n1 2 1\n")  # unterminated clause
