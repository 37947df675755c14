import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pafp import Instance, Path, brute_force_solve, reachability_prune, validate, verify_safe
from pafp.errors import InvalidPathError

from support import random_instance_with_sharing


def test_validate_minimal_instance():
    inst = Instance(n=2, edges=[(0, 1)], pairs=[], source=0, target=1)
    assert validate(inst) == []


def test_validate_backward_edge():
    inst = Instance(n=4, edges=[(3, 1)], pairs=[], source=0, target=3)
    assert validate(inst) == ["edge not forward: (3,1)"]


def test_validate_degenerate_pair():
    inst = Instance(n=4, edges=[(0, 3)], pairs=[(2, 2)], source=0, target=3)
    problems = validate(inst)
    assert problems == ["degenerate pair: (2,2)"]


def test_validate_out_of_range_and_terminals():
    inst = Instance(n=3, edges=[(0, 5)], pairs=[(1, 9)], source=2, target=1)
    problems = validate(inst)
    assert any("edge endpoint out of range" in p for p in problems)
    assert any("pair member out of range" in p for p in problems)
    assert any("source not before target" in p for p in problems)


def test_instance_normalisation():
    inst = Instance(n=5, edges=[(1, 2), (1, 2), (0, 1)], pairs=[(4, 2), (1, 3)], source=0, target=4)
    assert inst.edges == ((0, 1), (1, 2))
    assert inst.pairs == ((1, 3), (2, 4))
    assert inst.succ[1] == (2,)
    assert inst.pred[2] == (1,)


CHAIN = Instance(n=4, edges=[(0, 1), (1, 2), (2, 3)], pairs=[(1, 2)], source=0, target=3)
DIAMOND = Instance(n=4, edges=[(0, 1), (1, 3), (0, 2), (2, 3)], pairs=[(1, 2)], source=0, target=3)


def test_verify_safe_both_members():
    assert verify_safe(CHAIN, [0, 1, 2, 3]) is False


def test_verify_safe_one_member():
    assert verify_safe(DIAMOND, [0, 1, 3]) is True


def test_verify_safe_structural_errors():
    with pytest.raises(InvalidPathError):
        verify_safe(CHAIN, [0, 2])  # no edge (0,2)
    with pytest.raises(InvalidPathError):
        verify_safe(CHAIN, [1, 2, 3])  # wrong start
    with pytest.raises(InvalidPathError):
        verify_safe(CHAIN, [0, 1, 2])  # wrong end
    with pytest.raises(InvalidPathError):
        verify_safe(CHAIN, [])


def test_paths_are_strictly_increasing():
    # any accepted path respects the topological index order
    rng = random.Random(11)
    for _ in range(50):
        inst = random_instance_with_sharing(rng, rng.randint(4, 14), 4)
        res = brute_force_solve(inst)
        if res.found:
            vs = res.path.vertices
            assert all(a < b for a, b in zip(vs, vs[1:]))
            assert verify_safe(inst, res.path)


def test_prune_identity_on_connected_chain():
    pruned = reachability_prune(CHAIN)
    assert not pruned.disconnected
    assert pruned.instance == CHAIN
    assert pruned.dropped_pairs == 0


def test_prune_removes_isolated_vertex():
    inst = Instance(n=6, edges=[(0, 1), (1, 2), (2, 3), (3, 4)], pairs=[], source=0, target=4)
    pruned = reachability_prune(inst)
    assert pruned.instance.n == 5
    assert 5 not in pruned.vertex_map


def test_prune_disconnected_flags_canonical_instance():
    inst = Instance(n=4, edges=[(2, 3)], pairs=[(1, 2)], source=0, target=3)
    pruned = reachability_prune(inst)
    assert pruned.disconnected
    assert pruned.instance.n == 2
    assert pruned.instance.edges == ()
    assert pruned.dropped_pairs == 1
    assert not brute_force_solve(pruned.instance).found


def test_prune_preserves_oracle_answer():
    rng = random.Random(7)
    checked = 0
    for seed in range(500):
        inst = random_instance_with_sharing(
            rng, rng.randint(4, 20), 5, density=rng.choice([0.1, 0.2, 0.35]),
            backbone=seed % 3 != 0,
        )
        before = brute_force_solve(inst).found
        after = brute_force_solve(reachability_prune(inst).instance).found
        assert before == after
        checked += 1
    assert checked == 500


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_prune_idempotent(seed):
    rng = random.Random(seed)
    inst = random_instance_with_sharing(rng, rng.randint(4, 18), 5, backbone=seed % 2 == 0)
    once = reachability_prune(inst).instance
    twice = reachability_prune(once).instance
    assert once == twice


def test_path_container_protocol():
    p = Path((0, 2, 5))
    assert len(p) == 3
    assert list(p) == [0, 2, 5]
    assert p[1] == 2
