"""Polynomial solvers per structure class plus the exact exponential oracle.

The workhorse is an interval dynamic program over two tables: ``P[u][v]``
records whether a safe u-v path exists, and the auxiliary jump table
``J[u][v]`` (defined only when a pair ``(q, v)`` ends at ``v`` with
``u < q``) records whether a safe u-v path exists whose first edge jumps
over ``q``.  Both fill in cubic time when no two pairs halve each other.
Around this sit a linear sweep for disjoint pair sets, a rule-based
cross-check reducer, a driver that reduces the halving case to nested
sub-instances, a min-violations variant over the (min, +) domain and an
exhaustive-search oracle used to validate everything else.
"""

from __future__ import annotations

import time
from bisect import bisect_right
from collections import deque
from dataclasses import dataclass

import numpy as np

from .classify import Classification, StructureClass, classify_instance, split_shared_vertices
from .core import Instance, Path, PruneResult, SolveResult, SolveStats, reachability_prune
from .errors import BudgetExceededError, NonTerminationError, WrongClassError

__all__ = [
    "DpTables",
    "ViolationTables",
    "INFINITE_VIOLATIONS",
    "brute_force_solve",
    "solve_disjoint",
    "build_dp_tables",
    "solve_well_parenthesized",
    "solve_by_rules",
    "solve_halving",
    "solve_auto",
    "solve_min_violations",
    "reconstruct_safe_path",
]


# ---------------------------------------------------------------------------
# tables


@dataclass(frozen=True, eq=False)
class DpTables:
    """Boolean reachability tables of the interval DP.

    ``P`` is upper triangular with a true diagonal; ``J`` is stored false
    wherever it is undefined and ``J_defined`` masks the meaningful cells.
    ``pair_end[v]`` is the left member of the unique pair ending at ``v``,
    or -1 (single-valuedness is guaranteed by endpoint splitting).
    """

    P: np.ndarray
    J: np.ndarray
    J_defined: np.ndarray
    pair_end: np.ndarray

    @property
    def n(self) -> int:
        return self.P.shape[0]

    def equals(self, other: "DpTables") -> bool:
        return (
            np.array_equal(self.P, other.P)
            and np.array_equal(self.J, other.J)
            and np.array_equal(self.J_defined, other.J_defined)
            and np.array_equal(self.pair_end, other.pair_end)
        )


@dataclass(frozen=True, eq=False)
class ViolationTables:
    """(min, +) counterpart of ``DpTables``: minimum pairs contained in the best path."""

    P: list[list[int]]
    J: list[list[int]]
    pair_end: list[int]


INFINITE_VIOLATIONS = float("inf")
_INF = 1 << 40  # internal integer infinity for the (min, +) tables


def _pair_end_array(instance: Instance) -> list[int]:
    pe = [-1] * instance.n
    for a, b in instance.pairs:
        pe[b] = a
    return pe


def _require_halving_free(instance: Instance) -> Classification:
    cls = classify_instance(instance)
    if cls.has_halving:
        raise WrongClassError(
            f"interval DP needs a halving-free pair set, got class '{cls.structure.value}'"
        )
    return cls


# ---------------------------------------------------------------------------
# exhaustive oracle


def brute_force_solve(
    instance: Instance,
    *,
    max_pairs: int = 20,
    max_states: int = 2_000_000,
) -> SolveResult:
    """Exact search over (vertex, open-pair set) states, memoising failures.

    A pair is *open* when exactly one member has been visited and the other
    still lies ahead; pairs whose far member is already behind the current
    vertex can never be completed and are dropped from the state, which is
    what keeps the search feasible.  Shared endpoints are fine here.  Raises
    ``BudgetExceededError`` when the pair count or the state count exceeds
    its cap.
    """
    start = time.perf_counter()
    if len(instance.pairs) > max_pairs:
        raise BudgetExceededError(
            f"{len(instance.pairs)} pairs exceed the configured bound {max_pairs}"
        )
    n = instance.n
    succ = instance.succ
    right = [b for _, b in instance.pairs]
    lefts_at: list[list[int]] = [[] for _ in range(n)]
    rights_at: list[list[int]] = [[] for _ in range(n)]
    for i, (a, b) in enumerate(instance.pairs):
        lefts_at[a].append(i)
        rights_at[b].append(i)

    def open_after(open_set: frozenset[int], w: int) -> frozenset[int]:
        kept = [i for i in open_set if right[i] > w]
        kept.extend(i for i in lefts_at[w] if right[i] > w)
        return frozenset(kept)

    source, target = instance.source, instance.target
    init_state = (source, open_after(frozenset(), source))
    failed: set[tuple[int, frozenset[int]]] = set()
    states_seen = 1
    # stack entries: (vertex, open set, iterator over successors)
    stack = [(init_state[0], init_state[1], iter(succ[source]))]
    path = [source]
    found_path: Path | None = None
    if source == target:
        found_path = Path((source,))
    while stack and found_path is None:
        v, open_set, it = stack[-1]
        advanced = False
        for w in it:
            if any(i in open_set for i in rights_at[w]):
                continue  # w would complete an open pair
            nxt = (w, open_after(open_set, w))
            if nxt in failed:
                continue
            states_seen += 1
            if states_seen > max_states:
                raise BudgetExceededError(f"state budget {max_states} exceeded")
            path.append(w)
            if w == target:
                found_path = Path(tuple(path))
                advanced = True
                break
            stack.append((w, nxt[1], iter(succ[w])))
            advanced = True
            break
        if not advanced:
            failed.add((v, open_set))
            stack.pop()
            path.pop()
    elapsed = time.perf_counter() - start
    stats = SolveStats("brute-force", elapsed, states_seen)
    if found_path is not None:
        return SolveResult(True, found_path, stats)
    return SolveResult(False, None, stats)


# ---------------------------------------------------------------------------
# disjoint pair sets: linear sweep


def solve_disjoint(instance: Instance) -> SolveResult:
    """Linear-time sweep for pairwise disjoint pairs.

    Pair intervals are disjoint, so each vertex lies inside at most one
    interval and the only state a partial path carries is whether it used
    the left member of the interval it is currently inside.  Two flags per
    vertex (clean / left-member-used) and back-links for the witness.
    """
    start = time.perf_counter()
    cls = classify_instance(instance)
    if cls.structure is not StructureClass.DISJOINT:
        raise WrongClassError(f"disjoint sweep got class '{cls.structure.value}'")
    n = instance.n
    enclosing = [-1] * n
    left = {}
    right = {}
    for i, (a, b) in enumerate(instance.pairs):
        left[i], right[i] = a, b
        for v in range(a, b + 1):
            enclosing[v] = i

    NONE = 0
    reach = [NONE] * n  # bit 1: clean, bit 2: left member used
    back: list[list[tuple[int, int] | None]] = [[None, None] for _ in range(n)]
    s, t = instance.source, instance.target

    def set_flag(v: int, flag: int, u: int, uflag: int) -> None:
        bit = 1 << flag
        if not reach[v] & bit:
            reach[v] |= bit
            back[v][flag] = (u, uflag)

    i0 = enclosing[s]
    if i0 >= 0 and s == left[i0]:
        reach[s] |= 2
    else:
        reach[s] |= 1
    work = 0
    for v in range(s + 1, t + 1):
        i = enclosing[v]
        for u in instance.pred[v]:
            if u < s or reach[u] == NONE:
                continue
            work += 1
            for uflag in (0, 1):
                if not reach[u] & (1 << uflag):
                    continue
                carries = uflag == 1 and i >= 0 and u >= left[i]
                if i >= 0 and v == right[i]:
                    if carries:
                        continue  # arrival would complete the pair
                    set_flag(v, 0, u, uflag)
                elif i >= 0 and v == left[i]:
                    set_flag(v, 1, u, uflag)
                elif i >= 0 and left[i] < v < right[i]:
                    set_flag(v, 1 if carries else 0, u, uflag)
                else:
                    set_flag(v, 0, u, uflag)
    elapsed = time.perf_counter() - start
    stats = SolveStats("disjoint", elapsed, work + n)
    if reach[t] == NONE:
        return SolveResult(False, None, stats)
    flag = 0 if reach[t] & 1 else 1
    vertices = [t]
    v, f = t, flag
    while v != s:
        v, f = back[v][f]  # type: ignore[misc]
        vertices.append(v)
    vertices.reverse()
    return SolveResult(True, Path(tuple(vertices)), stats)


# ---------------------------------------------------------------------------
# cubic interval DP


def build_dp_tables(instance: Instance) -> DpTables:
    """Fill the P and J tables for a halving-free instance.

    Columns are processed in ascending order; within a column ending a pair
    ``(q, v)`` the cells above ``q`` come first (plain predecessor rule),
    then the jump cells for ``u < q``, then the remaining P cells, which
    combine a prefix with a jump.  Every read is then already available.
    Scalar work is cubic overall.
    """
    _require_halving_free(instance)
    n = instance.n
    pair_end = _pair_end_array(instance)
    preds_desc = [sorted(p, reverse=True) for p in instance.pred]
    succs = [list(s) for s in instance.succ]

    P = [bytearray(n) for _ in range(n)]
    J = [bytearray(n) for _ in range(n)]
    for u in range(n):
        P[u][u] = 1

    for v in range(n):
        q = pair_end[v]
        rp = preds_desc[v]
        if q < 0:
            for u in range(v - 1, -1, -1):
                Pu = P[u]
                for w in rp:
                    if w < u:
                        break
                    if Pu[w]:
                        Pu[v] = 1
                        break
        else:
            for u in range(v - 1, q, -1):
                Pu = P[u]
                for w in rp:
                    if w < u:
                        break
                    if Pu[w]:
                        Pu[v] = 1
                        break
            # P[q][v] stays false: (q, v) is itself a forbidden pair.
            for u in range(q - 1, -1, -1):
                su = succs[u]
                Ju = J[u]
                for j in range(bisect_right(su, q), len(su)):
                    w = su[j]
                    if w > v:
                        break
                    if P[w][v]:
                        Ju[v] = 1
                        break
            for u in range(q - 1, -1, -1):
                Pu = P[u]
                for w in range(u, q):
                    if Pu[w] and J[w][v]:
                        Pu[v] = 1
                        break
    return _export_tables(n, P, J, pair_end)


def _export_tables(n: int, P: list[bytearray], J: list[bytearray], pair_end: list[int]) -> DpTables:
    p_arr = np.frombuffer(b"".join(P), dtype=np.uint8).reshape(n, n).astype(bool)
    j_arr = np.frombuffer(b"".join(J), dtype=np.uint8).reshape(n, n).astype(bool)
    pe = np.asarray(pair_end, dtype=np.int64)
    defined = (pe[None, :] >= 0) & (np.arange(n)[:, None] < pe[None, :])
    return DpTables(p_arr, j_arr, defined, pe)


def reconstruct_safe_path(instance: Instance, tables: DpTables, u: int, v: int) -> Path | None:
    """Replay the satisfied disjunct at each cell of filled tables.

    Ties break toward the smallest intermediate vertex, so the witness is
    deterministic and identical for any builder producing the same tables.
    """
    P, J = tables.P, tables.J
    if not P[u, v]:
        return None
    pair_end = tables.pair_end
    succ = instance.succ
    pred = instance.pred
    out: list[int] = []
    work: list[tuple[str, int, int]] = [("seg", u, v)]
    while work:
        kind, a, b = work.pop()
        if kind == "vert":
            out.append(b)
            continue
        if a == b:
            out.append(a)
            continue
        q = pair_end[b]
        if q < 0 or q < a:
            for w in pred[b]:
                if a <= w < b and P[a, w]:
                    work.append(("vert", 0, b))
                    work.append(("seg", a, w))
                    break
            else:
                raise AssertionError(f"inconsistent tables at ({a},{b})")
        else:
            for w in range(a, q):
                if P[a, w] and J[w, b]:
                    for w2 in succ[w]:
                        if q < w2 <= b and P[w2, b]:
                            work.append(("seg", w2, b))
                            work.append(("seg", a, w))
                            break
                    else:
                        raise AssertionError(f"inconsistent jump at ({w},{b})")
                    break
            else:
                raise AssertionError(f"inconsistent tables at ({a},{b})")
    return Path(tuple(out))


def _cells_in_tables(tables: DpTables) -> int:
    n = tables.n
    return n * (n + 1) // 2 + int(tables.J_defined.sum())


def solve_well_parenthesized(instance: Instance) -> SolveResult:
    """Cubic solver for halving-free (disjoint, nested, well-parenthesized) inputs."""
    start = time.perf_counter()
    tables = build_dp_tables(instance)
    s, t = instance.source, instance.target
    found = bool(tables.P[s, t])
    path = reconstruct_safe_path(instance, tables, s, t) if found else None
    elapsed = time.perf_counter() - start
    return SolveResult(found, path, SolveStats("well-parenthesized", elapsed, _cells_in_tables(tables)))


# ---------------------------------------------------------------------------
# rule-based cross-check reducer


def solve_by_rules(instance: Instance, *, max_rounds: int | None = None) -> SolveResult:
    """Reduce the graph with three rewrite rules until only s and t remain.

    Rules: contract a vertex free of pairs, delete an edge joining a
    forbidden pair, delete a pair whose members are no longer connected.
    Rules 2 and 3 run to fixpoint, then the lowest-index contractible
    vertex is contracted, and the loop repeats.  Decides existence only;
    contraction destroys path identity, so no witness is produced.  Stops
    with ``NonTerminationError`` when no rule applies while vertices other
    than the terminals remain, which signals a precondition violation
    (some path crosses two halving pairs).
    """
    start = time.perf_counter()
    s, t = instance.source, instance.target
    vertices = set(range(instance.n))
    succ: dict[int, set[int]] = {v: set() for v in vertices}
    pred: dict[int, set[int]] = {v: set() for v in vertices}
    for u, v in instance.edges:
        succ[u].add(v)
        pred[v].add(u)
    pairs = {tuple(p) for p in instance.pairs}
    in_pair: dict[int, int] = {}
    for a, b in pairs:
        in_pair[a] = in_pair.get(a, 0) + 1
        in_pair[b] = in_pair.get(b, 0) + 1

    def reaches(a: int, b: int) -> bool:
        if a == b:
            return True
        seen = {a}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            for y in succ[x]:
                if y == b:
                    return True
                if y not in seen and y < b:
                    seen.add(y)
                    queue.append(y)
        return False

    def drop_pair(a: int, b: int) -> None:
        pairs.discard((a, b))
        for v in (a, b):
            in_pair[v] -= 1
            if in_pair[v] == 0:
                del in_pair[v]

    operations = 0
    rounds = 0
    limit = max_rounds if max_rounds is not None else instance.n + len(instance.pairs) + 4
    while True:
        rounds += 1
        if rounds > limit:
            raise NonTerminationError("rule reduction exceeded its round cap")
        changed = True
        while changed:
            changed = False
            for a, b in sorted(pairs):
                if b in succ.get(a, ()):  # rule 2: the pair is also an edge
                    succ[a].discard(b)
                    pred[b].discard(a)
                    operations += 1
                    changed = True
            for a, b in sorted(pairs):
                if not reaches(a, b):  # rule 3: pair can never be completed
                    drop_pair(a, b)
                    operations += 1
                    changed = True
        contractible = None
        for v in sorted(vertices):
            if v != s and v != t and v not in in_pair:
                contractible = v
                break
        if contractible is None:
            break
        v = contractible  # rule 1: splice v out of the graph
        for u in pred[v]:
            succ[u].discard(v)
        for w in succ[v]:
            pred[w].discard(v)
        for u in pred[v]:
            for w in succ[v]:
                succ[u].add(w)
                pred[w].add(u)
        vertices.discard(v)
        del succ[v], pred[v]
        operations += 1

    if vertices != {s, t}:
        raise NonTerminationError(
            f"{len(vertices) - 2} vertices still carry live pairs; input is likely not halving-free"
        )
    found = t in succ[s]
    elapsed = time.perf_counter() - start
    return SolveResult(found, None, SolveStats("rules", elapsed, operations))


# ---------------------------------------------------------------------------
# halving driver


def _contract_non_members(instance: Instance) -> tuple[Instance, list[int]]:
    """Contract every vertex outside all pairs except the terminals.

    Returns the contracted instance and the kept-vertex list (new -> old).
    An edge in the result stands for an old edge or an old path whose
    interior visits only contracted vertices, which never affects safety.
    """
    keep = {instance.source, instance.target}
    for a, b in instance.pairs:
        keep.add(a)
        keep.add(b)
    kept = sorted(keep)
    if len(kept) == instance.n:
        return instance, kept
    remap = {old: new for new, old in enumerate(kept)}
    new_edges = set()
    for u in kept:
        # forward closure through contracted vertices only
        seen = set()
        queue = deque(instance.succ[u])
        while queue:
            w = queue.popleft()
            if w in seen:
                continue
            seen.add(w)
            if w in keep:
                new_edges.add((remap[u], remap[w]))
            else:
                queue.extend(instance.succ[w])
    contracted = Instance(
        n=len(kept),
        edges=tuple(new_edges),
        pairs=tuple((remap[a], remap[b]) for a, b in instance.pairs),
        source=remap[instance.source],
        target=remap[instance.target],
    )
    return contracted, kept


def _expand_contracted_path(original: Instance, kept: list[int], path: Path) -> Path:
    """Lift a path of the contracted instance back to the original vertices."""
    old_vertices = [kept[v] for v in path]
    keep = set(kept)
    out = [old_vertices[0]]
    for u, w in zip(old_vertices, old_vertices[1:]):
        if (u, w) in original.edge_set:
            out.append(w)
            continue
        # recover an interior route through contracted vertices
        parent = {u: None}
        queue = deque([u])
        hop = None
        while queue and hop is None:
            x = queue.popleft()
            for y in original.succ[x]:
                if y == w:
                    parent[y] = x
                    hop = y
                    break
                if y not in parent and y not in keep and y < w:
                    parent[y] = x
                    queue.append(y)
        if hop is None:
            raise AssertionError(f"lost contracted route ({u},{w})")
        seg = [w]
        x = parent[w]
        while x != u:
            seg.append(x)
            x = parent[x]
        out.extend(reversed(seg))
    return Path(tuple(out))


def _pad_terminals(instance: Instance) -> tuple[Instance, bool, bool]:
    """Give the instance pair-free terminals by prepending/appending fresh ones."""
    members = {v for p in instance.pairs for v in p}
    add_source = instance.source in members
    add_target = instance.target in members
    if not add_source and not add_target:
        return instance, False, False
    off = 1 if add_source else 0
    n = instance.n + off + (1 if add_target else 0)
    edges = [(u + off, v + off) for u, v in instance.edges]
    if add_source:
        edges.append((0, instance.source + off))
    if add_target:
        edges.append((instance.target + off, n - 1))
    padded = Instance(
        n=n,
        edges=tuple(edges),
        pairs=tuple((a + off, b + off) for a, b in instance.pairs),
        source=0 if add_source else instance.source,
        target=n - 1 if add_target else instance.target + off,
    )
    return padded, add_source, add_target


def solve_halving(instance: Instance) -> SolveResult:
    """Driver for instances whose pairs all halve each other.

    After pruning to the s-t reachable core, non-member vertices are
    contracted and terminals padded so every crossing edge runs between
    pair members.  A crossing edge out of the source or into the target
    gives a safe path outright.  Otherwise one nested sub-instance per
    pair is built (crossing edges with that pair's left member survive,
    the second part is reversed behind a fresh terminal) and the answer
    is the disjunction over the sub-instances; a found witness is mapped
    back by un-reversing its second segment.
    """
    from .reductions import reduce_halving_to_nested

    start = time.perf_counter()
    cls = classify_instance(instance)
    if cls.structure is not StructureClass.HALVING:
        raise WrongClassError(f"halving driver got class '{cls.structure.value}'")

    def finish(found: bool, path: Path | None, route: str, cells: int, subs: int | None) -> SolveResult:
        elapsed = time.perf_counter() - start
        return SolveResult(found, path, SolveStats("halving", elapsed, cells, route, subs))

    pruned: PruneResult = reachability_prune(instance)
    if pruned.disconnected:
        return finish(False, None, "disconnected", instance.n, None)
    inner = pruned.instance
    back_to_original = {new: old for old, new in pruned.vertex_map.items()}

    def lift(path: Path) -> Path:
        return Path(tuple(back_to_original[v] for v in path))

    if not inner.pairs:
        # any path is safe; pruning guarantees one exists
        parent: dict[int, int | None] = {inner.source: None}
        queue = deque([inner.source])
        while queue:
            x = queue.popleft()
            if x == inner.target:
                break
            for y in inner.succ[x]:
                if y not in parent:
                    parent[y] = x
                    queue.append(y)
        seq = [inner.target]
        while parent[seq[-1]] is not None:
            seq.append(parent[seq[-1]])  # type: ignore[arg-type]
        return finish(True, lift(Path(tuple(reversed(seq)))), "no-pairs-after-prune", inner.n, None)

    contracted, kept = _contract_non_members(inner)
    padded, add_source, add_target = _pad_terminals(contracted)
    off = 1 if add_source else 0

    def lift_padded(path: Path) -> Path:
        vs = list(path.vertices)
        if add_source:
            vs = [v - 1 for v in vs[1:]]
        if add_target:
            vs = vs[:-1]
        return lift(_expand_contracted_path(inner, kept, Path(tuple(vs))))

    boundary = max(a for a, _ in padded.pairs)
    cells = inner.n + contracted.n
    for u, w in padded.edges:
        if u == padded.source and w > boundary:
            tail_parent: dict[int, int | None] = {w: None}
            queue = deque([w])
            while queue:
                x = queue.popleft()
                if x == padded.target:
                    break
                for y in padded.succ[x]:
                    if y not in tail_parent:
                        tail_parent[y] = x
                        queue.append(y)
            seq = [padded.target]
            while tail_parent[seq[-1]] is not None:
                seq.append(tail_parent[seq[-1]])  # type: ignore[arg-type]
            witness = Path((padded.source, *reversed(seq)))
            return finish(True, lift_padded(witness), "trivial-crossing-edge", cells, None)
        if w == padded.target and u <= boundary:
            head_parent: dict[int, int | None] = {padded.source: None}
            queue = deque([padded.source])
            while queue:
                x = queue.popleft()
                if x == u:
                    break
                for y in padded.succ[x]:
                    if y not in head_parent and y <= u:
                        head_parent[y] = x
                        queue.append(y)
            seq = [u]
            while head_parent[seq[-1]] is not None:
                seq.append(head_parent[seq[-1]])  # type: ignore[arg-type]
            witness = Path((*reversed(seq), padded.target))
            return finish(True, lift_padded(witness), "trivial-crossing-edge", cells, None)

    k_pairs = len(padded.pairs)
    sub_instances = [
        reduce_halving_to_nested(padded, rank) for rank in range(1, k_pairs + 1)
    ]
    second_part = sorted(v for v in range(padded.n) if v > boundary)
    for rank, sub in enumerate(sub_instances, start=1):
        tables = build_dp_tables(sub)
        cells += _cells_in_tables(tables)
        if not tables.P[sub.source, sub.target]:
            continue
        witness = reconstruct_safe_path(sub, tables, sub.source, sub.target)
        assert witness is not None
        # sub order: first part as-is, then the old second part reversed,
        # then the fresh terminal; un-reverse the tail to recover a path
        # of the padded instance.
        first_len = boundary + 1
        rev_pos = {first_len + i: v for i, v in enumerate(reversed(second_part))}
        vs = list(witness.vertices)
        assert vs[-1] == sub.target
        head = [v for v in vs[:-1] if v < first_len]
        tail = [rev_pos[v] for v in vs[:-1] if v >= first_len]
        restored = Path(tuple(head + list(reversed(tail))))
        return finish(True, lift_padded(restored), "reduction", cells, k_pairs)
    return finish(False, None, "reduction", cells, k_pairs)


# ---------------------------------------------------------------------------
# dispatch


def solve_auto(
    instance: Instance,
    *,
    use_matrix: bool = False,
    oracle_max_pairs: int = 20,
    oracle_max_states: int = 2_000_000,
) -> SolveResult:
    """Split shared endpoints, classify, and dispatch to the right solver.

    Hard classes (ordered, overlapping, general) fall back to the
    exhaustive oracle under its budget.  The reported route names the
    solver that ran; witnesses are mapped back to the original vertices.
    """
    start = time.perf_counter()
    split = split_shared_vertices(instance)
    cls = classify_instance(split.instance)
    if cls.structure is StructureClass.DISJOINT:
        inner = solve_disjoint(split.instance)
        route = "disjoint"
    elif cls.structure in (StructureClass.NESTED, StructureClass.WELL_PARENTHESIZED):
        if use_matrix:
            from .matrix_solver import matrix_build

            tables = matrix_build(split.instance)
            s, t = split.instance.source, split.instance.target
            found = bool(tables.P[s, t])
            path = reconstruct_safe_path(split.instance, tables, s, t) if found else None
            inner = SolveResult(found, path, SolveStats("matrix", 0.0, _cells_in_tables(tables)))
            route = "matrix"
        else:
            inner = solve_well_parenthesized(split.instance)
            route = "well-parenthesized"
    elif cls.structure is StructureClass.HALVING:
        inner = solve_halving(split.instance)
        route = "halving"
    else:
        inner = brute_force_solve(
            instance, max_pairs=oracle_max_pairs, max_states=oracle_max_states
        )
        route = "brute-force"
        elapsed = time.perf_counter() - start
        return SolveResult(
            inner.found,
            inner.path,
            SolveStats("auto", elapsed, inner.stats.cells, route, inner.stats.subinstances),
        )
    path = inner.path
    if path is not None and split.changed:
        path = split.map_path_back(path)
    elapsed = time.perf_counter() - start
    return SolveResult(
        inner.found,
        path,
        SolveStats("auto", elapsed, inner.stats.cells, route, inner.stats.subinstances),
    )


# ---------------------------------------------------------------------------
# minimum violations


def build_violation_tables(instance: Instance) -> ViolationTables:
    """(min, +) variant of the interval DP.

    Cell values count the pairs fully contained in the best u-v path.  The
    only structural addition over the boolean tables is the pass-through
    branch at a column ending a pair ``(q, v)``: the path may go through
    ``q`` at the price of one violation, accounted in the pair cell
    ``P[q][v]`` itself.
    """
    _require_halving_free(instance)
    n = instance.n
    pair_end = _pair_end_array(instance)
    preds = [list(p) for p in instance.pred]
    succs = [list(s) for s in instance.succ]
    P = [[_INF] * n for _ in range(n)]
    J = [[_INF] * n for _ in range(n)]
    for u in range(n):
        P[u][u] = 0

    for v in range(n):
        q = pair_end[v]
        ps = preds[v]
        lo = q + 1 if q >= 0 else 0
        for u in range(v - 1, lo - 1, -1):
            Pu = P[u]
            best = _INF
            for w in ps:
                if w >= u and Pu[w] < best:
                    best = Pu[w]
            Pu[v] = best
        if q < 0:
            continue
        # pair cell: going from q to v completes the pair (q, v) once
        best = _INF
        Pq = P[q]
        for w in ps:
            if w >= q and Pq[w] < best:
                best = Pq[w]
        Pq[v] = best + 1 if best < _INF else _INF
        for u in range(q - 1, -1, -1):
            su = succs[u]
            best = _INF
            for j in range(bisect_right(su, q), len(su)):
                w = su[j]
                if w > v:
                    break
                if P[w][v] < best:
                    best = P[w][v]
            J[u][v] = best
        for u in range(q - 1, -1, -1):
            Pu = P[u]
            best = _INF
            for w in range(u, q):
                c = Pu[w] + J[w][v]
                if c < best:
                    best = c
            through = Pu[q] + Pq[v]
            if through < best:
                best = through
            Pu[v] = min(best, _INF)
    return ViolationTables(P, J, pair_end)


def _reconstruct_min_violations(instance: Instance, vt: ViolationTables, s: int, t: int) -> Path:
    P, J, pair_end = vt.P, vt.J, vt.pair_end
    succ = instance.succ
    pred = instance.pred
    out: list[int] = []
    work: list[tuple[str, int, int]] = [("seg", s, t)]
    while work:
        kind, a, b = work.pop()
        if kind == "vert":
            out.append(b)
            continue
        if a == b:
            out.append(a)
            continue
        q = pair_end[b]
        target_val = P[a][b]
        if q < 0 or q < a or q == a:
            # plain predecessor step (incl. the pair cell, which pays 1)
            pay = 1 if q == a else 0
            for w in sorted(pred[b]):
                if a <= w < b and P[a][w] + pay == target_val:
                    work.append(("vert", 0, b))
                    work.append(("seg", a, w))
                    break
            else:
                raise AssertionError(f"inconsistent min tables at ({a},{b})")
            continue
        chosen = False
        for w in range(a, q):
            if P[a][w] + J[w][b] == target_val:
                for w2 in succ[w]:
                    if q < w2 <= b and P[w2][b] == J[w][b]:
                        work.append(("seg", w2, b))
                        work.append(("seg", a, w))
                        chosen = True
                        break
                break
        if not chosen:
            if P[a][q] + P[q][b] == target_val:
                # both segments emit q; the final dedup collapses it
                work.append(("seg", q, b))
                work.append(("seg", a, q))
            else:
                raise AssertionError(f"inconsistent min tables at ({a},{b})")
    deduped = [out[0]]
    for v in out[1:]:
        if v != deduped[-1]:
            deduped.append(v)
    return Path(tuple(deduped))


def solve_min_violations(instance: Instance) -> tuple[int | float, Path | None]:
    """Minimum number of forbidden pairs fully contained in any s-t path.

    Returns ``(count, path)`` with the path attaining the count, or
    ``(inf, None)`` when the target is unreachable.  A count of zero is
    equivalent to the existence of a safe path.
    """
    vt = build_violation_tables(instance)
    s, t = instance.source, instance.target
    value = vt.P[s][t]
    if value >= _INF:
        return INFINITE_VIOLATIONS, None
    path = _reconstruct_min_violations(instance, vt, s, t)
    return value, path
