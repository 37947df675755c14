"""Instance transformations: halving-to-nested, satisfiability gadgets,
and seeded random generators per structure class.

The two satisfiability gadgets turn a strict-3-CNF formula into an
instance whose safe s-t paths correspond exactly to satisfying
assignments.  The overlapping gadget keeps every pair crossing from an
assignment part into a clause part; the ordered gadget chains blocks of
literal vertices, zips three blocks per clause, and wires consistency
pairs between neighbouring blocks so that no two pairs are ever nested.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, TypeVar

import numpy as np

from .classify import StructureClass, SplitResult, classify_instance, split_shared_vertices
from .core import Formula3Sat, Instance, Literal, Path
from .errors import (
    InfeasibleError,
    LengthMismatchError,
    NoSuchPairError,
    SharedEndpointError,
    WrongClassError,
)

__all__ = [
    "reduce_halving_to_nested",
    "zip_blocks",
    "sat3_to_overlapping",
    "sat3_to_ordered",
    "gen_random",
    "BlockDescriptor",
    "OverlappingAnnotation",
    "OrderedAnnotation",
]

T = TypeVar("T")


# ---------------------------------------------------------------------------
# halving -> nested


def _halving_layout(instance: Instance) -> tuple[list[int], list[int], int]:
    """Left members, right members, boundary; raises unless the pair set
    has the halving layout (lefts ascending, rights ascending, all lefts
    before all rights).  A single pair qualifies trivially."""
    pairs = instance.pairs
    if not pairs:
        raise WrongClassError("no pairs; nothing to reduce")
    lefts = [a for a, _ in pairs]
    rights = [b for _, b in pairs]
    ok = (
        all(x < y for x, y in zip(lefts, lefts[1:]))
        and all(x < y for x, y in zip(rights, rights[1:]))
        and lefts[-1] < rights[0]
    )
    if not ok:
        raise WrongClassError("pair set does not have the halving layout")
    return lefts, rights, lefts[-1]


def reduce_halving_to_nested(instance: Instance, pair_rank: int) -> Instance:
    """Build the nested sub-instance for the pair of the given 1-based rank.

    The vertex order of the result is: the first part (everything up to
    the last left member) verbatim, then the second part reversed, then a
    fresh terminal.  Second-part edges are reversed, crossing edges are
    dropped, and for every original crossing edge out of the ranked pair's
    left member x, edges (x, head-of-reversed-part) and
    (crossing-target, fresh terminal) are added.  Pairs are kept and come
    out nested; the new source is the old one and the new target is the
    fresh terminal.
    """
    lefts, _, boundary = _halving_layout(instance)
    k = len(lefts)
    if not 1 <= pair_rank <= k:
        raise NoSuchPairError(f"pair rank {pair_rank} out of 1..{k}")
    x_k = lefts[pair_rank - 1]
    n = instance.n
    first_len = boundary + 1
    second = list(range(first_len, n))
    pos = {v: v for v in range(first_len)}
    for i, v in enumerate(reversed(second)):
        pos[v] = first_len + i
    t_new = n  # fresh terminal appended after the reversed second part

    edges: set[tuple[int, int]] = set()
    for u, v in instance.edges:
        if u <= boundary < v:  # crossing edge
            if u == x_k:
                # route through the old target: it heads the reversed part
                edges.add((pos[u], pos[instance.target]))
                edges.add((pos[v], t_new))
            continue
        if u <= boundary:
            edges.add((u, v))
        else:
            edges.add((pos[v], pos[u]))  # reversed
    pairs = tuple((a, pos[b]) for a, b in instance.pairs)
    return Instance(
        n=n + 1,
        edges=tuple(edges),
        pairs=pairs,
        source=instance.source,
        target=t_new,
    )


# ---------------------------------------------------------------------------
# zipping


def zip_blocks(g1: Sequence[T], g2: Sequence[T], g3: Sequence[T]) -> list[T]:
    """Round-robin interleaving of three equal-length sequences."""
    if not (len(g1) == len(g2) == len(g3)):
        raise LengthMismatchError(
            f"sequences have lengths {len(g1)}, {len(g2)}, {len(g3)}"
        )
    out: list[T] = []
    for a, b, c in zip(g1, g2, g3):
        out.extend((a, b, c))
    return out


# ---------------------------------------------------------------------------
# 3-SAT -> overlapping structure


@dataclass(frozen=True)
class OverlappingAnnotation:
    """Maps gadget vertices of the overlapping reduction back to the formula."""

    formula: Formula3Sat
    tags: dict[int, str]
    true_vertex: dict[int, int]  # variable -> vertex meaning "true"
    false_vertex: dict[int, int]
    literal_vertex: dict[tuple[int, int], int]  # (clause, literal slot) -> vertex

    def assignment_from_path(self, path: Path | Sequence[int]) -> list[bool]:
        on = set(path.vertices if isinstance(path, Path) else path)
        return [self.true_vertex[k] in on for k in range(1, self.formula.num_vars + 1)]


def sat3_to_overlapping(formula: Formula3Sat) -> tuple[Instance, OverlappingAnnotation]:
    """Assignment part then clause part; one pair per literal occurrence.

    Stage k of the first part offers a true/false vertex for variable k
    between chain nodes; clause i offers its three literal vertices between
    chain nodes.  A pair ties each literal occurrence to the opposite
    assignment vertex, so a safe path through a literal vertex certifies
    the literal true.  Every pair starts in the first part and ends in the
    second, hence no two pairs are disjoint.
    """
    m, nc = formula.num_vars, len(formula.clauses)
    tags: dict[int, str] = {}
    true_vertex: dict[int, int] = {}
    false_vertex: dict[int, int] = {}
    literal_vertex: dict[tuple[int, int], int] = {}
    edges: list[tuple[int, int]] = []
    pairs: list[tuple[int, int]] = []

    tags[0] = "chain(0)"
    for k in range(1, m + 1):
        chain_prev = 3 * (k - 1)
        t_k, f_k, chain_k = chain_prev + 1, chain_prev + 2, chain_prev + 3
        tags[t_k] = f"var({k},+)"
        tags[f_k] = f"var({k},-)"
        tags[chain_k] = f"chain({k})"
        true_vertex[k], false_vertex[k] = t_k, f_k
        edges += [(chain_prev, t_k), (t_k, chain_k), (chain_prev, f_k), (f_k, chain_k)]
    base = 3 * m
    for i in range(1, nc + 1):
        chain_prev = base + 4 * (i - 1)
        chain_i = base + 4 * i
        tags[chain_i] = f"chain({m + i})"
        for j in range(1, 4):
            lv = chain_prev + j
            literal_vertex[(i, j)] = lv
            var, neg = formula.clauses[i - 1][j - 1]
            tags[lv] = f"lit({i},{j})"
            edges += [(chain_prev, lv), (lv, chain_i)]
            forbidden_mate = true_vertex[var] if neg else false_vertex[var]
            pairs.append((forbidden_mate, lv))
    instance = Instance(
        n=base + 4 * nc + 1,
        edges=tuple(edges),
        pairs=tuple(pairs),
        source=0,
        target=base + 4 * nc,
    )
    return instance, OverlappingAnnotation(formula, tags, true_vertex, false_vertex, literal_vertex)


# ---------------------------------------------------------------------------
# 3-SAT -> ordered structure


@dataclass(frozen=True)
class BlockDescriptor:
    """One assignment block of the ordered gadget, before endpoint splitting.

    ``kind`` is "B" for a plain assignment block (literal order
    not-x1, x1, not-x2, ...) or "B_lit" for a clause block (order
    x1, not-x1, x2, ...) in which the vertex of the literal's negation is
    isolated.  ``positive``/``negative`` give the vertex of x_k / not-x_k
    per variable k (index k-1).
    """

    kind: str
    literal: Literal | None
    clause_index: int | None
    m: int
    positive: tuple[int, ...]
    negative: tuple[int, ...]
    isolated_vertex: int | None


@dataclass(frozen=True)
class OrderedAnnotation:
    """Pre-split gadget, its blocks, and the split that produced the instance."""

    formula: Formula3Sat
    raw_instance: Instance
    blocks: tuple[BlockDescriptor, ...]
    split: SplitResult
    tags: dict[int, str]

    def assignment_from_path(self, path: Path | Sequence[int]) -> list[bool]:
        """Read the assignment off the first block's chains."""
        on = set(path.vertices if isinstance(path, Path) else path)
        first = self.blocks[0]
        out = []
        for k in range(self.formula.num_vars):
            raw = first.positive[k]
            chain = {v for v in range(len(self.split.owner)) if self.split.owner[v] == raw}
            out.append(bool(chain & on))
        return out


def _make_block(
    kind: str,
    m: int,
    start: int,
    literal: Literal | None,
    clause_index: int | None,
) -> tuple[BlockDescriptor, list[int]]:
    """Lay out one block's 2m vertices from ``start``; returns the order."""
    positive = [0] * m
    negative = [0] * m
    order: list[int] = []
    v = start
    for k in range(1, m + 1):
        if kind == "B":  # not-x_k before x_k
            negative[k - 1] = v
            positive[k - 1] = v + 1
        else:  # x_k before not-x_k
            positive[k - 1] = v
            negative[k - 1] = v + 1
        order += [v, v + 1]
        v += 2
    isolated = None
    if literal is not None:
        var, neg = literal
        isolated = positive[var - 1] if neg else negative[var - 1]
    return (
        BlockDescriptor(kind, literal, clause_index, m, tuple(positive), tuple(negative), isolated),
        order,
    )


def sat3_to_ordered(formula: Formula3Sat) -> tuple[Instance, OrderedAnnotation]:
    """Chained assignment blocks with zipped clause blocks in between.

    Layout: source, B0, Z1, B1, ..., Zn, Bn, target, where Z_i zips the
    three clause blocks of clause i.  Within a block all four edges join
    consecutive variable layers (skipping the isolated vertex in clause
    blocks); between blocks the last layer fans out to the first layer of
    every following block.  For every clause-block vertex, pairs tie it to
    its opposite-polarity vertex in both neighbouring assignment blocks,
    forcing one consistent assignment; a clause block is traversable only
    if its literal is made true.  Shared endpoints are then split with
    partner-ordered chains, after which no two pairs are nested.
    """
    m, nc = formula.num_vars, len(formula.clauses)
    if m < 1 or nc < 1:
        raise InfeasibleError("need at least one variable and one clause")
    blocks: list[BlockDescriptor] = []
    b_blocks: list[BlockDescriptor] = []  # the n+1 assignment blocks in order
    zipped: list[list[BlockDescriptor]] = []
    tags: dict[int, str] = {}
    cursor = 0
    source = cursor
    tags[source] = "chain(source)"
    cursor += 1

    def add_b_block() -> BlockDescriptor:
        nonlocal cursor
        blk, order = _make_block("B", m, cursor, None, None)
        for k in range(1, m + 1):
            tags[blk.positive[k - 1]] = f"var({k},+)"
            tags[blk.negative[k - 1]] = f"var({k},-)"
        cursor = order[-1] + 1
        return blk

    b_blocks.append(add_b_block())
    blocks.append(b_blocks[0])
    for i in range(1, nc + 1):
        base = cursor
        # zip the three blocks' local slot sequences to fix the global order
        local = [[(j, slot) for slot in range(2 * m)] for j in range(3)]
        interleaved = zip_blocks(local[0], local[1], local[2])
        id_of = {token: base + idx for idx, token in enumerate(interleaved)}
        trio: list[BlockDescriptor] = []
        for j in range(1, 4):
            lit = formula.clauses[i - 1][j - 1]
            blk, _ = _make_block("B_lit", m, 0, lit, i)
            remap = {slot: id_of[(j - 1, slot)] for slot in range(2 * m)}
            blk = BlockDescriptor(
                blk.kind,
                blk.literal,
                blk.clause_index,
                m,
                tuple(remap[v] for v in blk.positive),
                tuple(remap[v] for v in blk.negative),
                remap[blk.isolated_vertex] if blk.isolated_vertex is not None else None,
            )
            for k in range(1, m + 1):
                tags[blk.positive[k - 1]] = f"lit({i},{j}) var({k},+)"
                tags[blk.negative[k - 1]] = f"lit({i},{j}) var({k},-)"
            trio.append(blk)
        cursor = base + 6 * m
        zipped.append(trio)
        blocks.extend(trio)
        b_blocks.append(add_b_block())
        blocks.append(b_blocks[-1])
    target = cursor
    tags[target] = "chain(target)"
    n_raw = cursor + 1

    edges: set[tuple[int, int]] = set()

    def layer(blk: BlockDescriptor, k: int) -> list[int]:
        """Non-isolated vertices of variable layer k (1-based)."""
        vs = [blk.positive[k - 1], blk.negative[k - 1]]
        return [v for v in vs if v != blk.isolated_vertex]

    for blk in blocks:
        for k in range(1, m):
            for u in layer(blk, k):
                for w in layer(blk, k + 1):
                    edges.add((u, w))
    for v in layer(b_blocks[0], 1):
        edges.add((source, v))
    for v in layer(b_blocks[-1], m):
        edges.add((v, target))
    for i in range(1, nc + 1):
        before, after = b_blocks[i - 1], b_blocks[i]
        for blk in zipped[i - 1]:
            for u in layer(before, m):
                for w in layer(blk, 1):
                    edges.add((u, w))
            for u in layer(blk, m):
                for w in layer(after, 1):
                    edges.add((u, w))

    pairs: list[tuple[int, int]] = []
    for i in range(1, nc + 1):
        before, after = b_blocks[i - 1], b_blocks[i]
        for blk in zipped[i - 1]:
            for k in range(1, m + 1):
                for v, mate in ((blk.positive[k - 1], "negative"), (blk.negative[k - 1], "positive")):
                    counter_before = getattr(before, mate)[k - 1]
                    counter_after = getattr(after, mate)[k - 1]
                    pairs.append((counter_before, v))
                    pairs.append((v, counter_after))

    raw = Instance(n=n_raw, edges=tuple(edges), pairs=tuple(pairs), source=source, target=target)
    split = split_shared_vertices(raw)
    final_tags = {
        v: f"split({split.owner[v]},{v - split.head[split.owner[v]]}) {tags[split.owner[v]]}"
        if split.changed
        else tags[v]
        for v in range(split.instance.n)
    }
    annotation = OrderedAnnotation(formula, raw, tuple(blocks), split, final_tags)
    return split.instance, annotation


# ---------------------------------------------------------------------------
# random generators


_CLASS_MIN_PAIRS = {
    StructureClass.DISJOINT: 0,
    StructureClass.NESTED: 2,
    StructureClass.HALVING: 2,
    StructureClass.WELL_PARENTHESIZED: 3,
    StructureClass.ORDERED: 3,
    StructureClass.OVERLAPPING: 3,
    StructureClass.GENERAL: 3,
}

_GEN_RETRIES = 200


def _endpoints_for_class(
    structure: StructureClass, slots: np.ndarray, k: int, rng: np.random.Generator
) -> list[tuple[int, int]] | None:
    """Pair the 2k sorted endpoint slots according to the class layout."""
    if structure is StructureClass.DISJOINT:
        return [(int(slots[2 * i]), int(slots[2 * i + 1])) for i in range(k)]
    if structure is StructureClass.NESTED:
        return [(int(slots[i]), int(slots[2 * k - 1 - i])) for i in range(k)]
    if structure is StructureClass.HALVING:
        return [(int(slots[i]), int(slots[k + i])) for i in range(k)]
    if structure is StructureClass.WELL_PARENTHESIZED:
        # random balanced bracket walk over the slots; a close matches the
        # innermost open, which never produces a halving couple
        opens = 0
        stack: list[int] = []
        out: list[tuple[int, int]] = []
        for s in slots:
            if not stack or (opens < k and rng.random() < 0.5):
                stack.append(int(s))
                opens += 1
            else:
                out.append((stack.pop(), int(s)))
        return out
    if structure is StructureClass.ORDERED:
        # ballot walk; the i-th open matches the i-th close, so lefts and
        # rights are each ascending and nothing nests
        opens = 0
        closes = 0
        left_slots: list[int] = []
        right_slots: list[int] = []
        for s in slots:
            if opens == k:
                right_slots.append(int(s))
                closes += 1
            elif opens == closes or rng.random() < 0.5:
                left_slots.append(int(s))
                opens += 1
            else:
                right_slots.append(int(s))
                closes += 1
        return list(zip(left_slots, right_slots))
    if structure is StructureClass.OVERLAPPING:
        # all lefts precede all rights; a random matching mixes nesting
        # (inversions) with halving (non-inversions)
        perm = rng.permutation(k)
        return [(int(slots[i]), int(slots[k + perm[i]])) for i in range(k)]
    # general: random pairing of the slots
    order = rng.permutation(2 * k)
    picks = [(int(slots[order[2 * i]]), int(slots[order[2 * i + 1]])) for i in range(k)]
    return [(min(a, b), max(a, b)) for a, b in picks]


def gen_random(
    structure: StructureClass,
    n: int,
    k: int,
    *,
    density: float = 0.15,
    seed: int = 0,
    ensure_path: bool = True,
) -> Instance:
    """Seeded random instance whose classification matches exactly.

    Pair endpoints avoid the terminals; forward edges are sampled at the
    given density, optionally augmented with a random source-target
    backbone chain.  Raises ``InfeasibleError`` when the class cannot be
    realised with the requested counts.
    """
    if n < 4:
        raise InfeasibleError("need at least 4 vertices")
    if 2 * k > n - 2:
        raise InfeasibleError(f"{k} pairs need {2 * k} endpoints, only {n - 2} available")
    if k < _CLASS_MIN_PAIRS[structure]:
        raise InfeasibleError(
            f"class '{structure.value}' needs at least {_CLASS_MIN_PAIRS[structure]} pairs"
        )
    rng = np.random.default_rng(seed)
    for _ in range(_GEN_RETRIES):
        slots = np.sort(rng.choice(np.arange(1, n - 1), size=2 * k, replace=False))
        pairs = _endpoints_for_class(structure, slots, k, rng)
        if pairs is None:
            continue
        probe = Instance(n=n, edges=(), pairs=tuple(pairs), source=0, target=n - 1)
        try:
            cls = classify_instance(probe)
        except SharedEndpointError:
            continue
        if cls.structure is structure:
            break
    else:
        raise InfeasibleError(f"could not realise class '{structure.value}' with n={n}, k={k}")

    edges: set[tuple[int, int]] = set()
    if n > 2:
        mask = rng.random((n, n)) < density
        us, vs = np.nonzero(np.triu(mask, 1))
        edges.update(zip(us.tolist(), vs.tolist()))
    if ensure_path:
        chain = [0] + [v for v in range(1, n - 1) if rng.random() < 0.5] + [n - 1]
        edges.update(zip(chain, chain[1:]))
    return Instance(n=n, edges=tuple(edges), pairs=tuple(pairs), source=0, target=n - 1)
