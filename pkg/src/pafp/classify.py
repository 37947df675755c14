"""Mutual-position taxonomy of forbidden pairs and endpoint splitting.

Two endpoint-distinct pairs stand in exactly one of three mutual positions
under the vertex order: disjoint (``u < v < x < y``), nested
(``u < x < y < v``) or halving (``u < x < v < y``).  The flag triple of
which positions occur across a whole pair set determines the structure
class of an instance, which in turn selects the applicable solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .core import Instance, Path
from .errors import SharedEndpointError

__all__ = [
    "PairRelation",
    "StructureClass",
    "Classification",
    "SplitResult",
    "relate",
    "classify_instance",
    "split_shared_vertices",
]


class PairRelation(Enum):
    DISJOINT = "disjoint"
    NESTED = "nested"
    HALVING = "halving"


class StructureClass(Enum):
    DISJOINT = "disjoint"
    NESTED = "nested"
    HALVING = "halving"
    WELL_PARENTHESIZED = "well-parenthesized"
    ORDERED = "ordered"
    OVERLAPPING = "overlapping"
    GENERAL = "general"


# (has_disjoint, has_nested, has_halving) -> class.  Pair sets with fewer
# than two pairs have no couples at all and report the most restrictive
# class, so every solver admitting a superclass admits them too.
_FLAGS_TO_CLASS = {
    (False, False, False): StructureClass.DISJOINT,
    (True, False, False): StructureClass.DISJOINT,
    (False, True, False): StructureClass.NESTED,
    (False, False, True): StructureClass.HALVING,
    (True, True, False): StructureClass.WELL_PARENTHESIZED,
    (True, False, True): StructureClass.ORDERED,
    (False, True, True): StructureClass.OVERLAPPING,
    (True, True, True): StructureClass.GENERAL,
}


@dataclass(frozen=True)
class Classification:
    """Structure class plus the raw occurrence flags it was derived from."""

    structure: StructureClass
    has_disjoint: bool
    has_nested: bool
    has_halving: bool

    @property
    def halving_free(self) -> bool:
        """True when the interval DP solvers apply."""
        return not self.has_halving


def relate(p1: tuple[int, int], p2: tuple[int, int]) -> PairRelation:
    """Mutual position of two forbidden pairs with pairwise distinct endpoints."""
    a, b = sorted(p1)
    c, d = sorted(p2)
    if a > c or (a == c and b > d):
        a, b, c, d = c, d, a, b
    if len({a, b, c, d}) != 4:
        raise SharedEndpointError(f"pairs ({p1[0]},{p1[1]}) and ({p2[0]},{p2[1]}) share an endpoint")
    # now a < b, c < d, a < c
    if b < c:
        return PairRelation.DISJOINT
    if d < b:
        return PairRelation.NESTED
    return PairRelation.HALVING


def _check_endpoint_distinct(instance: Instance) -> None:
    seen: dict[int, int] = {}
    for i, (a, b) in enumerate(instance.pairs):
        if a == b:
            raise SharedEndpointError(f"degenerate pair ({a},{b})")
        for v in (a, b):
            if v in seen:
                raise SharedEndpointError(
                    f"vertex {v} belongs to pairs {seen[v]} and {i}; split shared endpoints first"
                )
            seen[v] = i


def classify_instance(instance: Instance) -> Classification:
    """Occurrence flags over all pair couples and the structure class they map to.

    Quadratic in the number of pairs.  Requires endpoint-distinct pairs;
    run ``split_shared_vertices`` first otherwise.
    """
    _check_endpoint_distinct(instance)
    pairs = instance.pairs  # already sorted by left member
    has_d = has_n = has_h = False
    k = len(pairs)
    for i in range(k):
        a, b = pairs[i]
        for j in range(i + 1, k):
            c, d = pairs[j]
            # a < c or (a == c impossible: endpoint-distinct)
            if b < c:
                has_d = True
            elif d < b:
                has_n = True
            else:
                has_h = True
            if has_d and has_n and has_h:
                return Classification(StructureClass.GENERAL, True, True, True)
    return Classification(_FLAGS_TO_CLASS[(has_d, has_n, has_h)], has_d, has_n, has_h)


@dataclass(frozen=True)
class SplitResult:
    """Instance with endpoint-distinct pairs plus the vertex correspondence.

    ``head`` maps each old vertex to the first vertex of its replacement
    chain (the chain is a single vertex when nothing was split); ``owner``
    maps each new vertex back to the old vertex it came from.
    """

    instance: Instance
    head: tuple[int, ...]
    owner: tuple[int, ...]

    @property
    def changed(self) -> bool:
        return len(self.head) != len(self.owner)

    def map_path_back(self, path: Path | tuple[int, ...]) -> Path:
        """Collapse a path in the split instance to a path in the original."""
        vertices = path.vertices if isinstance(path, Path) else tuple(path)
        collapsed: list[int] = []
        for v in vertices:
            ov = self.owner[v]
            if not collapsed or collapsed[-1] != ov:
                collapsed.append(ov)
        return Path(tuple(collapsed))


def split_shared_vertices(instance: Instance) -> SplitResult:
    """Replace each vertex carrying r > 1 pair ends by a chain of r vertices.

    Incoming edges attach to the chain head and outgoing edges to the tail,
    so any path entering the chain traverses it completely and safety is
    preserved.  Pair ends along a chain are assigned in ascending order of
    their partner's position; that assignment keeps previously
    endpoint-distinct couples in their old mutual position and never
    introduces nesting among the couples that used to share the vertex.
    The source maps to its chain head and the target to its chain tail so
    terminal chains are still traversed in full.
    """
    n = instance.n
    memberships: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for idx, (a, b) in enumerate(instance.pairs):
        memberships[a].append((b, idx))
        memberships[b].append((a, idx))
    sizes = [max(1, len(m)) for m in memberships]
    if all(s == 1 for s in sizes):
        identity = tuple(range(n))
        return SplitResult(instance, identity, identity)

    head: list[int] = []
    owner: list[int] = []
    base = 0
    for v in range(n):
        head.append(base)
        owner.extend([v] * sizes[v])
        base += sizes[v]
    new_n = base

    def tail(v: int) -> int:
        return head[v] + sizes[v] - 1

    new_edges = [(tail(u), head[v]) for u, v in instance.edges]
    for v in range(n):
        for i in range(sizes[v] - 1):
            new_edges.append((head[v] + i, head[v] + i + 1))

    slot: dict[tuple[int, int], int] = {}
    for v in range(n):
        for j, (_, idx) in enumerate(sorted(memberships[v])):
            slot[(v, idx)] = head[v] + j
    new_pairs = [
        (slot[(a, i)], slot[(b, i)]) for i, (a, b) in enumerate(instance.pairs)
    ]

    split = Instance(
        n=new_n,
        edges=tuple(new_edges),
        pairs=tuple(new_pairs),
        source=head[instance.source],
        target=tail(instance.target),
    )
    return SplitResult(split, tuple(head), tuple(owner))
