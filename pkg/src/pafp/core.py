"""Instance data model, validity checking and path verification.

Vertices of an instance are identified with their topological indices
``0..n-1``; the index order *is* the linear order every solver in this
package reasons about.  Edges therefore always point from a smaller index
to a larger one, and an s-t path is a strictly increasing vertex sequence.
Instances are immutable after construction and safe to share across
threads; every operation in the package is a pure function of its inputs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import InvalidPathError

__all__ = [
    "Instance",
    "Path",
    "SolveStats",
    "SolveResult",
    "PruneResult",
    "Formula3Sat",
    "Literal",
    "validate",
    "verify_safe",
    "reachability_prune",
]


@dataclass(frozen=True)
class Path:
    """A strictly increasing vertex sequence, the witness form of a safe route."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]


@dataclass(frozen=True)
class Instance:
    """A topologically indexed DAG with forbidden pairs and two terminals.

    ``edges`` are stored deduplicated and sorted; orientation is kept as
    given so that ``validate`` can report backward edges.  Each pair is
    normalised to ``(left, right)`` with ``left < right`` (degenerate pairs
    are kept verbatim for ``validate`` to flag) and the pair list is sorted,
    which orders pairs by their left member.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()
    pairs: tuple[tuple[int, int], ...] = ()
    source: int = 0
    target: int | None = None

    def __post_init__(self):
        edges = tuple(sorted({(int(u), int(v)) for u, v in self.edges}))
        pairs = tuple(sorted(tuple(sorted((int(a), int(b)))) for a, b in self.pairs))
        target = self.n - 1 if self.target is None else int(self.target)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "source", int(self.source))
        object.__setattr__(self, "target", target)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    @cached_property
    def succ(self) -> tuple[tuple[int, ...], ...]:
        """Successor lists, ascending, indexed by vertex."""
        out: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            if 0 <= u < self.n and 0 <= v < self.n:
                out[u].append(v)
        return tuple(tuple(sorted(s)) for s in out)

    @cached_property
    def pred(self) -> tuple[tuple[int, ...], ...]:
        """Predecessor lists, ascending, indexed by vertex."""
        out: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            if 0 <= u < self.n and 0 <= v < self.n:
                out[v].append(u)
        return tuple(tuple(sorted(p)) for p in out)

    @cached_property
    def pair_memberships(self) -> tuple[tuple[int, ...], ...]:
        """For each vertex, the indices of the pairs it belongs to."""
        out: list[list[int]] = [[] for _ in range(self.n)]
        for i, (a, b) in enumerate(self.pairs):
            if 0 <= a < self.n:
                out[a].append(i)
            if 0 <= b < self.n and b != a:
                out[b].append(i)
        return tuple(tuple(m) for m in out)


@dataclass(frozen=True)
class SolveStats:
    """Bookkeeping attached to every solver answer."""

    solver: str
    elapsed: float
    cells: int
    route: str | None = None
    subinstances: int | None = None


@dataclass(frozen=True)
class SolveResult:
    """Answer of a solver: existence bit, optional witness, bookkeeping.

    Every solver that reconstructs witnesses guarantees ``path`` passes
    ``verify_safe`` whenever ``found`` is true.  The rule-based reducer is
    the one exception: it decides existence only and leaves ``path`` empty.
    """

    found: bool
    path: Path | None
    stats: SolveStats


@dataclass(frozen=True)
class PruneResult:
    """Outcome of ``reachability_prune``."""

    instance: Instance
    vertex_map: dict[int, int]
    dropped_pairs: int
    disconnected: bool


Literal = tuple[int, bool]  # (variable index, 1-based; negated flag)


@dataclass(frozen=True)
class Formula3Sat:
    """A conjunction of exactly-3-literal clauses over variables 1..num_vars."""

    num_vars: int
    clauses: tuple[tuple[Literal, Literal, Literal], ...]

    def __post_init__(self):
        clauses = []
        for ci, clause in enumerate(self.clauses):
            lits = tuple((int(var), bool(neg)) for var, neg in clause)
            if len(lits) != 3:
                raise ValueError(f"clause {ci} has {len(lits)} literals, need exactly 3")
            for var, _ in lits:
                if not 1 <= var <= self.num_vars:
                    raise ValueError(f"clause {ci}: variable {var} out of range 1..{self.num_vars}")
            clauses.append(lits)
        object.__setattr__(self, "clauses", tuple(clauses))

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        """Evaluate under an assignment indexed by variable-1."""
        if len(assignment) < self.num_vars:
            raise ValueError("assignment too short")
        return all(
            any(bool(assignment[var - 1]) != neg for var, neg in clause)
            for clause in self.clauses
        )

    def satisfiable_by_enumeration(self, max_vars: int = 24) -> bool:
        """Truth-table satisfiability check, exponential in num_vars."""
        if self.num_vars > max_vars:
            raise ValueError(f"refusing truth table over {self.num_vars} variables")
        for bits in range(1 << self.num_vars):
            assignment = [(bits >> k) & 1 == 1 for k in range(self.num_vars)]
            if self.evaluate(assignment):
                return True
        return False


def validate(instance: Instance) -> list[str]:
    """Report every violated instance invariant; empty list means valid.

    Never raises: this is the diagnostic entry point the CLI and tests use
    on untrusted input.
    """
    n = instance.n
    problems: list[str] = []
    if n < 2:
        problems.append(f"vertex count {n} too small for distinct source and target")
    if not 0 <= instance.source < n:
        problems.append(f"source out of range: {instance.source}")
    if not 0 <= instance.target < n:
        problems.append(f"target out of range: {instance.target}")
    if instance.source >= instance.target:
        problems.append(f"source not before target: ({instance.source},{instance.target})")
    for u, v in instance.edges:
        if not (0 <= u < n and 0 <= v < n):
            problems.append(f"edge endpoint out of range: ({u},{v})")
        elif u == v:
            problems.append(f"self-loop edge: ({u},{v})")
        elif u > v:
            problems.append(f"edge not forward: ({u},{v})")
    for a, b in instance.pairs:
        if not (0 <= a < n and 0 <= b < n):
            problems.append(f"pair member out of range: ({a},{b})")
        elif a == b:
            problems.append(f"degenerate pair: ({a},{b})")
    return problems


def _coerce_vertices(path: Path | Iterable[int]) -> tuple[int, ...]:
    if isinstance(path, Path):
        return path.vertices
    return tuple(int(v) for v in path)


def verify_safe(instance: Instance, path: Path | Iterable[int]) -> bool:
    """True iff the given s-t path avoids both members of every forbidden pair.

    Structural defects (wrong endpoints, non-increasing order, a hop with no
    edge) raise ``InvalidPathError``; only pair violations yield ``False``.
    """
    vs = _coerce_vertices(path)
    if not vs:
        raise InvalidPathError("empty path")
    if vs[0] != instance.source:
        raise InvalidPathError(f"path starts at {vs[0]}, source is {instance.source}")
    if vs[-1] != instance.target:
        raise InvalidPathError(f"path ends at {vs[-1]}, target is {instance.target}")
    for u, v in zip(vs, vs[1:]):
        if u >= v:
            raise InvalidPathError(f"path not strictly increasing at ({u},{v})")
        if (u, v) not in instance.edge_set:
            raise InvalidPathError(f"no edge ({u},{v})")
    on_path = set(vs)
    return all(not (a in on_path and b in on_path) for a, b in instance.pairs)


def _reachable_from(n: int, adjacency: Sequence[Sequence[int]], start: int) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adjacency[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


_EMPTY_ANSWER = None  # populated lazily below


def reachability_prune(instance: Instance) -> PruneResult:
    """Restrict an instance to vertices lying on some s-t walk.

    Keeps exactly the vertices that are forward-reachable from the source
    and backward-reachable from the target, recompacting indices while
    preserving their order.  Pairs losing a member are dropped and counted.
    When the target is unreachable the canonical two-vertex no-answer
    instance is returned with ``disconnected`` set.
    """
    forward = _reachable_from(instance.n, instance.succ, instance.source)
    if instance.target not in forward:
        empty = Instance(n=2, edges=(), pairs=(), source=0, target=1)
        return PruneResult(empty, {}, len(instance.pairs), True)
    backward = _reachable_from(instance.n, instance.pred, instance.target)
    keep = sorted(forward & backward)
    remap = {old: new for new, old in enumerate(keep)}
    edges = tuple(
        (remap[u], remap[v]) for u, v in instance.edges if u in remap and v in remap
    )
    kept_pairs = []
    dropped = 0
    for a, b in instance.pairs:
        if a in remap and b in remap:
            kept_pairs.append((remap[a], remap[b]))
        else:
            dropped += 1
    pruned = Instance(
        n=len(keep),
        edges=edges,
        pairs=tuple(kept_pairs),
        source=remap[instance.source],
        target=remap[instance.target],
    )
    return PruneResult(pruned, remap, dropped, False)
