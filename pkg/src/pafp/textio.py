"""Line-oriented instance format and strict 3-CNF DIMACS ingestion.

Instance grammar (one directive per line, ``#`` starts a comment)::

    pafp 1
    nodes N
    source S
    target T
    edge U V        # U < V, repeated
    pair A B        # A < B, repeated

Serialisation emits the header, the three scalars, then edges and pairs
each in ascending lexicographic order, so parse(serialize(i)) == i.
"""

from __future__ import annotations

from .core import Formula3Sat, Instance
from .errors import DimacsError, InstanceSemanticError, InstanceSyntaxError

__all__ = ["parse_instance", "serialize_instance", "parse_dimacs"]

_HEADER = "pafp 1"


def _significant_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_instance(text: str) -> Instance:
    """Parse the text format; the first defect is reported with its line."""
    lines = list(_significant_lines(text))
    if not lines or lines[0][1] != _HEADER:
        raise InstanceSyntaxError(f"expected header '{_HEADER}'", lines[0][0] if lines else 1)
    scalars: dict[str, tuple[int, int]] = {}  # keyword -> (value, line)
    edges: list[tuple[int, int, int]] = []  # (u, v, line)
    pairs: list[tuple[int, int, int]] = []

    for lineno, line in lines[1:]:
        parts = line.split()
        keyword = parts[0]
        if keyword in ("nodes", "source", "target"):
            if len(parts) != 2:
                raise InstanceSyntaxError(f"'{keyword}' takes one integer", lineno)
            try:
                value = int(parts[1])
            except ValueError:
                raise InstanceSyntaxError(f"bad integer '{parts[1]}'", lineno) from None
            if keyword in scalars:
                raise InstanceSemanticError(f"duplicate '{keyword}'", lineno)
            scalars[keyword] = (value, lineno)
        elif keyword in ("edge", "pair"):
            if len(parts) != 3:
                raise InstanceSyntaxError(f"'{keyword}' takes two integers", lineno)
            try:
                a, b = int(parts[1]), int(parts[2])
            except ValueError:
                raise InstanceSyntaxError(f"bad integer in '{line}'", lineno) from None
            (edges if keyword == "edge" else pairs).append((a, b, lineno))
        else:
            raise InstanceSyntaxError(f"unknown directive '{keyword}'", lineno)

    for keyword in ("nodes", "source", "target"):
        if keyword not in scalars:
            raise InstanceSemanticError(f"missing '{keyword}'")
    n, _ = scalars["nodes"]
    source, sline = scalars["source"]
    target, tline = scalars["target"]
    if n < 2:
        raise InstanceSemanticError(f"nodes must be at least 2, got {n}", scalars["nodes"][1])
    if not 0 <= source < n:
        raise InstanceSemanticError(f"source {source} out of range", sline)
    if not 0 <= target < n:
        raise InstanceSemanticError(f"target {target} out of range", tline)
    if source >= target:
        raise InstanceSemanticError(f"source {source} not before target {target}", tline)
    for u, v, lineno in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise InstanceSemanticError(f"edge ({u},{v}) out of range", lineno)
        if u >= v:
            raise InstanceSemanticError(f"edge not forward: ({u},{v})", lineno)
    for a, b, lineno in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise InstanceSemanticError(f"pair ({a},{b}) out of range", lineno)
        if a >= b:
            raise InstanceSemanticError(f"pair not ascending: ({a},{b})", lineno)
    return Instance(
        n=n,
        edges=tuple((u, v) for u, v, _ in edges),
        pairs=tuple((a, b) for a, b, _ in pairs),
        source=source,
        target=target,
    )


def serialize_instance(instance: Instance) -> str:
    out = [
        _HEADER,
        f"nodes {instance.n}",
        f"source {instance.source}",
        f"target {instance.target}",
    ]
    out += [f"edge {u} {v}" for u, v in sorted(instance.edges)]
    out += [f"pair {a} {b}" for a, b in sorted(instance.pairs)]
    return "\n".join(out) + "\n"


def parse_dimacs(text: str) -> Formula3Sat:
    """Strict 3-CNF DIMACS reader: every clause must have exactly 3 literals."""
    num_vars: int | None = None
    declared_clauses: int | None = None
    clauses: list[tuple] = []
    current: list[tuple[int, bool]] = []
    clause_line = 1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"bad problem line '{line}'", lineno)
            try:
                num_vars, declared_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"bad problem line '{line}'", lineno) from None
            continue
        if num_vars is None:
            raise DimacsError("clause before problem line", lineno)
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise DimacsError(f"bad literal '{token}'", lineno) from None
            if lit == 0:
                if len(current) != 3:
                    raise DimacsError(
                        f"clause {len(clauses) + 1} has {len(current)} literals, strict 3-CNF required",
                        clause_line,
                    )
                clauses.append(tuple(current))
                current = []
                clause_line = lineno
                continue
            var = abs(lit)
            if not 1 <= var <= num_vars:
                raise DimacsError(f"variable {var} out of range 1..{num_vars}", lineno)
            if not current:
                clause_line = lineno
            current.append((var, lit < 0))
    if current:
        raise DimacsError(f"unterminated clause with {len(current)} literals", clause_line)
    if num_vars is None:
        raise DimacsError("missing problem line")
    if declared_clauses is not None and declared_clauses != len(clauses):
        raise DimacsError(f"declared {declared_clauses} clauses, found {len(clauses)}")
    return Formula3Sat(num_vars=num_vars, clauses=tuple(clauses))
