"""Shared test helpers: independent oracles and raw instance generators.

Everything here is deliberately naive -- truth tables, exhaustive path
enumeration, triple-loop matrix products -- so the production code is
checked against implementations that share none of its logic.
"""

from __future__ import annotations

import random
from itertools import product

from pafp import Formula3Sat, Instance


def truth_table_satisfiable(formula: Formula3Sat) -> bool:
    """Enumerate all assignments; the reference for both gadget tests."""
    m = formula.num_vars
    for bits in product([False, True], repeat=m):
        ok = True
        for clause in formula.clauses:
            if not any(bits[var - 1] != neg for var, neg in clause):
                ok = False
                break
        if ok:
            return True
    return False


def enumerate_st_paths(instance: Instance, cap: int = 200_000):
    """Yield every s-t path as a tuple; raises RuntimeError past the cap."""
    count = 0
    stack = [(instance.source, [instance.source])]
    while stack:
        v, path = stack.pop()
        if v == instance.target:
            count += 1
            if count > cap:
                raise RuntimeError("path explosion")
            yield tuple(path)
            continue
        for w in instance.succ[v]:
            stack.append((w, path + [w]))


def min_violations_by_enumeration(instance: Instance, cap: int = 200_000) -> int | None:
    """Minimum contained-pair count over all s-t paths; None if no path."""
    best: int | None = None
    for path in enumerate_st_paths(instance, cap):
        on = set(path)
        cnt = sum(1 for a, b in instance.pairs if a in on and b in on)
        if best is None or cnt < best:
            best = cnt
            if best == 0:
                return 0
    return best


def safe_path_exists_by_enumeration(instance: Instance, cap: int = 200_000) -> bool:
    value = min_violations_by_enumeration(instance, cap)
    return value == 0


def naive_bool_matmul(x, y):
    """Triple-loop product over plain lists; the matrix kernel oracle."""
    rows, inner = len(x), len(x[0]) if x else 0
    cols = len(y[0]) if y else 0
    return [
        [any(x[i][k] and y[k][j] for k in range(inner)) for j in range(cols)]
        for i in range(rows)
    ]


def random_instance_with_sharing(
    rng: random.Random,
    n: int,
    max_pairs: int,
    density: float = 0.2,
    per_vertex_cap: int = 3,
    backbone: bool = True,
) -> Instance:
    """Random instance whose pairs may share endpoints (capped load)."""
    pairs: list[tuple[int, int]] = []
    load: dict[int, int] = {}
    want = rng.randint(0, max_pairs)
    attempts = 0
    while len(pairs) < want and attempts < 50 * max_pairs:
        attempts += 1
        a, b = rng.sample(range(n), 2)
        a, b = min(a, b), max(a, b)
        if load.get(a, 0) >= per_vertex_cap or load.get(b, 0) >= per_vertex_cap:
            continue
        if (a, b) in pairs:
            continue
        pairs.append((a, b))
        load[a] = load.get(a, 0) + 1
        load[b] = load.get(b, 0) + 1
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < density]
    if backbone:
        chain = [0] + [v for v in range(1, n - 1) if rng.random() < 0.5] + [n - 1]
        edges.extend(zip(chain, chain[1:]))
    return Instance(n=n, edges=edges, pairs=pairs)


def halving_normal_form(rng: random.Random, k: int, crossing_density: float = 0.3) -> Instance:
    """Halving instance in layer form: s, the k left members, the k right
    members, t.  Crossing edges run member-to-member only and both member
    chains plus one crossing keep every pair alive under pruning, so the
    solver must run the per-pair reduction rather than a trivial shortcut."""
    n = 2 * k + 2
    s, t = 0, n - 1
    xs = list(range(1, k + 1))
    ys = list(range(k + 1, 2 * k + 1))
    edges = {(s, xs[0]), (ys[-1], t), (xs[-1], ys[0])}
    for part in (xs, ys):
        edges.update(zip(part, part[1:]))
        for i, u in enumerate(part):
            for v in part[i + 2 :]:
                if rng.random() < 0.3:
                    edges.add((u, v))
    for x in xs:
        for y in ys:
            if rng.random() < crossing_density:
                edges.add((x, y))
    pairs = [(xs[i], ys[i]) for i in range(k)]
    return Instance(n=n, edges=tuple(edges), pairs=tuple(pairs), source=s, target=t)


def all_strict_3cnf_formulas(max_vars: int, max_clauses: int):
    """Every formula with ordered literal triples over the given bounds."""
    for m in range(1, max_vars + 1):
        literals = [(var, neg) for var in range(1, m + 1) for neg in (False, True)]
        clause_space = list(product(literals, repeat=3))
        for nc in range(1, max_clauses + 1):
            for clauses in product(clause_space, repeat=nc):
                yield Formula3Sat(num_vars=m, clauses=tuple(clauses))


def random_formula(rng: random.Random, max_vars: int, max_clauses: int) -> Formula3Sat:
    m = rng.randint(1, max_vars)
    nc = rng.randint(1, max_clauses)
    clauses = tuple(
        tuple((rng.randint(1, m), rng.random() < 0.5) for _ in range(3)) for _ in range(nc)
    )
    return Formula3Sat(num_vars=m, clauses=clauses)
