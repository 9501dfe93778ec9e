"""Tseitin transformation and DIMACS I/O.

Each circuit node gets one CNF variable (inputs first, then gates in
order, so node ref r maps to DIMACS variable r+1).  Per-operation clause
schemas are derived from the op's packed truth table as a minimal
prime-implicate cover, which yields the standard encodings: 1 clause for
constants, 2 for unary gates, 3 for AND-type and 4 for XOR-type gates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .circuit import Circuit
from .ops import GateOp


@dataclass
class Cnf:
    n_vars: int
    clauses: list[tuple[int, ...]]
    varmap: dict[int, int] = field(default_factory=dict)

    def add(self, *lits: int) -> None:
        self.clauses.append(tuple(lits))

    def new_var(self) -> int:
        self.n_vars += 1
        return self.n_vars

    def validate(self) -> None:
        for cl in self.clauses:
            for lit in cl:
                if lit == 0 or abs(lit) > self.n_vars:
                    raise ValueError(f"literal {lit} out of range in clause {cl}")


def _minimal_cover(n_slots: int, satisfying: list[tuple[int, ...]]) -> list[tuple[tuple[int, int], ...]]:
    """Smallest CNF (as greedy prime-implicate cover) over n_slots variables.

    Clauses are tuples of (slot, polarity) literals; polarity 1 means the
    positive literal.  The result is satisfied exactly by `satisfying`.
    """
    all_points = list(itertools.product((0, 1), repeat=n_slots))
    falsifying = [p for p in all_points if p not in satisfying]

    def violates(clause, point) -> bool:
        return all(point[s] != pol for s, pol in clause)

    implied = []
    for lits in itertools.product((None, 0, 1), repeat=n_slots):
        clause = tuple((s, pol) for s, pol in enumerate(lits) if pol is not None)
        if clause and not any(violates(clause, p) for p in satisfying):
            implied.append(clause)
    primes = [
        c for c in implied
        if not any(len(d) < len(c) and set(d) <= set(c) for d in implied)
    ]
    primes.sort(key=lambda c: (len(c), c))

    chosen: list = []
    uncovered = set(falsifying)
    while uncovered:
        best = max(primes, key=lambda c: sum(violates(c, p) for p in uncovered))
        chosen.append(best)
        uncovered -= {p for p in uncovered if violates(best, p)}
    return sorted(chosen, key=lambda c: (len(c), c))


def _op_schema(op: GateOp) -> list[tuple[tuple[int, int], ...]]:
    """Clause schema for g <-> op(args); slot order (args..., gate)."""
    k = op.arity
    satisfying = []
    for point in itertools.product((0, 1), repeat=k + 1):
        if point[k] == op.apply(*point[:k]):
            satisfying.append(point)
    return _minimal_cover(k + 1, satisfying)


CLAUSE_SCHEMAS: dict[GateOp, list[tuple[tuple[int, int], ...]]] = {
    op: _op_schema(op) for op in GateOp
}


def tseitin(circuit: Circuit) -> Cnf:
    """Gate-definition clauses; one variable per input and per gate."""
    varmap = {ref: ref + 1 for ref in range(circuit.n_nodes)}
    cnf = Cnf(circuit.n_nodes, [], varmap)
    for k, g in enumerate(circuit.gates):
        slots = [varmap[a] for a in g.args] + [varmap[circuit.n_inputs + k]]
        for clause in CLAUSE_SCHEMAS[g.op]:
            cnf.add(*(slots[s] if pol else -slots[s] for s, pol in clause))
    return cnf


def format_dimacs(cnf: Cnf, comments: tuple[str, ...] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {cnf.n_vars} {len(cnf.clauses)}")
    lines += [" ".join(map(str, cl)) + " 0" for cl in cnf.clauses]
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> Cnf:
    n_vars = None
    clauses: list[tuple[int, ...]] = []
    pending: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"malformed problem line: {raw!r}")
            n_vars = int(parts[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(tuple(pending))
                pending.clear()
            else:
                pending.append(lit)
    if pending:
        clauses.append(tuple(pending))
    if n_vars is None:
        raise ValueError("missing 'p cnf' header")
    cnf = Cnf(n_vars, clauses)
    cnf.validate()
    return cnf
