"""Circuit satisfiability, miters, and equivalence checking."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .circuit import Circuit, CircuitError
from .cnf import tseitin
from .ops import GateOp
from .solvers import SAT, UNKNOWN, UNSAT, Solver, default_solver


@dataclass
class SatResult:
    status: str  # SAT | UNSAT | UNKNOWN
    assignment: tuple[int, ...] | None = None

    @property
    def is_sat(self) -> bool:
        return self.status == SAT


def _normalize_constraint(circuit: Circuit, constraint) -> list[str]:
    if constraint is None:
        return ["1"] * circuit.n_outputs
    bits = [str(b) for b in constraint]
    if len(bits) != circuit.n_outputs:
        raise CircuitError(
            f"constraint has {len(bits)} bits, circuit has {circuit.n_outputs} outputs"
        )
    if not set(bits) <= {"0", "1", "*"}:
        raise CircuitError("constraint entries must be 0, 1 or *")
    return bits


def is_satisfiable(
    circuit: Circuit,
    output_constraint=None,
    solver: Solver | None = None,
    timeout: float | None = None,
) -> SatResult:
    """Is there an input making the outputs match the constraint?

    The default constraint is all ones ("evaluates to 1").  A SAT answer
    is decoded to an input assignment and re-verified by evaluation; the
    solver is never trusted on the positive side.
    """
    if not circuit.outputs:
        raise CircuitError("circuit has no outputs")
    bits = _normalize_constraint(circuit, output_constraint)
    solver = solver or default_solver()
    cnf = tseitin(circuit)
    assumptions = []
    for ref, want in zip(circuit.outputs, bits):
        if want == "*":
            continue
        var = cnf.varmap[ref]
        assumptions.append(var if want == "1" else -var)
    verdict = solver.solve(cnf.n_vars, cnf.clauses, assumptions, timeout)
    if verdict.status != SAT:
        return SatResult(verdict.status)
    model = verdict.model
    assignment = tuple(int(model[cnf.varmap[i]]) for i in range(circuit.n_inputs))
    got = circuit.evaluate(assignment)
    for out_bit, want in zip(got, bits):
        if want != "*" and str(out_bit) != want:
            raise RuntimeError("solver model failed re-verification by evaluation")
    return SatResult(SAT, assignment)


def build_miter(c1: Circuit, c2: Circuit) -> Circuit:
    """Single-output circuit satisfiable exactly where c1 and c2 differ."""
    if c1.n_inputs != c2.n_inputs:
        raise CircuitError("miter operands have different input counts")
    if c1.n_outputs != c2.n_outputs:
        raise CircuitError("miter operands have different output counts")
    miter = Circuit(c1.input_labels)
    shared = list(range(miter.n_inputs))
    left = miter.connect_block(c1, shared, name="left")
    right = miter.connect_block(c2, shared, name="right")
    first_cmp = miter.n_nodes
    diffs = [miter.add_gate(GateOp.XOR, a, b) for a, b in zip(left, right)]
    # balanced OR tree over the per-output differences
    layer = diffs
    while len(layer) > 1:
        nxt = [
            miter.add_gate(GateOp.OR, layer[i], layer[i + 1])
            for i in range(0, len(layer) - 1, 2)
        ]
        if len(layer) % 2:
            nxt.append(layer[-1])
        layer = nxt
    miter.blocks["compare"] = tuple(range(first_cmp, miter.n_nodes))
    miter.set_outputs(layer)
    return miter


@dataclass
class EquivalenceResult:
    status: str  # "equivalent" | "different" | "unknown"
    counterexample: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.status == "equivalent"


def check_equivalence(
    c1: Circuit,
    c2: Circuit,
    solver: Solver | None = None,
    timeout: float | None = None,
) -> EquivalenceResult:
    """Equivalent iff the miter is unsatisfiable; counterexamples re-verified."""
    miter = build_miter(c1, c2)
    res = is_satisfiable(miter, solver=solver, timeout=timeout)
    if res.status == UNSAT:
        return EquivalenceResult("equivalent")
    if res.status == UNKNOWN:
        return EquivalenceResult("unknown")
    cex = res.assignment
    if c1.evaluate(cex) == c2.evaluate(cex):
        raise RuntimeError("miter counterexample failed re-verification")
    return EquivalenceResult("different", cex)


def brute_force_satisfiable(circuit: Circuit, output_constraint=None) -> SatResult:
    """Exhaustive reference check; independent of the CNF path."""
    bits = _normalize_constraint(circuit, output_constraint)
    cols = circuit.output_columns()
    rows = 1 << circuit.n_inputs
    good = (1 << rows) - 1
    for col, want in zip(cols, bits):
        if want == "1":
            good &= col
        elif want == "0":
            good &= ~col
    good &= (1 << rows) - 1
    if good == 0:
        return SatResult(UNSAT)
    t = (good & -good).bit_length() - 1
    return SatResult(SAT, tuple((t >> i) & 1 for i in range(circuit.n_inputs)))
