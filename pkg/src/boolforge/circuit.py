"""The circuit data model.

A circuit is an acyclic graph of gates of in-degree at most two over an
ordered list of inputs.  Node references are dense integers: refs
0..n_inputs-1 are the inputs, ref n_inputs+k is the k-th gate in insertion
order, so operands always precede their gate.  Circuit size counts binary
gates only; unary gates and constants are free.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .ops import Basis, GateOp
from .truthtable import TABLE_INPUT_CAP, TruthTable, check_input_cap, input_column


class CircuitError(Exception):
    """Structural problem with a circuit or an operation on it."""


@dataclass(frozen=True)
class Gate:
    op: GateOp
    args: tuple[int, ...]


class Circuit:
    """Mutable circuit; share freely once you stop mutating it."""

    __slots__ = ("input_labels", "gates", "outputs", "labels", "blocks")

    def __init__(self, inputs: int | Sequence[str] = 0):
        if isinstance(inputs, int):
            inputs = [f"x{i + 1}" for i in range(inputs)]
        self.input_labels: list[str] = list(inputs)
        if len(set(self.input_labels)) != len(self.input_labels):
            raise CircuitError("duplicate input labels")
        self.gates: list[Gate] = []
        self.outputs: list[int] = []
        self.labels: dict[int, str] = {}
        self.blocks: dict[str, tuple[int, ...]] = {}

    @property
    def n_inputs(self) -> int:
        return len(self.input_labels)

    @property
    def n_outputs(self) -> int:
        return len(self.outputs)

    @property
    def n_nodes(self) -> int:
        return self.n_inputs + len(self.gates)

    @property
    def size(self) -> int:
        """Number of internal binary gates (unary gates are free)."""
        return sum(1 for g in self.gates if g.op.arity == 2)

    def is_input(self, ref: int) -> bool:
        return 0 <= ref < self.n_inputs

    def gate_at(self, ref: int) -> Gate:
        return self.gates[ref - self.n_inputs]

    def op_at(self, ref: int) -> GateOp | None:
        return None if self.is_input(ref) else self.gate_at(ref).op

    def add_gate(self, op: GateOp, *args: int, label: str | None = None) -> int:
        if len(args) != op.arity:
            raise CircuitError(f"{op.name} takes {op.arity} operands, got {len(args)}")
        for a in args:
            if not 0 <= a < self.n_nodes:
                raise CircuitError(f"unknown operand ref {a}")
        ref = self.n_nodes
        self.gates.append(Gate(op, args))
        if label is not None:
            self.labels[ref] = label
        return ref

    def set_outputs(self, refs: Iterable[int]) -> None:
        refs = list(refs)
        for r in refs:
            if not 0 <= r < self.n_nodes:
                raise CircuitError(f"output references unknown node {r}")
        self.outputs = refs

    def add_output(self, ref: int) -> None:
        if not 0 <= ref < self.n_nodes:
            raise CircuitError(f"output references unknown node {ref}")
        self.outputs.append(ref)

    def connect_block(
        self,
        block: "Circuit",
        bindings: Mapping[str | int, int] | Sequence[int],
        name: str | None = None,
    ) -> list[int]:
        """Copy `block` into this circuit, wiring its inputs to existing nodes.

        `bindings` maps every block input (by label or index) to a host ref;
        a plain sequence binds inputs positionally.  Returns host refs of the
        block's outputs and records the copied gates under `name`.
        """
        if not isinstance(bindings, Mapping):
            bindings = dict(enumerate(bindings))
        bound: dict[int, int] = {}
        for key, ref in bindings.items():
            idx = block.input_labels.index(key) if isinstance(key, str) else key
            if not 0 <= idx < block.n_inputs:
                raise CircuitError(f"block has no input {key!r}")
            bound[idx] = ref
        missing = [block.input_labels[i] for i in range(block.n_inputs) if i not in bound]
        if missing:
            raise CircuitError(f"unbound block inputs: {', '.join(missing)}")
        if name is not None and name in self.blocks:
            raise CircuitError(f"block name {name!r} already used")

        remap: dict[int, int] = dict(bound)
        new_refs = []
        for k, g in enumerate(block.gates):
            ref = self.add_gate(g.op, *(remap[a] for a in g.args))
            remap[block.n_inputs + k] = ref
            new_refs.append(ref)
        if name is not None:
            self.blocks[name] = tuple(new_refs)
        return [remap[r] for r in block.outputs]

    def evaluate(self, assignment: Sequence[int]) -> tuple[int, ...]:
        """Outputs on one input assignment, in declared output order."""
        if len(assignment) != self.n_inputs:
            raise CircuitError(
                f"assignment has {len(assignment)} bits, circuit has {self.n_inputs} inputs"
            )
        values = [b & 1 for b in assignment]
        for g in self.gates:
            values.append(g.op.apply(*(values[a] for a in g.args)))
        return tuple(values[r] for r in self.outputs)

    def node_columns(self, input_cols: Sequence[int], mask: int) -> list[int]:
        """Bit-parallel simulation: packed value column for every node."""
        values = list(input_cols)
        for g in self.gates:
            values.append(g.op.apply_columns(tuple(values[a] for a in g.args), mask))
        return values

    def output_columns(self, cap: int = TABLE_INPUT_CAP) -> list[int]:
        check_input_cap(self.n_inputs, cap)
        n = self.n_inputs
        mask = (1 << (1 << n)) - 1
        cols = self.node_columns([input_column(i, n) for i in range(n)], mask)
        return [cols[r] for r in self.outputs]

    def truth_table(self, cap: int = TABLE_INPUT_CAP) -> TruthTable:
        if not self.outputs:
            raise CircuitError("circuit has no outputs")
        return TruthTable(self.n_inputs, self.n_outputs, tuple(self.output_columns(cap)))

    def validate_basis(self, basis: Basis) -> list[int]:
        """Refs of gates whose operation falls outside the basis (empty = ok)."""
        return [
            self.n_inputs + k
            for k, g in enumerate(self.gates)
            if not basis.allows(g.op)
        ]

    def fanout_counts(self) -> list[int]:
        counts = [0] * self.n_nodes
        for g in self.gates:
            for a in g.args:
                counts[a] += 1
        return counts

    def name_of(self, ref: int) -> str:
        if self.is_input(ref):
            return self.input_labels[ref]
        return self.labels.get(ref, f"g{ref}")

    def copy(self) -> "Circuit":
        c = Circuit(self.input_labels)
        c.gates = list(self.gates)
        c.outputs = list(self.outputs)
        c.labels = dict(self.labels)
        c.blocks = dict(self.blocks)
        return c

    def __repr__(self) -> str:
        return (
            f"<Circuit {self.n_inputs} inputs, {len(self.gates)} gates "
            f"(size {self.size}), {self.n_outputs} outputs>"
        )
