"""Gate operations and gate bases.

Every gate computes a nullary, unary, or binary Boolean function.  Binary
operations are identified with their 4-row truth table, packed into an
integer where bit ``(a << 1) | b`` holds the value on operands ``(a, b)``.
The mapping between the 16 binary kinds and 4-bit tables is a bijection.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class GateOp(enum.Enum):
    # (arity, packed truth table)
    CONST0 = (0, 0b0)
    CONST1 = (0, 0b1)

    IDEN = (1, 0b10)
    NOT = (1, 0b01)

    # Binary table bit q = f(a, b) with q = (a << 1) | b.
    ZERO2 = (2, 0b0000)
    AND = (2, 0b1000)
    GT = (2, 0b0100)  # a AND NOT b
    FIRST = (2, 0b1100)  # projection on the first operand
    LT = (2, 0b0010)  # NOT a AND b
    SECOND = (2, 0b1010)  # projection on the second operand
    XOR = (2, 0b0110)
    OR = (2, 0b1110)
    NOR = (2, 0b0001)
    XNOR = (2, 0b1001)
    NSECOND = (2, 0b0101)
    GEQ = (2, 0b1011)  # a OR NOT b
    NFIRST = (2, 0b0011)
    LEQ = (2, 0b1101)  # NOT a OR b
    NAND = (2, 0b0111)
    ONE2 = (2, 0b1111)

    @property
    def arity(self) -> int:
        return self.value[0]

    @property
    def table(self) -> int:
        """Packed truth table: bit q = output on operand row q."""
        return self.value[1]

    def apply(self, *args: int) -> int:
        """Evaluate the operation on 0/1 operands."""
        if len(args) != self.arity:
            raise ValueError(f"{self.name} takes {self.arity} operands, got {len(args)}")
        row = 0
        for bit in args:
            row = (row << 1) | (bit & 1)
        return (self.table >> row) & 1

    def apply_columns(self, args: tuple[int, ...], mask: int) -> int:
        """Evaluate bit-parallel over packed columns (one bit per row)."""
        if self is GateOp.CONST0:
            return 0
        if self is GateOp.CONST1:
            return mask
        if self is GateOp.IDEN:
            return args[0]
        if self is GateOp.NOT:
            return mask & ~args[0]
        a, b = args
        t = self.table
        if t == 0b1000:
            return a & b
        if t == 0b1110:
            return a | b
        if t == 0b0110:
            return a ^ b
        r = 0
        if t & 0b0001:
            r |= ~a & ~b
        if t & 0b0010:
            r |= ~a & b
        if t & 0b0100:
            r |= a & ~b
        if t & 0b1000:
            r |= a & b
        return r & mask


BINARY_OPS: tuple[GateOp, ...] = tuple(op for op in GateOp if op.arity == 2)

BINARY_BY_TABLE: dict[int, GateOp] = {op.table: op for op in BINARY_OPS}

#: Binary kinds realizable as a single AND with negations on inputs/output.
AND_TYPE_OPS: frozenset[GateOp] = frozenset(
    op for op in BINARY_OPS if bin(op.table).count("1") in (1, 3)
)

XOR_TYPE_OPS: frozenset[GateOp] = frozenset({GateOp.XOR, GateOp.XNOR})


def swapped_table(table: int) -> int:
    """Truth table of the same op with its two operands exchanged."""
    return (table & 0b1001) | ((table & 0b0100) >> 1) | ((table & 0b0010) << 1)


def table_with_negations(table: int, neg_a: bool, neg_b: bool, neg_out: bool) -> int:
    """Truth table after negating selected operands and/or the output."""
    t = 0
    for row in range(4):
        a, b = (row >> 1) & 1, row & 1
        v = (table >> (((a ^ neg_a) << 1) | (b ^ neg_b))) & 1
        t |= (v ^ neg_out) << row
    return t


@dataclass(frozen=True)
class Basis:
    """The set of binary gate operations a circuit may use.

    Unary gates and constants are always admitted; only binary
    operations are restricted.
    """

    name: str
    binary_ops: frozenset[GateOp]

    def allows(self, op: GateOp) -> bool:
        return op.arity != 2 or op in self.binary_ops

    def __str__(self) -> str:
        return self.name


XAIG = Basis("XAIG", frozenset(BINARY_OPS))
AIG = Basis("AIG", AND_TYPE_OPS)

_BASES = {"xaig": XAIG, "aig": AIG}


def basis_by_name(name: str) -> Basis:
    try:
        return _BASES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown basis {name!r} (expected one of: xaig, aig)") from None
