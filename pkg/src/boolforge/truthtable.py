"""Boolean functions as first-class objects.

A function with n inputs and m outputs is stored as m packed columns of
2**n bits.  Row t of the table is the assignment bin(t) where input x1
occupies the least significant position, i.e. x_i = (t >> (i-1)) & 1.
Partially defined functions additionally carry per-output care masks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

#: Enumeration over all 2**n assignments is refused above this input count.
TABLE_INPUT_CAP = 24


def int_to_bits(q: int, width: int) -> tuple[int, ...]:
    """Binary representation of q, least significant bit first, zero padded."""
    if q < 0 or q >= 1 << width:
        raise ValueError(f"{q} does not fit in {width} bits")
    return tuple((q >> i) & 1 for i in range(width))


def bits_to_int(bits) -> int:
    """Integer value of a bit string, index 0 least significant."""
    return sum(b << i for i, b in enumerate(bits))


def check_input_cap(n: int, cap: int = TABLE_INPUT_CAP) -> None:
    if n > cap:
        raise ValueError(f"{n} inputs exceed the enumeration cap of {cap}")


def input_column(i: int, n: int) -> int:
    """Packed column of input x_{i+1} over all 2**n rows."""
    period = 1 << (i + 1)
    block = ((1 << (1 << i)) - 1) << (1 << i)
    reps = (1 << n) // period
    return block * (((1 << (reps * period)) - 1) // ((1 << period) - 1))


@dataclass(frozen=True)
class TruthTable:
    """Total Boolean function with n inputs and m outputs."""

    n: int
    m: int
    cols: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or self.m < 1:
            raise ValueError("need n >= 0 and m >= 1")
        if len(self.cols) != self.m:
            raise ValueError("column count does not match m")
        mask = self.row_mask
        for c in self.cols:
            if c < 0 or c & ~mask:
                raise ValueError("column has bits outside the 2**n rows")

    @property
    def rows(self) -> int:
        return 1 << self.n

    @property
    def row_mask(self) -> int:
        return (1 << self.rows) - 1

    def row(self, t: int) -> tuple[int, ...]:
        return tuple((c >> t) & 1 for c in self.cols)

    def __call__(self, bits) -> tuple[int, ...]:
        return self.row(bits_to_int(bits))

    def column_str(self, j: int) -> str:
        """Column as a 0/1 string, row 0 first."""
        return "".join(str((self.cols[j] >> t) & 1) for t in range(self.rows))

    def column_hex(self, j: int) -> str:
        """Column as hex; row 0 is the least significant bit."""
        width = max(1, self.rows // 4)
        return f"{self.cols[j]:0{width}x}"

    def to_partial(self) -> "PartialTruthTable":
        mask = self.row_mask
        return PartialTruthTable(self.n, self.m, self.cols, (mask,) * self.m)


@dataclass(frozen=True)
class PartialTruthTable:
    """Partially defined function; rows outside a column's care mask are *."""

    n: int
    m: int
    cols: tuple[int, ...]
    cares: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or self.m < 1:
            raise ValueError("need n >= 0 and m >= 1")
        if len(self.cols) != self.m or len(self.cares) != self.m:
            raise ValueError("column count does not match m")
        mask = (1 << (1 << self.n)) - 1
        for c, d in zip(self.cols, self.cares):
            if c & ~mask or d & ~mask:
                raise ValueError("column has bits outside the 2**n rows")
            if c & ~d:
                raise ValueError("defined value bit outside the care mask")

    @property
    def rows(self) -> int:
        return 1 << self.n

    def entry(self, j: int, t: int) -> str:
        if not (self.cares[j] >> t) & 1:
            return "*"
        return str((self.cols[j] >> t) & 1)

    def column_str(self, j: int) -> str:
        return "".join(self.entry(j, t) for t in range(self.rows))

    @property
    def is_total(self) -> bool:
        mask = (1 << self.rows) - 1
        return all(d == mask for d in self.cares)

    def matches(self, other: TruthTable) -> bool:
        """True if `other` agrees with every defined entry."""
        if (other.n, other.m) != (self.n, self.m):
            return False
        return all(
            (oc ^ c) & d == 0 for oc, c, d in zip(other.cols, self.cols, self.cares)
        )

    def completions(self):
        """Yield every total table consistent with this one (use only when tiny)."""
        free = [(j, t) for j in range(self.m) for t in range(self.rows)
                if not (self.cares[j] >> t) & 1]
        for choice in range(1 << len(free)):
            cols = list(self.cols)
            for k, (j, t) in enumerate(free):
                if (choice >> k) & 1:
                    cols[j] |= 1 << t
            yield TruthTable(self.n, self.m, tuple(cols))


def as_partial(target) -> PartialTruthTable:
    if isinstance(target, PartialTruthTable):
        return target
    if isinstance(target, TruthTable):
        return target.to_partial()
    raise TypeError(f"expected a truth table, got {type(target).__name__}")


def from_predicate(n: int, m: int, fn, cap: int = TABLE_INPUT_CAP) -> TruthTable:
    """Tabulate a callable row evaluator: row t = fn(bin(t, n))."""
    check_input_cap(n, cap)
    cols = [0] * m
    for t in range(1 << n):
        out = fn(int_to_bits(t, n))
        if isinstance(out, (int, bool)):
            out = (int(out),)
        if len(out) != m:
            raise ValueError(f"row evaluator returned {len(out)} outputs, expected {m}")
        for j, bit in enumerate(out):
            if bit:
                cols[j] |= 1 << t
    return TruthTable(n, m, tuple(cols))


def from_strings(columns) -> TruthTable | PartialTruthTable:
    """Build a table from 0/1/* strings, row 0 first; * makes it partial."""
    rows = len(columns[0])
    n = rows.bit_length() - 1
    if 1 << n != rows:
        raise ValueError("column length must be a power of two")
    cols, cares = [], []
    partial = False
    for s in columns:
        if len(s) != rows:
            raise ValueError("columns have different lengths")
        col = care = 0
        for t, ch in enumerate(s):
            if ch == "1":
                col |= 1 << t
                care |= 1 << t
            elif ch == "0":
                care |= 1 << t
            elif ch == "*":
                partial = True
            else:
                raise ValueError(f"bad table character {ch!r}")
        cols.append(col)
        cares.append(care)
    if partial:
        return PartialTruthTable(n, len(columns), tuple(cols), tuple(cares))
    return TruthTable(n, len(columns), tuple(cols))


def parse_column(text: str, n: int) -> int:
    """Parse one output column given as hex or as a 0/1 string (row 0 first)."""
    text = text.strip().lower().removeprefix("0x")
    rows = 1 << n
    if len(text) == rows and set(text) <= {"0", "1"}:
        return sum(1 << t for t, ch in enumerate(text) if ch == "1")
    value = int(text, 16)
    if value >= 1 << rows:
        raise ValueError(f"column {text!r} has more than 2**{n} rows")
    return value


def is_symmetric(tt: TruthTable, cap: int = TABLE_INPUT_CAP):
    """Check invariance under input permutation.

    Returns (False, None) or (True, profiles) where profiles[j][s] is
    output j's value on any assignment with s ones.
    """
    check_input_cap(tt.n, cap)
    profiles = [[None] * (tt.n + 1) for _ in range(tt.m)]
    for t in range(tt.rows):
        s = bin(t).count("1")
        for j in range(tt.m):
            v = (tt.cols[j] >> t) & 1
            if profiles[j][s] is None:
                profiles[j][s] = v
            elif profiles[j][s] != v:
                return False, None
    return True, [list(map(int, p)) for p in profiles]


def from_profile(n: int, profiles) -> TruthTable:
    """Table of the symmetric function with the given popcount profiles."""
    cols = [0] * len(profiles)
    for t in range(1 << n):
        s = bin(t).count("1")
        for j, p in enumerate(profiles):
            if p[s]:
                cols[j] |= 1 << t
    return TruthTable(n, len(profiles), tuple(cols))


def is_monotone(tt: TruthTable, cap: int = TABLE_INPUT_CAP) -> bool:
    """True iff no single-bit 0->1 input flip ever drops any output 1->0."""
    check_input_cap(tt.n, cap)
    for t in range(tt.rows):
        for i in range(tt.n):
            if (t >> i) & 1:
                continue
            u = t | (1 << i)
            for c in tt.cols:
                if (c >> t) & 1 and not (c >> u) & 1:
                    return False
    return True


def _sum_outputs(n: int) -> int:
    return max(1, math.ceil(math.log2(n + 1)))


def maj_table(n: int, cap: int = TABLE_INPUT_CAP) -> TruthTable:
    check_input_cap(n, cap)
    return from_predicate(n, 1, lambda x: int(sum(x) > n / 2), cap)


def sum_table(n: int, cap: int = TABLE_INPUT_CAP) -> TruthTable:
    check_input_cap(n, cap)
    m = _sum_outputs(n)
    return from_predicate(n, m, lambda x: int_to_bits(sum(x), m), cap)


def sort_table(n: int, cap: int = TABLE_INPUT_CAP) -> TruthTable:
    check_input_cap(n, cap)
    # Ascending: output j (0-based) is [sum(x) >= n - j].
    return from_predicate(n, n, lambda x: tuple(int(sum(x) >= n - j) for j in range(n)), cap)


def mult_table(n: int, cap: int = TABLE_INPUT_CAP) -> TruthTable:
    check_input_cap(2 * n, cap)

    def fn(bits):
        x = bits_to_int(bits[:n])
        y = bits_to_int(bits[n:])
        return int_to_bits(x * y, 2 * n)

    return from_predicate(2 * n, 2 * n, fn, cap)


def square_table(n: int, cap: int = TABLE_INPUT_CAP) -> TruthTable:
    check_input_cap(n, cap)
    return from_predicate(n, 2 * n, lambda b: int_to_bits(bits_to_int(b) ** 2, 2 * n), cap)


def sqrt_table(n: int, cap: int = TABLE_INPUT_CAP) -> TruthTable:
    if n % 2:
        raise ValueError("square-root tables are defined for even input widths only")
    check_input_cap(n, cap)
    return from_predicate(n, n // 2, lambda b: int_to_bits(math.isqrt(bits_to_int(b)), n // 2), cap)


def _div_mod_table(n: int, op, cap: int) -> PartialTruthTable:
    check_input_cap(2 * n, cap)
    cols = [0] * n
    cares = [0] * n
    for t in range(1 << (2 * n)):
        x = t & ((1 << n) - 1)
        y = t >> n
        if y == 0:
            continue  # unconstrained: the dividend convention assumes y > 0
        for j, bit in enumerate(int_to_bits(op(x, y), n)):
            cares[j] |= 1 << t
            if bit:
                cols[j] |= 1 << t
    return PartialTruthTable(2 * n, n, tuple(cols), tuple(cares))


def div_table(n: int, cap: int = TABLE_INPUT_CAP) -> PartialTruthTable:
    return _div_mod_table(n, lambda x, y: x // y, cap)


def mod_table(n: int, cap: int = TABLE_INPUT_CAP) -> PartialTruthTable:
    return _div_mod_table(n, lambda x, y: x % y, cap)


_NAMED = {
    "MAJ": maj_table,
    "SUM": sum_table,
    "SORT": sort_table,
    "MULT": mult_table,
    "SQR": square_table,
    "SQRT": sqrt_table,
    "DIV": div_table,
    "MOD": mod_table,
}


def named_function(name: str, n: int, cap: int = TABLE_INPUT_CAP):
    """Reference table for a named function family; DIV/MOD come back partial."""
    try:
        builder = _NAMED[name.upper()]
    except KeyError:
        raise ValueError(f"unknown function {name!r} (expected one of {sorted(_NAMED)})") from None
    return builder(n, cap)
