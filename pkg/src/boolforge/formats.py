"""Circuit file formats: BENCH-like text, AIGER ASCII (aag), and DOT.

The text format has one line per gate ``g = OP(a, b)`` after ``INPUT(x)``
and ``OUTPUT(g)`` header lines.  Parsing is whitespace-insensitive;
emission is canonical, so parse(emit(c)) == emit(c) byte for byte.
"""

from __future__ import annotations

import re

from .circuit import Circuit, CircuitError
from .ops import AIG, BINARY_BY_TABLE, GateOp

_OP_NAMES = {op.name: op for op in GateOp}
_LINE = re.compile(r"^(\w+)\s*=\s*(\w+)\s*\(\s*([^)]*)\)$")
_HEADER = re.compile(r"^(INPUT|OUTPUT)\s*\(\s*(\w+)\s*\)$")


def format_bench(circuit: Circuit) -> str:
    lines = [f"INPUT({name})" for name in circuit.input_labels]
    lines += [f"OUTPUT({circuit.name_of(r)})" for r in circuit.outputs]
    for k, g in enumerate(circuit.gates):
        ref = circuit.n_inputs + k
        args = ", ".join(circuit.name_of(a) for a in g.args)
        lines.append(f"{circuit.name_of(ref)} = {g.op.name}({args})")
    return "\n".join(lines) + "\n"


def parse_bench(text: str) -> Circuit:
    inputs: list[str] = []
    outputs: list[str] = []
    gate_lines: list[tuple[str, str, list[str]]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _HEADER.match(line)
        if m:
            (inputs if m.group(1) == "INPUT" else outputs).append(m.group(2))
            continue
        m = _LINE.match(line)
        if not m:
            raise CircuitError(f"unparsable line: {raw!r}")
        name, opname, argtext = m.group(1), m.group(2).upper(), m.group(3)
        args = [a.strip() for a in argtext.split(",") if a.strip()]
        if opname not in _OP_NAMES:
            raise CircuitError(f"unknown operation {opname!r} in line {raw!r}")
        gate_lines.append((name, opname, args))

    circuit = Circuit(inputs)
    refs = {name: i for i, name in enumerate(inputs)}
    for name, opname, args in gate_lines:
        if name in refs:
            raise CircuitError(f"duplicate definition of {name!r}")
        op = _OP_NAMES[opname]
        try:
            arg_refs = [refs[a] for a in args]
        except KeyError as e:
            raise CircuitError(f"gate {name!r} uses undefined signal {e.args[0]!r}") from None
        refs[name] = circuit.add_gate(op, *arg_refs, label=name)
    try:
        circuit.set_outputs(refs[name] for name in outputs)
    except KeyError as e:
        raise CircuitError(f"output references undefined signal {e.args[0]!r}") from None
    return circuit


# AND-type table -> (negate first operand, negate second, negate output)
_AIG_POLARITY = {}
for _pa in (0, 1):
    for _pb in (0, 1):
        for _po in (0, 1):
            _t = 0
            for _row in range(4):
                _a, _b = (_row >> 1) & 1, _row & 1
                _t |= (((_a ^ _pa) & (_b ^ _pb)) ^ _po) << _row
            _AIG_POLARITY.setdefault(_t, (_pa, _pb, _po))


def format_aiger(circuit: Circuit) -> str:
    """Emit AIGER ASCII; the circuit must be in the AIG basis."""
    bad = circuit.validate_basis(AIG)
    if bad:
        names = ", ".join(circuit.name_of(r) for r in bad[:5])
        raise CircuitError(f"not an AIG-basis circuit (offending gates: {names})")

    lits: list[int] = [2 * (i + 1) for i in range(circuit.n_inputs)]
    and_lines: list[tuple[int, int, int]] = []
    next_var = circuit.n_inputs
    for g in circuit.gates:
        if g.op is GateOp.CONST0:
            lits.append(0)
        elif g.op is GateOp.CONST1:
            lits.append(1)
        elif g.op is GateOp.IDEN:
            lits.append(lits[g.args[0]])
        elif g.op is GateOp.NOT:
            lits.append(lits[g.args[0]] ^ 1)
        else:
            pa, pb, po = _AIG_POLARITY[g.op.table]
            rhs0 = lits[g.args[0]] ^ pa
            rhs1 = lits[g.args[1]] ^ pb
            if rhs0 < rhs1:
                rhs0, rhs1 = rhs1, rhs0
            next_var += 1
            and_lines.append((2 * next_var, rhs0, rhs1))
            lits.append(2 * next_var ^ po)

    out = [f"aag {next_var} {circuit.n_inputs} 0 {circuit.n_outputs} {len(and_lines)}"]
    out += [str(2 * (i + 1)) for i in range(circuit.n_inputs)]
    out += [str(lits[r]) for r in circuit.outputs]
    out += [f"{lhs} {r0} {r1}" for lhs, r0, r1 in and_lines]
    out += [f"i{i} {name}" for i, name in enumerate(circuit.input_labels)]
    out += [f"o{i} {circuit.name_of(r)}" for i, r in enumerate(circuit.outputs)]
    return "\n".join(out) + "\n"


def parse_aiger(text: str) -> Circuit:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("aag"):
        raise CircuitError("missing 'aag' header (only the ASCII format is supported)")
    header = lines[0].split()
    if len(header) != 6:
        raise CircuitError(f"malformed header: {lines[0]!r}")
    _, m, i, l, o, a = header
    n_in, n_latch, n_out, n_and = int(i), int(l), int(o), int(a)
    if n_latch:
        raise CircuitError("latches are not supported")
    body = lines[1:]
    if len(body) < n_in + n_out + n_and:
        raise CircuitError("truncated aag body")

    in_lits = [int(body[k]) for k in range(n_in)]
    out_lits = [int(body[n_in + k]) for k in range(n_out)]
    and_specs = [tuple(map(int, body[n_in + n_out + k].split())) for k in range(n_and)]

    symbols: dict[str, str] = {}
    for ln in body[n_in + n_out + n_and:]:
        if ln.startswith("c"):
            break
        parts = ln.split(maxsplit=1)
        if len(parts) == 2 and re.fullmatch(r"[io]\d+", parts[0]):
            symbols[parts[0]] = parts[1]

    names = [symbols.get(f"i{k}", f"x{k + 1}") for k in range(n_in)]
    circuit = Circuit(names)
    by_lit: dict[int, int] = {}
    for k, lit in enumerate(in_lits):
        if lit & 1 or lit == 0:
            raise CircuitError(f"bad input literal {lit}")
        by_lit[lit] = k

    def ref_for(lit: int) -> int:
        if lit in by_lit:
            return by_lit[lit]
        if lit == 0:
            by_lit[0] = circuit.add_gate(GateOp.CONST0)
        elif lit == 1:
            by_lit[1] = circuit.add_gate(GateOp.CONST1)
        elif lit & 1:
            by_lit[lit] = circuit.add_gate(GateOp.NOT, ref_for(lit ^ 1))
        else:
            raise CircuitError(f"literal {lit} defined after use or missing")
        return by_lit[lit]

    for lhs, rhs0, rhs1 in and_specs:
        if lhs & 1 or lhs in by_lit:
            raise CircuitError(f"bad AND literal {lhs}")
        by_lit[lhs] = circuit.add_gate(GateOp.AND, ref_for(rhs0), ref_for(rhs1))
    circuit.set_outputs(ref_for(lit) for lit in out_lits)
    for k, r in enumerate(circuit.outputs):
        label = symbols.get(f"o{k}")
        if label and not circuit.is_input(r) and r not in circuit.labels:
            circuit.labels[r] = label
    return circuit


_NONWORD = re.compile(r"\W+")

_DOT_SYMBOLS = {
    GateOp.AND: "&and;", GateOp.OR: "&or;", GateOp.XOR: "&oplus;",
    GateOp.NOT: "&not;", GateOp.XNOR: "&equiv;", GateOp.GT: "&gt;",
    GateOp.LT: "&lt;", GateOp.GEQ: "&ge;", GateOp.LEQ: "&le;",
}


def format_dot(circuit: Circuit, name: str = "circuit") -> str:
    """DOT drawing with named blocks rendered as clusters."""
    out = [f"digraph {name} {{", "  rankdir=TB;"]
    for i, label in enumerate(circuit.input_labels):
        out.append(f'  n{i} [shape=box, label="{label}"];')
    in_block = {r for refs in circuit.blocks.values() for r in refs}
    output_set = set(circuit.outputs)

    def gate_line(ref: int) -> str:
        g = circuit.gate_at(ref)
        sym = _DOT_SYMBOLS.get(g.op, g.op.name)
        extra = ", peripheries=2" if ref in output_set else ""
        return f'  n{ref} [shape=circle, label="{sym}"{extra}];'

    for bname, refs in circuit.blocks.items():
        out.append(f"  subgraph cluster_{re.sub(_NONWORD, '_', bname)} {{")
        out.append(f'    label="{bname}"; style=dashed;')
        out.extend("  " + gate_line(r) for r in refs)
        out.append("  }")
    for k in range(len(circuit.gates)):
        ref = circuit.n_inputs + k
        if ref not in in_block:
            out.append(gate_line(ref))
    for k, g in enumerate(circuit.gates):
        ref = circuit.n_inputs + k
        for a in g.args:
            out.append(f"  n{a} -> n{ref};")
    for j, r in enumerate(circuit.outputs):
        out.append(f'  out{j} [shape=plaintext, label="y{j}"];')
        out.append(f"  n{r} -> out{j};")
    out.append("}")
    return "\n".join(out) + "\n"
