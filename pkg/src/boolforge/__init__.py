"""Boolean circuit toolkit.

Circuits over the XAIG/AIG bases: evaluation and analysis, Tseitin
reduction to SAT, exact SAT-based synthesis, constructive generators for
symmetric and arithmetic functions, subcircuit minimization, and a
database of (near-)optimal small circuits.
"""

from .circuit import Circuit, CircuitError, Gate
from .ops import AIG, XAIG, Basis, GateOp, basis_by_name
from .truthtable import (
    PartialTruthTable,
    TruthTable,
    bits_to_int,
    from_predicate,
    int_to_bits,
    is_monotone,
    is_symmetric,
    named_function,
)

__all__ = [
    "AIG",
    "Basis",
    "Circuit",
    "CircuitError",
    "Gate",
    "GateOp",
    "PartialTruthTable",
    "TruthTable",
    "XAIG",
    "basis_by_name",
    "bits_to_int",
    "from_predicate",
    "int_to_bits",
    "is_monotone",
    "is_symmetric",
    "named_function",
]

__version__ = "0.1.0"
