"""Parallel extended-stabilizer simulation of deep few-qubit circuits.

Gates are grouped into non-CX and CX operators, applied to the stabilizer
generators through lookup tables, and the exact density matrix is rebuilt
from the resulting weighted Pauli strings.
"""

from .circuit import (
    Circuit,
    CircuitError,
    Instructor,
    OperatorGroup,
    OperatorSequence,
    generate_random_circuit,
    generate_wchain_zxz,
    parse_circuit,
    serialize_circuit,
    split_operators,
)
from .density import DensityMatrix, measure_z, rho00, to_density
from .engine import StabilizerState, init_stabilizers, run_map_stage
from .lut import construct_lut
from .simulator import PStabilizer, SimulationResult, simulate

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "CircuitError",
    "DensityMatrix",
    "Instructor",
    "OperatorGroup",
    "OperatorSequence",
    "PStabilizer",
    "SimulationResult",
    "StabilizerState",
    "construct_lut",
    "generate_random_circuit",
    "generate_wchain_zxz",
    "init_stabilizers",
    "measure_z",
    "parse_circuit",
    "rho00",
    "run_map_stage",
    "serialize_circuit",
    "simulate",
    "split_operators",
    "to_density",
]
