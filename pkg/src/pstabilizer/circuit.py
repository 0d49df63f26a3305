"""Circuits as instructor lists, the text file format, benchmark ansatz and operator splitting."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .pauli import NON_CX_GATES

GATES = NON_CX_GATES + ("CX",)
ROTATIONS = ("RX", "RY", "RZ")


class CircuitError(ValueError):
    """Invalid circuit construction or malformed circuit text."""


@dataclass(frozen=True)
class Instructor:
    """One gate application ``{name, wire, theta}``; CX also carries ``wire2`` (target)."""

    name: str
    wire: int
    wire2: Optional[int] = None
    theta: float = 0.0

    def __post_init__(self):
        name = self.name.upper()
        object.__setattr__(self, "name", name)
        if name not in GATES:
            raise CircuitError(f"unknown gate {self.name!r}")
        if self.wire < 0:
            raise CircuitError(f"negative wire {self.wire}")
        if name == "CX":
            if self.wire2 is None or self.wire2 < 0:
                raise CircuitError("CX needs a non-negative target wire")
            if self.wire2 == self.wire:
                raise CircuitError("CX with equal wires")
        elif self.wire2 is not None:
            raise CircuitError(f"{name} takes a single wire")
        if name not in ROTATIONS and self.theta != 0.0:
            raise CircuitError(f"{name} is not parameterized; theta must be 0")
        if not math.isfinite(self.theta):
            raise CircuitError("theta must be finite")
        object.__setattr__(self, "theta", float(self.theta))

    @property
    def is_cx(self) -> bool:
        return self.name == "CX"

    @property
    def wires(self) -> tuple[int, ...]:
        return (self.wire,) if self.wire2 is None else (self.wire, self.wire2)

    def __str__(self) -> str:
        if self.is_cx:
            return f"CX({self.wire},{self.wire2})"
        if self.name in ROTATIONS:
            return f"{self.name}@{self.wire}({self.theta:.4g})"
        return f"{self.name}@{self.wire}"


@dataclass(frozen=True)
class Circuit:
    n: int
    instructors: tuple[Instructor, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise CircuitError(f"qubit count must be positive, got {self.n}")
        object.__setattr__(self, "instructors", tuple(self.instructors))
        for ins in self.instructors:
            if max(ins.wires) >= self.n:
                raise CircuitError(f"{ins} addresses a wire outside [0, {self.n})")

    def __len__(self) -> int:
        return len(self.instructors)

    def __iter__(self):
        return iter(self.instructors)


def h(w):
    return Instructor("H", w)


def s(w):
    return Instructor("S", w)


def rx(w, theta):
    return Instructor("RX", w, theta=theta)


def ry(w, theta):
    return Instructor("RY", w, theta=theta)


def rz(w, theta):
    return Instructor("RZ", w, theta=theta)


def cx(c, t):
    return Instructor("CX", c, t)


# --- text format -----------------------------------------------------------


def parse_circuit(text: str) -> Circuit:
    """Parse the line-based circuit format (``qubits N`` header, one gate per line)."""
    n = None
    instructors = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0].upper()
        try:
            if n is None:
                if head != "QUBITS" or len(tokens) != 2:
                    raise CircuitError("expected 'qubits N' before any gate")
                n = int(tokens[1])
                if n < 1:
                    raise CircuitError(f"qubit count must be positive, got {n}")
                continue
            if head == "QUBITS":
                raise CircuitError("duplicate 'qubits' header")
            if head not in GATES:
                raise CircuitError(f"unknown gate {tokens[0]!r}")
            if head == "CX":
                if len(tokens) != 3:
                    raise CircuitError("cx takes two wires")
                ins = Instructor("CX", int(tokens[1]), int(tokens[2]))
            elif head in ROTATIONS:
                if len(tokens) == 2:
                    raise CircuitError(f"missing angle for {head}")
                if len(tokens) != 3:
                    raise CircuitError(f"{head} takes a wire and an angle")
                ins = Instructor(head, int(tokens[1]), theta=float(tokens[2]))
            else:
                if len(tokens) != 2:
                    raise CircuitError(f"{head} takes exactly one wire")
                ins = Instructor(head, int(tokens[1]))
            if max(ins.wires) >= n:
                raise CircuitError(f"wire out of range for {n} qubits")
        except CircuitError as exc:
            raise CircuitError(f"line {lineno}: {exc}") from None
        except ValueError as exc:
            raise CircuitError(f"line {lineno}: malformed line {raw.strip()!r} ({exc})") from None
        instructors.append(ins)
    if n is None:
        raise CircuitError("missing 'qubits N' header")
    return Circuit(n, tuple(instructors))


def serialize_circuit(circuit: Circuit) -> str:
    lines = [f"qubits {circuit.n}"]
    for ins in circuit:
        if ins.is_cx:
            lines.append(f"cx {ins.wire} {ins.wire2}")
        elif ins.name in ROTATIONS:
            lines.append(f"{ins.name.lower()} {ins.wire} {ins.theta!r}")
        else:
            lines.append(f"{ins.name.lower()} {ins.wire}")
    return "\n".join(lines) + "\n"


# --- generators ------------------------------------------------------------


def generate_wchain_zxz(n: int, layers: int, repeats: int = 1, seed: Optional[int] = 0) -> Circuit:
    """The W_chain+ZXZ benchmark ansatz.

    One layer is the ZXZ rotation block (``RZ, RX, RZ`` with fresh angles on
    every wire, repeated ``repeats`` times) followed by the W chain: ``RY`` on
    wires ``0..n-2`` and then the CX ladder ``CX(0,1), CX(1,2), ...``.  Each layer
    therefore splits into exactly one non-CX and one CX group.
    """
    if n < 2:
        raise CircuitError(f"W_chain+ZXZ needs at least 2 qubits, got {n}")
    if layers < 1 or repeats < 1:
        raise CircuitError("layers and repeats must be >= 1")
    rng = np.random.default_rng(seed)
    two_pi = 2 * math.pi
    out = []
    for _ in range(layers):
        for _ in range(repeats):
            for j in range(n):
                a, b, c = rng.uniform(0.0, two_pi, size=3)
                out += [rz(j, a), rx(j, b), rz(j, c)]
        for j in range(n - 1):
            out.append(ry(j, rng.uniform(0.0, two_pi)))
        for j in range(n - 1):
            out.append(cx(j, j + 1))
    return Circuit(n, tuple(out))


def generate_random_circuit(n: int, gates: int, seed: Optional[int] = 0, cx_prob: float = 0.25) -> Circuit:
    """Uniformly random circuit over {H, S, RX, RY, RZ, CX}."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(gates):
        if n > 1 and rng.random() < cx_prob:
            c, t = rng.choice(n, size=2, replace=False)
            out.append(cx(int(c), int(t)))
            continue
        name = NON_CX_GATES[rng.integers(len(NON_CX_GATES))]
        w = int(rng.integers(n))
        theta = float(rng.uniform(0.0, 2 * math.pi)) if name in ROTATIONS else 0.0
        out.append(Instructor(name, w, theta=theta))
    return Circuit(n, tuple(out))


# --- operator splitting ----------------------------------------------------

NON_CX = "NonCX"
CX = "CX"


@dataclass(frozen=True)
class OperatorGroup:
    """A run of same-kind gates.

    Non-CX groups keep ``by_wire[j]``, the instructors on wire ``j`` in circuit
    order.  CX groups keep ``gates`` as ordered ``(control, target)`` pairs.
    """

    kind: str
    index: int
    by_wire: tuple[tuple[Instructor, ...], ...] = ()
    gates: tuple[tuple[int, int], ...] = ()

    def __len__(self) -> int:
        if self.kind == CX:
            return len(self.gates)
        return sum(len(w) for w in self.by_wire)

    def instructors(self) -> list[Instructor]:
        if self.kind == CX:
            return [cx(c, t) for c, t in self.gates]
        return [ins for wire in self.by_wire for ins in wire]


@dataclass(frozen=True)
class OperatorSequence:
    n: int
    groups: tuple[OperatorGroup, ...] = field(default_factory=tuple)

    @property
    def K(self) -> int:
        return sum(1 for g in self.groups if g.kind == NON_CX)

    @property
    def Kp(self) -> int:
        return sum(1 for g in self.groups if g.kind == CX)

    def noncx_groups(self) -> list[OperatorGroup]:
        return [g for g in self.groups if g.kind == NON_CX]

    def cx_pairs(self) -> set[tuple[int, int]]:
        return {pair for g in self.groups if g.kind == CX for pair in g.gates}

    def to_circuit(self) -> Circuit:
        return Circuit(self.n, tuple(ins for g in self.groups for ins in g.instructors()))


def _make_group(kind: str, index: int, run: list[Instructor], n: int) -> OperatorGroup:
    if kind == CX:
        return OperatorGroup(CX, index, gates=tuple((i.wire, i.wire2) for i in run))
    by_wire: list[list[Instructor]] = [[] for _ in range(n)]
    for ins in run:
        by_wire[ins.wire].append(ins)
    return OperatorGroup(NON_CX, index, by_wire=tuple(tuple(w) for w in by_wire))


def split_operators(circuit: Circuit, fuse: bool = True) -> OperatorSequence:
    """Split a circuit into alternating non-CX groups ``U_k`` and CX groups ``V_k``.

    With ``fuse=False`` every gate becomes its own group (the gate-by-gate
    baseline); groups then no longer alternate.
    """
    runs: list[tuple[str, list[Instructor]]] = []
    for ins in circuit:
        kind = CX if ins.is_cx else NON_CX
        if fuse and runs and runs[-1][0] == kind:
            runs[-1][1].append(ins)
        else:
            runs.append((kind, [ins]))
    counters = {NON_CX: 0, CX: 0}
    groups = []
    for kind, run in runs:
        groups.append(_make_group(kind, counters[kind], run, circuit.n))
        counters[kind] += 1
    return OperatorSequence(circuit.n, tuple(groups))
