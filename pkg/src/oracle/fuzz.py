"""Programmes et types aleatoires reproductibles (graine numpy)."""

from __future__ import annotations

from typing import Final

import numpy as np

from src.algebra.additive import AdditiveOperator
from src.algebra.qtype import Branch, QType
from src.inference.engine import infer
from src.inference.program import GateApp, Program
from src.pauli.pauli_string import PauliString
from src.pauli.ring import INV_SQRT2

ONE_QUBIT_CLIFFORD: Final[tuple[str, ...]] = ("H", "S", "Sdg", "X", "Y", "Z")
TWO_QUBIT_CLIFFORD: Final[tuple[str, ...]] = ("CNOT", "CZ")


def _rng(seed: int | np.random.Generator | None) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _random_gate(n: int, rng: np.random.Generator) -> GateApp:
    if n > 1 and rng.random() < 0.4:
        name = TWO_QUBIT_CLIFFORD[int(rng.integers(len(TWO_QUBIT_CLIFFORD)))]
        a, b = rng.choice(n, size=2, replace=False) + 1
        return GateApp(name, (int(a), int(b)))
    name = ONE_QUBIT_CLIFFORD[int(rng.integers(len(ONE_QUBIT_CLIFFORD)))]
    return GateApp(name, (int(rng.integers(n)) + 1,))


def random_clifford_program(
    n: int, m: int, seed: int | np.random.Generator | None = None
) -> Program:
    """Programme de ``m`` portes de Clifford sur ``n`` qubits (tirages vectorises)."""
    rng = _rng(seed)
    pairs = rng.random(m) < 0.4 if n > 1 else np.zeros(m, dtype=bool)
    one_names = rng.integers(len(ONE_QUBIT_CLIFFORD), size=m)
    two_names = rng.integers(len(TWO_QUBIT_CLIFFORD), size=m)
    first = rng.integers(n, size=m)
    second = (first + rng.integers(1, max(n, 2), size=m)) % n
    gates = tuple(
        GateApp(TWO_QUBIT_CLIFFORD[k2], (a + 1, b + 1)) if pair else GateApp(ONE_QUBIT_CLIFFORD[k1], (a + 1,))
        for pair, k1, k2, a, b in zip(
            pairs.tolist(), one_names.tolist(), two_names.tolist(), first.tolist(), second.tolist()
        )
    )
    return Program(n, gates)


def random_clifford_t_program(
    n: int, m: int, t_count: int, seed: int | np.random.Generator | None = None
) -> Program:
    """Programme de ``m`` portes de Clifford dont ``t_count`` remplacees par T ou Tdg."""
    rng = _rng(seed)
    gates = [_random_gate(n, rng) for _ in range(m)]
    positions = rng.choice(m, size=min(t_count, m), replace=False) if m else []
    for position in positions:
        name = "T" if rng.random() < 0.5 else "Tdg"
        gates[int(position)] = GateApp(name, (int(rng.integers(n)) + 1,))
    return Program(n, tuple(gates))


def zero_state_type(n: int) -> QType:
    """Z_1 & ... & Z_n."""
    return QType.single(Branch.zero_state(n))


def random_stabilizer_branch(n: int, seed: int | np.random.Generator | None = None) -> Branch:
    """Type de Gottesman complet, image de Z_1 & ... & Z_n par un Clifford aleatoire."""
    rng = _rng(seed)
    program = random_clifford_program(n, 4 * n * n + 2, rng)
    return infer(program, zero_state_type(n)).branches[0]


def random_one_t_branch(n: int, seed: int | np.random.Generator | None = None) -> Branch:
    """Type complet a un terme (P0 + P1)/rt2, obtenu par un Clifford aleatoire."""
    rng = _rng(seed)
    magic = AdditiveOperator.from_terms(
        n,
        [(PauliString.single(n, 1, "X"), INV_SQRT2), (PauliString.single(n, 1, "Y"), INV_SQRT2)],
    )
    rest = tuple(
        AdditiveOperator.from_pauli(PauliString.single(n, j, "Z")) for j in range(2, n + 1)
    )
    start = QType.single(Branch(n, (magic, *rest)))
    program = random_clifford_program(n, 4 * n * n + 2, rng)
    return infer(program, start).branches[0]


__all__ = [
    "random_clifford_program",
    "random_clifford_t_program",
    "random_one_t_branch",
    "random_stabilizer_branch",
    "zero_state_type",
]
