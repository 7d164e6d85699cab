"""Chemin rapide Clifford : tableau tranche par colonnes de qubits.

Pour chaque qubit q, ``xcol[q]`` et ``zcol[q]`` sont des masques d'entiers
dont le bit r vaut la composante X (resp. Z) du terme r ; ``sign`` porte les
signes negatifs. Une porte coute O(1) operations sur des entiers Python,
quel que soit le nombre de termes suivis.
"""

from __future__ import annotations

from typing import Final, Sequence

from src.errors import AlgebraError
from src.inference.gates import canonical_name
from src.inference.program import GateApp
from src.pauli.pauli_string import PauliString

_OPCODES: Final[dict[str, int]] = {
    "I": 0,
    "H": 1,
    "S": 2,
    "Sdg": 3,
    "X": 4,
    "Y": 5,
    "Z": 6,
    "CNOT": 7,
    "CZ": 8,
}

Op = tuple[int, int, int]


def compile_gates(gates: Sequence[GateApp]) -> list[Op]:
    """Traduit les portes en triplets (code, qubit a, qubit b), indices 0-based."""
    ops: list[Op] = []
    for gate in gates:
        code = _OPCODES.get(canonical_name(gate.name))
        if code is None:
            raise AlgebraError(f"{gate.name} n'est pas une porte de Clifford du chemin rapide")
        a = gate.qubits[0] - 1
        b = gate.qubits[1] - 1 if len(gate.qubits) > 1 else -1
        ops.append((code, a, b))
    return ops


class CliffordFrame:
    """Ensemble de termes de Pauli signes evolues par conjugaison."""

    __slots__ = ("n", "rows", "xcol", "zcol", "sign")

    def __init__(self, n: int, paulis: Sequence[PauliString]) -> None:
        self.n = n
        self.rows = len(paulis)
        self.xcol = [0] * n
        self.zcol = [0] * n
        self.sign = 0
        for row, p in enumerate(paulis):
            if not p.is_hermitian():
                raise AlgebraError(f"Terme non hermitien {p.label}")
            bit = 1 << row
            if p.phase == 2:
                self.sign |= bit
            for q in range(n):
                if (p.x >> q) & 1:
                    self.xcol[q] |= bit
                if (p.z >> q) & 1:
                    self.zcol[q] |= bit

    def run(self, ops: Sequence[Op]) -> None:
        xcol, zcol = self.xcol, self.zcol
        sign = self.sign
        full = (1 << self.rows) - 1
        for code, a, b in ops:
            if code == 1:
                x, z = xcol[a], zcol[a]
                sign ^= x & z
                xcol[a], zcol[a] = z, x
            elif code == 7:
                xc, zc, xt, zt = xcol[a], zcol[a], xcol[b], zcol[b]
                sign ^= xc & zt & (xt ^ zc ^ full)
                xcol[b] = xt ^ xc
                zcol[a] = zc ^ zt
            elif code == 2:
                x, z = xcol[a], zcol[a]
                sign ^= x & z
                zcol[a] = z ^ x
            elif code == 3:
                x, z = xcol[a], zcol[a]
                sign ^= x & ~z & full
                zcol[a] = z ^ x
            elif code == 8:
                xa, za, xb, zb = xcol[a], zcol[a], xcol[b], zcol[b]
                sign ^= xa & xb & (za ^ zb)
                zcol[a] = za ^ xb
                zcol[b] = zb ^ xa
            elif code == 4:
                sign ^= zcol[a]
            elif code == 6:
                sign ^= xcol[a]
            elif code == 5:
                sign ^= xcol[a] ^ zcol[a]
        self.sign = sign

    def paulis(self) -> list[PauliString]:
        result = []
        for row in range(self.rows):
            x = z = 0
            for q in range(self.n):
                x |= ((self.xcol[q] >> row) & 1) << q
                z |= ((self.zcol[q] >> row) & 1) << q
            phase = 2 if (self.sign >> row) & 1 else 0
            result.append(PauliString(self.n, x, z, phase))
        return result


def evolve_paulis(n: int, paulis: Sequence[PauliString], gates: Sequence[GateApp]) -> list[PauliString]:
    """Image de chaque terme par le circuit de Clifford ``gates``."""
    if not paulis:
        return []
    frame = CliffordFrame(n, paulis)
    frame.run(compile_gates(gates))
    return frame.paulis()


__all__ = ["CliffordFrame", "compile_gates", "evolve_paulis"]
