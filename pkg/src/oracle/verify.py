"""Confrontation des jugements symboliques a l'oracle dense."""

from __future__ import annotations

import numpy as np
import pandas as pd

import config
from src.algebra.additive import AdditiveOperator
from src.inference.engine import semantics_of_program
from src.inference.program import Program
from src.oracle.dense import arrow_deviation, program_matrix
from src.oracle.fuzz import random_clifford_program, random_clifford_t_program
from src.pauli.pauli_string import PauliString
from src.state.journal import Reporter

TABLE_COLUMNS = ["generateur", "image", "ecart_max", "ok"]


def verification_table(program: Program, *, tol: float = config.EQ_TOL) -> pd.DataFrame:
    """Une ligne par generateur X_j / Z_j : image inferee et ecart a U P U^dag."""
    semantics = semantics_of_program(program)
    u = program_matrix(program)
    rows = []
    for letter, j in semantics.generators():
        source = AdditiveOperator.from_pauli(PauliString.single(program.n, j, letter))
        image = semantics.images[(letter, j)]
        deviation = arrow_deviation(u, source, image)
        rows.append(
            {
                "generateur": f"{letter}{j}",
                "image": str(image),
                "ecart_max": deviation,
                "ok": deviation <= tol,
            }
        )
    return pd.DataFrame(rows, columns=TABLE_COLUMNS)


def fuzz_summary(
    seed: int,
    *,
    programs: int = 50,
    max_qubits: int = 4,
    max_gates: int = 60,
    t_gates: int = 0,
    tol: float = config.EQ_TOL,
    report: Reporter | None = None,
) -> pd.DataFrame:
    """Programmes aleatoires verifies un a un ; une ligne par programme."""
    reporter = report or print
    rng = np.random.default_rng(seed)
    rows = []
    for index in range(programs):
        n = int(rng.integers(1, max_qubits + 1))
        m = int(rng.integers(0, max_gates + 1))
        if t_gates:
            program = random_clifford_t_program(n, m, t_gates, rng)
        else:
            program = random_clifford_program(n, m, rng)
        table = verification_table(program, tol=tol)
        rows.append(
            {
                "programme": index,
                "qubits": n,
                "portes": m,
                "ecart_max": float(table["ecart_max"].max()),
                "ok": bool(table["ok"].all()),
            }
        )
    summary = pd.DataFrame(rows, columns=["programme", "qubits", "portes", "ecart_max", "ok"])
    failures = int((~summary["ok"]).sum())
    if failures:
        reporter(f"[ERREUR] {failures} programme(s) en desaccord avec l'oracle")
    else:
        reporter(f"[OK] {programs} programme(s) confirmes par l'oracle (graine {seed})")
    return summary


__all__ = ["fuzz_summary", "verification_table"]
