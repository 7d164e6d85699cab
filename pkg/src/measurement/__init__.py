"""
Package: measurement
--------------------
Types post-mesure : regle des stabilisateurs, lemmes et theoreme additifs,
aiguillage par forme de branche.
"""

from .additive import (
    QubitDecomposition,
    meas_prob_1q,
    measure_additive_1q,
    measure_additive_2q,
    measure_additive_IZ_term,
)
from .dispatch import measure_branch
from .outcome import MeasurementOutcome, OutcomeBranch
from .stabilizer import measure_stabilizer

__all__ = [
    "MeasurementOutcome",
    "OutcomeBranch",
    "QubitDecomposition",
    "meas_prob_1q",
    "measure_additive_1q",
    "measure_additive_2q",
    "measure_additive_IZ_term",
    "measure_branch",
    "measure_stabilizer",
]
