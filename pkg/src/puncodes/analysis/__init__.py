"""Closed-form predictions, moment and bound checks, and the end-to-end verifier."""

from puncodes.analysis.moments import (
    griesmer_bound,
    griesmer_ok,
    griesmer_optimal,
    pless_check,
    sphere_packing_distance_optimal,
    sphere_packing_ok,
)
from puncodes.analysis.predict import THEOREM_IDS, HypothesisError, Prediction, predict
from puncodes.analysis.verify import VerificationReport, verify

__all__ = [
    "THEOREM_IDS",
    "HypothesisError",
    "Prediction",
    "VerificationReport",
    "griesmer_bound",
    "griesmer_ok",
    "griesmer_optimal",
    "pless_check",
    "predict",
    "sphere_packing_distance_optimal",
    "sphere_packing_ok",
    "verify",
]
