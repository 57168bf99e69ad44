"""Groebner bases, Hilbert series and degree bounds over prime fields."""

import json as _json

from ._sgb import (
    SgbError,
    canonical_system,
    degree_bound_Dnm,
    hilbert_numerator,
    homogenize_system,
    lazard_bound,
    rref,
    run,
)
from . import _sgb

__all__ = [
    "SgbError",
    "analyze",
    "bound",
    "canonical_system",
    "degree_bound_Dnm",
    "experiment",
    "groebner_basis",
    "hilbert_numerator",
    "homogenize_system",
    "lazard_bound",
    "rref",
    "run",
    "verify",
]


def groebner_basis(text, engine="buchberger", cap=None):
    """Report for the reduced basis of the system document `text`."""
    return _json.loads(_sgb.groebner_basis_json(text, engine, cap))


def analyze(text):
    return _json.loads(_sgb.analyze_json(text))


def verify(text, seed=0, engine="buchberger", attempts=64, cap=None):
    return _json.loads(_sgb.verify_json(text, seed, engine, attempts, cap))


def bound(n, degrees, omega=2.807):
    return _json.loads(_sgb.bound_json(n, list(degrees), omega))


def experiment(n, degrees, q=31, trials=10, seed=0, construction="generic", engine="buchberger"):
    """Returns (csv_text, summary_line)."""
    return _sgb.experiment_csv(n, list(degrees), q, trials, seed, construction, engine)
