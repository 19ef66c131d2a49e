"""Exact toric mirror computations: A-infinity structures, potentials and matrix factorizations."""

import json
from pathlib import Path

from ._kmirror import (
    CutoffError,
    Error,
    InputError,
    critical_values,
    epsilon_sign,
    eta_sign,
    koszul_concentrated,
    potential_text,
)
from ._kmirror import run as _run

__all__ = [
    "CutoffError",
    "Error",
    "InputError",
    "critical_values",
    "epsilon_sign",
    "eta_sign",
    "koszul_concentrated",
    "potential_text",
    "run",
]


def _text(polytope):
    if isinstance(polytope, dict):
        return json.dumps(polytope)
    if isinstance(polytope, Path):
        return polytope.read_text()
    return polytope


def run(command, polytope, points=(), alpha=None, energy="3", arity=6, degree=10, base_degree=4,
        eval_t=None, floating=False, inject_sign_error=False):
    """Run a command on a polytope (dict, JSON text or Path) and return the report as a dict."""
    return json.loads(_run(command, _text(polytope), [str(p) for p in points], alpha or "", str(energy),
                           arity, degree, base_degree, eval_t, floating, inject_sign_error))
