"""Calderon-Zygmund decomposition of Sobolev functions on a discretized box."""

import json

from ._czd import (
    Decomposition,
    bad_set,
    decompose,
    generate,
    generator_names,
    gradient,
    maximal_function,
    sweep_json,
    verify_json,
)

__all__ = [
    "Decomposition",
    "bad_set",
    "decompose",
    "generate",
    "generator_names",
    "gradient",
    "maximal_function",
    "sweep",
    "sweep_json",
    "verify",
    "verify_json",
]


def verify(f, alpha, p, side=1.0):
    """Verification report as a dict (parsed from the JSON schema)."""
    return json.loads(verify_json(f, alpha, p, side))


def sweep(f, alphas, p, side=1.0):
    """Alpha sweep as a dict (parsed from the JSON schema)."""
    return json.loads(sweep_json(f, list(alphas), p, side))
