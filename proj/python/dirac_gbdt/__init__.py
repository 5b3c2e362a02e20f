"""Direct and inverse spectral transforms for discrete self-adjoint Dirac
systems with rational Weyl functions.

The heavy lifting lives in the compiled extension; this package re-exports
its surface and keeps the docstrings importable without numpy tricks.
"""

from ._core import (
    InputError,
    MathError,
    ToleranceFailure,
    Triple,
    asymptotics,
    halmos,
    inverse_potential,
    make_triple,
    potential,
    realization,
    rho,
    triple_from_json,
    triple_to_json,
    weyl_eval,
)

__all__ = [
    "InputError",
    "MathError",
    "ToleranceFailure",
    "Triple",
    "asymptotics",
    "halmos",
    "inverse_potential",
    "make_triple",
    "potential",
    "realization",
    "rho",
    "triple_from_json",
    "triple_to_json",
    "weyl_eval",
]
