"""Complex volumes of hyperbolic 3-manifolds from cluster patterns.

Two families are covered: once-punctured torus bundles over the circle,
given by a monodromy word in ``R`` and ``L``, and two-bridge link
complements, given by a fraction ``q/p``.  Each flip of the fiber surface
attaches ideal tetrahedra whose shapes and flattenings are read off a
cluster pattern; the complex volume is the sum of extended Rogers
dilogarithms.
"""

from __future__ import annotations

from .cluster import B_SPHERE, B_TORUS, ExchangeMatrix, Seed, YTuple, mutate, mutate_matrix, mutate_y, permute, y_from_seed
from .dilog import ComplexVolume, Flattening, bloch_wigner, complex_volume, li2, rogers_hat
from .errors import (
    BadSymbol,
    ClusterVolError,
    DegenerateError,
    EpsCaseConflict,
    InconsistentPattern,
    InvalidInput,
    NoGeometricSolution,
    NonHyperbolic,
    WrongFamily,
)
from .semifield import DELTA, ONE, TropEl, psi
from .solver import RootSearchConfig, RootSet, newton_multistart, poly_roots
from .torus import TorusPattern, TorusWord, parse_torus_word, solve_torus, torus_complex_volume, torus_volume
from .twobridge import (
    BridgePattern,
    TwoBridgeSpec,
    bridge_complex_volume,
    bridge_volume,
    continued_fraction,
    double_twist_oriented,
    solve_two_bridge,
    spec_from_cf,
)

__version__ = "0.1.0"

__all__ = [
    "B_SPHERE",
    "B_TORUS",
    "ExchangeMatrix",
    "Seed",
    "YTuple",
    "mutate",
    "mutate_matrix",
    "mutate_y",
    "permute",
    "y_from_seed",
    "ComplexVolume",
    "Flattening",
    "bloch_wigner",
    "complex_volume",
    "li2",
    "rogers_hat",
    "BadSymbol",
    "ClusterVolError",
    "DegenerateError",
    "EpsCaseConflict",
    "InconsistentPattern",
    "InvalidInput",
    "NoGeometricSolution",
    "NonHyperbolic",
    "WrongFamily",
    "DELTA",
    "ONE",
    "TropEl",
    "psi",
    "RootSearchConfig",
    "RootSet",
    "newton_multistart",
    "poly_roots",
    "TorusPattern",
    "TorusWord",
    "parse_torus_word",
    "solve_torus",
    "torus_complex_volume",
    "torus_volume",
    "BridgePattern",
    "TwoBridgeSpec",
    "bridge_complex_volume",
    "bridge_volume",
    "continued_fraction",
    "double_twist_oriented",
    "solve_two_bridge",
    "spec_from_cf",
]
