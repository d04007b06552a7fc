"""Exact GF(2) algebra behind parametrized Borsuk-Ulam theorems for projective-space bundles."""

from .algebra import (
    OVERFLOW,
    FiniteGradedAlgebra,
    GeneratorSpec,
    build_from_presentation,
    euler_char,
    poincare_series,
)
from .bundle import BundleData, FiberKind, FiberSpec, VectorBundleSpec, leray_hirsch_basis, orbit_algebra
from .charpoly import FiberedPolynomial, PolyRing, build_W1, build_W2, build_Wprime, quotient_check, reduce_to_basis
from .membership import audit_degree_argument, borsuk_bound, coincidence_bound, membership
from .obstructions import SpaceDescriptor, free_involution_obstruction

__version__ = "0.1.0"
