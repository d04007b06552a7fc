"""Algebraic data of a projective-space bundle with free involution.

A bundle is described by its fibre type, the base cohomology algebra, and the
structure coefficients expressing the top relations of the quotient bundle in
its Leray-Hirsch basis.  Coefficients are user input; only their degrees are
checked here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping

from .algebra import FiniteGradedAlgebra, GeneratorSpec, build_from_presentation


class FiberKind(str, enum.Enum):
    REAL = "real"
    COMPLEX = "complex"


class ObstructedFiber(ValueError):
    """No free involution exists on the requested fibre."""


@dataclass(frozen=True)
class FiberSpec:
    kind: FiberKind
    n: int

    def __post_init__(self):
        object.__setattr__(self, "kind", FiberKind(self.kind))
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        if self.n % 2 == 0:
            chi = 1 if self.kind is FiberKind.REAL else self.n + 1
            raise ObstructedFiber(
                f"{self.kind.value} projective fibre with n={self.n} admits no free involution: "
                f"its Euler characteristic {chi} is odd, while a free involution forces "
                f"chi(X) = 2 chi(X/Z2) by Floyd's formula"
            )

    @property
    def x_degree(self) -> int:
        return 1

    @property
    def y_degree(self) -> int:
        return 2 if self.kind is FiberKind.REAL else 4

    @property
    def m(self) -> int:
        """Exponent of the top relation on y: (n + 1) / 2."""
        return (self.n + 1) // 2

    @property
    def x_truncation(self) -> int:
        return 2 if self.kind is FiberKind.REAL else 3

    @property
    def w1_degree(self) -> int:
        return self.m * self.y_degree

    @property
    def w2_degree(self) -> int:
        return self.x_truncation

    @property
    def top_degree(self) -> int:
        """Top degree of the orbit-space cohomology."""
        return self.w1_degree - 1 if self.kind is FiberKind.REAL else self.w1_degree - 2


@dataclass(frozen=True)
class LerayHirschBasis:
    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def index(self, pair: tuple[int, int]) -> int:
        return self.pairs.index(pair)


def leray_hirsch_basis(f: FiberSpec) -> LerayHirschBasis:
    """Exponent pairs (i, j) of the module basis a^i b^j, ordered by j then i."""
    pairs = tuple((i, j) for j in range(f.m) for i in range(f.x_truncation))
    return LerayHirschBasis(pairs)


def orbit_algebra(f: FiberSpec, cap: int | None = None) -> FiniteGradedAlgebra:
    """Cohomology of the orbit space: F2[u, v] / <u^2 or u^3, v^((n+1)/2)>."""
    if cap is None:
        cap = f.top_degree + 1
    gens = [
        GeneratorSpec("u", 1, f.x_truncation),
        GeneratorSpec("v", f.y_degree, f.m),
    ]
    return build_from_presentation(gens, cap)


def w_subscripts(f: FiberSpec) -> dict[int, tuple[int, int]]:
    """Map subscript i of w_i to the basis pair it multiplies in the top relation."""
    return {f.w1_degree - (i * f.x_degree + j * f.y_degree): (i, j) for i, j in leray_hirsch_basis(f).pairs}


def nu_subscripts(f: FiberSpec) -> dict[int, int]:
    """Map subscript i of nu_i to the power of x it multiplies."""
    t = f.x_truncation
    return {t - e: e for e in range(t)}


@dataclass(frozen=True)
class BundleData:
    fiber: FiberSpec
    base: FiniteGradedAlgebra
    w: Mapping[int, int] = field(default_factory=dict)
    nu: Mapping[int, int] = field(default_factory=dict)
    alpha: int = 0

    def coefficient(self, name: str, i: int) -> int:
        src = self.w if name == "w" else self.nu
        return src.get(i, 0)


@dataclass(frozen=True)
class VectorBundleSpec:
    k: int
    wprime: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("fibre dimension k must be >= 1")


@dataclass(frozen=True)
class CoefficientViolation:
    field: str  # e.g. "w2", "nu1", "alpha", "wprime3"
    detail: str


class InvalidBundle(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(f"{v.field}: {v.detail}" for v in self.violations))


def _check_coefficients(prefix, coeffs, allowed, base, out):
    for i, c in sorted(coeffs.items()):
        name = f"{prefix}{i}"
        if i not in allowed:
            if c:
                out.append(CoefficientViolation(name, f"no coefficient {name} in this relation"))
            continue
        if c < 0 or c >> base.dim:
            out.append(CoefficientViolation(name, "not an element of the base algebra"))
            continue
        bad = sorted(base.element_degrees(c) - {i})
        if bad:
            out.append(
                CoefficientViolation(
                    name, f"must be homogeneous of degree {i}, has components in degree(s) {bad}"
                )
            )


def validate_bundle(bd: BundleData) -> list[CoefficientViolation]:
    out: list[CoefficientViolation] = []
    _check_coefficients("w", bd.w, set(w_subscripts(bd.fiber)), bd.base, out)
    _check_coefficients("nu", bd.nu, set(nu_subscripts(bd.fiber)), bd.base, out)
    if bd.alpha not in (0, 1):
        out.append(CoefficientViolation("alpha", "must be 0 or 1"))
    elif bd.alpha and bd.fiber.kind is FiberKind.COMPLEX:
        out.append(CoefficientViolation("alpha", "only the real case has an alpha term"))
    return out


def validate_vector_bundle(vb: VectorBundleSpec, base: FiniteGradedAlgebra) -> list[CoefficientViolation]:
    out: list[CoefficientViolation] = []
    _check_coefficients("wprime", vb.wprime, set(range(1, vb.k + 1)), base, out)
    return out


def require_valid(bd: BundleData, vb: VectorBundleSpec | None = None) -> None:
    bad = validate_bundle(bd)
    if vb is not None:
        bad += validate_vector_bundle(vb, bd.base)
    if bad:
        raise InvalidBundle(bad)


__all__ = [
    "BundleData",
    "CoefficientViolation",
    "FiberKind",
    "FiberSpec",
    "InvalidBundle",
    "LerayHirschBasis",
    "ObstructedFiber",
    "VectorBundleSpec",
    "leray_hirsch_basis",
    "nu_subscripts",
    "orbit_algebra",
    "require_valid",
    "validate_bundle",
    "validate_vector_bundle",
    "w_subscripts",
]
