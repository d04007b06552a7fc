"""Euler-characteristic obstructions to free involutions.

A free involution has empty fixed set, so Floyd's formula
chi(X) + chi(X^Z2) = 2 chi(X/Z2) forces chi(X) to be even.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .algebra import GeneratorSpec, build_from_presentation, euler_char


class SpaceKind(str, enum.Enum):
    REAL = "real"
    COMPLEX = "complex"
    QUATERNIONIC = "quaternionic"
    CAYLEY = "cayley"
    CUSTOM = "custom"


# degree of the generator u of F2[u]/<u^(n+1)>
_GEN_DEGREE = {SpaceKind.REAL: 1, SpaceKind.COMPLEX: 2, SpaceKind.QUATERNIONIC: 4, SpaceKind.CAYLEY: 8}


@dataclass(frozen=True)
class SpaceDescriptor:
    kind: SpaceKind
    n: int | None = None
    chi: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", SpaceKind(self.kind))
        if self.kind is SpaceKind.CUSTOM:
            if self.chi is None:
                raise ValueError("custom space needs chi")
        elif self.kind is SpaceKind.CAYLEY:
            object.__setattr__(self, "n", 2)
        elif self.n is None or self.n < 1:
            raise ValueError(f"{self.kind.value} projective space needs n >= 1")

    @classmethod
    def real(cls, n: int) -> "SpaceDescriptor":
        return cls(SpaceKind.REAL, n)

    @classmethod
    def complex(cls, n: int) -> "SpaceDescriptor":
        return cls(SpaceKind.COMPLEX, n)

    @classmethod
    def quaternionic(cls, n: int) -> "SpaceDescriptor":
        return cls(SpaceKind.QUATERNIONIC, n)

    @classmethod
    def cayley(cls) -> "SpaceDescriptor":
        return cls(SpaceKind.CAYLEY)

    @classmethod
    def custom(cls, chi: int) -> "SpaceDescriptor":
        return cls(SpaceKind.CUSTOM, chi=chi)

    def __str__(self) -> str:
        if self.kind is SpaceKind.CUSTOM:
            return f"custom(chi={self.chi})"
        if self.kind is SpaceKind.CAYLEY:
            return "OP^2"
        return {"real": "RP", "complex": "CP", "quaternionic": "HP"}[self.kind.value] + f"^{self.n}"


class BlockReason(str, enum.Enum):
    EULER_PARITY = "EulerParity"
    FIXED_POINT_PROPERTY = "FixedPointProperty"


@dataclass(frozen=True)
class ObstructionVerdict:
    blocked: bool
    reason: BlockReason | None
    chi: int
    note: str = ""

    @property
    def label(self) -> str:
        return f"Blocked({self.reason.value})" if self.blocked else "NotObstructed"


def euler_char_space(s: SpaceDescriptor) -> int:
    """Euler characteristic of a mod-2 cohomology projective space, read off F2[u]/<u^(n+1)>."""
    if s.kind is SpaceKind.CUSTOM:
        return s.chi
    deg = _GEN_DEGREE[s.kind]
    top = deg * s.n
    alg = build_from_presentation([GeneratorSpec("u", deg, s.n + 1)], top)
    return euler_char(alg).chi


def free_involution_obstruction(s: SpaceDescriptor) -> ObstructionVerdict:
    chi = euler_char_space(s)
    if s.kind is SpaceKind.QUATERNIONIC and s.n >= 2:
        return ObstructionVerdict(
            True, BlockReason.FIXED_POINT_PROPERTY, chi, "HP^n-like spaces with n >= 2 have the fixed point property"
        )
    if chi % 2:
        return ObstructionVerdict(True, BlockReason.EULER_PARITY, chi, "odd Euler characteristic contradicts Floyd's formula")
    note = ""
    if s.kind is SpaceKind.QUATERNIONIC:
        note = "HP^1 has the cohomology of S^4; sphere bundles are not covered by this tool"
    return ObstructionVerdict(False, None, chi, note)


__all__ = [
    "BlockReason",
    "ObstructionVerdict",
    "SpaceDescriptor",
    "SpaceKind",
    "euler_char_space",
    "free_involution_obstruction",
]
