"""Finite graded-commutative algebras over GF(2), truncated at a degree cap.

An algebra is a basis of labelled monomials with degrees plus a structure
constant table.  Elements are ints used as bitsets over basis indices.
Products whose degree exceeds the cap are the distinct value ``OVERFLOW``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .gf2 import iter_bits


class _Overflow:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "OVERFLOW"

    def __reduce__(self):
        return (_Overflow, ())


OVERFLOW = _Overflow()


class CapOverflow(ArithmeticError):
    """A product left the degree cap of the algebra it was computed in."""


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    degree: int
    truncation: int | None = None  # g**truncation == 0; None means no relation

    def __post_init__(self):
        if not self.name or not self.name.isidentifier():
            raise ValueError(f"bad generator name {self.name!r}")
        if self.degree < 1:
            raise ValueError(f"generator {self.name}: degree must be >= 1")
        if self.truncation is not None and self.truncation < 1:
            raise ValueError(f"generator {self.name}: truncation must be >= 1")


@dataclass(frozen=True)
class PoincareSeries:
    dims: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.dims)

    def __getitem__(self, d: int) -> int:
        return self.dims[d] if 0 <= d < len(self.dims) else 0


@dataclass(frozen=True)
class EulerData:
    chi: int
    complete: bool


@dataclass(frozen=True)
class Violation:
    kind: str  # "unit" | "commutativity" | "degree" | "associativity"
    indices: tuple[int, ...]
    detail: str


@dataclass(frozen=True, eq=True)
class FiniteGradedAlgebra:
    """Structure-constant algebra truncated at ``cap``.

    ``table[(i, j)]`` is the product of basis elements ``i`` and ``j`` as a
    bitset over the basis, or ``OVERFLOW``.  Missing entries read as zero when
    the product degree is within the cap and ``OVERFLOW`` otherwise.
    """

    labels: tuple[str, ...]
    degrees: tuple[int, ...]
    cap: int
    table: Mapping[tuple[int, int], object] = field(hash=False)
    unit: int = 0
    generators: tuple[GeneratorSpec, ...] = ()
    exponents: tuple[tuple[int, ...], ...] = ()
    # top nonzero degree when known to be complete (finite presentation)
    known_top: int | None = None

    def __post_init__(self):
        if len(self.labels) != len(self.degrees):
            raise ValueError("labels and degrees differ in length")
        if self.cap < 0:
            raise ValueError("cap too small")

    # -- basis bookkeeping -------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def one(self) -> int:
        return 1 << self.unit

    def basis_of_degree(self, d: int) -> list[int]:
        return [i for i, deg in enumerate(self.degrees) if deg == d]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def element_degrees(self, x: int) -> set[int]:
        return {self.degrees[i] for i in iter_bits(x)}

    def is_homogeneous(self, x: int, d: int) -> bool:
        return all(self.degrees[i] == d for i in iter_bits(x))

    def homogeneous_parts(self, x: int) -> dict[int, int]:
        parts: dict[int, int] = {}
        for i in iter_bits(x):
            d = self.degrees[i]
            parts[d] = parts.get(d, 0) | (1 << i)
        return parts

    def generator(self, name: str) -> int:
        for g_idx, g in enumerate(self.generators):
            if g.name == name:
                target = tuple(1 if t == g_idx else 0 for t in range(len(self.generators)))
                if g.truncation == 1:
                    return 0
                if g.degree > self.cap:
                    return OVERFLOW
                return 1 << self.exponents.index(target)
        raise KeyError(name)

    @property
    def top_degree(self) -> int:
        return max(self.degrees) if self.degrees else -1

    @property
    def complete(self) -> bool:
        if self.known_top is not None and self.known_top <= self.cap:
            return True
        return self.top_degree < self.cap

    # -- arithmetic --------------------------------------------------------
    def basis_product(self, i: int, j: int):
        try:
            return self.table[(i, j)]
        except KeyError:
            if self.degrees[i] + self.degrees[j] > self.cap:
                return OVERFLOW
            return 0

    def multiply(self, a: int, b: int):
        """Bilinear product; ``OVERFLOW`` if any contributing product does."""
        acc = 0
        for i in iter_bits(a):
            for j in iter_bits(b):
                p = self.basis_product(i, j)
                if p is OVERFLOW:
                    return OVERFLOW
                acc ^= p
        return acc

    def mul(self, a: int, b: int) -> int:
        """Like ``multiply`` but raises ``CapOverflow`` instead of returning it."""
        p = self.multiply(a, b)
        if p is OVERFLOW:
            raise CapOverflow(f"product of {self.format(a)} and {self.format(b)} exceeds cap {self.cap}")
        return p

    def power(self, a: int, e: int):
        acc = self.one
        for _ in range(e):
            acc = self.multiply(acc, a)
            if acc is OVERFLOW:
                return OVERFLOW
        return acc

    def format(self, x) -> str:
        if x is OVERFLOW:
            return "OVERFLOW"
        if x == 0:
            return "0"
        return " + ".join(self.labels[i] for i in iter_bits(x))

    def __repr__(self) -> str:
        return f"FiniteGradedAlgebra(dim={self.dim}, cap={self.cap}, labels={list(self.labels)})"


def _monomial_label(names: Sequence[str], exps: Sequence[int]) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def build_from_presentation(gens: Sequence[GeneratorSpec], cap: int) -> FiniteGradedAlgebra:
    """Truncated monomial algebra ``F2[g_1, ...] / <g_i^{e_i}>`` up to ``cap``."""
    if cap < 0:
        raise ValueError("cap too small")
    names = [g.name for g in gens]
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate generator names in {names}")

    ranges = []
    for g in gens:
        hi = cap // g.degree
        if g.truncation is not None:
            hi = min(hi, g.truncation - 1)
        ranges.append(range(hi + 1))
    monos = []
    for exps in itertools.product(*ranges):
        deg = sum(e * g.degree for e, g in zip(exps, gens))
        if deg <= cap:
            monos.append((deg, tuple(-e for e in exps), exps))
    monos.sort()
    exponents = tuple(m[2] for m in monos)
    degrees = tuple(m[0] for m in monos)
    labels = tuple(_monomial_label(names, e) for e in exponents)
    where = {e: i for i, e in enumerate(exponents)}

    table: dict[tuple[int, int], object] = {}
    for i, ei in enumerate(exponents):
        for j, ej in enumerate(exponents):
            s = tuple(a + b for a, b in zip(ei, ej))
            if any(g.truncation is not None and e >= g.truncation for e, g in zip(s, gens)):
                table[(i, j)] = 0
            elif degrees[i] + degrees[j] > cap:
                table[(i, j)] = OVERFLOW
            else:
                table[(i, j)] = 1 << where[s]

    known_top = None
    if all(g.truncation is not None for g in gens):
        known_top = sum((g.truncation - 1) * g.degree for g in gens)
    unit = where[tuple(0 for _ in gens)]
    return FiniteGradedAlgebra(
        labels=labels,
        degrees=degrees,
        cap=cap,
        table=table,
        unit=unit,
        generators=tuple(gens),
        exponents=exponents,
        known_top=known_top,
    )


def point_algebra(cap: int = 0) -> FiniteGradedAlgebra:
    return build_from_presentation([], cap)


def multiply(alg: FiniteGradedAlgebra, a: int, b: int):
    return alg.multiply(a, b)


def poincare_series(alg: FiniteGradedAlgebra) -> PoincareSeries:
    dims = [0] * (alg.cap + 1)
    for d in alg.degrees:
        dims[d] += 1
    return PoincareSeries(tuple(dims))


def euler_char(alg: FiniteGradedAlgebra) -> EulerData:
    dims = poincare_series(alg).dims
    chi = sum(-c if d % 2 else c for d, c in enumerate(dims))
    return EulerData(chi, alg.complete)


def validate(alg: FiniteGradedAlgebra) -> list[Violation]:
    """Check unit law, commutativity, degree additivity and in-cap associativity."""
    out: list[Violation] = []
    n = alg.dim
    lab = alg.labels
    u = alg.unit
    for i in range(n):
        for p, side in ((alg.basis_product(u, i), "left"), (alg.basis_product(i, u), "right")):
            if p != 1 << i:
                out.append(Violation("unit", (i,), f"{side} unit law fails on {lab[i]}"))
    for i in range(n):
        for j in range(i, n):
            pij, pji = alg.basis_product(i, j), alg.basis_product(j, i)
            if pij != pji:
                out.append(Violation("commutativity", (i, j), f"{lab[i]}*{lab[j]} != {lab[j]}*{lab[i]}"))
    for i in range(n):
        for j in range(n):
            p = alg.basis_product(i, j)
            target = alg.degrees[i] + alg.degrees[j]
            if p is OVERFLOW:
                if target <= alg.cap:
                    out.append(Violation("degree", (i, j), f"{lab[i]}*{lab[j]} overflows inside the cap"))
            elif not alg.is_homogeneous(p, target):
                out.append(Violation("degree", (i, j), f"{lab[i]}*{lab[j]} is not of degree {target}"))
    # (i, j, k) and (k, j, i) state the same identity once products commute
    for i, j, k in itertools.product(range(n), repeat=3):
        if i > k or alg.degrees[i] + alg.degrees[j] + alg.degrees[k] > alg.cap:
            continue
        ij, jk = alg.basis_product(i, j), alg.basis_product(j, k)
        left = OVERFLOW if ij is OVERFLOW else alg.multiply(ij, 1 << k)
        right = OVERFLOW if jk is OVERFLOW else alg.multiply(1 << i, jk)
        if left != right:
            out.append(
                Violation(
                    "associativity",
                    (i, j, k),
                    f"({lab[i]}*{lab[j]})*{lab[k]} != {lab[i]}*({lab[j]}*{lab[k]})",
                )
            )
    return out


__all__ = [
    "OVERFLOW",
    "CapOverflow",
    "EulerData",
    "FiniteGradedAlgebra",
    "GeneratorSpec",
    "PoincareSeries",
    "Violation",
    "build_from_presentation",
    "euler_char",
    "multiply",
    "point_algebra",
    "poincare_series",
    "validate",
]
