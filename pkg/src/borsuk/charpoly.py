"""Polynomials over H*(B) in x, y and the characteristic polynomials W1, W2, W'.

Also normal-form reduction to the Leray-Hirsch basis and a per-degree check
that H*(B)[x, y] / <W1, W2> is free on that basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .algebra import CapOverflow, FiniteGradedAlgebra
from .bundle import (
    BundleData,
    FiberKind,
    FiberSpec,
    InvalidBundle,
    VectorBundleSpec,
    leray_hirsch_basis,
    nu_subscripts,
    require_valid,
    validate_vector_bundle,
    w_subscripts,
)
from .gf2 import BitMatrix, iter_bits, rank


@dataclass(frozen=True)
class PolyRing:
    """The graded ring H*(B)[x, y] with deg x = 1 and deg y = 2 or 4."""

    base: FiniteGradedAlgebra
    y_degree: int
    x_degree: int = 1

    @classmethod
    def for_fiber(cls, base: FiniteGradedAlgebra, fiber: FiberSpec | FiberKind) -> "PolyRing":
        kind = fiber.kind if isinstance(fiber, FiberSpec) else FiberKind(fiber)
        return cls(base, 2 if kind is FiberKind.REAL else 4)

    def slice(self, d: int) -> list[tuple[int, int, int]]:
        """Coordinates (i, j, basis index) of the degree-d part, in canonical order."""
        out = []
        if d < 0:
            return out
        for j in range(d // self.y_degree + 1):
            for i in range((d - j * self.y_degree) // self.x_degree + 1):
                rest = d - i * self.x_degree - j * self.y_degree
                for b in self.base.basis_of_degree(rest):
                    out.append((i, j, b))
        return out

    def slice_index(self, d: int) -> dict[tuple[int, int, int], int]:
        return {c: n for n, c in enumerate(self.slice(d))}

    def monomial(self, i: int, j: int, coef: int | None = None) -> "FiberedPolynomial":
        coef = self.base.one if coef is None else coef
        return FiberedPolynomial(self, {(i, j): coef} if coef else {})

    def constant(self, c: int) -> "FiberedPolynomial":
        return self.monomial(0, 0, c)

    @property
    def zero(self) -> "FiberedPolynomial":
        return FiberedPolynomial(self, {})

    @property
    def one(self) -> "FiberedPolynomial":
        return self.monomial(0, 0)

    @property
    def x(self) -> "FiberedPolynomial":
        return self.monomial(1, 0)

    @property
    def y(self) -> "FiberedPolynomial":
        return self.monomial(0, 1)


@dataclass(frozen=True, eq=False)
class FiberedPolynomial:
    ring: PolyRing
    terms: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", {k: v for k, v in self.terms.items() if v})

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiberedPolynomial):
            return NotImplemented
        return self.ring == other.ring and dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "FiberedPolynomial") -> "FiberedPolynomial":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) ^ v
        return FiberedPolynomial(self.ring, out)

    __sub__ = __add__

    def __mul__(self, other: "FiberedPolynomial") -> "FiberedPolynomial":
        """Exact product; raises ``CapOverflow`` if a coefficient leaves the base cap."""
        base = self.ring.base
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) ^ base.mul(c1, c2)
        return FiberedPolynomial(self.ring, out)

    def scale(self, c: int) -> "FiberedPolynomial":
        return self * self.ring.constant(c)

    def shift(self, i: int, j: int, c: int | None = None) -> "FiberedPolynomial":
        """Multiply by the monomial c * x^i * y^j."""
        return self * self.ring.monomial(i, j, c)

    def iter_coordinates(self) -> Iterator[tuple[int, int, int]]:
        for (i, j), c in self.terms.items():
            for b in iter_bits(c):
                yield i, j, b

    def degree_of(self, i: int, j: int, b: int) -> int:
        r = self.ring
        return i * r.x_degree + j * r.y_degree + r.base.degrees[b]

    def degrees(self) -> set[int]:
        return {self.degree_of(*t) for t in self.iter_coordinates()}

    def is_homogeneous(self, d: int | None = None) -> bool:
        ds = self.degrees()
        if d is None:
            return len(ds) <= 1
        return ds <= {d}

    def homogeneous_parts(self) -> dict[int, "FiberedPolynomial"]:
        parts: dict[int, dict[tuple[int, int], int]] = {}
        for i, j, b in self.iter_coordinates():
            d = self.degree_of(i, j, b)
            bucket = parts.setdefault(d, {})
            bucket[(i, j)] = bucket.get((i, j), 0) | (1 << b)
        return {d: FiberedPolynomial(self.ring, t) for d, t in sorted(parts.items())}

    @property
    def degree(self) -> int:
        """Degree of a homogeneous polynomial (-1 for zero)."""
        ds = self.degrees()
        if not ds:
            return -1
        if len(ds) > 1:
            raise ValueError(f"polynomial is not homogeneous: degrees {sorted(ds)}")
        return ds.pop()

    @property
    def xy_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def to_vector(self, d: int, index: Mapping[tuple[int, int, int], int] | None = None) -> int:
        """Pack the degree-d part as a bitset over ``ring.slice(d)``."""
        index = index or self.ring.slice_index(d)
        v = 0
        for coord in self.iter_coordinates():
            if self.degree_of(*coord) != d:
                raise ValueError(f"term {coord} is not in degree {d}")
            v |= 1 << index[coord]
        return v

    @classmethod
    def from_vector(cls, ring: PolyRing, d: int, bits: int, coords=None) -> "FiberedPolynomial":
        coords = coords or ring.slice(d)
        terms: dict[tuple[int, int], int] = {}
        for n in iter_bits(bits):
            i, j, b = coords[n]
            terms[(i, j)] = terms.get((i, j), 0) ^ (1 << b)
        return cls(ring, terms)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"FiberedPolynomial({format_poly(self)!r})"


def _mono_str(i: int, j: int) -> str:
    parts = []
    for name, e in (("x", i), ("y", j)):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: FiberedPolynomial) -> str:
    """Terms by increasing (x, y)-weight, then increasing power of x."""
    if not p.terms:
        return "0"
    r = p.ring
    base = r.base
    out = []
    for (i, j), c in sorted(p.terms.items(), key=lambda t: (t[0][0] * r.x_degree + t[0][1] * r.y_degree, t[0][0])):
        mono = _mono_str(i, j)
        if c == base.one:
            out.append(mono or "1")
            continue
        cs = base.format(c)
        if "+" in cs and mono:
            cs = f"({cs})"
        out.append(f"{cs}*{mono}" if mono else cs)
    return " + ".join(out)


@dataclass(frozen=True)
class CharPolySet:
    W1: FiberedPolynomial
    W2: FiberedPolynomial
    Wprime: FiberedPolynomial | None
    degrees: tuple[int, int, int | None]


def build_W1(bd: BundleData) -> FiberedPolynomial:
    require_valid(bd)
    ring = PolyRing.for_fiber(bd.base, bd.fiber)
    terms = {(0, bd.fiber.m): bd.base.one}
    for sub, (i, j) in w_subscripts(bd.fiber).items():
        c = bd.w.get(sub, 0)
        if c:
            terms[(i, j)] = c
    return FiberedPolynomial(ring, terms)


def build_W2(bd: BundleData) -> FiberedPolynomial:
    require_valid(bd)
    ring = PolyRing.for_fiber(bd.base, bd.fiber)
    terms = {(bd.fiber.x_truncation, 0): bd.base.one}
    for sub, e in nu_subscripts(bd.fiber).items():
        c = bd.nu.get(sub, 0)
        if c:
            terms[(e, 0)] = c
    if bd.fiber.kind is FiberKind.REAL and bd.alpha:
        terms[(0, 1)] = bd.base.one
    return FiberedPolynomial(ring, terms)


def build_Wprime(vb: VectorBundleSpec, base: FiniteGradedAlgebra, fiber: FiberSpec | FiberKind = FiberKind.REAL) -> FiberedPolynomial:
    bad = validate_vector_bundle(vb, base)
    if bad:
        raise InvalidBundle(bad)
    ring = PolyRing.for_fiber(base, fiber)
    terms = {(vb.k, 0): base.one}
    for sub in range(1, vb.k + 1):
        c = vb.wprime.get(sub, 0)
        if c:
            terms[(vb.k - sub, 0)] = c
    return FiberedPolynomial(ring, terms)


def char_polys(bd: BundleData, vb: VectorBundleSpec | None = None) -> CharPolySet:
    W1, W2 = build_W1(bd), build_W2(bd)
    Wp = build_Wprime(vb, bd.base, bd.fiber) if vb is not None else None
    return CharPolySet(W1, W2, Wp, (bd.fiber.w1_degree, bd.fiber.w2_degree, vb.k if vb else None))


def safe_cap(bd: BundleData, vb: VectorBundleSpec | None = None) -> int:
    """Largest degree answered exactly: base cap minus max(deg W1, deg W')."""
    top = bd.fiber.w1_degree
    if vb is not None:
        top = max(top, vb.k)
    return bd.base.cap - top


@dataclass(frozen=True)
class Unknown:
    reason: str

    @property
    def kind(self) -> str:
        return "Unknown"


@dataclass(frozen=True)
class NormalForm:
    """Coefficients of a reduced polynomial against the Leray-Hirsch basis."""

    pairs: tuple[tuple[int, int], ...]
    coefficients: tuple[int, ...]

    def as_dict(self) -> dict[tuple[int, int], int]:
        return {p: c for p, c in zip(self.pairs, self.coefficients) if c}

    def is_zero(self) -> bool:
        return not any(self.coefficients)


def _reduction_key(ring: PolyRing, mono: tuple[int, int]) -> tuple[int, int]:
    i, j = mono
    return (i * ring.x_degree + j * ring.y_degree, i)


def reduce_polynomial(p: FiberedPolynomial, bd: BundleData) -> FiberedPolynomial:
    """Rewrite with x^t -> x^t - W2 and y^m -> y^m - W1 until only basis monomials remain.

    The largest reducible monomial under (x,y)-weight, then x-exponent, is
    rewritten first; each step strictly lowers that key.  Raises
    ``CapOverflow`` if a coefficient leaves the base cap.
    """
    W1, W2 = build_W1(bd), build_W2(bd)
    t, m = bd.fiber.x_truncation, bd.fiber.m
    tail1 = W1 + p.ring.monomial(0, m)
    tail2 = W2 + p.ring.monomial(t, 0)
    ring = p.ring
    work = dict(p.terms)
    while True:
        reducible = [mono for mono in work if mono[0] >= t or mono[1] >= m]
        if not reducible:
            return FiberedPolynomial(ring, work)
        i, j = max(reducible, key=lambda mono: _reduction_key(ring, mono))
        c = work.pop((i, j))
        if i >= t:
            repl = tail2.shift(i - t, j, c)
        else:
            repl = tail1.shift(i, j - m, c)
        for k, v in repl.terms.items():
            nv = work.get(k, 0) ^ v
            if nv:
                work[k] = nv
            else:
                work.pop(k, None)


def reduce_to_basis(p: FiberedPolynomial, bd: BundleData, vb: VectorBundleSpec | None = None) -> NormalForm | Unknown:
    cap = safe_cap(bd, vb)
    ds = p.degrees()
    if ds and max(ds) > cap:
        return Unknown(f"degree {max(ds)} exceeds safe cap {cap}")
    try:
        r = reduce_polynomial(p, bd)
    except CapOverflow as exc:
        return Unknown(str(exc))
    pairs = leray_hirsch_basis(bd.fiber).pairs
    return NormalForm(pairs, tuple(r.terms.get(pr, 0) for pr in pairs))


@dataclass(frozen=True)
class QuotientRow:
    degree: int
    slice_dim: int | None
    ideal_rank: int | None
    quotient_dim: int | None
    free_dim: int
    status: str  # "equal" | "unequal" | "unknown"


@dataclass(frozen=True)
class QuotientReport:
    rows: tuple[QuotientRow, ...]
    safe_cap: int

    @property
    def realizable(self) -> bool:
        """False when some in-cap degree disagrees with the free-module count."""
        return all(r.status != "unequal" for r in self.rows)

    @property
    def all_equal(self) -> bool:
        return all(r.status == "equal" for r in self.rows)


def free_module_dims(bd: BundleData, up_to_degree: int) -> list[int]:
    f = bd.fiber
    base_dims = [0] * (up_to_degree + 1)
    for deg in bd.base.degrees:
        if deg <= up_to_degree:
            base_dims[deg] += 1
    out = []
    for d in range(up_to_degree + 1):
        total = 0
        for i, j in leray_hirsch_basis(f).pairs:
            e = d - i * f.x_degree - j * f.y_degree
            if 0 <= e <= up_to_degree:
                total += base_dims[e]
        out.append(total)
    return out


def ideal_slice_generators(gens, d: int, ring: PolyRing, index=None) -> list[int]:
    """Packed images of c * x^i * y^j * W for every W in ``gens`` landing in degree d."""
    index = index or ring.slice_index(d)
    cols = []
    for W in gens:
        for i, j, b in ring.slice(d - W.degree):
            cols.append(W.shift(i, j, 1 << b).to_vector(d, index))
    return cols


def quotient_check(bd: BundleData, up_to_degree: int, vb: VectorBundleSpec | None = None) -> QuotientReport:
    """Compare dim (H*(B)[x,y]/<W1,W2>)_d with the free-module count, degree by degree."""
    W1, W2 = build_W1(bd), build_W2(bd)
    ring = W1.ring
    cap = safe_cap(bd, vb)
    free = free_module_dims(bd, up_to_degree)
    rows = []
    for d in range(up_to_degree + 1):
        if d > cap:
            rows.append(QuotientRow(d, None, None, None, free[d], "unknown"))
            continue
        coords = ring.slice(d)
        try:
            cols = ideal_slice_generators((W1, W2), d, ring)
        except CapOverflow:
            rows.append(QuotientRow(d, len(coords), None, None, free[d], "unknown"))
            continue
        rk = rank(BitMatrix.from_columns(cols, len(coords))) if cols else 0
        q = len(coords) - rk
        rows.append(QuotientRow(d, len(coords), rk, q, free[d], "equal" if q == free[d] else "unequal"))
    return QuotientReport(tuple(rows), cap)


__all__ = [
    "CharPolySet",
    "FiberedPolynomial",
    "NormalForm",
    "PolyRing",
    "QuotientReport",
    "QuotientRow",
    "Unknown",
    "build_W1",
    "build_W2",
    "build_Wprime",
    "char_polys",
    "format_poly",
    "free_module_dims",
    "ideal_slice_generators",
    "quotient_check",
    "reduce_polynomial",
    "reduce_to_basis",
    "safe_cap",
]
