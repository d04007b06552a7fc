"""Ideal membership of q*W' in <W1, W2>, Borsuk-Ulam bounds, and the degree audit."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import CapOverflow
from .bundle import BundleData, FiberKind, FiberSpec, VectorBundleSpec
from .charpoly import (
    FiberedPolynomial,
    PolyRing,
    Unknown,
    build_W1,
    build_W2,
    build_Wprime,
    ideal_slice_generators,
    safe_cap,
)
from .gf2 import BitMatrix, BitVector, iter_bits, parity, solve


@dataclass(frozen=True)
class Member:
    r1: FiberedPolynomial
    r2: FiberedPolynomial

    kind = "Member"


@dataclass(frozen=True)
class NonMember:
    """``certificate`` is a functional on the degree slice, as a bitset over ``coords``."""

    certificate: BitVector
    degree: int
    coords: tuple[tuple[int, int, int], ...] = field(repr=False)

    kind = "NonMember"

    def pair(self, p: FiberedPolynomial) -> int:
        index = {c: n for n, c in enumerate(self.coords)}
        return parity(self.certificate.bits & p.to_vector(self.degree, index))


MembershipVerdict = Member | NonMember | Unknown


@dataclass(frozen=True)
class MembershipSystem:
    """The linear system r1*W1 + r2*W2 = q*W' restricted to one degree."""

    degree: int
    coords: tuple[tuple[int, int, int], ...]
    r1_unknowns: tuple[tuple[int, int, int], ...]
    r2_unknowns: tuple[tuple[int, int, int], ...]
    columns: tuple[int, ...]
    target: int

    @property
    def n_unknowns(self) -> int:
        return len(self.columns)


def membership_system(q: FiberedPolynomial, bd: BundleData, vb: VectorBundleSpec) -> MembershipSystem:
    """Assemble the system for homogeneous q; raises ``CapOverflow`` past the base cap."""
    W1, W2 = build_W1(bd), build_W2(bd)
    Wp = build_Wprime(vb, bd.base, bd.fiber)
    ring = W1.ring
    d = q.degree + vb.k
    coords = ring.slice(d)
    index = {c: n for n, c in enumerate(coords)}
    target = (q * Wp).to_vector(d, index)
    u1 = ring.slice(d - W1.degree)
    u2 = ring.slice(d - W2.degree)
    cols = ideal_slice_generators((W1, W2), d, ring, index)
    return MembershipSystem(d, tuple(coords), tuple(u1), tuple(u2), tuple(cols), target)


def _poly_from_unknowns(ring: PolyRing, unknowns, bits: int) -> FiberedPolynomial:
    terms: dict[tuple[int, int], int] = {}
    for n in iter_bits(bits):
        i, j, b = unknowns[n]
        terms[(i, j)] = terms.get((i, j), 0) ^ (1 << b)
    return FiberedPolynomial(ring, terms)


def _membership_homogeneous(q: FiberedPolynomial, bd: BundleData, vb: VectorBundleSpec) -> MembershipVerdict:
    cap = safe_cap(bd, vb)
    d = q.degree + vb.k
    if d > cap:
        return Unknown(f"deg(q*W') = {d} exceeds safe cap {cap}")
    try:
        sysm = membership_system(q, bd, vb)
    except CapOverflow as exc:
        return Unknown(str(exc))
    a = BitMatrix.from_columns(sysm.columns, len(sysm.coords))
    res = solve(a, BitVector(len(sysm.coords), sysm.target))
    if res.x is None:
        return NonMember(res.certificate, d, sysm.coords)
    n1 = len(sysm.r1_unknowns)
    bits = res.x.bits
    r1 = _poly_from_unknowns(q.ring, sysm.r1_unknowns, bits & ((1 << n1) - 1))
    r2 = _poly_from_unknowns(q.ring, sysm.r2_unknowns, bits >> n1)
    return Member(r1, r2)


def membership(q: FiberedPolynomial, bd: BundleData, vb: VectorBundleSpec) -> MembershipVerdict:
    """Decide whether q*W' lies in <W1, W2> inside H*(B)[x, y].

    Inhomogeneous q is split by degree; it is a member only if every part is,
    and the witnesses are summed.
    """
    ring = PolyRing.for_fiber(bd.base, bd.fiber)
    if q.is_zero():
        return Member(ring.zero, ring.zero)
    r1, r2 = ring.zero, ring.zero
    pending = None
    for part in q.homogeneous_parts().values():
        v = _membership_homogeneous(part, bd, vb)
        if isinstance(v, Unknown):
            return v
        if isinstance(v, NonMember):
            pending = pending or v
            continue
        r1, r2 = r1 + v.r1, r2 + v.r2
    return pending if pending is not None else Member(r1, r2)


def verify_member(v: Member, q: FiberedPolynomial, bd: BundleData, vb: VectorBundleSpec) -> bool:
    lhs = q * build_Wprime(vb, bd.base, bd.fiber)
    rhs = v.r1 * build_W1(bd) + v.r2 * build_W2(bd)
    return lhs == rhs


def verify_certificate(v: NonMember, q: FiberedPolynomial, bd: BundleData, vb: VectorBundleSpec) -> bool:
    """The functional kills every spanning vector of the ideal slice and sees q*W'."""
    W1, W2 = build_W1(bd), build_W2(bd)
    index = {c: n for n, c in enumerate(v.coords)}
    for col in ideal_slice_generators((W1, W2), v.degree, W1.ring, index):
        if parity(v.certificate.bits & col):
            return False
    target = [p for d, p in (q * build_Wprime(vb, bd.base, bd.fiber)).homogeneous_parts().items() if d == v.degree]
    return bool(target) and v.pair(target[0]) == 1


# -- bounds --------------------------------------------------------------------

TOTAL_DEGREE_NOTE = (
    "'degree in x and y' is read as the total degree i+j of x^i y^j, "
    "matching the summation range of the monomorphism statement"
)


@dataclass(frozen=True)
class BoundReport:
    kind: FiberKind
    n: int
    k: int
    cohom_dim_base: int
    bound: int
    valid: bool
    monomorphism_range: int
    interpretation: str = TOTAL_DEGREE_NOTE


def borsuk_bound(f: FiberSpec, k: int, cohom_dim_B: int) -> BoundReport:
    """Lower bound on cohom.dim of the zero set of an equivariant map E -> E'."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if cohom_dim_B < 0:
        raise ValueError("cohom.dim(B) must be >= 0")
    if f.kind is FiberKind.REAL:
        excess, valid = f.n - k, f.n >= k
    else:
        excess, valid = 2 * f.n - k + 1, 2 * f.n >= k
    return BoundReport(f.kind, f.n, k, cohom_dim_B, cohom_dim_B + excess, valid, excess)


@dataclass(frozen=True)
class CoincidenceTrace:
    k: int
    whitney_sum_dim: int  # V = E'' + E''
    diagonal_dim: int  # D, fixed by the swap
    complement_dim: int  # D-perp, swap acts freely off the zero section
    steps: tuple[str, ...]
    report: BoundReport


def coincidence_bound(f: FiberSpec, k: int, cohom_dim_B: int) -> CoincidenceTrace:
    """Coincidence sets A_f reduce to zero sets of h = g o f' with target D-perp of dimension k."""
    steps = (
        f"V = E'' (+) E'' has fibre dimension {2 * k}; Z2 swaps the summands",
        f"the diagonal D is the fixed set of the swap, fibre dimension {k}",
        f"D-perp is Z2-invariant of fibre dimension {k}, free off its zero section",
        "f'(x) = (f(x), f(Tx)) is equivariant E -> V",
        "g: V -> D-perp projects along D and maps V - D into D-perp - 0",
        "h = g o f' is equivariant with zero set h^-1(0) = f'^-1(D) = A_f",
    )
    return CoincidenceTrace(k, 2 * k, k, k, steps, borsuk_bound(f, k, cohom_dim_B))


# -- audit ---------------------------------------------------------------------


def tension_threshold(f: FiberSpec, k: int) -> int:
    """Corollary range: q with (x,y)-degree below this should not vanish on the zero set."""
    return f.n - k + 1 if f.kind is FiberKind.REAL else 2 * f.n - k + 2


@dataclass(frozen=True)
class AuditRow:
    q: str
    x_exp: int
    y_exp: int
    coefficient: str
    xy_degree: int
    verdict: str
    tension: bool
    reason: str = ""


@dataclass(frozen=True)
class AuditReport:
    threshold: int
    rows: tuple[AuditRow, ...]

    @property
    def tension_rows(self) -> list[AuditRow]:
        return [r for r in self.rows if r.tension]


def audit_degree_argument(bd: BundleData, vb: VectorBundleSpec, max_total_degree: int) -> AuditReport:
    """Run membership on every monomial c*x^i*y^j with i + j <= max_total_degree."""
    ring = PolyRing.for_fiber(bd.base, bd.fiber)
    threshold = tension_threshold(bd.fiber, vb.k)
    rows = []
    for total in range(max_total_degree + 1):
        for j in range(total + 1):
            i = total - j
            for b in range(bd.base.dim):
                q = ring.monomial(i, j, 1 << b)
                v = membership(q, bd, vb)
                rows.append(
                    AuditRow(
                        q=str(q),
                        x_exp=i,
                        y_exp=j,
                        coefficient=bd.base.labels[b],
                        xy_degree=total,
                        verdict=v.kind,
                        tension=v.kind == "Member" and total < threshold,
                        reason=v.reason if isinstance(v, Unknown) else "",
                    )
                )
    return AuditReport(threshold, tuple(rows))


__all__ = [
    "AuditReport",
    "AuditRow",
    "BoundReport",
    "CoincidenceTrace",
    "Member",
    "MembershipSystem",
    "MembershipVerdict",
    "NonMember",
    "TOTAL_DEGREE_NOTE",
    "Unknown",
    "audit_degree_argument",
    "borsuk_bound",
    "coincidence_bound",
    "membership",
    "membership_system",
    "tension_threshold",
    "verify_certificate",
    "verify_member",
]
