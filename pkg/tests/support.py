"""Shared builders and independent oracles for the test suite."""

from __future__ import annotations

import random

from borsuk.algebra import GeneratorSpec, build_from_presentation
from borsuk.bundle import BundleData, FiberKind, FiberSpec, VectorBundleSpec, nu_subscripts, w_subscripts
from borsuk.charpoly import FiberedPolynomial, build_W1, build_W2, build_Wprime


def base_algebra(name: str, cap: int):
    gens = {
        "point": [],
        "t2": [GeneratorSpec("t", 1, 2)],
        "t3": [GeneratorSpec("t", 1, 3)],
        "t4": [GeneratorSpec("t", 1, 4)],
        "s2t2": [GeneratorSpec("s", 1, 2), GeneratorSpec("t", 1, 2)],
    }[name]
    return build_from_presentation(gens, cap)


ACCEPTANCE_BASES = ("point", "t2", "t4", "s2t2")
ACCEPTANCE_FIBERS = (("real", 1), ("real", 3), ("real", 5), ("complex", 1), ("complex", 3))


def random_element(alg, degree: int, rng: random.Random) -> int:
    v = 0
    for b in alg.basis_of_degree(degree):
        if rng.random() < 0.5:
            v |= 1 << b
    return v


def random_bundle(fiber: FiberSpec, base, rng: random.Random) -> BundleData:
    w = {i: random_element(base, i, rng) for i in w_subscripts(fiber)}
    nu = {i: random_element(base, i, rng) for i in nu_subscripts(fiber)}
    alpha = rng.randint(0, 1) if fiber.kind is FiberKind.REAL else 0
    return BundleData(fiber, base, {i: c for i, c in w.items() if c}, {i: c for i, c in nu.items() if c}, alpha)


def random_vector_bundle(k: int, base, rng: random.Random) -> VectorBundleSpec:
    wp = {i: random_element(base, i, rng) for i in range(1, k + 1)}
    return VectorBundleSpec(k, {i: c for i, c in wp.items() if c})


def brute_force_membership(q: FiberedPolynomial, bd: BundleData, vb: VectorBundleSpec, limit: int = 20):
    """Exhaustive search over every cofactor vector (Gray-code order).

    Returns (is_member, n_unknowns), or (None, n_unknowns) when the slice has
    more than ``limit`` unknown bits.  Coordinates are indexed independently
    of the engine's slice ordering.
    """
    W1, W2 = build_W1(bd), build_W2(bd)
    Wp = build_Wprime(vb, bd.base, bd.fiber)
    ring = W1.ring
    d = q.degree + vb.k
    target_poly = q * Wp

    images = []
    for W in (W1, W2):
        e = d - W.degree
        for j in range(e // ring.y_degree + 1 if e >= 0 else 0):
            for i in range(e - j * ring.y_degree + 1):
                c_deg = e - i - j * ring.y_degree
                for b, deg in enumerate(bd.base.degrees):
                    if deg == c_deg:
                        images.append(W * ring.monomial(i, j, 1 << b))
    n = len(images)
    if n > limit:
        return None, n

    universe: dict[tuple, int] = {}

    def pack(p: FiberedPolynomial) -> int:
        v = 0
        for (i, j), c in sorted(p.terms.items()):
            for b in range(bd.base.dim):
                if (c >> b) & 1:
                    v |= 1 << universe.setdefault((i, j, b), len(universe))
        return v

    target = pack(target_poly)
    cols = [pack(p) for p in images]
    if target == 0:
        return True, n
    acc = 0
    for g in range(1, 1 << n):
        acc ^= cols[(g & -g).bit_length() - 1]
        if acc == target:
            return True, n
    return False, n


class SliceEnumerator:
    """Exhaustive oracle for one degree slice of the ideal <W1, W2>.

    Every cofactor pair (r1, r2) in the slice is enumerated, split
    meet-in-the-middle: all sums of the first half of the cofactor images are
    listed, all sums of the second half are hashed, and a target t is in the
    span iff ``t ^ a`` is hashed for some listed ``a``.  No elimination is
    used.  ``images`` is None when the slice has more than ``limit`` unknowns.
    """

    def __init__(self, bd: BundleData, degree: int, limit: int = 20):
        W1, W2 = build_W1(bd), build_W2(bd)
        ring = W1.ring
        self.degree = degree
        self.universe: dict[tuple, int] = {}
        self.base_dim = bd.base.dim
        polys = []
        for W in (W1, W2):
            e = degree - W.degree
            for j in range(e // ring.y_degree + 1 if e >= 0 else 0):
                for i in range(e - j * ring.y_degree + 1):
                    c_deg = e - i - j * ring.y_degree
                    for b, deg in enumerate(bd.base.degrees):
                        if deg == c_deg:
                            polys.append(W * ring.monomial(i, j, 1 << b))
        self.n_unknowns = len(polys)
        if self.n_unknowns > limit:
            self.images = None
            return
        self.images = [self.pack(p) for p in polys]
        half = self.n_unknowns // 2
        self.left = _all_sums(self.images[:half])
        self.right = set(_all_sums(self.images[half:]))

    def pack(self, p: FiberedPolynomial) -> int:
        v = 0
        for (i, j), c in sorted(p.terms.items()):
            for b in range(self.base_dim):
                if (c >> b) & 1:
                    v |= 1 << self.universe.setdefault((i, j, b), len(self.universe))
        return v

    def contains(self, p: FiberedPolynomial) -> bool:
        t = self.pack(p)
        return any(t ^ a in self.right for a in self.left)


def _all_sums(vectors: list[int]) -> list[int]:
    out = [0]
    for v in vectors:
        out += [u ^ v for u in out]
    return out


def naive_rank(rows: list[list[int]]) -> int:
    """Unpacked Gaussian elimination on lists of 0/1 entries."""
    m = [r[:] for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] == 1), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(nrows):
            if i != r and m[i][c] == 1:
                m[i] = [(a + b) % 2 for a, b in zip(m[i], m[r])]
        r += 1
    return r


def naive_rank_of_ints(vectors: list[int], width: int) -> int:
    return naive_rank([[(v >> i) & 1 for i in range(width)] for v in vectors])
