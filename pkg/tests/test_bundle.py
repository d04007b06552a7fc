import pytest
from hypothesis import given
from hypothesis import strategies as st

from borsuk.algebra import euler_char, poincare_series
from borsuk.bundle import (
    BundleData,
    FiberSpec,
    ObstructedFiber,
    VectorBundleSpec,
    leray_hirsch_basis,
    orbit_algebra,
    validate_bundle,
    validate_vector_bundle,
)

from support import base_algebra

odd = st.integers(0, 6).map(lambda i: 2 * i + 1)


def test_orbit_algebras():
    assert poincare_series(orbit_algebra(FiberSpec("real", 5))).dims[:6] == (1,) * 6
    assert orbit_algebra(FiberSpec("complex", 1)).labels == ("1", "u", "u^2")
    assert orbit_algebra(FiberSpec("real", 1)).labels == ("1", "u")


def test_even_n_rejected_with_euler_reason():
    with pytest.raises(ObstructedFiber, match="Euler characteristic 1"):
        FiberSpec("real", 4)
    with pytest.raises(ObstructedFiber, match="Euler characteristic 3"):
        FiberSpec("complex", 2)


def test_leray_hirsch_bases():
    assert leray_hirsch_basis(FiberSpec("real", 3)).pairs == ((0, 0), (1, 0), (0, 1), (1, 1))
    cx = leray_hirsch_basis(FiberSpec("complex", 3)).pairs
    assert len(cx) == 6 and all(i <= 2 and j <= 1 for i, j in cx)
    assert leray_hirsch_basis(FiberSpec("real", 1)).pairs == ((0, 0), (1, 0))


@given(odd, st.sampled_from(["real", "complex"]))
def test_basis_count_matches_orbit_algebra(n, kind):
    f = FiberSpec(kind, n)
    alg = orbit_algebra(f)
    expected = n + 1 if kind == "real" else 3 * (n + 1) // 2
    assert len(leray_hirsch_basis(f)) == poincare_series(alg).total == expected


@given(odd)
def test_orbit_degree_patterns(n):
    real = poincare_series(orbit_algebra(FiberSpec("real", n), 2 * n + 4)).dims
    assert all(real[d] == (1 if d <= n else 0) for d in range(len(real)))
    cx = poincare_series(orbit_algebra(FiberSpec("complex", n), 2 * n + 4)).dims
    assert all(cx[d] == (1 if d <= 2 * n and d % 4 in (0, 1, 2) else 0) for d in range(len(cx)))


@given(odd)
def test_fiber_euler_doubling(n):
    assert euler_char(orbit_algebra(FiberSpec("real", n))).chi == 0
    assert 2 * euler_char(orbit_algebra(FiberSpec("complex", n))).chi == n + 1


def test_validate_bundle_examples():
    point = base_algebra("point", 10)
    assert validate_bundle(BundleData(FiberSpec("real", 3), point)) == []
    t3 = base_algebra("t3", 10)
    t = t3.generator("t")
    t2 = t3.mul(t, t)
    assert validate_bundle(BundleData(FiberSpec("real", 1), t3, {2: t2, 1: t})) == []
    bad = validate_bundle(BundleData(FiberSpec("real", 1), t3, {2: t}))
    assert [v.field for v in bad] == ["w2"]


def test_validate_rejects_stray_coefficients():
    t3 = base_algebra("t3", 10)
    t = t3.generator("t")
    # complex n=3 has no w5 (no basis monomial of degree 3)
    bad = validate_bundle(BundleData(FiberSpec("complex", 3), t3, {5: t3.mul(t, t)}))
    assert [v.field for v in bad] == ["w5"]
    bad = validate_bundle(BundleData(FiberSpec("complex", 1), t3, alpha=1))
    assert [v.field for v in bad] == ["alpha"]
    bad = validate_vector_bundle(VectorBundleSpec(1, {1: t, 2: t3.mul(t, t)}), t3)
    assert [v.field for v in bad] == ["wprime2"]
