import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgrowth.fusion import return_probability
from qgrowth.lie import (
    GridTooCoarse,
    build_root_system,
    covariance_form,
    delta_hat,
    dominant_conjugate,
    fundamental_weight_system,
    gaussian_limit_constant,
    generator_weights,
    lattice_walk,
    lie_exact_return_probabilities,
    lie_return_probabilities,
    lie_return_probability,
    lie_volumes,
    sphere_weights,
    torus_quadrature_pk,
    walk_lattice_index,
    weyl_dim,
    weyl_orbit,
)
from qgrowth.qgroups import ao_ring

from _oracles import catalan

# name: (|W|, #positive roots, dim G, sorted fundamental dims), standard tables
TABLE = {
    "A1": (2, 1, 3, [2]),
    "A2": (6, 3, 8, [3, 3]),
    "A3": (24, 6, 15, [4, 4, 6]),
    "B2": (8, 4, 10, [4, 5]),
    "B3": (48, 9, 21, [7, 8, 21]),
    "C3": (48, 9, 21, [6, 14, 14]),
    "D4": (192, 12, 28, [8, 8, 8, 28]),
    "G2": (12, 6, 14, [7, 14]),
}

SMALL = ["A1", "A2", "A3", "B2", "G2"]  # at most 16 roots


@pytest.fixture(scope="module", params=list(TABLE))
def rs(request):
    return build_root_system(request.param)


def unit(i, r):
    return tuple(int(i == j) for j in range(r))


class TestRootSystem:
    def test_table(self, rs):
        w, npos, dim, fund = TABLE[rs.name]
        assert rs.weyl_order == w
        assert len(rs.positive_roots) == npos
        assert rs.dimension == dim
        assert sorted(weyl_dim(rs, unit(i, rs.rank)) for i in range(rs.rank)) == fund

    def test_fundamental_weight_systems(self, rs):
        for i in range(rs.rank):
            wts = fundamental_weight_system(rs, i)
            assert sum(wts.values()) == weyl_dim(rs, unit(i, rs.rank))
            # weight systems are W-invariant, hence closed under negation for these types
            if rs.name not in ("A2", "A3"):
                assert all(wts[tuple(-x for x in mu)] == m for mu, m in wts.items())

    def test_rho_orbit_is_regular(self, rs):
        # rho has Dynkin labels (1, ..., 1)
        assert len(weyl_orbit(rs, (1,) * rs.rank)) == rs.weyl_order

    def test_dominant_conjugate(self, rs):
        for mu in weyl_orbit(rs, unit(0, rs.rank)):
            assert dominant_conjugate(rs, mu) == unit(0, rs.rank)

    def test_adjoint(self, rs):
        # the highest root is the dominant conjugate of a long root and the adjoint's highest weight
        dims = {weyl_dim(rs, dominant_conjugate(rs, a)) for a in rs.roots_weight_basis}
        assert rs.dimension in dims

    def test_bad_names(self):
        with pytest.raises(ValueError):
            build_root_system("E9")
        with pytest.raises(ValueError):
            build_root_system("Q2")

    def test_nondominant(self):
        with pytest.raises(ValueError):
            weyl_dim(build_root_system("A2"), (1, -1))


@given(st.integers(0, 20), st.integers(0, 20))
def test_weyl_dim_a2_closed_form(a, b):
    rs = build_root_system("A2")
    assert weyl_dim(rs, (a, b)) == (a + 1) * (b + 1) * (a + b + 2) // 2


@given(st.integers(0, 40))
def test_weyl_dim_a1(a):
    assert weyl_dim(build_root_system("A1"), (a,)) == a + 1


@given(st.sampled_from(["A1", "A2", "A3", "B2", "B3", "C3", "G2"]), st.data())
@settings(max_examples=200, deadline=None)
def test_weyl_dim_integral(name, data):
    rs = build_root_system(name)
    lam = tuple(data.draw(st.lists(st.integers(0, 20), min_size=rs.rank, max_size=rs.rank)))
    if sum(lam) > 20:
        lam = tuple(x * 20 // sum(lam) for x in lam)
    d = weyl_dim(rs, lam)
    assert isinstance(d, int) and d >= 1


def test_volumes():
    assert lie_volumes(build_root_system("A2"), 2)[1] == [1, 18, 136]
    b, s = lie_volumes(build_root_system("A1"), 30)
    assert s == [(k + 1) ** 2 for k in range(31)]
    assert b[-1] == sum(s)


@pytest.mark.parametrize("name,k", [("A2", 6), ("B3", 4), ("G2", 5)])
def test_sphere_weight_count(name, k):
    rs = build_root_system(name)
    assert len(sphere_weights(rs, k)) == math.comb(k + rs.rank - 1, rs.rank - 1)


@pytest.mark.parametrize("name", SMALL)
def test_delta_hat_mass(name):
    rs = build_root_system(name)
    dh = delta_hat(rs)
    assert dh[(0,) * rs.rank] == rs.weyl_order
    assert sum(dh.values()) == 0


def test_delta_hat_a1():
    assert delta_hat(build_root_system("A1")) == {(0,): 2, (2,): -1, (-2,): -1}


def test_delta_guard():
    with pytest.raises(ValueError, match="guard"):
        delta_hat(build_root_system("D4"))


def test_lattice_walk_is_probability():
    law = lattice_walk(generator_weights(build_root_system("A2")), 4)
    assert sum(law.values()) == 1
    assert all(p > 0 for p in law.values())


class TestReturnProbability:
    def test_a1_catalan(self):
        rs = build_root_system("A1")
        for k in range(13):
            assert lie_return_probability(rs, k) == Fraction(catalan(k), 4**k)

    def test_a1_matches_fusion_engine(self):
        rs = build_root_system("A1")
        for k in range(1, 10):
            assert lie_return_probability(rs, k) == return_probability(ao_ring(2), k)

    def test_a2_values(self):
        rs = build_root_system("A2")
        got = [lie_return_probability(rs, k) for k in range(4)]
        assert got == [1, Fraction(1, 18), Fraction(1, 108), Fraction(65, 23328)]

    def test_a2_against_su3_torus_integral(self):
        # Weyl integration on the SU(3) torus in ambient angles, independent of the weight lattice code
        N = 48
        t1, t2 = np.meshgrid(2 * np.pi * np.arange(N) / N, 2 * np.pi * np.arange(N) / N, indexing="ij")
        z = [np.exp(1j * t1), np.exp(1j * t2), np.exp(-1j * (t1 + t2))]
        chi = sum(z) + sum(np.conj(x) for x in z)
        vdm = (z[0] - z[1]) * (z[0] - z[2]) * (z[1] - z[2])
        rs = build_root_system("A2")
        for k in range(1, 6):
            val = np.mean(np.abs(chi / 6) ** (2 * k) * np.abs(vdm) ** 2).real / 6
            assert float(lie_return_probability(rs, k)) == pytest.approx(val, rel=1e-10)

    @pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2"])
    def test_half_direct_torus_agree(self, name):
        rs = build_root_system(name)
        for k in range(4):
            half = lie_return_probability(rs, k, "half")
            assert half == lie_return_probability(rs, k, "direct")
            assert torus_quadrature_pk(rs, k) == pytest.approx(float(half), rel=1e-9, abs=1e-15)

    def test_exact_table(self):
        rs = build_root_system("B2")
        table = lie_exact_return_probabilities(rs, range(6))
        assert table == {k: lie_return_probability(rs, k) for k in range(6)}

    def test_logfloat_matches_exact(self):
        rs = build_root_system("G2")
        ks = [1, 3, 7, 10]
        got = lie_return_probabilities(rs, ks)
        for k in ks:
            assert got[k] == pytest.approx(float(lie_return_probability(rs, k)), rel=1e-10)

    def test_coarse_grid(self):
        with pytest.raises(GridTooCoarse):
            torus_quadrature_pk(build_root_system("A2"), 6, grid=4)


class TestGaussianLimit:
    def test_a1_constant(self):
        assert gaussian_limit_constant(build_root_system("A1")) == pytest.approx(2**1.5 / math.sqrt(math.pi), rel=1e-9)

    @pytest.mark.parametrize("name,idx", [("A1", 2), ("A2", 1), ("B2", 1), ("G2", 1)])
    def test_lattice_index(self, name, idx):
        assert walk_lattice_index(build_root_system(name)) == idx

    @pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2"])
    def test_covariance_positive_definite(self, name):
        G = np.array(covariance_form(build_root_system(name)), dtype=float)
        assert np.allclose(G, G.T)
        assert np.linalg.eigvalsh(G).min() > 0

    def test_a1_limit_approached(self):
        rs = build_root_system("A1")
        p = lie_return_probabilities(rs, [1000])[1000]
        assert p * 2000**1.5 == pytest.approx(gaussian_limit_constant(rs), rel=2e-3)

    def test_rank_limit(self):
        with pytest.raises(ValueError, match="rank"):
            gaussian_limit_constant(build_root_system("A3"))
