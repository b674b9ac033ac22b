import pytest

from qgrowth.fusion import series_from_ring, volumes
from qgrowth.qgroups import (
    DegenerateFreeVersion,
    FreeGroupRing,
    ProductRing,
    RingSpecError,
    WordRing,
    ao_ring,
    as_ring,
    direct_product,
    free_product,
    free_version_growth,
    free_version_ring,
    group_ring,
    is_degenerate,
    parse_ring,
)
from qgrowth.series import (
    Polynomial,
    RationalFunction,
    closed_form,
    expand,
    free_series,
    q_invariant,
    tensor_series,
)

from _oracles import chain_dims


def S_of(ring, K):
    return RationalFunction(Polynomial(series_from_ring(ring, K).coeffs))


class TestCatalog:
    def test_as_volumes(self):
        assert volumes(as_ring(5), 3)[1] == [1, 16, 121, 841]

    @pytest.mark.parametrize("c", [2, 3, 4])
    def test_as_dims_at_square_n(self, c):
        # for n = c^2 the irreducible v_k has the dimension of u_{2k} in A_o(c)
        ring = as_ring(c * c)
        assert [ring.dim(k) for k in range(11)] == chain_dims(c, c, 20)[::2]

    def test_free_group_volumes(self):
        _, s = volumes(group_ring("free", 2), 5)
        assert s == [1, 4, 12, 36, 108, 324]

    def test_zr(self):
        _, s = volumes(group_ring("zr", 2), 4)
        assert s == [1, 4, 8, 12, 16]

    def test_domains(self):
        with pytest.raises(ValueError):
            ao_ring(1)
        with pytest.raises(ValueError):
            as_ring(3)
        with pytest.raises(ValueError):
            group_ring("zr", 0)

    def test_conjugates(self):
        f = FreeGroupRing(2)
        assert f.conjugate((1, -2, 2)) == (-2, 2, -1)
        p = direct_product(ao_ring(3), group_ring("zr", 1))
        assert p.conjugate((2, (3,))) == (2, (-3,))


class TestProducts:
    PAIRS = [("ao:3", "ao:3"), ("ao:2", "as:5"), ("as:4", "zr:1"), ("free:1", "ao:3"), ("as:5", "trivial")]

    @pytest.mark.parametrize("a,b", PAIRS)
    def test_direct_product_series(self, a, b):
        r1, r2 = parse_ring(a), parse_ring(b)
        K = 10
        got = series_from_ring(direct_product(r1, r2), K)
        assert got == expand(tensor_series(S_of(r1, K), S_of(r2, K)), K)

    @pytest.mark.parametrize("a,b", PAIRS)
    def test_free_product_series(self, a, b):
        r1, r2 = parse_ring(a), parse_ring(b)
        K = 9
        got = series_from_ring(free_product(r1, r2), K)
        assert got == expand(free_series(S_of(r1, K), S_of(r2, K)), K)

    def test_free_product_of_integers_is_free_group(self):
        _, s = volumes(parse_ring("free(zr:1,zr:1)"), 4)
        assert s == [1, 4, 12, 36, 108]

    def test_trivial_summand_in_generator(self):
        # A_s(n) has the trivial irreducible inside u; products must cope
        ring = parse_ring("prod(free:1,as:5)")
        assert volumes(ring, 2)[1] == [1, 18, 155]

    def test_word_dims_multiply(self):
        w = free_product(ao_ring(3), as_ring(5))
        assert w.dim(((0, 2), (1, 1), (0, 1))) == 8 * 4 * 3
        assert w.word_length(((0, 2), (1, 1), (0, 1))) == 4

    def test_exact_fusion_flag_propagates(self):
        fv = free_version_ring(ao_ring(3))
        assert not ProductRing(fv, ao_ring(2)).exact_fusion
        assert not WordRing(ao_ring(2), fv).exact_fusion


class TestFreeVersion:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_matches_au_closed_form(self, n):
        _, s = free_version_growth(ao_ring(n), 8)
        assert s == expand(closed_form("au", n), 8).as_ints()

    def test_ao2_free_version(self):
        # the closed form for A_u(2) still holds
        _, s = free_version_growth(ao_ring(2), 8)
        assert s == expand(closed_form("au", 2), 8).as_ints()

    def test_degenerate(self):
        assert is_degenerate(as_ring(5))
        assert not is_degenerate(ao_ring(3))
        assert not is_degenerate(group_ring("zr", 1))
        with pytest.raises(DegenerateFreeVersion, match="degenerate"):
            free_version_ring(as_ring(5))
        free_version_ring(as_ring(5), assume_nondegenerate=True)

    def test_free_version_of_free_group_doubles_q(self):
        # F_m+ has the S series of F_{2m}
        for m in (1, 2):
            _, s = free_version_growth(group_ring("free", m), 5)
            _, ref = volumes(group_ring("free", 2 * m), 5)
            assert s == ref
            S = RationalFunction([1, 1], [1, -(4 * m - 1)])
            assert q_invariant(S) == RationalFunction(4 * m)


class TestParser:
    @pytest.mark.parametrize(
        "spec,cls",
        [
            ("ao:3", "ChainRing"),
            ("  zr:2 ", "FreeAbelianRing"),
            ("prod(ao:3, as:5)", "ProductRing"),
            ("free(free:2,prod(zr:1,trivial))", "WordRing"),
            ("freeversion(ao:4)", "WordRing"),
        ],
    )
    def test_valid(self, spec, cls):
        assert type(parse_ring(spec)).__name__ == cls

    @pytest.mark.parametrize(
        "spec,production",
        [
            ("ao3", "ring"),
            ("xx:3", "atom"),
            ("ao:1", "atom"),
            ("prod(ao:3)", "ring"),
            ("prod(ao:3,as:5", "ring"),
            ("ao:3)", "ring"),
            ("freeversion(as:5)", "freeversion"),
            ("", "ring"),
        ],
    )
    def test_errors_name_production(self, spec, production):
        with pytest.raises(RingSpecError, match=f"^{production}:"):
            parse_ring(spec)
