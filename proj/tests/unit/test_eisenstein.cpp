#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dmf/eisenstein.hpp"

using namespace dmf;

static RatF rf(const Field* f, const std::string& s) { return RatF::parse(f, s); }

static LatticeCoset coset_v_t_inv(const QParams& P, int r) {
    auto L = LatticeCoset::standard(P, r);
    Vec v(r, RatF(Poly(P.fq())));
    v[0] = rf(P.fq(), "1/0,1");  // t^{-1}
    return L.translated(v);
}

TEST_CASE("grouped and direct summation agree exactly on the same box") {
    for (auto [p, r] : {std::pair{2, 2}, {3, 2}, {2, 3}}) {
        QParams P(p, 1);
        OmegaPoint w = standard_point(P, r);
        for (int k : {1, 2, 3}) {
            for (bool shifted : {false, true}) {
                LatticeCoset c = shifted ? coset_v_t_inv(P, r) : LatticeCoset::standard(P, r);
                BoxSpec box = box_for_coset(P, c, w, Rat(2));
                Trunc tr = Trunc::absolute(Rat(k) * box.tail_exp + Rat(10));
                Tail a = box_sum_grouped(P, k, box, tr);
                Tail b = box_sum_direct(P, k, box, tr);
                CHECK(agree_at_joint_precision(a, b));
                CHECK(a.has_terms() == b.has_terms());
            }
        }
    }
}

TEST_CASE("exponential tower equals the literal product on small boxes") {
    QParams P(2, 1);
    OmegaPoint w = standard_point(P, 2);
    auto L = LatticeCoset::standard(P, 2);
    BoxSpec box = box_for_coset(P, L, w, Rat(2));
    Trunc tr = Trunc::absolute(Rat(20));
    ExpSpace S = exp_space(P, box.gens, tr);
    // evaluate both at a sample z of small norm
    Tail z = Tail::monomial(P.fq(), 1, Rat(-1));
    Tail via_tower = exp_space_eval(P, S, z, tr);
    Tail num = Tail::one(P.fq());
    Tail den = Tail::one(P.fq());
    std::function<void(size_t, Tail, bool)> walk = [&](size_t i, Tail h, bool zero) {
        if (i == box.gens.size()) {
            if (zero) return;
            num = tr.apply(num * (h - z));
            den = tr.apply(den * h);
            return;
        }
        walk(i + 1, h, zero);
        for (std::uint32_t c = 1; c < 2; ++c) walk(i + 1, h + box.gens[i], false);
    };
    walk(0, Tail::zero(P.fq()), true);
    Tail via_product = z * num * tr.apply(den).inv();
    CHECK(agree_at_joint_precision(via_tower, via_product));
}

TEST_CASE("weight-one inversion at certified points") {
    SUBCASE("q=2 r=2 full precision") {
        QParams P(2, 1);
        auto rep = weight1_inversion_check(P, coset_v_t_inv(P, 2), standard_point(P, 2), Rat(8),
                                           Rat(7));
        CHECK(rep.pass);
    }
    SUBCASE("q=3 r=2 moderate ball") {
        QParams P(3, 1);
        auto rep = weight1_inversion_check(P, coset_v_t_inv(P, 2), standard_point(P, 3 - 1), Rat(8),
                                           Rat(5));
        CHECK(rep.pass);
    }
}

TEST_CASE("slash reindexing for small gamma") {
    QParams P(2, 1);
    const Field* f = P.fq();
    OmegaPoint w = standard_point(P, 2);
    LatticeCoset c = coset_v_t_inv(P, 2);
    SUBCASE("identity is exact") {
        auto rep = slash_check(P, 2, c, mat_identity(f, 2), w, Rat(8));
        CHECK(rep.pass);
    }
    SUBCASE("upper transvection") {
        Mat g = {{rf(f, "1"), rf(f, "1")}, {rf(f, "0"), rf(f, "1")}};
        auto rep = slash_check(P, 2, c, g, w, Rat(8));
        CHECK(rep.pass);
    }
    SUBCASE("lower transvection with t") {
        Mat g = {{rf(f, "1"), rf(f, "0")}, {rf(f, "0,1"), rf(f, "1")}};
        auto rep = slash_check(P, 1, c, g, w, Rat(8));
        CHECK(rep.pass);
    }
    SUBCASE("permutation") {
        Mat g = {{rf(f, "0"), rf(f, "1")}, {rf(f, "1"), rf(f, "0")}};
        auto rep = slash_check(P, 2, LatticeCoset::standard(P, 2), g, w, Rat(8));
        CHECK(rep.pass);
    }
}

TEST_CASE("splitting over sublattice cosets") {
    QParams P(2, 1);
    const Field* f = P.fq();
    OmegaPoint w = standard_point(P, 2);
    LatticeCoset L = LatticeCoset::standard(P, 2);
    SUBCASE("trivial split") {
        auto rep = splitting_check(P, 2, L, L, w, Rat(8));
        CHECK(rep.pass);
    }
    SUBCASE("index q") {
        Mat b = {{rf(f, "0,1"), rf(f, "0")}, {rf(f, "0"), rf(f, "1")}};
        auto rep = splitting_check(P, 2, L, LatticeCoset(b, Vec(2, RatF(Poly(f)))), w, Rat(8));
        CHECK(rep.pass);
    }
    SUBCASE("index q^2") {
        Mat b = {{rf(f, "0,1"), rf(f, "0")}, {rf(f, "0"), rf(f, "0,1")}};
        auto rep = splitting_check(P, 2, L, LatticeCoset(b, Vec(2, RatF(Poly(f)))), w, Rat(8));
        CHECK(rep.pass);
    }
}

TEST_CASE("doubling the ball changes no certified digit") {
    QParams P(2, 1);
    OmegaPoint w = standard_point(P, 2);
    auto rep = doubling_check(P, 2, coset_v_t_inv(P, 2), w, Rat(8));
    CHECK(rep.pass);
}

TEST_CASE("scalar equivariance is exact") {
    QParams P(3, 1);
    OmegaPoint w = standard_point(P, 2);
    auto rep = alpha_equivariance_check(P, 1, coset_v_t_inv(P, 2), w, Rat(6));
    CHECK(rep.pass);
    auto rep2 = alpha_equivariance_check(P, 2, coset_v_t_inv(P, 2), w, Rat(6));
    CHECK(rep2.pass);
}

TEST_CASE("vanishing of E_k at v=0 when q-1 does not divide k") {
    QParams P(3, 1);
    OmegaPoint w = standard_point(P, 2);
    EisValue e = eisenstein(P, 1, LatticeCoset::standard(P, 2), w, Rat(8));
    CHECK(!e.value.has_terms());  // zero to certified precision
    EisValue e2 = eisenstein(P, 2, LatticeCoset::standard(P, 2), w, Rat(8));
    CHECK(e2.value.has_terms());
}

TEST_CASE("u-order schedule checks, rank 2") {
    SUBCASE("order one for v = (1/t, 0), q = 2") {
        QParams P(2, 1);
        auto rep = u_order_one_check(P, coset_v_t_inv(P, 2), {2, 4, 6}, Rat(8));
        CHECK(rep.pass);
    }
    SUBCASE("constant term for v = (0, 1/t), q = 2") {
        QParams P(2, 1);
        const Field* f = P.fq();
        auto L = LatticeCoset::standard(P, 2);
        Vec v = {rf(f, "0"), rf(f, "1/0,1")};
        auto rep = u_constant_term_check(P, 1, L.translated(v), {2, 4, 6}, Rat(8));
        CHECK(rep.pass);
    }
    SUBCASE("full-lattice constant term, k = 2, q = 3") {
        QParams P(3, 1);
        auto rep = u_constant_term_check(P, 2, LatticeCoset::standard(P, 2), {2, 4}, Rat(8));
        CHECK(rep.pass);
    }
}
