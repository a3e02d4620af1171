#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dmf/hecke.hpp"

using namespace dmf;

TEST_CASE("local cosets: counts and index formula") {
    SUBCASE("trivial divisors give a single coset") {
        QParams P(2, 1);
        LocalHecke lh(P, Poly::gen(P.fq()), {0, 0});
        CHECK(lh.cosets().count() == 1);
    }
    SUBCASE("r=2 q=2 mu=(1,0): q+1 cosets") {
        QParams P(2, 1);
        LocalHecke lh(P, Poly::gen(P.fq()), {1, 0});
        CHECK(lh.cosets().group_order == 6);  // |GL_2(F_2)|
        CHECK(lh.cosets().count() == 3);
        CHECK(lh.index_formula_holds());
    }
    SUBCASE("r=2 q=2 mu=(2,0): valuation and residue of the index") {
        QParams P(2, 1);
        LocalHecke lh(P, Poly::gen(P.fq()), {2, 0});
        CHECK(lh.index_formula_holds());
        // [K':K] = q^1 * (1 + qZ)
        std::int64_t index =
            static_cast<std::int64_t>(lh.cosets().group_order / lh.cosets().stab_order);
        CHECK(index % 2 == 0);
        CHECK((index / 2) % 2 == 1);
    }
}

TEST_CASE("local classification, exhaustive over all residues") {
    struct Case { int p, r; std::vector<int> mu; };
    std::vector<Case> grid = {
        {2, 2, {1, 0}}, {2, 2, {2, 0}}, {3, 2, {1, 0}}, {3, 2, {2, 0}},
        {2, 3, {1, 0, 0}}, {2, 3, {1, 1, 0}}, {2, 3, {2, 0, 0}}, {2, 3, {2, 1, 0}},
    };
    for (const auto& c : grid) {
        QParams P(c.p, 1);
        LocalHecke lh(P, Poly::gen(P.fq()), c.mu);
        INFO("q=", c.p, " r=", c.r, " mu1=", c.mu[0]);
        CHECK(lh.classification_exhaustive());
        CHECK(lh.det_images_equal());
        CHECK(lh.index_formula_holds());
    }
}

TEST_CASE("degenerate divisor type forces zero counts mod q_p") {
    QParams P(2, 1);
    LocalHecke lh(P, Poly::gen(P.fq()), {2, 0, 0});
    for (std::int64_t x = 0; x < lh.vec_size(); ++x)
        CHECK(lh.count_containing(x) % lh.qp == 0);
}

TEST_CASE("non-monic or reducible primes are rejected") {
    QParams P(2, 1);
    Poly t2 = Poly::gen(P.fq()) * Poly::gen(P.fq());
    CHECK_THROWS_AS(LocalHecke(P, t2, {1, 0}), math_error);
}

TEST_CASE("global inclusion-exclusion identities") {
    SUBCASE("two middle-case primes, trivial level") {
        QParams P(2, 1);
        GlobalHeckeSpec spec(P, 2);
        spec.v = Vec(2, RatF(Poly(P.fq())));
        Poly t = Poly::gen(P.fq());
        Poly t1 = Poly::parse_csv(P.fq(), "1,1");
        spec.local = {{t, {2, 0}}, {t1, {2, 0}}};
        auto rep = global_identity_check(spec);
        INFO(rep.details);
        CHECK(rep.pass);
    }
    SUBCASE("nonzero level with one middle prime") {
        QParams P(2, 1);
        const Field* f = P.fq();
        GlobalHeckeSpec spec(P, 2);
        spec.v = {RatF::parse(f, "1/1,1"), RatF(Poly(f))};  // 1/(t+1)
        spec.local = {{Poly::gen(f), {2, 0}}};
        auto rep = global_identity_check(spec);
        INFO(rep.details);
        CHECK(rep.pass);
    }
    SUBCASE("degenerate rank-3 case") {
        QParams P(2, 1);
        GlobalHeckeSpec spec(P, 3);
        spec.v = Vec(3, RatF(Poly(P.fq())));
        spec.local = {{Poly::gen(P.fq()), {2, 0, 0}}};
        auto rep = global_identity_check(spec);
        INFO(rep.details);
        CHECK(rep.pass);
    }
    SUBCASE("single simple prime, empty S") {
        QParams P(3, 1);
        GlobalHeckeSpec spec(P, 2);
        spec.v = Vec(2, RatF(Poly(P.fq())));
        spec.local = {{Poly::gen(P.fq()), {1, 0}}};
        auto rep = global_identity_check(spec);
        INFO(rep.details);
        CHECK(rep.pass);
    }
}

TEST_CASE("rank-2 numeric eigen relation") {
    SUBCASE("q=2, k=1 and k=2") {
        QParams P(2, 1);
        for (int k : {1, 2}) {
            auto rep = rank2_eigen_check(P, Poly::gen(P.fq()), k, Rat(8));
            INFO(rep.details);
            CHECK(rep.pass);
        }
    }
    SUBCASE("q=3, k=2") {
        QParams P(3, 1);
        auto rep = rank2_eigen_check(P, Poly::gen(P.fq()), 2, Rat(8));
        INFO(rep.details);
        CHECK(rep.pass);
    }
}
