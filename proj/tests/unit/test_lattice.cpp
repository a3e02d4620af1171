#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "dmf/lattice.hpp"

using namespace dmf;

static RatF rf(const Field* f, const std::string& s) { return RatF::parse(f, s); }

TEST_CASE("coset enumeration counts") {
    SUBCASE("A^2 over F2, D = 0: the three nonzero constant vectors") {
        QParams P(2, 1);
        auto L = LatticeCoset::standard(P, 2);
        std::size_t n = enumerate_coset(P, L, 0, [](const Vec&) {});
        CHECK(n == 3);
    }
    SUBCASE("tA + A over F2, D = 1: 2*4 - 1 points") {
        QParams P(2, 1);
        const Field* f = P.fq();
        Mat b = {{rf(f, "0,1"), rf(f, "0")}, {rf(f, "0"), rf(f, "1")}};
        LatticeCoset L(b, Vec(2, RatF(Poly(f))));
        std::size_t n = enumerate_coset(P, L, 1, [&](const Vec& x) {
            CHECK(L.contains(x));
        });
        CHECK(n == 7);
    }
    SUBCASE("coset translate is respected and zero excluded") {
        QParams P(2, 1);
        const Field* f = P.fq();
        auto L = LatticeCoset::standard(P, 2).translated({rf(f, "1/0,1"), rf(f, "0")});
        std::size_t n = enumerate_coset(P, L, 1, [&](const Vec& x) {
            CHECK(!x[0].is_polynomial());
        });
        // first coordinate in t^{-1}+A with deg <= 1 (4 choices), second in A deg <= 1
        CHECK(n == 16);
    }
    SUBCASE("enumeration closed under negation and scalars") {
        QParams P(3, 1);
        auto L = LatticeCoset::standard(P, 2);
        std::vector<Vec> pts;
        enumerate_coset(P, L, 1, [&](const Vec& x) { pts.push_back(x); });
        CHECK(pts.size() == ipow(3, 4) - 1);
        auto key = [](const Vec& x) { return x[0].str() + "|" + x[1].str(); };
        std::set<std::string> all;
        for (auto& x : pts) all.insert(key(x));
        for (auto& x : pts) {
            Vec nx = {-x[0], -x[1]};
            CHECK(all.count(key(nx)) == 1);
        }
    }
}

TEST_CASE("torsion representatives") {
    QParams P2(2, 1);
    auto L2 = LatticeCoset::standard(P2, 2);
    Poly t2 = Poly::gen(P2.fq());
    CHECK(coset_reps(P2, t2, L2).size() == 3);

    QParams P3(3, 1);
    auto L3 = LatticeCoset::standard(P3, 2);
    Poly t3 = Poly::gen(P3.fq());
    CHECK(coset_reps(P3, t3, L3).size() == 8);
    auto pr = projective_reps(P3, t3, L3);
    CHECK(pr.size() == 4);
    // projective reps times F_q^x scalars recover all reps
    std::set<std::string> all;
    for (auto& x : coset_reps(P3, t3, L3)) all.insert(x[0].str() + "|" + x[1].str());
    std::set<std::string> spanned;
    for (auto& x : pr)
        for (std::uint16_t a = 1; a < 3; ++a) {
            RatF s = RatF::constant(P3.fq(), a);
            spanned.insert((x[0] * s).str() + "|" + (x[1] * s).str());
        }
    CHECK(all == spanned);
}

TEST_CASE("u-frame: L = A^2, v = (1/t, 0) gives Lambda' = tA") {
    QParams P(2, 1);
    const Field* f = P.fq();
    auto L = LatticeCoset::standard(P, 2).translated({rf(f, "1/0,1"), rf(f, "0")});
    UFrame fr = u_frame(P, L);
    CHECK(fr.l1_gen == RatF::constant(f, 1));
    CHECK(fr.v1 == rf(f, "1/0,1"));
    // lambda_scale = 1/g with (g) = (1/t) + (1) = (1/t); so Lambda' = t L'
    CHECK(fr.lambda_scale == rf(f, "0,1"));
    // brute membership: lambda in Lambda' iff (v1+L1)*lambda subset L'
    for (int k = 0; k <= 3; ++k) {
        RatF lam = rf(f, "1").pow(1) * RatF{Poly::gen(f).pow(k)};
        bool in_lambda = (lam / fr.lambda_scale).is_polynomial();
        bool stable = (fr.v1 * lam).is_polynomial() && lam.is_polynomial();
        CHECK(in_lambda == (k >= 1));
        CHECK(stable == (k >= 1));
    }
    // index [L' : x1 Lambda'] is power of q: x1 = 1/t gives index q^0 = 1
    CHECK(frame_index_log_q(P, fr, rf(f, "1/0,1")) == 0);
    // x1 = 1/t + 1 = (1+t)/t gives [L':x1 tA] = q^{1}
    CHECK(frame_index_log_q(P, fr, rf(f, "1,1/0,1")) == 1);
}

TEST_CASE("standard point and pairing") {
    QParams P(2, 1);
    SUBCASE("r = 2") {
        OmegaPoint w = standard_point(P, 2);
        CHECK(w.certified);
        CHECK(*w.entries[0].norm_exp() == Rat(1, 2));
        CHECK(*w.entries[1].norm_exp() == Rat(0));
    }
    SUBCASE("r = 3") {
        OmegaPoint w = standard_point(P, 3);
        CHECK(w.certified);
        CHECK(*w.entries[0].norm_exp() == Rat(2, 3));
        CHECK(*w.entries[1].norm_exp() == Rat(1, 3));
    }
    SUBCASE("perturbed variant keeps the certificate") {
        OmegaPoint w = standard_point(P, 2, true);
        CHECK(w.certified);
        CHECK(*w.entries[0].norm_exp() == Rat(1, 2));
    }
    SUBCASE("exact norm law |x omega| = max |x_i||omega_i| on random rows") {
        OmegaPoint w = standard_point(P, 2);
        const Field* f = P.fq();
        std::mt19937_64 rng(5);
        for (int i = 0; i < 100; ++i) {
            Poly a(f), b(f);
            for (int j = 0; j < 3; ++j) {
                a.c.push_back(static_cast<std::uint16_t>(rng() % 2));
                b.c.push_back(static_cast<std::uint16_t>(rng() % 2));
            }
            a.trim();
            b.trim();
            if (a.is_zero() && b.is_zero()) continue;
            Vec x = {RatF{a}, RatF{b}};
            Tail v = pairing(P, x, w, Rat(10));
            Rat expect = Rat(INT64_MIN / 2, 1);
            if (!a.is_zero()) expect = std::max(expect, Rat(a.degree()) + Rat(1, 2));
            if (!b.is_zero()) expect = std::max(expect, Rat(b.degree()));
            CHECK(*v.norm_exp() == expect);
        }
    }
    SUBCASE("pairing with the last unit vector gives xi") {
        const Field* f = P.fq();
        OmegaPoint w = standard_point(P, 3, false, 2);
        Vec x = {RatF(Poly(f)), RatF(Poly(f)), RatF::constant(f, 1)};
        Tail v = pairing(P, x, w, Rat(10));
        CHECK(v == Tail::monomial(f, 1, Rat(2)));
    }
}

TEST_CASE("quotient representatives and index") {
    QParams P(2, 1);
    const Field* f = P.fq();
    auto L = LatticeCoset::standard(P, 2);
    Mat b = {{rf(f, "0,1"), rf(f, "0")}, {rf(f, "0"), rf(f, "1")}};
    LatticeCoset Lsub(b, Vec(2, RatF(Poly(f))));
    CHECK(L.index_log_q(Lsub) == 1);
    auto reps = quotient_reps(P, L, Lsub);
    CHECK(reps.size() == 2);
    Mat b2 = {{rf(f, "0,1"), rf(f, "0")}, {rf(f, "0"), rf(f, "0,1")}};
    LatticeCoset Lsub2(b2, Vec(2, RatF(Poly(f))));
    CHECK(L.index_log_q(Lsub2) == 2);
    CHECK(quotient_reps(P, L, Lsub2).size() == 4);
}

TEST_CASE("hermite form is triangular with monic pivots and unimodular transform") {
    QParams P(3, 1);
    const Field* f = P.fq();
    Mat B = {{rf(f, "1,1"), rf(f, "2")}, {rf(f, "0,0,1"), rf(f, "1,2")}};
    Mat H, U;
    hermite_form(B, &H, &U);
    CHECK(H[1][0].is_zero());
    CHECK(H[0][0].num.is_monic());
    CHECK(H[1][1].num.is_monic());
    RatF du = mat_det(U);
    CHECK(du.is_polynomial());
    CHECK(du.num.degree() == 0);  // unit determinant
    Mat UB = mat_mul(U, B);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(UB[i][j] == H[i][j]);
}
