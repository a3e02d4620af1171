#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dmf/dimensions.hpp"
#include "dmf/ring.hpp"

using namespace dmf;

TEST_CASE("closed-form dimension values") {
    CHECK(dim_level_t(2, 2, 0) == 1);
    CHECK(dim_level_t(2, 2, 2) == 5);
    CHECK(dim_level_t(3, 2, 2) == 7);
    CHECK(dim_level_t(2, 3, 1) == 7);
    CHECK(dim_level_t(3, 3, 1) == 13);
    // partitions with parts {q-1, ..., q^r-1}
    CHECK(partitions_qpow(2, 2, 6) == 3);
    CHECK(partitions_qpow(3, 2, 5) == 0);
    CHECK(partitions_qpow(2, 3, 7) == 4);  // [7], [3,3,1], [3,1^4], [1^7]
    // brute-force enumeration oracle for the partition count
    for (int k = 0; k <= 9; ++k) {
        int parts[3] = {1, 3, 7};
        int count = 0;
        for (int a = 0; a * parts[0] <= k; ++a)
            for (int b = 0; a * parts[0] + b * parts[1] <= k; ++b)
                for (int c = 0; a + 3 * b + 7 * c <= k; ++c)
                    if (a + 3 * b + 7 * c == k) ++count;
        CHECK(partitions_qpow(2, 3, k) == static_cast<std::uint64_t>(count));
    }
    CHECK(dim_type_m(3, 2, 4, 1) == 1);
    CHECK(dim_type_m(3, 2, 2, 1) == 0);  // below the threshold
    CHECK(dim_weight_one_monomials(2, 3) == 4);
    CHECK(dim_weight_one_stated(3, 5) == 6);
}

TEST_CASE("slice dimensions match the closed form on the grid") {
    for (auto [p, r, kmax] : {std::tuple{2, 2, 6}, {3, 2, 6}, {2, 3, 6}, {3, 3, 4}}) {
        QParams P(p, 1);
        LevelRing R(P, r);
        CHECK(R.nvars() == (ipow(p, r) - 1) / (p - 1));
        for (int k = 0; k <= kmax; ++k) {
            INFO("q=", p, " r=", r, " k=", k);
            CHECK(R.slice(k).dim() == static_cast<int>(dim_level_t(p, r, k)));
        }
    }
}

TEST_CASE("rewriting soundness and associativity") {
    QParams P(3, 1);
    LevelRing R(P, 2);
    const Field* f = P.fq();
    // both defining relations reduce to zero
    for (int i1 = 0; i1 < R.nvars(); ++i1)
        for (int i2 = 0; i2 < R.nvars(); ++i2) {
            if (i1 == i2) continue;
            RingElem y1 = RingElem::variable(R, i1);
            RingElem y2 = RingElem::variable(R, i2);
            // fold the sum
            std::vector<std::uint16_t> w(R.r);
            for (int i = 0; i < R.r; ++i) w[i] = f->add(R.vars[i1][i], R.vars[i2][i]);
            bool zero = true;
            for (int i = 0; i < R.r; ++i) zero = zero && w[i] == 0;
            if (zero) continue;
            auto [iw, cw] = R.fold(w);
            RingElem ysum = RingElem::variable(R, iw).scaled(RatF::constant(f, cw));
            CHECK((y1 * y2 - ysum * (y1 + y2)).is_zero());
        }
    // associativity on random elements
    std::mt19937_64 rng(77);
    auto rand_elem = [&](int deg) {
        RingElem x(&R);
        const auto& s = R.slice(deg);
        std::vector<RatF> coords(s.dim(), R.k0.zero());
        for (auto& c : coords) c = RatF::constant(f, static_cast<std::uint16_t>(rng() % P.q));
        x.comp[deg] = coords;
        x.prune();
        return x;
    };
    for (int trial = 0; trial < 10; ++trial) {
        RingElem a = rand_elem(1), b = rand_elem(2), c = rand_elem(1);
        CHECK(((a * b) * c - a * (b * c)).is_zero());
        CHECK(((a + c) * b - (a * b + c * b)).is_zero());
    }
    // Frobenius: (x+y)^q = x^q + y^q
    RingElem x = rand_elem(1), y = rand_elem(1);
    CHECK(((x + y).pow(P.q) - x.pow(P.q) - y.pow(P.q)).is_zero());
}

TEST_CASE("group actions compose and fix invariant dimensions") {
    QParams P(2, 1);
    LevelRing R(P, 2);
    auto gl = full_group(P, 2, Subgroup::GL);
    CHECK(gl.size() == 6);  // |GL_2(F_2)|
    // composition on a sample element
    RingElem x = RingElem::variable(R, 0) + RingElem::variable(R, 2).pow(1);
    const Field* f = P.fq();
    auto mul = [&](const FqMat& a, const FqMat& b) {
        FqMat c(2, std::vector<std::uint16_t>(2, 0));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                std::uint16_t acc = 0;
                for (int l = 0; l < 2; ++l) acc = f->add(acc, f->mul(a[i][l], b[l][j]));
                c[i][j] = acc;
            }
        return c;
    };
    for (const auto& g1 : gl)
        for (const auto& g2 : gl)
            CHECK((act(act(x, g1), g2) - act(x, mul(g1, g2))).is_zero());
}

TEST_CASE("invariant dimensions against the closed forms") {
    SUBCASE("GL invariants = partition count") {
        for (auto [p, r, kmax] : {std::tuple{2, 2, 6}, {3, 2, 6}, {2, 3, 5}}) {
            QParams P(p, 1);
            LevelRing R(P, r);
            for (int k = 0; k <= kmax; ++k) {
                INFO("q=", p, " r=", r, " k=", k);
                CHECK(invariants(R, k, Subgroup::GL).dim ==
                      static_cast<int>(partitions_qpow(p, r, k)));
            }
        }
    }
    SUBCASE("SL decomposition into types") {
        QParams P(3, 1);
        LevelRing R(P, 2);
        for (int k = 0; k <= 6; ++k) {
            int sl = invariants(R, k, Subgroup::SL).dim;
            int sum = 0;
            for (int m = 0; m < P.q - 1; ++m) sum += invariants(R, k, Subgroup::GL, m).dim;
            CHECK(sl == sum);
        }
    }
    SUBCASE("unipotent invariants count weight-one monomials") {
        for (auto [p, r, kmax] : {std::tuple{2, 2, 5}, {3, 2, 5}, {2, 3, 4}}) {
            QParams P(p, 1);
            LevelRing R(P, r);
            for (int k = 1; k <= kmax; ++k) {
                INFO("q=", p, " r=", r, " k=", k);
                CHECK(invariants(R, k, Subgroup::Unipotent).dim ==
                      static_cast<int>(dim_weight_one_monomials(r, k)));
            }
        }
    }
}

TEST_CASE("Dickson data: invariance, mixed vanishing, delta identities") {
    for (auto [p, r] : {std::pair{2, 2}, {3, 2}, {2, 3}}) {
        QParams P(p, 1);
        LevelRing R(P, r);
        int qr = static_cast<int>(ipow(p, r));
        DicksonData d = dickson_generators(R, qr, 2);
        INFO("q=", p, " r=", r);
        CHECK(d.mixed_vanish);
        CHECK(d.psi_t.top() == r);
        // g_{t,0} = t
        CHECK((d.psi_t.c[0] - RingElem::scalar(R, R.k0.t())).is_zero());
        // GL-invariance of every coefficient, exhaustively for rank 2
        auto grp = (r == 2) ? full_group(P, r, Subgroup::GL)
                            : group_generators(P, r, Subgroup::GL);
        for (const auto& g : grp)
            for (int i = 0; i <= d.psi_t.top(); ++i)
                CHECK((act(d.psi_t.c[i], g) - d.psi_t.c[i]).is_zero());
        // delta_t is SL-invariant and GL-semi-invariant of type deg(t) = 1
        const Field* f = P.fq();
        for (const auto& g : grp) {
            std::uint16_t dm = f->inv(fq_det(P, g));
            CHECK((act(d.delta_t, g) - d.delta_t.scaled(RatF::constant(f, dm))).is_zero());
        }
        // delta_t^{q-1} = +-Delta_t with the verified sign
        int sign = delta_power_sign(P, r, 1);
        RingElem delta = d.psi_t.c[r];
        RingElem expect = (sign == 1) ? delta : -delta;
        CHECK((d.delta_t.pow(p - 1) - expect).is_zero());
        // e_1 = g_{t,1}/(t^q - t)
        RatF tt = R.k0.t();
        CHECK((d.e_seq[1] - d.psi_t.c[1].scaled((tt.frob_pow(p) - tt).inv())).is_zero());
    }
}

TEST_CASE("fraction-field model agrees with the normal form") {
    for (auto [p, r] : {std::pair{2, 2}, {3, 2}, {2, 3}}) {
        QParams P(p, 1);
        LevelRing R(P, r);
        const Field* f = P.fq();
        // relations map to zero
        for (int i1 = 0; i1 < R.nvars(); ++i1)
            for (int i2 = i1 + 1; i2 < R.nvars(); ++i2) {
                std::vector<std::uint16_t> w(R.r);
                for (int i = 0; i < R.r; ++i) w[i] = f->add(R.vars[i1][i], R.vars[i2][i]);
                auto [iw, cw] = R.fold(w);
                FracElem y1 = frac_variable(R, i1), y2 = frac_variable(R, i2);
                FracElem ysum = frac_variable(R, iw) * frac_scalar(R, RatF::constant(f, cw));
                CHECK((y1 * y2 - ysum * (y1 + y2)).is_zero());
            }
        // the embedding is injective on the slices of the test grid
        std::mt19937_64 rng(5);
        for (int k = 1; k <= 3; ++k) {
            const auto& s = R.slice(k);
            for (int trial = 0; trial < 6; ++trial) {
                RingElem x(&R);
                std::vector<RatF> coords(s.dim(), R.k0.zero());
                for (auto& c : coords)
                    c = RatF::constant(f, static_cast<std::uint16_t>(rng() % P.q));
                x.comp[k] = coords;
                x.prune();
                CHECK(embed_ring_elem(R, x).is_zero() == x.is_zero());
            }
        }
    }
}

TEST_CASE("symbolic tower identity via the fraction model") {
    for (auto [p, r] : {std::pair{2, 2}, {3, 2}, {2, 3}}) {
        QParams P(p, 1);
        LevelRing R(P, r);
        int qr = static_cast<int>(ipow(p, r));
        DicksonData d = dickson_generators(R, qr, 1);
        // psi_{t^2} = psi_t o psi_t; its top coefficient is Delta_t^{1+q^r}
        AdditivePoly<FracElem> psi;
        for (int i = 0; i <= d.psi_t.top(); ++i) psi.c.push_back(embed_ring_elem(R, d.psi_t.c[i]));
        auto comp = additive_compose(psi, psi, P.q);
        CHECK(comp.top() == 2 * r);
        FracElem delta = embed_ring_elem(R, d.psi_t.c[r]);
        INFO("q=", p, " r=", r);
        CHECK((comp.c[2 * r] - delta.pow(1 + qr)).is_zero());
        // and the composition is the additive polynomial of t^2: constant t^2
        FracElem t2 = frac_scalar(R, R.k0.t() * R.k0.t());
        CHECK((comp.c[0] - t2).is_zero());
    }
}

TEST_CASE("type decomposition and the delta shift") {
    QParams P(3, 1);
    LevelRing R(P, 2);
    DicksonData d = dickson_generators(R, 9, 1);
    // dim of type 1 in weight 4 is 1, spanned by delta_t
    auto inv41 = invariants(R, 4, Subgroup::GL, 1);
    CHECK(inv41.dim == 1);
    CHECK(inv41.dim == static_cast<int>(dim_type_m(3, 2, 4, 1)));
    // delta_t itself lies in that eigenspace
    const Field* f = P.fq();
    for (const auto& g : group_generators(P, 2, Subgroup::GL)) {
        std::uint16_t dm = f->inv(fq_det(P, g));
        CHECK((act(d.delta_t, g) - d.delta_t.scaled(RatF::constant(f, dm))).is_zero());
    }
    // multiplication by delta_t maps type-0 weight-4 onto type-1 weight-8
    auto inv40 = invariants(R, 4, Subgroup::GL, 0);
    auto inv81 = invariants(R, 8, Subgroup::GL, 1);
    CHECK(inv81.dim == static_cast<int>(dim_type_m(3, 2, 8, 1)));
    CHECK(inv40.dim == static_cast<int>(partitions_qpow(3, 2, 4)));
    // injectivity of the shift on the type-0 basis
    int rank = 0;
    {
        std::vector<RingElem> images;
        for (const auto& vec : inv40.basis) {
            RingElem x(&R);
            std::vector<RatF> coords(R.slice(4).dim(), R.k0.zero());
            for (size_t i = 0; i < vec.size(); ++i)
                if (vec[i]) coords[i] = RatF::constant(f, vec[i]);
            x.comp[4] = coords;
            x.prune();
            images.push_back(x * d.delta_t);
        }
        // rank over k0 via independence of coordinates: all nonzero and
        // pairwise independent is enough at dimension 1
        for (auto& y : images)
            if (!y.is_zero()) ++rank;
    }
    CHECK(rank == inv40.dim);
}
