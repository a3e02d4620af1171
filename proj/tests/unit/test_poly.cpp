#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dmf/poly.hpp"

using namespace dmf;

static Poly rand_poly(const Field* f, int maxdeg, std::mt19937_64& rng) {
    Poly p(f);
    int d = static_cast<int>(rng() % (maxdeg + 1));
    for (int i = 0; i <= d; ++i) p.c.push_back(static_cast<std::uint16_t>(rng() % f->size));
    p.trim();
    return p;
}

// nonzero by construction: constant term 1
static Poly denom(const Field* f, int maxdeg, std::mt19937_64& rng) {
    Poly p = rand_poly(f, maxdeg, rng).shifted(1);
    return p + Poly::constant(f, 1);
}

TEST_CASE("divmod over F2: (t^2+1) / t = (t, 1)") {
    const Field* f = Field::get(2, 1);
    Poly a = Poly::parse_csv(f, "1,0,1");
    Poly b = Poly::gen(f);
    auto [q, r] = divmod(a, b);
    CHECK(q == Poly::parse_csv(f, "0,1"));
    CHECK(r == Poly::parse_csv(f, "1"));
}

TEST_CASE("gcd over F3 is monic: gcd(t^2-1, t-1) = t+2") {
    const Field* f = Field::get(3, 1);
    Poly a = Poly::parse_csv(f, "2,0,1");  // t^2 - 1
    Poly b = Poly::parse_csv(f, "2,1");    // t - 1 = t + 2
    CHECK(gcd(a, b) == Poly::parse_csv(f, "2,1"));
}

TEST_CASE("degree of zero is the -inf sentinel") {
    const Field* f = Field::get(2, 1);
    CHECK(Poly(f).degree() == NEG_INF_DEG);
}

TEST_CASE("divmod law and degree additivity on random polynomials") {
    std::mt19937_64 rng(3);
    const Field* f = Field::get(3, 1);
    for (int i = 0; i < 300; ++i) {
        Poly a = rand_poly(f, 8, rng), b = rand_poly(f, 5, rng);
        if (!a.is_zero() && !b.is_zero())
            CHECK((a * b).degree() == a.degree() + b.degree());
        if (b.is_zero()) continue;
        auto [q, r] = divmod(a, b);
        CHECK(q * b + r == a);
        if (!r.is_zero()) CHECK(r.degree() < b.degree());
    }
}

TEST_CASE("rational function field axioms") {
    std::mt19937_64 rng(11);
    const Field* f = Field::get(2, 1);
    for (int i = 0; i < 120; ++i) {
        RatF a(rand_poly(f, 4, rng), denom(f, 3, rng));
        RatF b(rand_poly(f, 4, rng), denom(f, 3, rng));
        RatF c(rand_poly(f, 4, rng), denom(f, 3, rng));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) + c == a + (b + c));
        if (!a.is_zero()) CHECK(a * a.inv() == RatF::constant(f, 1));
        CHECK(a.den.is_monic());
        CHECK(gcd(a.num, a.den).degree() <= 0);
    }
}

TEST_CASE("no (q-1)-st root of -t in F_3(t)") {
    const Field* f = Field::get(3, 1);
    Poly mt = Poly::parse_csv(f, "0,2");  // -t
    auto [ok, g] = poly_nth_root(mt, 2);
    CHECK(!ok);
    (void)g;
}

TEST_CASE("polynomial nth roots round-trip") {
    std::mt19937_64 rng(5);
    const Field* f = Field::get(3, 1);
    for (int i = 0; i < 100; ++i) {
        Poly g = rand_poly(f, 3, rng);
        if (g.is_zero()) continue;
        for (int n : {2, 3, 4}) {
            Poly gn = g.pow(n);
            auto [ok, h] = poly_nth_root(gn, n);
            CHECK(ok);
            CHECK(h.pow(n) == gn);
        }
    }
}

TEST_CASE("extended coefficient field: t = -lambda^{q-1}") {
    CoeffField k0(3, 1, true);
    RatF t = k0.t();
    RatF l = k0.lambda();
    CHECK(l.pow(2) + t == k0.zero());
    // embedding F_q(t) -> k0 is a ring hom on samples
    CoeffField plain(3, 1, false);
    std::mt19937_64 rng(9);
    const Field* f = plain.constants();
    for (int i = 0; i < 60; ++i) {
        RatF a(rand_poly(f, 3, rng), denom(f, 2, rng));
        RatF b(rand_poly(f, 3, rng), denom(f, 2, rng));
        CHECK(k0.embed_plain(a * b) == k0.embed_plain(a) * k0.embed_plain(b));
        CHECK(k0.embed_plain(a + b) == k0.embed_plain(a) + k0.embed_plain(b));
    }
}
