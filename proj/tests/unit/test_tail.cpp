#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dmf/tail.hpp"

using namespace dmf;

static Tail rand_tail(const Field* f, std::mt19937_64& rng, int ram = 1) {
    Tail x = Tail::zero_at(f, Rat(8));
    x.ram = ram;
    x.prec_num = 8 * ram;
    int nterms = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < nterms; ++i) {
        std::int64_t e = static_cast<std::int64_t>(rng() % (10 * ram)) - 7 * ram;
        auto c = static_cast<std::uint16_t>(rng() % f->size);
        if (c) x.terms.push_back({e, c});
    }
    x.normalize();
    return x;
}

TEST_CASE("embedding t is the monomial of norm q") {
    const Field* f = Field::get(2, 1);
    Tail t = Tail::from_poly(Poly::gen(f));
    CHECK(t.is_exact());
    REQUIRE(t.norm_exp().has_value());
    CHECK(*t.norm_exp() == Rat(1));
}

TEST_CASE("geometric series for 1/(t-1) over F2") {
    const Field* f = Field::get(2, 1);
    RatF x(Poly::constant(f, 1), Poly::parse_csv(f, "1,1"));  // 1/(t+1)
    Tail v = Tail::from_ratf(x, Rat(4));
    // t^{-1} + t^{-2} + t^{-3} + O(t^{-4}) at least
    Tail expect = Tail::monomial(f, 1, Rat(-1)) + Tail::monomial(f, 1, Rat(-2)) +
                  Tail::monomial(f, 1, Rat(-3));
    Tail diff = v - expect.truncated(Rat(4));
    CHECK(diff.vanishes());
}

TEST_CASE("Frobenius on a ramified element, q-power of (t^{1/2}+1) over F2") {
    const Field* f = Field::get(2, 1);
    Tail x = Tail::monomial(f, 1, Rat(1, 2)) + Tail::one(f);
    Tail y = x.frob_pow(2);
    Tail expect = Tail::from_poly(Poly::gen(f)) + Tail::one(f);
    CHECK(y == expect);
}

TEST_CASE("ultrametric and multiplicativity of the norm") {
    std::mt19937_64 rng(13);
    const Field* f = Field::get(3, 1);
    for (int i = 0; i < 300; ++i) {
        Tail a = rand_tail(f, rng), b = rand_tail(f, rng, 2);
        if (!a.has_terms() || !b.has_terms()) continue;
        Rat na = *a.norm_exp(), nb = *b.norm_exp();
        Tail s = a + b;
        if (s.has_terms()) {
            CHECK(*s.norm_exp() <= std::max(na, nb));
            if (na != nb) CHECK(*s.norm_exp() == std::max(na, nb));
        }
        Tail p = a * b;
        if (p.has_terms()) CHECK(*p.norm_exp() == na + nb);
    }
}

TEST_CASE("inversion round trip within precision") {
    std::mt19937_64 rng(17);
    const Field* f = Field::get(2, 2);
    for (int i = 0; i < 200; ++i) {
        Tail a = rand_tail(f, rng);
        if (!a.has_terms()) continue;
        Tail r = a.inv() * a - Tail::one(f);
        CHECK(r.vanishes());
    }
}

TEST_CASE("precision exhaustion raises rather than guessing") {
    const Field* f = Field::get(2, 1);
    Tail z = Tail::zero_at(f, Rat(5));
    CHECK_THROWS_AS((void)z.inv(), precision_error);
}

TEST_CASE("nth roots: Newton plus inverse Frobenius") {
    const Field* f3 = Field::get(3, 1);
    SUBCASE("sqrt of t ramifies") {
        Tail t = Tail::from_poly(Poly::gen(f3));
        Tail r = t.nth_root(2, 3);
        CHECK(*r.norm_exp() == Rat(1, 2));
        CHECK((r * r) == t);
    }
    SUBCASE("sqrt of t^2 picks the coefficient-1 root") {
        Tail t2 = Tail::from_poly(Poly::gen(f3).pow(2));
        Tail r = t2.nth_root(2, 3);
        CHECK(r == Tail::from_poly(Poly::gen(f3)));
    }
    SUBCASE("root of unity forces a constant-field extension") {
        // sqrt(-t): leading coefficient needs i in F_9
        Tail mt = Tail::from_poly(Poly::gen(f3)).scaled(2);
        Tail r = mt.nth_root(2, 3);
        CHECK(r.f->deg == 2);
        CHECK((r * r) == mt.promoted(r.f, r.ram));
    }
    SUBCASE("random roots round trip at precision") {
        std::mt19937_64 rng(23);
        for (int i = 0; i < 60; ++i) {
            Tail a = rand_tail(f3, rng);
            if (!a.has_terms()) continue;
            for (int n : {2, 3, 4}) {
                Tail an = a.pow_int(n);
                Tail r = an.nth_root(n, 3);
                Tail diff = r.pow_int(n) - an;
                CHECK(diff.vanishes());
            }
        }
    }
    SUBCASE("nth_root(1, n) = 1") {
        CHECK(Tail::one(f3).nth_root(5, 3) == Tail::one(f3));
    }
}

TEST_CASE("rendering") {
    const Field* f = Field::get(2, 1);
    Tail x = Tail::monomial(f, 1, Rat(1, 2)) + Tail::one(f);
    CHECK(x.truncated(Rat(3)).str() == "t^(1/2) + 1 + O(t^-3)");
}
