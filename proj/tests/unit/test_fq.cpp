#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dmf/fq.hpp"

using namespace dmf;

TEST_CASE("prime fields behave like Z/p") {
    const Field* f3 = Field::get(3, 1);
    CHECK(f3->size == 3);
    CHECK(f3->add(1, 2) == 0);
    CHECK(f3->mul(2, 2) == 1);
    CHECK(f3->inv(2) == 2);
}

TEST_CASE("F4 multiplication table") {
    // F_4 = F_2(g), g^2+g+1 = 0.  index 2 is g, index 3 is g+1 = g^2.
    const Field* f4 = Field::get(2, 2);
    CHECK(f4->modulus == std::vector<std::uint8_t>({1, 1, 1}));
    std::uint16_t g = 2, g2 = f4->mul(g, g);
    CHECK(g2 == 3);
    CHECK(f4->mul(g, g2) == 1);  // g * g^2 = g^3 = 1
    CHECK(f4->inv(1) == 1);
}

TEST_CASE("field axioms on random elements") {
    std::mt19937_64 rng(42);
    for (auto [p, d] : {std::pair{2, 4}, {3, 2}, {2, 2}, {3, 4}}) {
        const Field* f = Field::get(p, d);
        for (int i = 0; i < 200; ++i) {
            auto a = static_cast<std::uint16_t>(rng() % f->size);
            auto b = static_cast<std::uint16_t>(rng() % f->size);
            auto c = static_cast<std::uint16_t>(rng() % f->size);
            CHECK(f->add(a, b) == f->add(b, a));
            CHECK(f->mul(a, f->mul(b, c)) == f->mul(f->mul(a, b), c));
            CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
            if (a != 0) CHECK(f->mul(a, f->inv(a)) == 1);
            // Frobenius additivity
            CHECK(f->pow(f->add(a, b), p) == f->add(f->pow(a, p), f->pow(b, p)));
        }
    }
}

TEST_CASE("embeddings are ring homomorphisms") {
    std::mt19937_64 rng(7);
    const Field* small = Field::get(3, 2);
    const Field* big = Field::get(3, 4);
    for (int i = 0; i < 100; ++i) {
        auto a = static_cast<std::uint16_t>(rng() % small->size);
        auto b = static_cast<std::uint16_t>(rng() % small->size);
        CHECK(embed_elem(small, big, small->add(a, b)) ==
              big->add(embed_elem(small, big, a), embed_elem(small, big, b)));
        CHECK(embed_elem(small, big, small->mul(a, b)) ==
              big->mul(embed_elem(small, big, a), embed_elem(small, big, b)));
    }
    CHECK(embed_elem(small, big, 1) == 1);
}

TEST_CASE("nth_root finds least roots") {
    const Field* f9 = Field::get(3, 2);
    // -1 = 2 is a square in F_9 but not in F_3
    CHECK(Field::get(3, 1)->nth_root(2, 2) == std::nullopt);
    auto r = f9->nth_root(2, 2);
    REQUIRE(r.has_value());
    CHECK(f9->mul(*r, *r) == 2);
}
