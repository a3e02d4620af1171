#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dmf/goss.hpp"

using namespace dmf;

TEST_CASE("base cases and shapes") {
    for (std::int64_t q : {2, 3, 4}) {
        CHECK(goss(q, 1) == GossPoly::var_x(q % 2 == 0 ? 2 : 3));
        for (int k = 1; k <= 12; ++k) {
            const GossPoly& g = goss(q, k);
            CHECK(g.monic_in_x());
            CHECK(g.deg_x() == k);
            CHECK(g.ord_x() >= 1);
            // only Y_i with q^i < k appear
            std::int64_t qi = q;
            std::size_t allowed = 0;
            while (qi < k) { qi *= q; ++allowed; }
            CHECK(g.max_y_index() <= allowed);
        }
    }
}

TEST_CASE("k <= q collapses to X^k and the order is k") {
    for (std::int64_t q : {2, 3, 4})
        for (int k = 1; k <= q; ++k) {
            GossPoly xk = GossPoly::var_x(q % 2 == 0 ? 2 : 3);
            CHECK(goss(q, k) == xk.pow(k - 1) * xk);
            CHECK(goss_ord_x(q, k) == k);
        }
}

TEST_CASE("explicit k = q+1 expansion: X^{q+1} + Y1 X^2") {
    for (std::int64_t q : {2, 3, 4}) {
        int p = (q % 2 == 0) ? 2 : 3;
        GossPoly expect{p, {}};
        expect.add_term({static_cast<std::uint32_t>(q + 1), {}}, 1);
        expect.add_term({2, {1}}, 1);
        CHECK(goss(q, static_cast<int>(q) + 1) == expect);
        CHECK(goss_ord_x(q, static_cast<int>(q) + 1) == 2);
    }
}

TEST_CASE("Frobenius compatibility G_{pk} = G_k^p for k <= 12") {
    for (std::int64_t q : {2, 3, 4}) {
        int p = (q % 2 == 0) ? 2 : 3;
        for (int k = 1; k <= 12; ++k) CHECK(goss(q, p * k) == goss(q, k).pow(p));
    }
}

TEST_CASE("derivative identity X^2 dG_k/dX = k G_{k+1} for k <= 30") {
    for (std::int64_t q : {2, 3, 4}) {
        for (int k = 1; k <= 30; ++k) {
            GossPoly lhs = goss(q, k).dx().mul_x().mul_x();
            GossPoly rhs = goss(q, k + 1).scaled(k);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("partial-fraction identity, exact rational comparison") {
    SUBCASE("H = {0} reduces both sides to z^{-k}") {
        QParams P(2, 1);
        for (int k = 1; k <= 4; ++k) CHECK(verify_partial_fraction(P, P.fq(), {}, k));
    }
    SUBCASE("H = F_q inside F_q, classical additive polynomial") {
        for (auto [p, e] : {std::pair{2, 1}, {3, 1}, {2, 2}}) {
            QParams P(p, e);
            Poly eH = subspace_exponential(P, P.fq(), {1});
            // e_H(z) = c*(z^q - z) with the z-coefficient 1
            CHECK(eH.coeff(1) == 1);
            CHECK(eH.degree() == P.q);
            for (int k = 1; k <= 2 * P.q; ++k) CHECK(verify_partial_fraction(P, P.fq(), {1}, k));
        }
    }
    SUBCASE("2-dimensional H inside F_{q^2}") {
        for (auto [p, e] : {std::pair{2, 1}, {3, 1}}) {
            QParams P(p, e);
            const Field* big = Field::get(p, 2 * e);
            std::uint16_t g = static_cast<std::uint16_t>(p);  // the generator of the big field
            for (int k = 1; k <= static_cast<int>(P.q * P.q); ++k)
                CHECK(verify_partial_fraction(P, big, {1, g}, k));
        }
    }
}

TEST_CASE("subspace validation rejects non-stable sets") {
    QParams P(3, 1);
    const Field* f9 = Field::get(3, 2);
    CHECK_THROWS_AS(check_subspace(P, f9, {0, 1}), math_error);          // not scalar-stable
    CHECK_NOTHROW(check_subspace(P, f9, {0, 1, 2}));                     // F_3 itself
}

TEST_CASE("canonical rendering") {
    CHECK(goss(2, 3).str() == "X^3 + X^2*Y1");
    CHECK(goss(2, 1).str() == "X");
}
