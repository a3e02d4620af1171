#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dmf/forms.hpp"

using namespace dmf;

TEST_CASE("torsion product: shape, constant and top coefficients") {
    QParams P(2, 1);
    OmegaPoint w = standard_point(P, 2);
    auto L = LatticeCoset::standard(P, 2);
    Poly tg = Poly::gen(P.fq());
    PsiNumeric psi = psi_from_torsion(P, tg, L, w, Rat(8));
    CHECK(psi.non_q_power_vanish);
    CHECK(psi.psi.top() == 2);  // degree q^{r deg N} = q^2
    // g_0 = t
    CHECK(agree_at_joint_precision(psi.psi.c[0], Tail::from_poly(tg)));
    // top coefficient is nonzero (the discriminant form)
    CHECK(psi.psi.c[2].has_terms());
}

TEST_CASE("coefficient recursions against tower-extracted coefficients") {
    for (int p : {2, 3}) {
        QParams P(p, 1);
        OmegaPoint w = standard_point(P, 2);
        auto L = LatticeCoset::standard(P, 2);
        auto rep = coefficient_recursion_check(P, L, w, Rat(8));
        INFO(rep.details);
        CHECK(rep.pass);
    }
}

TEST_CASE("isogeny functional equation at sample points") {
    QParams P(2, 1);
    OmegaPoint w = standard_point(P, 2);
    auto L = LatticeCoset::standard(P, 2);
    auto rep = isogeny_equation_check(P, Poly::gen(P.fq()), L, w, Rat(8));
    INFO(rep.details);
    CHECK(rep.pass);
}

TEST_CASE("psi is F_q-linear at samples") {
    QParams P(3, 1);
    OmegaPoint w = standard_point(P, 2);
    auto L = LatticeCoset::standard(P, 2);
    auto rep = psi_linearity_check(P, Poly::gen(P.fq()), L, w, Rat(8));
    CHECK(rep.pass);
}

TEST_CASE("discriminant relations, numeric rank 2") {
    for (int p : {2, 3}) {
        QParams P(p, 1);
        auto rep = discriminant_relations_numeric(P, 2, Rat(8));
        INFO(rep.details);
        CHECK(rep.pass);
    }
}

TEST_CASE("boundary behaviour of the torsion coefficients") {
    QParams P(2, 1);
    auto rep = coefficient_boundary_check(P, Poly::gen(P.fq()), {2, 4, 6}, Rat(8));
    INFO(rep.details);
    CHECK(rep.pass);
}

TEST_CASE("root of the discriminant form and its sign") {
    SUBCASE("q=2: trivial exponent") {
        QParams P(2, 1);
        CHECK(delta_power_sign(P, 2, 1) == 1);
        auto rep = delta_root_numeric(P, Poly::gen(P.fq()), LatticeCoset::standard(P, 2),
                                      standard_point(P, 2), Rat(8));
        INFO(rep.details);
        CHECK(rep.pass);
    }
    SUBCASE("q=3 rank 2: even orbit count flips the sign") {
        QParams P(3, 1);
        CHECK(delta_power_sign(P, 2, 1) == -1);
        auto rep = delta_root_numeric(P, Poly::gen(P.fq()), LatticeCoset::standard(P, 2),
                                      standard_point(P, 2), Rat(8));
        INFO(rep.details);
        CHECK(rep.pass);
    }
    SUBCASE("q=3 rank 3 would have an odd orbit count") {
        QParams P(3, 1);
        CHECK(delta_power_sign(P, 3, 1) == 1);
    }
}

TEST_CASE("Moore identities") {
    for (int p : {2, 3}) {
        QParams P(p, 1);
        auto rep = moore_identities_check(P, 42);
        INFO(rep.details);
        CHECK(rep.pass);
    }
}

TEST_CASE("additive composition degree law") {
    QParams P(2, 1);
    const Field* f = P.fq();
    AdditivePoly<Tail> a, b;
    a.c = {Tail::from_poly(Poly::gen(f)), Tail::one(f)};
    b.c = {Tail::one(f), Tail::from_poly(Poly::gen(f))};
    auto cpose = additive_compose(a, b, P.q);
    CHECK(cpose.top() == a.top() + b.top());
    // evaluation agrees with the composition at a sample
    Tail z = Tail::monomial(f, 1, Rat(-1)).truncated(Rat(20));
    Tail lhs = additive_eval(cpose, z, P.q);
    Tail rhs = additive_eval(a, additive_eval(b, z, P.q), P.q);
    CHECK(agree_at_joint_precision(lhs, rhs));
}
