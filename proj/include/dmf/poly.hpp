/*
   Copyright 2026 The dmf authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef DMF_POLY_HPP
#define DMF_POLY_HPP

#include <climits>
#include <string>
#include <utility>
#include <vector>

#include "dmf/fq.hpp"

namespace dmf {

constexpr int NEG_INF_DEG = INT_MIN;  // degree of the zero polynomial

// Dense univariate polynomial over a finite field, ascending coefficients,
// no trailing zeros.
class Poly {
  public:
    const Field* f = nullptr;
    std::vector<std::uint16_t> c;

    Poly() = default;
    explicit Poly(const Field* fld) : f(fld) {}
    Poly(const Field* fld, std::vector<std::uint16_t> coeffs) : f(fld), c(std::move(coeffs)) {
        trim();
    }
    static Poly constant(const Field* fld, std::uint16_t v) {
        Poly r(fld);
        if (v != 0) r.c = {v};
        return r;
    }
    static Poly gen(const Field* fld) { return Poly(fld, {0, 1}); }  // the variable

    bool is_zero() const { return c.empty(); }
    int degree() const { return c.empty() ? NEG_INF_DEG : static_cast<int>(c.size()) - 1; }
    std::uint16_t lead() const { return c.empty() ? 0 : c.back(); }
    std::uint16_t coeff(int i) const {
        return (i < 0 || i >= static_cast<int>(c.size())) ? 0 : c[i];
    }
    bool is_one() const { return c.size() == 1 && c[0] == 1; }
    bool is_monic() const { return !c.empty() && c.back() == 1; }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly scaled(std::uint16_t s) const;
    Poly monic() const;
    Poly shifted(int k) const;  // multiply by x^k
    std::uint16_t eval(std::uint16_t x) const;
    Poly pow(std::int64_t e) const;
    // Frobenius power: (sum c_i x^i)^q = sum c_i^q x^{iq}, q a power of char.
    Poly frob_pow(std::int64_t q) const;

    std::string str(const std::string& var = "t") const;
    std::string coeff_csv() const;  // "c0,c1,..."
    static Poly parse_csv(const Field* fld, const std::string& s);
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);  // monic
bool is_irreducible(const Poly& f);
// least-index n-th root in the coefficient field sense: g with g^n == a, if any
std::pair<bool, Poly> poly_nth_root(const Poly& a, std::int64_t n);

// Rational function over a finite field: num/den with den monic, gcd = 1.
class RatF {
  public:
    Poly num, den;

    RatF() = default;
    explicit RatF(Poly n) : num(std::move(n)), den(Poly::constant(num.f, 1)) {}
    RatF(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) { normalize(); }
    static RatF constant(const Field* f, std::uint16_t v) { return RatF(Poly::constant(f, v)); }
    static RatF gen(const Field* f) { return RatF(Poly::gen(f)); }

    const Field* field() const { return num.f; }
    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return num.is_one() && den.is_one(); }
    bool is_polynomial() const { return den.is_one(); }
    // deg num - deg den; the norm at the infinite place is q^deg_total
    int deg_total() const {
        DMF_CHECK(!is_zero(), "degree of zero rational function");
        return num.degree() - den.degree();
    }

    void normalize();

    friend RatF operator+(const RatF& a, const RatF& b);
    friend RatF operator-(const RatF& a, const RatF& b);
    friend RatF operator*(const RatF& a, const RatF& b);
    friend RatF operator/(const RatF& a, const RatF& b);
    RatF operator-() const;
    friend bool operator==(const RatF& a, const RatF& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const RatF& a, const RatF& b) { return !(a == b); }

    RatF inv() const;
    RatF pow(std::int64_t e) const;
    RatF frob_pow(std::int64_t q) const;
    // substitute the generator by a rational function
    RatF subst(const RatF& g) const;

    std::string str(const std::string& var = "t") const;
    static RatF parse(const Field* fld, const std::string& s);  // "csv" or "csv/csv"
};

// Coefficient field k0 for symbolic computations.  In plain mode elements are
// rational functions in t.  In extended mode they are rational functions in
// lambda with t identified with -lambda^{q-1}; lambda itself is the image of
// a (q-1)-st root of -t.
class CoeffField {
  public:
    int p, e;
    std::int64_t q;
    bool extended;

    CoeffField(int p_, int e_, bool extended_)
        : p(p_), e(e_), q(ipow(p_, e_)), extended(extended_) {}

    const Field* constants() const { return Field::get(p, e); }
    RatF zero() const { return RatF(Poly(constants())); }
    RatF one() const { return RatF::constant(constants(), 1); }
    RatF lambda() const {
        DMF_CHECK(extended, "lambda only exists in extended mode");
        return RatF::gen(constants());
    }
    // the image of t: the generator itself in plain mode, -lambda^{q-1} otherwise
    RatF t() const {
        RatF g = RatF::gen(constants());
        return extended ? -g.pow(q - 1) : g;
    }
    // ring embedding F_q(t) -> k0
    RatF embed_plain(const RatF& x) const { return extended ? x.subst(t()) : x; }
};

}  // namespace dmf

#endif
