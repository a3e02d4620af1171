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

#ifndef DMF_TAIL_HPP
#define DMF_TAIL_HPP

#include <optional>
#include <string>
#include <vector>

#include "dmf/poly.hpp"

namespace dmf {

// A truncated Puiseux series in t^{1/ram} with coefficients in F_{p^n}: the
// working model of an element of C_infinity.  Exponents are in units of
// powers of t and stored as integers over the denominator `ram`.  Unless the
// element is exact, it is known modulo O(t^{-prec}): every stored exponent
// satisfies e/ram > -prec.  The non-archimedean norm is q^{leading exponent}.
class Tail {
  public:
    struct Term {
        std::int64_t e;     // exponent numerator over ram
        std::uint16_t c;    // nonzero field element
    };

    const Field* f = nullptr;
    std::int32_t ram = 1;
    bool exact = true;
    std::int64_t prec_num = 0;          // meaningful iff !exact
    std::vector<Term> terms;            // sorted by e descending

    Tail() = default;

    static Tail zero(const Field* f);
    static Tail zero_at(const Field* f, Rat prec);
    static Tail one(const Field* f);
    static Tail from_const(const Field* f, std::uint16_t c);
    static Tail monomial(const Field* f, std::uint16_t c, Rat exponent);
    // exact embedding of a polynomial in t
    static Tail from_poly(const Poly& p);
    // embedding of a rational function, truncated at absolute precision prec
    static Tail from_ratf(const RatF& x, Rat prec);

    bool has_terms() const { return !terms.empty(); }
    Rat prec() const;                       // +inf encoded by caller checking exact
    bool is_exact() const { return exact; }
    std::optional<Rat> norm_exp() const;    // log_q of the norm; nullopt if no terms
    Rat known_floor() const;                // all exponents <= -prec() are unknown
    std::uint16_t lead_coeff() const { return terms.empty() ? 0 : terms.front().c; }

    // A value certified to equal zero at its precision: no surviving terms.
    bool vanishes() const { return terms.empty(); }

    Tail truncated(Rat newprec) const;
    // admit an extra additive error of norm <= q^{err_exp}
    Tail with_error(Rat err_exp) const;

    friend Tail operator+(const Tail& a, const Tail& b);
    friend Tail operator-(const Tail& a, const Tail& b);
    friend Tail operator*(const Tail& a, const Tail& b);
    Tail operator-() const;
    friend bool operator==(const Tail& a, const Tail& b);
    friend bool operator!=(const Tail& a, const Tail& b) { return !(a == b); }

    Tail scaled(std::uint16_t s) const;
    Tail shifted(Rat dexp) const;  // multiply by t^{dexp}
    Tail inv() const;
    Tail pow_int(std::int64_t n) const;  // negative allowed
    Tail frob_pow(std::int64_t q) const;
    Tail nth_root(std::int64_t n, int char_p) const;

    // coerce to a common field/ramification with another element
    static void align(Tail& a, Tail& b);
    Tail promoted(const Field* nf, std::int32_t nram) const;

    std::string str() const;
    std::vector<std::pair<std::string, std::string>> json_pairs() const;

    void normalize();
};

// max(|a - b|) has no known nonzero digit, i.e. the two agree on the joint
// known region; returns the joint precision through `out_prec`.
bool agree_at_joint_precision(const Tail& a, const Tail& b, Rat* out_prec = nullptr);

}  // namespace dmf

#endif
