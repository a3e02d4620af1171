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

#ifndef DMF_MULTIPOLY_HPP
#define DMF_MULTIPOLY_HPP

#include <map>
#include <vector>

#include "dmf/poly.hpp"

namespace dmf {

// Sparse multivariate polynomial with rational-function coefficients.  The
// coefficient field contains F_q as constants, so this also serves for exact
// computations over F_q with indeterminates.
class MPoly {
  public:
    using Expo = std::vector<std::uint32_t>;
    const Field* f = nullptr;
    std::map<Expo, RatF> terms;

    MPoly() = default;
    explicit MPoly(const Field* fld) : f(fld) {}
    static MPoly constant(const Field* fld, const RatF& c) {
        MPoly r(fld);
        if (!c.is_zero()) r.terms[{}] = c;
        return r;
    }
    static MPoly var(const Field* fld, std::size_t i, std::size_t nvars) {
        MPoly r(fld);
        Expo e(nvars, 0);
        e[i] = 1;
        r.add_term(std::move(e), RatF::constant(fld, 1));
        return r;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(Expo e, const RatF& c) {
        while (!e.empty() && e.back() == 0) e.pop_back();
        if (c.is_zero()) return;
        auto [it, fresh] = terms.emplace(std::move(e), c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    friend MPoly operator+(const MPoly& a, const MPoly& b) {
        MPoly r = a;
        for (const auto& [e, c] : b.terms) r.add_term(e, c);
        return r;
    }
    friend MPoly operator-(const MPoly& a, const MPoly& b) {
        MPoly r = a;
        for (const auto& [e, c] : b.terms) r.add_term(e, -c);
        return r;
    }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r(a.f ? a.f : b.f);
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms) {
                Expo e(std::max(ea.size(), eb.size()), 0);
                for (size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
                for (size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
                r.add_term(std::move(e), ca * cb);
            }
        return r;
    }
    MPoly operator-() const {
        MPoly r(f);
        for (const auto& [e, c] : terms) r.terms[e] = -c;
        return r;
    }
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms == b.terms; }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    MPoly scaled(const RatF& s) const {
        MPoly r(f);
        if (s.is_zero()) return r;
        for (const auto& [e, c] : terms) r.terms[e] = c * s;
        return r;
    }

    MPoly frob_pow(std::int64_t q) const {
        MPoly r(f);
        for (const auto& [e, c] : terms) {
            Expo e2 = e;
            for (auto& x : e2) x = static_cast<std::uint32_t>(x * q);
            r.terms[std::move(e2)] = c.frob_pow(q);
        }
        return r;
    }

    // substitute variable i by a polynomial
    MPoly subst_var(std::size_t i, const MPoly& g) const {
        MPoly r(f);
        for (const auto& [e, c] : terms) {
            MPoly term = MPoly::constant(f, c);
            Expo rest = e;
            std::uint32_t pow = (i < e.size()) ? e[i] : 0;
            if (i < rest.size()) rest[i] = 0;
            MPoly base(f);
            base.add_term(std::move(rest), RatF::constant(f, 1));
            term = term * base;
            for (std::uint32_t k = 0; k < pow; ++k) term = term * g;
            r = r + term;
        }
        return r;
    }

    std::size_t total_degree() const {
        std::size_t d = 0;
        for (const auto& [e, c] : terms) {
            (void)c;
            std::size_t s = 0;
            for (auto x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }
};

// exact division by another polynomial when it divides; returns success
bool mpoly_divide(const MPoly& num, const MPoly& den, MPoly* quot);

}  // namespace dmf

#endif
