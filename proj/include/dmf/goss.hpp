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

#ifndef DMF_GOSS_HPP
#define DMF_GOSS_HPP

#include <map>
#include <string>
#include <vector>

#include "dmf/tail.hpp"

namespace dmf {

// Monomial X^xe * prod Y_i^{ye[i-1]} of the universal partial-fraction
// polynomials; coefficients live in F_p.
struct GossMono {
    std::uint32_t xe = 0;
    std::vector<std::uint32_t> ye;

    friend bool operator<(const GossMono& a, const GossMono& b) {
        if (a.xe != b.xe) return a.xe > b.xe;  // higher X-power first
        return a.ye < b.ye;
    }
    friend bool operator==(const GossMono& a, const GossMono& b) {
        return a.xe == b.xe && a.ye == b.ye;
    }
};

class GossPoly {
  public:
    int p = 2;
    std::map<GossMono, std::uint8_t> terms;

    static GossPoly zero(int p) { return GossPoly{p, {}}; }
    static GossPoly var_x(int p);

    bool is_zero() const { return terms.empty(); }
    void add_term(GossMono m, int coeff);

    friend GossPoly operator+(const GossPoly& a, const GossPoly& b);
    friend GossPoly operator*(const GossPoly& a, const GossPoly& b);
    friend bool operator==(const GossPoly& a, const GossPoly& b) {
        return a.p == b.p && a.terms == b.terms;
    }
    GossPoly scaled(int c) const;
    GossPoly mul_x() const;
    GossPoly mul_y(std::size_t i) const;  // 1-based
    GossPoly pow(int e) const;
    GossPoly dx() const;  // formal partial derivative in X

    int ord_x() const;        // X-adic order; requires nonzero
    int deg_x() const;
    std::size_t max_y_index() const;
    bool monic_in_x() const;

    std::string str() const;
};

// k-th universal polynomial for the base parameter q; cached.
const GossPoly& goss(std::int64_t q, int k);

int goss_ord_x(std::int64_t q, int k);

// exact evaluation at truncated-series arguments
Tail goss_eval_tail(const GossPoly& g, const Tail& x, const std::vector<Tail>& ys);

// Exact check of the defining partial-fraction identity against the finite
// F_q-subspace spanned by `basis` inside F_{p^n}:
//   sum_{h in H} (z-h)^{-k} = G_k(e_H(z)^{-1}, e_{H,q}, ...)
// Both sides are compared as rational functions with cleared denominators.
bool verify_partial_fraction(const QParams& P, const Field* big,
                             const std::vector<std::uint16_t>& basis, int k);

// the exponential polynomial of the F_q-span of `basis` (exact, monic scaled)
Poly subspace_exponential(const QParams& P, const Field* big,
                          const std::vector<std::uint16_t>& basis);

// raises math_error when a finite element set is not an F_q-subspace
void check_subspace(const QParams& P, const Field* big, const std::vector<std::uint16_t>& elems);

}  // namespace dmf

#endif
