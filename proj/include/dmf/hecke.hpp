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

#ifndef DMF_HECKE_HPP
#define DMF_HECKE_HPP

#include <memory>

#include "dmf/eisenstein.hpp"

namespace dmf {

// Brute-force local data at a prime pi of A: matrices over A/pi^{mu_1},
// the stabiliser of the elementary-divisor submodule, its right cosets, and
// the membership counts these cosets induce.
class LocalHecke {
  public:
    QParams P;
    Poly pi;                   // monic irreducible
    std::vector<int> mu;       // mu_1 >= ... >= mu_r = 0
    int r;
    int mu1;
    std::int64_t ring_size;    // |A/pi^{mu_1}|
    std::int64_t qp;           // residue field size q^{deg pi}

    LocalHecke(const QParams& P_, Poly pi_, std::vector<int> mu_, std::size_t budget = 1u << 20);

    // ring elements are indices 0..ring_size-1 encoding polynomials mod pi^{mu_1}
    std::int64_t radd(std::int64_t a, std::int64_t b) const;
    std::int64_t rmul(std::int64_t a, std::int64_t b) const;
    bool runit(std::int64_t a) const;

    // vectors in (A/pi^{mu_1})^r as mixed-radix indices
    std::int64_t vec_size() const;

    struct Cosets {
        std::size_t group_order = 0;       // |GL_r(A/pi^{mu_1})|
        std::size_t stab_order = 0;        // |K|
        std::vector<std::vector<bool>> translates;  // per coset: membership of L-bar k + v-bar
        std::size_t count() const { return translates.size(); }
    };
    const Cosets& cosets() const;

    // C_pi(x): number of right cosets whose translated module contains x
    std::int64_t count_containing(std::int64_t xvec) const;

    // the closed-form residue class of C_pi(x) mod q_p predicted by the
    // elementary-divisor classification
    std::int64_t predicted_mod_qp(std::int64_t xvec) const;

    // exhaustive comparison over every residue vector
    bool classification_exhaustive() const;

    // det images of the stabiliser and the full group coincide
    bool det_images_equal() const;

    // [K':K] lies in q_p^{sum max(0, mu_j - mu_i - 1)} (1 + q_p Z)
    bool index_formula_holds() const;

  private:
    std::size_t budget_;
    mutable std::unique_ptr<Cosets> cosets_;
    std::vector<std::int64_t> add_table_idx_;  // none; computed on the fly
    std::vector<std::uint8_t> unit_;
    std::vector<Poly> elems_;
    Poly modulus_;

    bool in_Lbar(std::int64_t xvec) const;  // membership in the elementary-divisor module
    void build() const;
};

// A global operator datum at A = F_q[t]: L = L' = A^r, v = v', and a
// diagonal delta with prescribed local elementary divisors away from the
// level of the coset.
struct GlobalHeckeSpec {
    QParams P;
    int r;
    Vec v;                                   // translation (reduced)
    std::vector<std::pair<Poly, std::vector<int>>> local;  // (pi, mu) per prime

    GlobalHeckeSpec(const QParams& P_, int r_) : P(P_), r(r_) {}
};

struct HeckeReport {
    bool pass = false;
    std::string details;
};

// verify the inclusion-exclusion identity for C(x) = prod C_pi(x) mod p over
// the box of residues mod prod pi^{mu_1 + 1}, with the translated coset
// recentered at v'' by the prescribed congruence
HeckeReport global_identity_check(const GlobalHeckeSpec& spec);

// numeric rank-2 check: the sum of E_{k, L gamma} over the index-pi
// sublattice representatives equals E_{k, L}
HeckeReport rank2_eigen_check(const QParams& P, const Poly& pi, int k, Rat target);

}  // namespace dmf

#endif
