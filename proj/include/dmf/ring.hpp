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

#ifndef DMF_RING_HPP
#define DMF_RING_HPP

#include <memory>

#include "dmf/forms.hpp"

namespace dmf {

// The graded ring presenting the level-(t) modular forms: weight-one symbols
// indexed by the nonzero vectors of V = F_q^r modulo scalars, subject to the
// scaling and three-term product relations, with coefficients in the
// extended field k0 = F_q(lambda), t = -lambda^{q-1}.
class LevelRing {
  public:
    QParams P;
    int r;
    CoeffField k0;
    std::vector<std::vector<std::uint16_t>> vars;  // projective representatives
    std::size_t budget_monomials = 3000000;

    LevelRing(const QParams& P_, int r_);

    int nvars() const { return static_cast<int>(vars.size()); }
    // fold an arbitrary nonzero vector onto (variable index, scalar c) with
    // Y_vec = c * Y_var
    std::pair<int, std::uint16_t> fold(const std::vector<std::uint16_t>& vec) const;

    struct Slice {
        int k;
        std::vector<std::vector<std::uint32_t>> monomials;   // degree-k exponent vectors
        std::map<std::vector<std::uint32_t>, int> mono_index;
        std::vector<int> basis;                               // indices of basis monomials
        std::vector<int> basis_pos;                           // monomial index -> basis position or -1
        // normal-form coordinates of every monomial over the basis (F_q)
        std::vector<std::vector<std::uint8_t>> normal_form;
        int dim() const { return static_cast<int>(basis.size()); }
    };

    const Slice& slice(int k) const;

  private:
    mutable std::map<int, std::unique_ptr<Slice>> slices_;
    mutable std::mutex mu_;
    void build_slice(int k) const;
};

// Homogeneous-by-degree element in normal form with k0 coefficients.
class RingElem {
  public:
    const LevelRing* R = nullptr;
    std::map<int, std::vector<RatF>> comp;  // degree -> coordinates on the slice basis

    RingElem() = default;
    explicit RingElem(const LevelRing* ring) : R(ring) {}
    static RingElem scalar(const LevelRing& ring, const RatF& c);
    static RingElem variable(const LevelRing& ring, int var_idx);  // degree 1
    static RingElem monomial(const LevelRing& ring, const std::vector<std::uint32_t>& expo,
                             const RatF& c);

    bool is_zero() const;
    void prune();

    friend RingElem operator+(const RingElem& a, const RingElem& b);
    friend RingElem operator-(const RingElem& a, const RingElem& b);
    friend RingElem operator*(const RingElem& a, const RingElem& b);
    RingElem operator-() const;
    friend bool operator==(const RingElem& a, const RingElem& b);
    friend bool operator!=(const RingElem& a, const RingElem& b) { return !(a == b); }

    RingElem scaled(const RatF& c) const;
    RingElem frob_pow(std::int64_t qpow) const;
    RingElem pow(std::int64_t e) const;
};

// right action on the symbols: Y_v -> Y_{v gamma}; gamma over F_q
using FqMat = std::vector<std::vector<std::uint16_t>>;

RingElem act(const RingElem& x, const FqMat& gamma);
std::uint16_t fq_det(const QParams& P, const FqMat& gamma);

enum class Subgroup { GL, SL, Unipotent };
std::vector<FqMat> group_generators(const QParams& P, int r, Subgroup g);
std::vector<FqMat> full_group(const QParams& P, int r, Subgroup g, std::size_t budget = 200000);

// fixed subspace of the weight-k slice under f -> det(gamma)^{-m} * (Y->Y gamma)
struct InvariantSpace {
    int dim = 0;
    std::vector<std::vector<std::uint8_t>> basis;  // F_q coordinate vectors
};
InvariantSpace invariants(const LevelRing& R, int k, Subgroup g, int type_m = 0);

// Dickson-type generator data: the additive-polynomial coefficients of
// t X prod(1 - Y_v X) up to X-degree cap, plus e- and E-sequences and delta_t.
struct DicksonData {
    AdditivePoly<RingElem> psi_t;       // g_{t,i} for q^i <= cap
    bool mixed_vanish = true;           // non-q-power coefficients reduce to 0
    std::vector<RingElem> e_seq;        // e_0..e_upto by the recursion
    std::vector<RingElem> eis_seq;      // E_{q^k-1} from the e-sequence
    RingElem delta_t;                   // lambda * prod over projective reps
};
DicksonData dickson_generators(const LevelRing& R, int xdeg_cap, int e_upto);

// ---- the fraction-field model: Y_v -> 1/ell_v with ell_v linear in Z ----

// element num / prod ell_i^{den[i]} over k0
struct FracElem {
    const LevelRing* R = nullptr;
    MPoly num;
    std::vector<std::uint32_t> den;

    FracElem() = default;
    explicit FracElem(const LevelRing* ring);

    bool is_zero() const { return num.is_zero(); }
    friend FracElem operator+(const FracElem& a, const FracElem& b);
    friend FracElem operator-(const FracElem& a, const FracElem& b);
    friend FracElem operator*(const FracElem& a, const FracElem& b);
    FracElem operator-() const;
    friend bool operator==(const FracElem& a, const FracElem& b);
    friend bool operator!=(const FracElem& a, const FracElem& b) { return !(a == b); }
    FracElem frob_pow(std::int64_t qpow) const;
    FracElem pow(std::int64_t e) const;
};

FracElem frac_scalar(const LevelRing& R, const RatF& c);
FracElem frac_variable(const LevelRing& R, int var_idx);
FracElem embed_ring_elem(const LevelRing& R, const RingElem& x);

// the linear form of a variable
MPoly var_linear_form(const LevelRing& R, int var_idx);

}  // namespace dmf

#endif
