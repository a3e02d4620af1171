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

#ifndef DMF_LATTICE_HPP
#define DMF_LATTICE_HPP

#include <functional>
#include <vector>

#include "dmf/tail.hpp"

namespace dmf {

using Vec = std::vector<RatF>;
using Mat = std::vector<std::vector<RatF>>;  // row major

Mat mat_identity(const Field* f, int r);
Mat mat_mul(const Mat& a, const Mat& b);
Vec row_times_mat(const Vec& x, const Mat& m);
RatF mat_det(const Mat& m);
Mat mat_inverse(const Mat& m);
Mat mat_scaled(const Mat& m, const RatF& s);

// Hermite-style normal form over A = F_q[t] for a full-rank integral matrix:
// returns H = U * B with U unimodular over A and H[i][j] = 0 for j < i,
// pivots monic.  Entries of H and U are polynomials.
void hermite_form(const Mat& b_int, Mat* H, Mat* U);

// A full A-lattice L in F^r given by basis rows, translated by v.
class LatticeCoset {
  public:
    int r = 0;
    Mat basis;  // rows span L
    Vec v;      // translation

    LatticeCoset() = default;
    LatticeCoset(Mat b, Vec tr);
    static LatticeCoset standard(const QParams& P, int r);  // A^r, v = 0

    const Field* field() const { return basis[0][0].field(); }
    bool v_in_lattice() const;
    bool contains(const Vec& x) const;  // x in v + L
    Vec reduce_mod_lattice(const Vec& x) const;

    LatticeCoset lattice_only() const;  // v = 0
    LatticeCoset translated(const Vec& nv) const;
    LatticeCoset scaled_lattice(const RatF& a) const;       // aL, v scaled too
    LatticeCoset transformed(const Mat& gamma) const;        // v*gamma + L*gamma
    // basis in triangular form (pivot at column i); recomputed once
    const Mat& hnf_basis() const;
    const Mat& hnf_denominator_matrix() const;  // integral H with basis = H / d
    const Poly& hnf_denominator() const;

    // [L : L2] for a sublattice L2 of L, as a power of q; exact integer log.
    int index_log_q(const LatticeCoset& sub) const;

  private:
    mutable Mat hnf_;
    mutable Mat hnf_int_;
    mutable Poly hnf_den_;
    mutable bool hnf_done_ = false;
    void ensure_hnf() const;
};

// Coset representatives of N^{-1}L \ L modulo L for N = (f), in a fixed
// lexicographic order; and the same modulo F_q^x with first nonzero
// coordinate normalised monic.
std::vector<Vec> coset_reps(const QParams& P, const Poly& n_gen, const LatticeCoset& L);
std::vector<Vec> projective_reps(const QParams& P, const Poly& n_gen, const LatticeCoset& L);

// Representatives of L / L2 for a finite-index sublattice L2 of L.
std::vector<Vec> quotient_reps(const QParams& P, const LatticeCoset& L, const LatticeCoset& L2);

// The data of the first-coordinate splitting of a coset: L1 (rank one image),
// a lifted complement (the pivot row), L' (kernel sublattice of rank r-1),
// and the unipotent-stabiliser lattice of the coset.
struct UFrame {
    RatF l1_gen;          // L1 = (l1_gen)
    Vec lift_row;         // generates a complement of {0} x L'
    LatticeCoset lprime;  // rank r-1 lattice in coordinates 2..r, with v'
    RatF v1;              // first coordinate of v
    RatF lambda_scale;    // Lambda' = lambda_scale * L' with (v1 + L1)*Lambda' in L'
};

UFrame u_frame(const QParams& P, const LatticeCoset& coset);

// index [L' : x1 Lambda'] as a power of q for x1 in v1 + L1
int frame_index_log_q(const QParams& P, const UFrame& fr, const RatF& x1);

// A point of the period domain: column of Tail entries with the last entry
// xi and pairwise distinct leading exponents modulo 1 (the certificate that
// |x omega| = max_i |x_i| |omega_i| for nonzero rational rows x).
struct OmegaPoint {
    std::vector<Tail> entries;  // size r, last = xi
    bool certified = false;

    int rank() const { return static_cast<int>(entries.size()); }
    Rat min_lead() const;
    std::vector<Rat> leads() const;
};

// omega_i = xi * t^{(r-i)/r}; xi defaults to 1 (xi_pow_num = 0).
// variant = true adds a lower-order perturbation that keeps the certificate.
OmegaPoint standard_point(const QParams& P, int r, bool variant = false, int xi_pow = 0);

bool check_certificate(const OmegaPoint& omega);

// x * omega for a rational row vector, embedded at absolute precision prec.
Tail pairing(const QParams& P, const Vec& x, const OmegaPoint& omega, Rat prec);

// gamma * omega as a column of Tail values (no normalisation).
std::vector<Tail> mat_times_omega(const QParams& P, const Mat& gamma, const OmegaPoint& omega, Rat prec);

// Enumerate nonzero x in v+L with deg x_j <= D for all j, in lexicographic
// order of the basis-coefficient vectors.  Returns the number visited.
std::size_t enumerate_coset(const QParams& P, const LatticeCoset& coset, int D,
                            const std::function<void(const Vec&)>& fn,
                            std::size_t budget = 1u << 24);

}  // namespace dmf

#endif
