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

#ifndef DMF_EISENSTEIN_HPP
#define DMF_EISENSTEIN_HPP

#include "dmf/goss.hpp"
#include "dmf/lattice.hpp"

namespace dmf {

// Truncation policy threaded through series computations.  Absolute mode
// truncates every intermediate at a fixed exponent; relative mode keeps a
// fixed number of leading digits per element.
struct Trunc {
    bool has_abs = false;
    Rat abs_amount = Rat(0);
    bool has_rel = true;
    Rat rel_digits = Rat(24);

    // absolute floor plus enough relative digits that small coefficients stay
    // meaningful under large arguments
    static Trunc absolute(Rat a) { return Trunc{true, a, true, a + Rat(8)}; }
    static Trunc rel(Rat digits) { return Trunc{false, Rat(0), true, digits}; }
    Tail apply(const Tail& x) const;
};

// A finite F_q-subspace of the working field spanned by Tail generators with
// pairwise distinct norms, together with the coefficients of its additive
// exponential e_S(z) = sum coeffs[i] z^{q^i} (coeffs[0] = 1).
struct ExpSpace {
    std::vector<Tail> gens;    // ascending by norm
    std::vector<Tail> coeffs;  // exact identity for the span; truncated per policy
    bool stopped = false;      // later layers omitted as invisible
    Rat stop_nu = Rat(0);      // image norm of the first omitted layer

    int dim() const { return static_cast<int>(gens.size()); }
};

// max_arg_lead: the largest norm exponent at which the exponential will be
// evaluated; used to stop the tower once all later layers are invisible.
// allow_stop=false keeps every layer (used at large arguments).
ExpSpace exp_space(const QParams& P, std::vector<Tail> gens, const Trunc& tr,
                   Rat max_arg_lead = Rat(0), bool allow_stop = true);
Tail exp_space_eval(const QParams& P, const ExpSpace& S, const Tail& z, const Trunc& tr);

// The finite piece of a coset sum: F_q-generators of the summed sublattice
// values, the shift value z0 = v*omega (no terms when v lies in the lattice),
// and the certified bound: every omitted point x has |x omega| >= q^{tail_exp}.
struct BoxSpec {
    std::vector<Tail> gens;
    Tail z0;
    bool shift_in_lattice = false;
    Rat tail_exp;
    std::vector<Rat> gen_norms;
};

// geometric data for an evaluation; D is the norm-ball exponent
BoxSpec box_for_coset(const QParams& P, const LatticeCoset& coset, const OmegaPoint& omega, Rat D);
// box for the sum of (x * (gamma omega))^{-k} over x in v+L
BoxSpec box_for_transformed(const QParams& P, const LatticeCoset& coset, const Mat& gamma,
                            const OmegaPoint& omega, Rat D);

// sum of (z0 + h)^{-k} over the span (omitting h = -z0 when the shift lies in
// the lattice), via the additive exponential and the universal polynomials
Tail box_sum_grouped(const QParams& P, int k, const BoxSpec& box, const Trunc& tr);
// the same finite sum by direct enumeration of the span
Tail box_sum_direct(const QParams& P, int k, const BoxSpec& box, const Trunc& tr,
                    std::size_t budget = 1u << 22);

struct EisValue {
    Tail value;          // certified: carries its own honest precision
    Rat tail_exp;        // norm bound used for the omitted points
    Rat D;               // ball exponent
    int dim = 0;         // generators used
};

struct EisOptions {
    Rat D_override = Rat(INT64_MIN / 4, 1);  // set to choose the ball manually
    bool direct = false;                      // force direct enumeration
    Rat work_margin = Rat(10);
    std::size_t budget = 1u << 22;
};

// E_{k, v+L}(omega) at requested absolute precision.
EisValue eisenstein(const QParams& P, int k, const LatticeCoset& coset, const OmegaPoint& omega,
                    Rat target, const EisOptions& opts = {});
// sum over x in v+L of (x*(gamma omega))^{-k}, the reindexing side of the
// slash identity
EisValue eisenstein_transformed(const QParams& P, int k, const LatticeCoset& coset,
                                const Mat& gamma, const OmegaPoint& omega, Rat target,
                                const EisOptions& opts = {});

// e_{L omega}(z) by the literal truncated product over the span of `box`;
// certified relative tail.
Tail exp_product(const QParams& P, const BoxSpec& box, const Tail& z, const Trunc& tr,
                 std::size_t budget = 1u << 22);

// coefficients e_{L omega, q^i} for i = 0..upto via the exponential tower,
// with certified per-coefficient error bounds from the omitted points.
std::vector<Tail> exp_coefficients(const QParams& P, const LatticeCoset& lattice,
                                   const OmegaPoint& omega, Rat D, int upto, const Trunc& tr);

// ---- verification procedures ----

struct CheckReport {
    bool pass = false;
    std::string details;
};

// E_{1,v+L}(omega) * e_{L omega}(v omega) = 1, routes independent
CheckReport weight1_inversion_check(const QParams& P, const LatticeCoset& coset,
                                    const OmegaPoint& omega, Rat target, Rat D_exp_product);

// compare E_{k, v gamma + L gamma}(omega) with the transformed sum
CheckReport slash_check(const QParams& P, int k, const LatticeCoset& coset, const Mat& gamma,
                        const OmegaPoint& omega, Rat target);

// E_{k,v+L} = sum over cosets of a finite-index sublattice
CheckReport splitting_check(const QParams& P, int k, const LatticeCoset& coset,
                            const LatticeCoset& sub, const OmegaPoint& omega, Rat target);

// doubling the ball changes no certified digit
CheckReport doubling_check(const QParams& P, int k, const LatticeCoset& coset,
                           const OmegaPoint& omega, Rat target);

// exact scalar equivariance: E_{k, alpha v + L} == alpha^{-k} E_{k, v+L}
CheckReport alpha_equivariance_check(const QParams& P, int k, const LatticeCoset& coset,
                                     const OmegaPoint& omega, Rat target);

// u = 1/e_{Lambda' omega'}(omega_1) for a rank-2 frame at the scaled point
Tail u_parameter_rank2(const QParams& P, const UFrame& frame, const Tail& omega1,
                       const Tail& omega2, Rat stratum_depth, const Trunc& tr);

// Behaviour of E_{k,v+L} at the infinity schedule omega^{(s)}; rank 2.
struct UOrderReport {
    bool pass = false;
    std::vector<Rat> residual_exps;  // observed per schedule point (log_q |R|)
    std::string details;
};

// order-one case: v1 not in L1; checks E * x1 / u -> 1 across the schedule
UOrderReport u_order_one_check(const QParams& P, const LatticeCoset& coset,
                               const std::vector<int>& schedule, Rat final_target);
// constant-term case: E_{k,v+L}(omega^{(s)}) - E_{k,v'+L'}(omega') -> 0
UOrderReport u_constant_term_check(const QParams& P, int k, const LatticeCoset& coset,
                                   const std::vector<int>& schedule, Rat final_target);

}  // namespace dmf

#endif
