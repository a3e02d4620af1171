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

#ifndef DMF_FORMS_HPP
#define DMF_FORMS_HPP

#include "dmf/eisenstein.hpp"
#include "dmf/multipoly.hpp"

namespace dmf {

// F_q-linear polynomial sum c_i X^{q^i} over a commutative ring R that
// supports +, -, *, frob_pow and zero-by-subtraction.
template <class R>
struct AdditivePoly {
    std::vector<R> c;  // c[i] is the coefficient of X^{q^i}

    int top() const { return static_cast<int>(c.size()) - 1; }
};

template <class R>
AdditivePoly<R> additive_compose(const AdditivePoly<R>& f, const AdditivePoly<R>& g,
                                 std::int64_t q);

template <class R>
R additive_eval(const AdditivePoly<R>& fp, const R& z, std::int64_t q) {
    DMF_CHECK(!fp.c.empty(), "empty additive polynomial");
    R zp = z;
    R acc = fp.c[0] * z;
    for (size_t i = 1; i < fp.c.size(); ++i) {
        zp = zp.frob_pow(q);
        acc = acc + fp.c[i] * zp;
    }
    return acc;
}

template <class R>
AdditivePoly<R> additive_compose(const AdditivePoly<R>& f, const AdditivePoly<R>& g,
                                 std::int64_t q) {
    AdditivePoly<R> h;
    if (f.c.empty() || g.c.empty()) return h;
    R zero = f.c[0] - f.c[0];
    h.c.assign(f.c.size() + g.c.size() - 1, zero);
    for (size_t i = 0; i < f.c.size(); ++i) {
        std::int64_t qi = 1;
        for (size_t k = 0; k < i; ++k) qi *= q;
        for (size_t j = 0; j < g.c.size(); ++j) h.c[i + j] = h.c[i + j] + f.c[i] * g.c[j].frob_pow(qi);
    }
    return h;
}

// dense polynomial scale * X * prod_j (1 - roots_inv[j] * X)
template <class R>
std::vector<R> shifted_linear_product(const R& scale, const std::vector<R>& roots_inv) {
    R zero = scale - scale;
    std::vector<R> p = {scale};
    for (const auto& a : roots_inv) {
        std::vector<R> np(p.size() + 1, zero);
        for (size_t i = 0; i < p.size(); ++i) {
            np[i] = np[i] + p[i];
            np[i + 1] = np[i + 1] - p[i] * a;
        }
        p = std::move(np);
    }
    std::vector<R> out(p.size() + 1, zero);
    for (size_t i = 0; i < p.size(); ++i) out[i + 1] = p[i];
    return out;
}

// Moore determinant with rows x_j^{q^{i-1}}
template <class R>
R moore_det(std::vector<R> xs, std::int64_t q) {
    const int n = static_cast<int>(xs.size());
    DMF_CHECK(n >= 1, "empty Moore determinant");
    std::vector<std::vector<R>> m(n, xs);
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = m[i - 1][j].frob_pow(q);
    // Laplace expansion; n is small here
    std::function<R(std::vector<int>, int)> det = [&](std::vector<int> cols, int row) -> R {
        if (cols.size() == 1) return m[row][cols[0]];
        R zero = xs[0] - xs[0];
        R acc = zero;
        bool plus = true;
        for (size_t k = 0; k < cols.size(); ++k) {
            std::vector<int> rest;
            for (size_t l = 0; l < cols.size(); ++l)
                if (l != k) rest.push_back(cols[l]);
            R sub = det(rest, row + 1);
            R term = m[row][cols[k]] * sub;
            acc = plus ? acc + term : acc - term;
            plus = !plus;
        }
        return acc;
    };
    std::vector<int> cols(n);
    for (int i = 0; i < n; ++i) cols[i] = i;
    return det(cols, 0);
}

// ---- numeric drivers over the truncated model ----

struct PsiNumeric {
    AdditivePoly<Tail> psi;       // the q-power coefficients g_{N,i}
    std::vector<Tail> full;        // the full dense product in X
    bool non_q_power_vanish = true;  // mixed-degree coefficients vanish
};

// psi_N from the torsion product over N^{-1}L\L mod L at a certified point
PsiNumeric psi_from_torsion(const QParams& P, const Poly& n_gen, const LatticeCoset& L,
                            const OmegaPoint& omega, Rat target);

// e_k from the psi_t coefficients: e_k = (t^{q^k}-t)^{-1} sum g_i e_{k-i}^{q^i}
std::vector<Tail> exp_coeffs_from_recursion(const QParams& P, const AdditivePoly<Tail>& psi_t,
                                            int upto);

// E_{q^k-1,L} from the e-sequence: e_k = E_{q^k-1} + sum e_j E_{q^{k-j}-1}^{q^j}
std::vector<Tail> eis_from_exp_coeffs(const QParams& P, const std::vector<Tail>& e_seq);

// e(z - sum E z^{q^i}) = z + O(z^{q^K+1}) in formal composition
bool compositional_inverse_numeric(const QParams& P, const std::vector<Tail>& e_seq,
                                   const std::vector<Tail>& eis_seq, int K);

struct FormsReport {
    bool pass = false;
    std::string details;
};

// the two coefficient recursions against product-extracted coefficients
FormsReport coefficient_recursion_check(const QParams& P, const LatticeCoset& L,
                                        const OmegaPoint& omega, Rat target);

// psi_N(e_{L omega}(z)) = N* e_{N^{-1}L omega}(z) at sample arguments
FormsReport isogeny_equation_check(const QParams& P, const Poly& n_gen, const LatticeCoset& L,
                                   const OmegaPoint& omega, Rat target);

// Delta_{t^2} = Delta_t^{1+q^r} and the lattice-scaling laws, numerically
FormsReport discriminant_relations_numeric(const QParams& P, int r, Rat target);

// F_q-linearity of psi evaluated at sample pairs
FormsReport psi_linearity_check(const QParams& P, const Poly& n_gen, const LatticeCoset& L,
                                const OmegaPoint& omega, Rat target);

// boundary behaviour of g_{N,k} along the infinity schedule (rank 2)
FormsReport coefficient_boundary_check(const QParams& P, const Poly& n_gen,
                                       const std::vector<int>& schedule, Rat target);

// delta_N = lambda_N prod E_{1,v+L} over projective representatives and its
// (q-1)-st power against Delta_N; the verified sign is (-1)^{k+1} with
// k = (q^{r deg N}-1)/(q-1), which is -1 exactly when q is odd and k even.
int delta_power_sign(const QParams& P, int r, int degN);
FormsReport delta_root_numeric(const QParams& P, const Poly& n_gen, const LatticeCoset& L,
                               const OmegaPoint& omega, Rat target);

// Moore identities over constants and over indeterminates
FormsReport moore_identities_check(const QParams& P, unsigned seed);

}  // namespace dmf

#endif
