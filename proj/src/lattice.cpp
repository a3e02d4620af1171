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

#include "dmf/lattice.hpp"

#include <algorithm>

namespace dmf {

Mat mat_identity(const Field* f, int r) {
    Mat m(r, std::vector<RatF>(r, RatF(Poly(f))));
    for (int i = 0; i < r; ++i) m[i][i] = RatF::constant(f, 1);
    return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    int n = static_cast<int>(a.size()), m = static_cast<int>(b[0].size()), k = static_cast<int>(b.size());
    const Field* f = a[0][0].field();
    Mat r(n, std::vector<RatF>(m, RatF(Poly(f))));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            RatF s{Poly(f)};
            for (int l = 0; l < k; ++l) s = s + a[i][l] * b[l][j];
            r[i][j] = s;
        }
    return r;
}

Vec row_times_mat(const Vec& x, const Mat& m) {
    const Field* f = x[0].field();
    int r = static_cast<int>(m.size()), c = static_cast<int>(m[0].size());
    Vec out(c, RatF(Poly(f)));
    for (int j = 0; j < c; ++j) {
        RatF s{Poly(f)};
        for (int i = 0; i < r; ++i) s = s + x[i] * m[i][j];
        out[j] = s;
    }
    return out;
}

RatF mat_det(const Mat& m) {
    int n = static_cast<int>(m.size());
    const Field* f = m[0][0].field();
    Mat a = m;
    RatF det = RatF::constant(f, 1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!a[i][col].is_zero()) { piv = i; break; }
        if (piv < 0) return RatF(Poly(f));
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det = det * a[col][col];
        RatF pinv = a[col][col].inv();
        for (int i = col + 1; i < n; ++i) {
            if (a[i][col].is_zero()) continue;
            RatF fac = a[i][col] * pinv;
            for (int j = col; j < n; ++j) a[i][j] = a[i][j] - fac * a[col][j];
        }
    }
    return det;
}

Mat mat_inverse(const Mat& m) {
    int n = static_cast<int>(m.size());
    const Field* f = m[0][0].field();
    Mat a = m;
    Mat inv = mat_identity(f, n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!a[i][col].is_zero()) { piv = i; break; }
        DMF_CHECK(piv >= 0, "singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        RatF pinv = a[col][col].inv();
        for (int j = 0; j < n; ++j) {
            a[col][j] = a[col][j] * pinv;
            inv[col][j] = inv[col][j] * pinv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col || a[i][col].is_zero()) continue;
            RatF fac = a[i][col];
            for (int j = 0; j < n; ++j) {
                a[i][j] = a[i][j] - fac * a[col][j];
                inv[i][j] = inv[i][j] - fac * inv[col][j];
            }
        }
    }
    return inv;
}

Mat mat_scaled(const Mat& m, const RatF& s) {
    Mat r = m;
    for (auto& row : r)
        for (auto& x : row) x = x * s;
    return r;
}

void hermite_form(const Mat& b_in, Mat* Hout, Mat* Uout) {
    int n = static_cast<int>(b_in.size());
    const Field* f = b_in[0][0].field();
    Mat H = b_in;
    Mat U = mat_identity(f, n);
    auto rowsub = [&](int i, int j, const Poly& q) {  // row_i -= q * row_j
        RatF rq{q};
        for (int c = 0; c < n; ++c) H[i][c] = H[i][c] - rq * H[j][c];
        for (int c = 0; c < n; ++c) U[i][c] = U[i][c] - rq * U[j][c];
    };
    for (int col = 0; col < n; ++col) {
        for (;;) {
            int best = -1;
            for (int i = col; i < n; ++i) {
                if (H[i][col].is_zero()) continue;
                DMF_CHECK(H[i][col].is_polynomial(), "hermite_form requires polynomial entries");
                if (best < 0 || H[i][col].num.degree() < H[best][col].num.degree()) best = i;
            }
            DMF_CHECK(best >= 0, "rank-deficient lattice basis");
            if (best != col) {
                std::swap(H[best], H[col]);
                std::swap(U[best], U[col]);
            }
            bool clean = true;
            for (int i = col + 1; i < n; ++i) {
                if (H[i][col].is_zero()) continue;
                auto [q, r] = divmod(H[i][col].num, H[col][col].num);
                rowsub(i, col, q);
                if (!r.is_zero()) clean = false;
            }
            if (clean) break;
        }
        std::uint16_t lead = H[col][col].num.lead();
        if (lead != 1) {
            RatF s = RatF::constant(f, f->inv(lead));
            for (int c = 0; c < n; ++c) {
                H[col][c] = H[col][c] * s;
                U[col][c] = U[col][c] * s;
            }
        }
    }
    if (Hout) *Hout = H;
    if (Uout) *Uout = U;
}

LatticeCoset::LatticeCoset(Mat b, Vec tr)
    : r(static_cast<int>(b.size())), basis(std::move(b)), v(std::move(tr)) {
    DMF_CHECK(!mat_det(basis).is_zero(), "lattice basis is singular");
    DMF_CHECK(static_cast<int>(v.size()) == r, "translation size mismatch");
}

LatticeCoset LatticeCoset::standard(const QParams& P, int r) {
    const Field* f = P.fq();
    return LatticeCoset(mat_identity(f, r), Vec(r, RatF(Poly(f))));
}

void LatticeCoset::ensure_hnf() const {
    if (hnf_done_) return;
    const Field* f = field();
    Poly den = Poly::constant(f, 1);
    for (const auto& row : basis)
        for (const auto& x : row)
            if (!x.is_zero()) {
                Poly g = gcd(den, x.den);
                den = divmod(den * x.den, g).first;
            }
    Mat bint = basis;
    for (auto& row : bint)
        for (auto& x : row) x = x * RatF{den};
    Mat H, U;
    hermite_form(bint, &H, &U);
    hnf_int_ = H;
    hnf_den_ = den;
    hnf_ = H;
    RatF dinv = RatF{den}.inv();
    for (auto& row : hnf_)
        for (auto& x : row) x = x * dinv;
    hnf_done_ = true;
}

const Mat& LatticeCoset::hnf_basis() const {
    ensure_hnf();
    return hnf_;
}
const Mat& LatticeCoset::hnf_denominator_matrix() const {
    ensure_hnf();
    return hnf_int_;
}
const Poly& LatticeCoset::hnf_denominator() const {
    ensure_hnf();
    return hnf_den_;
}

bool LatticeCoset::v_in_lattice() const {
    bool zero = true;
    for (const auto& c : v) zero = zero && c.is_zero();
    return zero || lattice_only().contains(v);
}

bool LatticeCoset::contains(const Vec& x) const {
    Vec d(r, RatF(Poly(field())));
    for (int i = 0; i < r; ++i) d[i] = x[i] - v[i];
    Vec a = row_times_mat(d, mat_inverse(basis));
    for (const auto& c : a)
        if (!c.is_polynomial()) return false;
    return true;
}

Vec LatticeCoset::reduce_mod_lattice(const Vec& x) const {
    Vec a = row_times_mat(x, mat_inverse(basis));
    const Field* f = field();
    Vec frac(r, RatF(Poly(f)));
    for (int i = 0; i < r; ++i) {
        if (!a[i].is_polynomial()) {
            auto [q, rr] = divmod(a[i].num, a[i].den);
            (void)q;
            frac[i] = RatF(rr, a[i].den);
        }
    }
    return row_times_mat(frac, basis);
}

LatticeCoset LatticeCoset::lattice_only() const {
    return LatticeCoset(basis, Vec(r, RatF(Poly(field()))));
}

LatticeCoset LatticeCoset::translated(const Vec& nv) const { return LatticeCoset(basis, nv); }

LatticeCoset LatticeCoset::scaled_lattice(const RatF& a) const {
    Mat b = mat_scaled(basis, a);
    Vec nv = v;
    for (auto& x : nv) x = x * a;
    return LatticeCoset(b, nv);
}

LatticeCoset LatticeCoset::transformed(const Mat& gamma) const {
    return LatticeCoset(mat_mul(basis, gamma), row_times_mat(v, gamma));
}

int LatticeCoset::index_log_q(const LatticeCoset& sub) const {
    RatF d1 = mat_det(basis), d2 = mat_det(sub.basis);
    int lg = d2.deg_total() - d1.deg_total();
    DMF_CHECK(lg >= 0, "not a sublattice by covolume");
    return lg;
}

namespace {

Poly poly_from_index(const Field* f, std::uint64_t idx, int maxdeg) {
    Poly p(f);
    if (maxdeg < 0) return p;
    p.c.reserve(maxdeg + 1);
    for (int i = 0; i <= maxdeg; ++i) {
        p.c.push_back(static_cast<std::uint16_t>(idx % f->size));
        idx /= f->size;
    }
    p.trim();
    return p;
}

}  // namespace

std::vector<Vec> coset_reps(const QParams& P, const Poly& n_gen, const LatticeCoset& L) {
    const Field* f = P.fq();
    DMF_CHECK(n_gen.degree() >= 1, "torsion representatives need a non-unit ideal");
    int d = n_gen.degree();
    int r = L.r;
    RatF ninv = RatF{n_gen}.inv();
    std::uint64_t per = ipow(P.q, d);
    std::uint64_t total = 1;
    for (int i = 0; i < r; ++i) total *= per;
    std::vector<Vec> out;
    out.reserve(total - 1);
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        std::uint64_t rest = idx;
        Vec coeff(r, RatF(Poly(f)));
        for (int i = 0; i < r; ++i) {
            coeff[i] = RatF{poly_from_index(f, rest % per, d - 1)} * ninv;
            rest /= per;
        }
        out.push_back(row_times_mat(coeff, L.basis));
    }
    return out;
}

std::vector<Vec> projective_reps(const QParams& P, const Poly& n_gen, const LatticeCoset& L) {
    const Field* f = P.fq();
    int d = n_gen.degree();
    int r = L.r;
    RatF ninv = RatF{n_gen}.inv();
    std::uint64_t per = ipow(P.q, d);
    std::uint64_t total = 1;
    for (int i = 0; i < r; ++i) total *= per;
    std::vector<Vec> out;
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        std::uint64_t rest = idx;
        std::vector<Poly> g(r);
        for (int i = 0; i < r; ++i) {
            g[i] = poly_from_index(f, rest % per, d - 1);
            rest /= per;
        }
        std::uint16_t lead = 0;
        for (int i = 0; i < r; ++i)
            if (!g[i].is_zero()) { lead = g[i].lead(); break; }
        if (lead != 1) continue;
        Vec coeff(r, RatF(Poly(f)));
        for (int i = 0; i < r; ++i) coeff[i] = RatF{g[i]} * ninv;
        out.push_back(row_times_mat(coeff, L.basis));
    }
    return out;
}

std::vector<Vec> quotient_reps(const QParams& P, const LatticeCoset& L, const LatticeCoset& L2) {
    const Field* f = P.fq();
    int r = L.r;
    Mat C = mat_mul(L2.basis, mat_inverse(L.basis));
    for (auto& row : C)
        for (auto& x : row) DMF_CHECK(x.is_polynomial(), "not a sublattice");
    Mat T, U;
    hermite_form(C, &T, &U);
    std::vector<int> degs(r);
    std::uint64_t total = 1;
    for (int i = 0; i < r; ++i) {
        degs[i] = T[i][i].num.degree();
        total *= ipow(P.q, degs[i]);
    }
    std::vector<Vec> out;
    out.reserve(total);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t rest = idx;
        Vec coeff(r, RatF(Poly(f)));
        for (int i = 0; i < r; ++i) {
            std::uint64_t per = ipow(P.q, degs[i]);
            if (degs[i] > 0) coeff[i] = RatF{poly_from_index(f, rest % per, degs[i] - 1)};
            rest /= per;
        }
        out.push_back(row_times_mat(coeff, L.basis));
    }
    return out;
}

UFrame u_frame(const QParams& P, const LatticeCoset& coset) {
    (void)P;
    const Field* f = coset.field();
    const Mat& H = coset.hnf_basis();
    int r = coset.r;
    DMF_CHECK(r >= 2, "u-frame needs rank at least 2");
    UFrame fr;
    fr.l1_gen = H[0][0];
    fr.lift_row = H[0];
    Mat bp(r - 1, std::vector<RatF>(r - 1, RatF(Poly(f))));
    for (int i = 1; i < r; ++i)
        for (int j = 1; j < r; ++j) bp[i - 1][j - 1] = H[i][j];
    Vec vp(coset.v.begin() + 1, coset.v.end());
    fr.lprime = LatticeCoset(bp, vp);
    fr.v1 = coset.v[0];
    RatF g = fr.l1_gen;
    if (!fr.v1.is_zero()) {
        Poly den = fr.v1.den * fr.l1_gen.den;
        Poly a = fr.v1.num * fr.l1_gen.den;
        Poly b = fr.l1_gen.num * fr.v1.den;
        g = RatF(gcd(a, b), den);
    }
    fr.lambda_scale = g.inv();
    return fr;
}

int frame_index_log_q(const QParams& P, const UFrame& fr, const RatF& x1) {
    (void)P;
    RatF ratio = x1 * fr.lambda_scale;
    DMF_CHECK(ratio.is_polynomial(), "x1 not in the coset ideal");
    int lg = fr.lprime.r * ratio.deg_total();
    DMF_CHECK(lg >= 0, "negative index");
    return lg;
}

Rat OmegaPoint::min_lead() const {
    Rat m = *entries[0].norm_exp();
    for (const auto& e : entries) m = std::min(m, *e.norm_exp());
    return m;
}

std::vector<Rat> OmegaPoint::leads() const {
    std::vector<Rat> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(*e.norm_exp());
    return out;
}

bool check_certificate(const OmegaPoint& omega) {
    auto l = omega.leads();
    for (size_t i = 0; i < l.size(); ++i)
        for (size_t j = i + 1; j < l.size(); ++j) {
            Rat d = l[i] - l[j];
            if (d.den == 1) return false;  // congruent mod 1
        }
    return true;
}

OmegaPoint standard_point(const QParams& P, int r, bool variant, int xi_pow) {
    const Field* f = P.fq();
    OmegaPoint w;
    w.entries.reserve(r);
    for (int i = 1; i <= r; ++i) {
        Tail e = Tail::monomial(f, 1, Rat(r - i, r) + Rat(xi_pow));
        if (variant && i == 1) e = e + Tail::monomial(f, 1, Rat(xi_pow));
        w.entries.push_back(e);
    }
    w.certified = check_certificate(w);
    return w;
}

Tail pairing(const QParams& P, const Vec& x, const OmegaPoint& omega, Rat prec) {
    const Field* f = P.fq();
    Tail acc = Tail::zero(f);
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        Tail xi = Tail::from_ratf(x[i], prec + *omega.entries[i].norm_exp() + Rat(2));
        acc = acc + xi * omega.entries[i];
    }
    return acc;
}

std::vector<Tail> mat_times_omega(const QParams& P, const Mat& gamma, const OmegaPoint& omega,
                                  Rat prec) {
    std::vector<Tail> out;
    out.reserve(gamma.size());
    for (const auto& row : gamma) out.push_back(pairing(P, row, omega, prec));
    return out;
}

namespace {

struct EnumCtx {
    const QParams* P;
    const Field* f;
    int r;
    int D;
    const Mat* rows;
    const std::function<void(const Vec&)>* fn;
    std::size_t budget;
    std::size_t count = 0;

    void recurse(int level, Vec& partial, bool all_zero) {
        if (level == r) {
            if (all_zero) return;
            ++count;
            if (count > budget) throw budget_error("enumeration budget exceeded");
            (*fn)(partial);
            return;
        }
        const RatF& piv = (*rows)[level][level];
        int pivdeg = piv.deg_total();
        int known = partial[level].is_zero() ? NEG_INF_DEG : partial[level].deg_total();
        int maxdeg = std::max(D, known == NEG_INF_DEG ? D : known) - pivdeg;
        if (maxdeg < 0) {
            if (known == NEG_INF_DEG || known <= D) descend(level, partial, all_zero, Poly(f));
            return;
        }
        std::uint64_t total = ipow(P->q, maxdeg + 1);
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            Poly a = poly_from_index(f, idx, maxdeg);
            descend(level, partial, all_zero, a);
        }
    }

    void descend(int level, const Vec& partial, bool all_zero, const Poly& a) {
        Vec next = partial;
        if (!a.is_zero()) {
            RatF ar{a};
            for (int j = level; j < r; ++j)
                if (!(*rows)[level][j].is_zero()) next[j] = next[j] + ar * (*rows)[level][j];
        }
        if (!next[level].is_zero() && next[level].deg_total() > D) return;
        recurse(level + 1, next, all_zero && next[level].is_zero());
    }
};

}  // namespace

std::size_t enumerate_coset(const QParams& P, const LatticeCoset& coset, int D,
                            const std::function<void(const Vec&)>& fn, std::size_t budget) {
    EnumCtx ctx;
    ctx.P = &P;
    ctx.f = coset.field();
    ctx.r = coset.r;
    ctx.D = D;
    ctx.rows = &coset.hnf_basis();
    ctx.fn = &fn;
    ctx.budget = budget;
    Vec start = coset.v;
    ctx.recurse(0, start, true);
    return ctx.count;
}

}  // namespace dmf
