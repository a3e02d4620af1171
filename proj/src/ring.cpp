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

#include "dmf/ring.hpp"

#include <algorithm>
#include <array>

namespace dmf {

namespace {

using U8Row = std::vector<std::uint8_t>;

// incremental row echelon over F_q with full back-substitution at the end
struct Echelon {
    const Field* f;
    int ncols;
    std::map<int, U8Row> pivots;  // leading column -> normalized row

    explicit Echelon(const Field* fld, int n) : f(fld), ncols(n) {}

    // reduce the row against the current pivots; returns the leading column
    // or -1 when the row vanishes
    int insert(U8Row row) {
        for (;;) {
            int lead = -1;
            for (int j = 0; j < ncols; ++j)
                if (row[j]) { lead = j; break; }
            if (lead < 0) return -1;
            auto it = pivots.find(lead);
            if (it == pivots.end()) {
                std::uint16_t inv = f->inv(row[lead]);
                for (auto& x : row) x = static_cast<std::uint8_t>(f->mul(x, inv));
                pivots.emplace(lead, std::move(row));
                return lead;
            }
            std::uint16_t c = row[lead];
            const U8Row& p = it->second;
            for (int j = lead; j < ncols; ++j)
                if (p[j]) row[j] = static_cast<std::uint8_t>(f->sub(row[j], f->mul(c, p[j])));
        }
    }

    void back_substitute() {
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            for (auto jt = pivots.begin(); jt->first < it->first; ++jt) {
                std::uint16_t c = jt->second[it->first];
                if (!c) continue;
                for (int j = it->first; j < ncols; ++j)
                    if (it->second[j])
                        jt->second[j] = static_cast<std::uint8_t>(
                            f->sub(jt->second[j], f->mul(c, it->second[j])));
            }
        }
    }
};

void gen_monomials(int nvars, int deg, std::vector<std::uint32_t>& cur, int pos,
                   std::vector<std::vector<std::uint32_t>>& out) {
    if (pos == nvars - 1) {
        cur[pos] = static_cast<std::uint32_t>(deg);
        out.push_back(cur);
        return;
    }
    for (int d = deg; d >= 0; --d) {
        cur[pos] = static_cast<std::uint32_t>(d);
        gen_monomials(nvars, deg - d, cur, pos + 1, out);
    }
}

}  // namespace

LevelRing::LevelRing(const QParams& P_, int r_) : P(P_), r(r_), k0(P_.p, P_.e, true) {
    const Field* f = P.fq();
    std::uint64_t total = ipow(P.q, r);
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        std::vector<std::uint16_t> v(r);
        std::uint64_t rest = idx;
        for (int i = 0; i < r; ++i) {
            v[i] = static_cast<std::uint16_t>(rest % P.q);
            rest /= P.q;
        }
        std::uint16_t first = 0;
        for (int i = 0; i < r; ++i)
            if (v[i]) { first = v[i]; break; }
        if (first == 1) vars.push_back(v);
    }
    (void)f;
}

std::pair<int, std::uint16_t> LevelRing::fold(const std::vector<std::uint16_t>& vec) const {
    const Field* f = P.fq();
    std::uint16_t first = 0;
    for (int i = 0; i < r; ++i)
        if (vec[i]) { first = vec[i]; break; }
    DMF_CHECK(first != 0, "folding the zero vector");
    std::uint16_t a = f->inv(first);
    std::vector<std::uint16_t> canon(r);
    for (int i = 0; i < r; ++i) canon[i] = f->mul(a, vec[i]);
    auto it = std::find(vars.begin(), vars.end(), canon);
    DMF_CHECK(it != vars.end(), "canonical representative not found");
    // Y_vec = Y_{first * canon} = first^{-1} Y_canon
    return {static_cast<int>(it - vars.begin()), a};
}

void LevelRing::build_slice(int k) const {
    auto s = std::make_unique<Slice>();
    s->k = k;
    int n = nvars();
    if (k == 0) {
        s->monomials = {{std::vector<std::uint32_t>(n, 0)}};
        s->mono_index[s->monomials[0]] = 0;
        s->basis = {0};
        s->basis_pos = {0};
        s->normal_form = {{1}};
        slices_.emplace(k, std::move(s));
        return;
    }
    std::vector<std::uint32_t> cur(n, 0);
    gen_monomials(n, k, cur, 0, s->monomials);
    DMF_CHECK(s->monomials.size() <= budget_monomials, "slice monomial budget exceeded");
    for (size_t i = 0; i < s->monomials.size(); ++i)
        s->mono_index[s->monomials[i]] = static_cast<int>(i);

    const Field* f = P.fq();
    int ncols = static_cast<int>(s->monomials.size());
    Echelon ech(f, ncols);

    if (k >= 2) {
        // the degree-2 content of the ideal: for representatives v, w in
        // distinct classes and alpha in F_q^x, the row of
        //   Y_v Y_{alpha w} - Y_{v + alpha w} (Y_v + Y_{alpha w})
        const Slice& prev = *slices_.at(k - 2);
        std::vector<std::array<std::pair<int, std::uint16_t>, 3>> rels;
        for (int i1 = 0; i1 < nvars(); ++i1)
            for (int i2 = i1 + 1; i2 < nvars(); ++i2)
                for (std::uint32_t al = 1; al < static_cast<std::uint32_t>(P.q); ++al) {
                    std::vector<std::uint16_t> w(r);
                    std::uint16_t alpha = static_cast<std::uint16_t>(al);
                    for (int i = 0; i < r; ++i)
                        w[i] = f->add(vars[i1][i], f->mul(alpha, vars[i2][i]));
                    bool zero = true;
                    for (int i = 0; i < r; ++i) zero = zero && w[i] == 0;
                    if (zero) continue;  // классы are distinct so this cannot happen
                    auto [iw, cw] = fold(w);
                    std::uint16_t ainv = f->inv(alpha);
                    // Y_{i1} (ainv Y_{i2}) = (cw Y_{iw}) (Y_{i1} + ainv Y_{i2})
                    rels.push_back({{{i1 * 10000 + i2, ainv}, {iw * 10000 + i1, f->neg(cw)},
                                     {iw * 10000 + i2, f->neg(f->mul(cw, ainv))}}});
                }
        for (const auto& mono : prev.monomials) {
            for (const auto& rel : rels) {
                U8Row row(ncols, 0);
                for (const auto& [code, coeff] : rel) {
                    if (coeff == 0) continue;
                    int va = code / 10000, vb = code % 10000;
                    std::vector<std::uint32_t> e(mono.begin(), mono.end());
                    e[va] += 1;
                    e[vb] += 1;
                    int idx = s->mono_index.at(e);
                    row[idx] = static_cast<std::uint8_t>(f->add(row[idx], coeff));
                }
                ech.insert(std::move(row));
            }
        }
    }
    ech.back_substitute();

    s->basis_pos.assign(ncols, -1);
    for (int j = 0; j < ncols; ++j)
        if (!ech.pivots.count(j)) {
            s->basis_pos[j] = static_cast<int>(s->basis.size());
            s->basis.push_back(j);
        }
    int dim = static_cast<int>(s->basis.size());
    s->normal_form.assign(ncols, {});
    for (int j = 0; j < ncols; ++j) {
        U8Row coords(dim, 0);
        auto it = ech.pivots.find(j);
        if (it == ech.pivots.end()) {
            coords[s->basis_pos[j]] = 1;
        } else {
            // pivot + sum c_b basis_b = 0  =>  monomial = -sum c_b basis_b
            for (int b = j + 1; b < ncols; ++b)
                if (it->second[b] && s->basis_pos[b] >= 0)
                    coords[s->basis_pos[b]] = static_cast<std::uint8_t>(f->neg(it->second[b]));
        }
        s->normal_form[j] = std::move(coords);
    }
    slices_.emplace(k, std::move(s));
}

const LevelRing::Slice& LevelRing::slice(int k) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = slices_.find(k);
    if (it == slices_.end()) {
        // build lower slices first without re-locking
        for (int j = k % 2; j <= k; j += 2)
            if (!slices_.count(j)) build_slice(j);
        if (!slices_.count(k)) build_slice(k);
        it = slices_.find(k);
    }
    return *it->second;
}

RingElem RingElem::scalar(const LevelRing& ring, const RatF& c) {
    RingElem x(&ring);
    if (!c.is_zero()) x.comp[0] = {c};
    return x;
}

RingElem RingElem::variable(const LevelRing& ring, int var_idx) {
    std::vector<std::uint32_t> e(ring.nvars(), 0);
    e[var_idx] = 1;
    return monomial(ring, e, ring.k0.one());
}

RingElem RingElem::monomial(const LevelRing& ring, const std::vector<std::uint32_t>& expo,
                            const RatF& c) {
    RingElem x(&ring);
    if (c.is_zero()) return x;
    int k = 0;
    for (auto v : expo) k += static_cast<int>(v);
    const auto& s = ring.slice(k);
    int idx = s.mono_index.at(expo);
    std::vector<RatF> coords(s.dim(), ring.k0.zero());
    const auto& nf = s.normal_form[idx];
    const Field* f = ring.P.fq();
    for (size_t b = 0; b < nf.size(); ++b)
        if (nf[b]) coords[b] = c * RatF::constant(f, nf[b]);
    x.comp[k] = std::move(coords);
    x.prune();
    return x;
}

bool RingElem::is_zero() const {
    for (const auto& [k, v] : comp)
        for (const auto& c : v)
            if (!c.is_zero()) return false;
    return true;
}

void RingElem::prune() {
    for (auto it = comp.begin(); it != comp.end();) {
        bool zero = true;
        for (const auto& c : it->second)
            if (!c.is_zero()) { zero = false; break; }
        it = zero ? comp.erase(it) : std::next(it);
    }
}

RingElem operator+(const RingElem& a, const RingElem& b) {
    DMF_CHECK(a.R == b.R || !a.R || !b.R, "mixed-ring arithmetic");
    RingElem r(a.R ? a.R : b.R);
    r.comp = a.comp;
    for (const auto& [k, v] : b.comp) {
        auto it = r.comp.find(k);
        if (it == r.comp.end()) {
            r.comp[k] = v;
        } else {
            for (size_t i = 0; i < v.size(); ++i) it->second[i] = it->second[i] + v[i];
        }
    }
    r.prune();
    return r;
}

RingElem RingElem::operator-() const {
    RingElem r = *this;
    for (auto& [k, v] : r.comp)
        for (auto& c : v) c = -c;
    return r;
}

RingElem operator-(const RingElem& a, const RingElem& b) { return a + (-b); }

RingElem operator*(const RingElem& a, const RingElem& b) {
    DMF_CHECK(a.R && a.R == b.R, "mixed-ring arithmetic");
    const LevelRing& R = *a.R;
    const Field* f = R.P.fq();
    RingElem r(&R);
    for (const auto& [ka, va] : a.comp)
        for (const auto& [kb, vb] : b.comp) {
            int k = ka + kb;
            const auto& sa = R.slice(ka);
            const auto& sb = R.slice(kb);
            const auto& sk = R.slice(k);
            auto& out = r.comp[k];
            if (out.empty()) out.assign(sk.dim(), R.k0.zero());
            for (size_t ia = 0; ia < va.size(); ++ia) {
                if (va[ia].is_zero()) continue;
                const auto& ma = sa.monomials[sa.basis[ia]];
                for (size_t ib = 0; ib < vb.size(); ++ib) {
                    if (vb[ib].is_zero()) continue;
                    const auto& mb = sb.monomials[sb.basis[ib]];
                    std::vector<std::uint32_t> e(ma.size());
                    for (size_t i = 0; i < e.size(); ++i) e[i] = ma[i] + mb[i];
                    RatF c = va[ia] * vb[ib];
                    const auto& nf = sk.normal_form[sk.mono_index.at(e)];
                    for (size_t bpos = 0; bpos < nf.size(); ++bpos)
                        if (nf[bpos]) out[bpos] = out[bpos] + c * RatF::constant(f, nf[bpos]);
                }
            }
        }
    r.prune();
    return r;
}

bool operator==(const RingElem& a, const RingElem& b) { return (a - b).is_zero(); }

RingElem RingElem::scaled(const RatF& c) const {
    RingElem r = *this;
    for (auto& [k, v] : r.comp)
        for (auto& x : v) x = x * c;
    r.prune();
    return r;
}

RingElem RingElem::frob_pow(std::int64_t qpow) const {
    DMF_CHECK(R, "frobenius of empty element");
    RingElem r(R);
    for (const auto& [k, v] : comp) {
        const auto& s = R->slice(k);
        for (size_t i = 0; i < v.size(); ++i) {
            if (v[i].is_zero()) continue;
            const auto& m = s.monomials[s.basis[i]];
            std::vector<std::uint32_t> e(m.size());
            for (size_t j = 0; j < e.size(); ++j) e[j] = static_cast<std::uint32_t>(m[j] * qpow);
            r = r + RingElem::monomial(*R, e, v[i].frob_pow(qpow));
        }
    }
    return r;
}

RingElem RingElem::pow(std::int64_t e) const {
    DMF_CHECK(R && e >= 0, "bad ring power");
    RingElem r = RingElem::scalar(*R, R->k0.one());
    RingElem b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = (e >>= 1) ? b * b : b;
    }
    return r;
}

RingElem act(const RingElem& x, const FqMat& gamma) {
    DMF_CHECK(x.R, "action on empty element");
    const LevelRing& R = *x.R;
    const Field* f = R.P.fq();
    RingElem out(&R);
    for (const auto& [k, v] : x.comp) {
        const auto& s = R.slice(k);
        for (size_t i = 0; i < v.size(); ++i) {
            if (v[i].is_zero()) continue;
            const auto& m = s.monomials[s.basis[i]];
            std::vector<std::uint32_t> e(m.size(), 0);
            std::uint16_t scal = 1;
            for (size_t var = 0; var < m.size(); ++var) {
                if (!m[var]) continue;
                // image of Y_var under v -> v gamma
                std::vector<std::uint16_t> img(R.r, 0);
                for (int col = 0; col < R.r; ++col) {
                    std::uint16_t acc = 0;
                    for (int row = 0; row < R.r; ++row)
                        acc = f->add(acc, f->mul(R.vars[var][row], gamma[row][col]));
                    img[col] = acc;
                }
                auto [iv, c] = R.fold(img);
                e[iv] += m[var];
                for (std::uint32_t rep = 0; rep < m[var]; ++rep) scal = f->mul(scal, c);
            }
            out = out + RingElem::monomial(R, e, v[i] * RatF::constant(f, scal));
        }
    }
    return out;
}

std::uint16_t fq_det(const QParams& P, const FqMat& gamma) {
    const Field* f = P.fq();
    int n = static_cast<int>(gamma.size());
    Mat m(n, std::vector<RatF>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = RatF::constant(f, gamma[i][j]);
    RatF d = mat_det(m);
    return d.is_zero() ? 0 : d.num.coeff(0);
}

std::vector<FqMat> group_generators(const QParams& P, int r, Subgroup g) {
    const Field* f = P.fq();
    std::vector<FqMat> out;
    auto ident = [&]() {
        FqMat m(r, std::vector<std::uint16_t>(r, 0));
        for (int i = 0; i < r; ++i) m[i][i] = 1;
        return m;
    };
    if (g == Subgroup::Unipotent) {
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j)
                for (std::uint32_t a = 1; a < static_cast<std::uint32_t>(P.q); ++a) {
                    FqMat m = ident();
                    m[i][j] = static_cast<std::uint16_t>(a);
                    out.push_back(m);
                }
        return out;
    }
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (i == j) continue;
            for (std::uint32_t a = 1; a < static_cast<std::uint32_t>(P.q); ++a) {
                FqMat m = ident();
                m[i][j] = static_cast<std::uint16_t>(a);
                out.push_back(m);
            }
        }
    if (g == Subgroup::GL && P.q > 2) {
        FqMat m = ident();
        m[0][0] = f->exp_table[1];  // a primitive element
        out.push_back(m);
    }
    return out;
}

std::vector<FqMat> full_group(const QParams& P, int r, Subgroup g, std::size_t budget) {
    // closure of the generators under multiplication
    const Field* f = P.fq();
    auto gens = group_generators(P, r, g);
    auto key = [&](const FqMat& m) {
        std::string s;
        for (const auto& row : m)
            for (auto x : row) s += static_cast<char>(x + 1);
        return s;
    };
    auto mul = [&](const FqMat& a, const FqMat& b) {
        FqMat c(r, std::vector<std::uint16_t>(r, 0));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                std::uint16_t acc = 0;
                for (int l = 0; l < r; ++l) acc = f->add(acc, f->mul(a[i][l], b[l][j]));
                c[i][j] = acc;
            }
        return c;
    };
    FqMat id(r, std::vector<std::uint16_t>(r, 0));
    for (int i = 0; i < r; ++i) id[i][i] = 1;
    std::map<std::string, FqMat> seen;
    seen[key(id)] = id;
    std::vector<FqMat> frontier = {id};
    while (!frontier.empty()) {
        std::vector<FqMat> next;
        for (const auto& m : frontier)
            for (const auto& gmat : gens) {
                FqMat c = mul(m, gmat);
                auto kk = key(c);
                if (!seen.count(kk)) {
                    DMF_CHECK(seen.size() < budget, "group closure budget exceeded");
                    seen.emplace(kk, c);
                    next.push_back(c);
                }
            }
        frontier = std::move(next);
    }
    std::vector<FqMat> out;
    out.reserve(seen.size());
    for (auto& [kk, m] : seen) out.push_back(m);
    return out;
}

InvariantSpace invariants(const LevelRing& R, int k, Subgroup g, int type_m) {
    const Field* f = R.P.fq();
    const auto& s = R.slice(k);
    int dim = s.dim();
    auto gens = group_generators(R.P, R.r, g);
    // solve (rho(gamma) - det^{-m}) x = 0 for all generators
    Echelon ech(f, dim);
    for (const auto& gamma : gens) {
        std::uint16_t dm = f->pow(f->inv(fq_det(R.P, gamma)), type_m);
        std::vector<std::vector<std::uint8_t>> rows(dim, std::vector<std::uint8_t>(dim, 0));
        for (int bpos = 0; bpos < dim; ++bpos) {
            RingElem x(&R);
            std::vector<RatF> coords(dim, R.k0.zero());
            coords[bpos] = R.k0.one();
            x.comp[k] = coords;
            RingElem y = act(x, gamma);
            auto it = y.comp.find(k);
            for (int i = 0; i < dim; ++i) {
                std::uint16_t val = 0;
                if (it != y.comp.end() && !it->second[i].is_zero()) {
                    DMF_CHECK(it->second[i].is_polynomial() && it->second[i].num.degree() == 0,
                              "action matrix not scalar");
                    val = it->second[i].num.coeff(0);
                }
                if (i == bpos) val = f->sub(val, dm);
                rows[i][bpos] = static_cast<std::uint8_t>(val);
            }
        }
        for (auto& row : rows) ech.insert(std::move(row));
    }
    ech.back_substitute();
    InvariantSpace out;
    // kernel basis from the echelon form
    std::vector<int> freecols;
    for (int j = 0; j < dim; ++j)
        if (!ech.pivots.count(j)) freecols.push_back(j);
    for (int fc : freecols) {
        std::vector<std::uint8_t> vec(dim, 0);
        vec[fc] = 1;
        for (const auto& [pc, row] : ech.pivots) vec[pc] = static_cast<std::uint8_t>(f->neg(row[fc]));
        out.basis.push_back(std::move(vec));
    }
    out.dim = static_cast<int>(out.basis.size());
    return out;
}

DicksonData dickson_generators(const LevelRing& R, int xdeg_cap, int e_upto) {
    const Field* f = R.P.fq();
    DicksonData out;
    RatF t = R.k0.t();
    // dense expansion of t X prod over all nonzero vectors (1 - Y_v X),
    // truncated at X-degree cap
    std::vector<RingElem> dense = {RingElem::scalar(R, t)};
    std::uint64_t total = ipow(R.P.q, R.r);
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        std::vector<std::uint16_t> v(R.r);
        std::uint64_t rest = idx;
        for (int i = 0; i < R.r; ++i) {
            v[i] = static_cast<std::uint16_t>(rest % R.P.q);
            rest /= R.P.q;
        }
        auto [iv, c] = R.fold(v);
        RingElem y = RingElem::variable(R, iv).scaled(RatF::constant(f, c));
        std::vector<RingElem> next(std::min<size_t>(dense.size() + 1, xdeg_cap), RingElem(&R));
        for (size_t i = 0; i < dense.size(); ++i) {
            if (i < next.size()) next[i] = next[i] + dense[i];
            if (i + 1 < next.size()) next[i + 1] = next[i + 1] - dense[i] * y;
        }
        dense = std::move(next);
    }
    // shift by X: coefficient of X^d is dense[d-1]
    std::int64_t qi = 1;
    for (size_t d = 1; d <= dense.size(); ++d) {
        if (static_cast<std::int64_t>(d) == qi) {
            out.psi_t.c.push_back(dense[d - 1]);
            qi *= R.P.q;
        } else if (!dense[d - 1].is_zero()) {
            out.mixed_vanish = false;
        }
    }

    // e-sequence from the recursion over k0 scalars
    out.e_seq = {RingElem::scalar(R, R.k0.one())};
    RatF tplain = R.k0.t();
    for (int k = 1; k <= e_upto; ++k) {
        RingElem acc(&R);
        std::int64_t qpow = R.P.q;
        for (int i = 1; i <= k; ++i) {
            if (i <= out.psi_t.top())
                acc = acc + out.psi_t.c[i] * out.e_seq[static_cast<size_t>(k - i)].frob_pow(qpow);
            qpow *= R.P.q;
        }
        RatF den = tplain.frob_pow(ipow(R.P.q, k)) - tplain;
        out.e_seq.push_back(acc.scaled(den.inv()));
    }
    // E-sequence
    out.eis_seq = {RingElem(&R)};
    for (size_t k = 1; k < out.e_seq.size(); ++k) {
        RingElem acc = out.e_seq[k];
        std::int64_t qj = R.P.q;
        for (size_t j = 1; j < k; ++j) {
            acc = acc - out.e_seq[j] * out.eis_seq[k - j].frob_pow(qj);
            qj *= R.P.q;
        }
        out.eis_seq.push_back(acc);
    }

    // delta_t = lambda * product of all projective representatives
    std::vector<std::uint32_t> expo(R.nvars(), 1);
    out.delta_t = RingElem::monomial(R, expo, R.k0.lambda());
    return out;
}

FracElem::FracElem(const LevelRing* ring)
    : R(ring), num(ring->P.fq()), den(ring->vars.size(), 0) {}

MPoly var_linear_form(const LevelRing& R, int var_idx) {
    const Field* f = R.P.fq();
    MPoly l(f);
    for (int i = 0; i < R.r; ++i)
        if (R.vars[var_idx][i])
            l = l + MPoly::var(f, i, R.r).scaled(RatF::constant(f, R.vars[var_idx][i]));
    return l;
}

namespace {

// multiply num by prod ell_i^{e_i}
MPoly mul_forms(const LevelRing& R, MPoly x, const std::vector<std::uint32_t>& e) {
    for (size_t i = 0; i < e.size(); ++i) {
        MPoly l = var_linear_form(R, static_cast<int>(i));
        for (std::uint32_t k = 0; k < e[i]; ++k) x = x * l;
    }
    return x;
}

}  // namespace

FracElem operator+(const FracElem& a, const FracElem& b) {
    DMF_CHECK(a.R && a.R == b.R, "mixed fraction arithmetic");
    FracElem r(a.R);
    std::vector<std::uint32_t> da(a.den.size()), db(b.den.size());
    for (size_t i = 0; i < r.den.size(); ++i) {
        r.den[i] = std::max(a.den[i], b.den[i]);
        da[i] = r.den[i] - a.den[i];
        db[i] = r.den[i] - b.den[i];
    }
    r.num = mul_forms(*a.R, a.num, da) + mul_forms(*b.R, b.num, db);
    return r;
}

FracElem FracElem::operator-() const {
    FracElem r = *this;
    r.num = -r.num;
    return r;
}

FracElem operator-(const FracElem& a, const FracElem& b) { return a + (-b); }

FracElem operator*(const FracElem& a, const FracElem& b) {
    DMF_CHECK(a.R && a.R == b.R, "mixed fraction arithmetic");
    FracElem r(a.R);
    for (size_t i = 0; i < r.den.size(); ++i) r.den[i] = a.den[i] + b.den[i];
    r.num = a.num * b.num;
    return r;
}

bool operator==(const FracElem& a, const FracElem& b) { return (a - b).is_zero(); }

FracElem FracElem::frob_pow(std::int64_t qpow) const {
    FracElem r(R);
    r.num = num.frob_pow(qpow);
    for (size_t i = 0; i < den.size(); ++i) r.den[i] = static_cast<std::uint32_t>(den[i] * qpow);
    return r;
}

FracElem FracElem::pow(std::int64_t e) const {
    DMF_CHECK(e >= 0, "negative fraction power");
    FracElem r = frac_scalar(*R, R->k0.one());
    FracElem b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = (e >>= 1) ? b * b : b;
    }
    return r;
}

FracElem frac_scalar(const LevelRing& R, const RatF& c) {
    FracElem r(&R);
    r.num = MPoly::constant(R.P.fq(), c);
    return r;
}

FracElem frac_variable(const LevelRing& R, int var_idx) {
    FracElem r(&R);
    r.num = MPoly::constant(R.P.fq(), R.k0.one());
    r.den[var_idx] = 1;
    return r;
}

FracElem embed_ring_elem(const LevelRing& R, const RingElem& x) {
    FracElem acc = frac_scalar(R, R.k0.zero());
    for (const auto& [k, v] : x.comp) {
        const auto& s = R.slice(k);
        for (size_t i = 0; i < v.size(); ++i) {
            if (v[i].is_zero()) continue;
            const auto& m = s.monomials[s.basis[i]];
            FracElem term = frac_scalar(R, v[i]);
            for (size_t var = 0; var < m.size(); ++var)
                for (std::uint32_t rep = 0; rep < m[var]; ++rep)
                    term = term * frac_variable(R, static_cast<int>(var));
            acc = acc + term;
        }
    }
    return acc;
}

}  // namespace dmf
