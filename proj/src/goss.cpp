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

#include "dmf/goss.hpp"

#include <algorithm>
#include <mutex>
#include <set>

namespace dmf {

GossPoly GossPoly::var_x(int p) {
    GossPoly g{p, {}};
    g.terms[{1, {}}] = 1;
    return g;
}

void GossPoly::add_term(GossMono m, int coeff) {
    while (!m.ye.empty() && m.ye.back() == 0) m.ye.pop_back();
    int c = ((coeff % p) + p) % p;
    if (c == 0) return;
    auto [it, fresh] = terms.emplace(std::move(m), 0);
    it->second = static_cast<std::uint8_t>((it->second + c) % p);
    if (it->second == 0) terms.erase(it);
    (void)fresh;
}

GossPoly operator+(const GossPoly& a, const GossPoly& b) {
    GossPoly r = a;
    for (const auto& [m, c] : b.terms) r.add_term(m, c);
    return r;
}

GossPoly operator*(const GossPoly& a, const GossPoly& b) {
    GossPoly r{a.p, {}};
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            GossMono m;
            m.xe = ma.xe + mb.xe;
            m.ye.resize(std::max(ma.ye.size(), mb.ye.size()), 0);
            for (size_t i = 0; i < ma.ye.size(); ++i) m.ye[i] += ma.ye[i];
            for (size_t i = 0; i < mb.ye.size(); ++i) m.ye[i] += mb.ye[i];
            r.add_term(std::move(m), ca * cb);
        }
    return r;
}

GossPoly GossPoly::scaled(int c) const {
    GossPoly r{p, {}};
    for (const auto& [m, cc] : terms) r.add_term(m, cc * c);
    return r;
}

GossPoly GossPoly::mul_x() const {
    GossPoly r{p, {}};
    for (const auto& [m, c] : terms) {
        GossMono m2 = m;
        m2.xe += 1;
        r.terms[m2] = c;
    }
    return r;
}

GossPoly GossPoly::mul_y(std::size_t i) const {
    GossPoly r{p, {}};
    for (const auto& [m, c] : terms) {
        GossMono m2 = m;
        if (m2.ye.size() < i) m2.ye.resize(i, 0);
        m2.ye[i - 1] += 1;
        r.terms[m2] = c;
    }
    return r;
}

GossPoly GossPoly::pow(int e) const {
    GossPoly r{p, {}};
    r.terms[{0, {}}] = 1;
    for (int i = 0; i < e; ++i) r = r * (*this);
    return r;
}

GossPoly GossPoly::dx() const {
    GossPoly r{p, {}};
    for (const auto& [m, c] : terms) {
        if (m.xe == 0) continue;
        GossMono m2 = m;
        m2.xe -= 1;
        r.add_term(m2, c * static_cast<int>(m.xe % p));
    }
    return r;
}

int GossPoly::ord_x() const {
    DMF_CHECK(!terms.empty(), "X-order of zero polynomial");
    std::uint32_t o = UINT32_MAX;
    for (const auto& [m, c] : terms) {
        (void)c;
        o = std::min(o, m.xe);
    }
    return static_cast<int>(o);
}

int GossPoly::deg_x() const {
    int d = 0;
    for (const auto& [m, c] : terms) {
        (void)c;
        d = std::max(d, static_cast<int>(m.xe));
    }
    return d;
}

std::size_t GossPoly::max_y_index() const {
    std::size_t idx = 0;
    for (const auto& [m, c] : terms) {
        (void)c;
        idx = std::max(idx, m.ye.size());
    }
    return idx;
}

bool GossPoly::monic_in_x() const {
    int d = deg_x();
    auto it = terms.find(GossMono{static_cast<std::uint32_t>(d), {}});
    return it != terms.end() && it->second == 1;
}

std::string GossPoly::str() const {
    if (terms.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms) {
        std::string t;
        if (c != 1 || (m.xe == 0 && m.ye.empty())) t = std::to_string(static_cast<int>(c));
        if (m.xe > 0) {
            if (!t.empty()) t += "*";
            t += "X";
            if (m.xe > 1) t += "^" + std::to_string(m.xe);
        }
        for (size_t i = 0; i < m.ye.size(); ++i) {
            if (m.ye[i] == 0) continue;
            if (!t.empty()) t += "*";
            t += "Y" + std::to_string(i + 1);
            if (m.ye[i] > 1) t += "^" + std::to_string(m.ye[i]);
        }
        if (!s.empty()) s += " + ";
        s += t;
    }
    return s;
}

namespace {
std::mutex g_goss_mutex;
std::map<std::pair<std::int64_t, int>, GossPoly> g_goss_cache;
}  // namespace

const GossPoly& goss(std::int64_t q, int k) {
    DMF_CHECK(k >= 1, "index of the partial-fraction polynomial must be positive");
    DMF_CHECK(k <= 4096, "index cap exceeded");
    std::lock_guard<std::mutex> lock(g_goss_mutex);
    auto key = std::make_pair(q, k);
    auto it = g_goss_cache.find(key);
    if (it != g_goss_cache.end()) return it->second;

    int p = 2;
    for (int cand : {2, 3, 5, 7}) {
        if (q % cand == 0) { p = cand; break; }
    }
    // build from 1 upward inside the lock
    for (int j = 1; j <= k; ++j) {
        auto kj = std::make_pair(q, j);
        if (g_goss_cache.count(kj)) continue;
        if (j == 1) {
            g_goss_cache.emplace(kj, GossPoly::var_x(p));
            continue;
        }
        GossPoly inner = g_goss_cache.at({q, j - 1});
        std::int64_t qi = q;
        int i = 1;
        while (qi < j) {  // strict: 1 <= i < log_q j
            inner = inner + g_goss_cache.at({q, j - static_cast<int>(qi)}).mul_y(i);
            qi *= q;
            ++i;
        }
        g_goss_cache.emplace(kj, inner.mul_x());
    }
    return g_goss_cache.at(key);
}

int goss_ord_x(std::int64_t q, int k) { return goss(q, k).ord_x(); }

Tail goss_eval_tail(const GossPoly& g, const Tail& x, const std::vector<Tail>& ys) {
    Tail acc = Tail::zero(x.f);
    DMF_CHECK(g.max_y_index() <= ys.size(), "missing Y arguments");
    for (const auto& [m, c] : g.terms) {
        Tail term = Tail::from_const(x.f, 1);
        // scalar c lies in the prime field
        std::uint16_t cc = 0;
        for (int i = 0; i < c; ++i) cc = x.f->add(cc, 1);
        term = term.scaled(cc);
        if (m.xe > 0) term = term * x.pow_int(m.xe);
        for (size_t i = 0; i < m.ye.size(); ++i)
            if (m.ye[i] > 0) term = term * ys[i].pow_int(m.ye[i]);
        acc = acc + term;
    }
    return acc;
}

void check_subspace(const QParams& P, const Field* big, const std::vector<std::uint16_t>& elems) {
    std::set<std::uint16_t> s(elems.begin(), elems.end());
    DMF_CHECK(s.count(0) == 1, "subspace must contain zero");
    const Field* fq = P.fq();
    for (auto a : s)
        for (auto b : s)
            DMF_CHECK(s.count(big->add(a, b)) == 1, "element set not closed under addition");
    for (std::uint32_t c = 1; c < fq->size; ++c) {
        std::uint16_t cb = embed_elem(fq, big, static_cast<std::uint16_t>(c));
        for (auto a : s) DMF_CHECK(s.count(big->mul(cb, a)) == 1, "element set not F_q-stable");
    }
}

namespace {

std::vector<std::uint16_t> span_elements(const QParams& P, const Field* big,
                                         const std::vector<std::uint16_t>& basis) {
    const Field* fq = P.fq();
    std::vector<std::uint16_t> out = {0};
    for (auto b : basis) {
        std::vector<std::uint16_t> next;
        for (auto prev : out)
            for (std::uint32_t c = 0; c < fq->size; ++c) {
                std::uint16_t cb = embed_elem(fq, big, static_cast<std::uint16_t>(c));
                next.push_back(big->add(prev, big->mul(cb, b)));
            }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        out = std::move(next);
    }
    return out;
}

}  // namespace

Poly subspace_exponential(const QParams& P, const Field* big,
                          const std::vector<std::uint16_t>& basis) {
    auto H = span_elements(P, big, basis);
    Poly e = Poly::gen(big);
    for (auto h : H) {
        if (h == 0) continue;
        // multiply by (1 - z/h)
        Poly factor(big, {1, big->neg(big->inv(h))});
        e = e * factor;
    }
    return e;
}

bool verify_partial_fraction(const QParams& P, const Field* big,
                             const std::vector<std::uint16_t>& basis, int k) {
    auto H = span_elements(P, big, basis);
    Poly e = subspace_exponential(P, big, basis);

    // left side: sum over h of (z-h)^{-k}, numerator over prod (z-h)^k
    Poly prod_all = Poly::constant(big, 1);
    std::vector<Poly> lin;
    lin.reserve(H.size());
    for (auto h : H) {
        Poly zmh(big, {big->neg(h), 1});
        lin.push_back(zmh);
        prod_all = prod_all * zmh;
    }
    Poly lhs_num(big);
    for (size_t i = 0; i < H.size(); ++i) {
        Poly term = Poly::constant(big, 1);
        for (size_t j = 0; j < H.size(); ++j)
            if (j != i) term = term * lin[j];
        lhs_num = lhs_num + term.pow(k);
    }
    // right side: G_k(e^{-1}, e_q, e_{q^2}, ...) = (sum_j c_j(Y) e^{k-j}) / e^k
    const GossPoly& g = goss(P.q, k);
    std::vector<std::uint16_t> yvals;
    std::int64_t qi = P.q;
    for (size_t i = 1; i <= g.max_y_index(); ++i) {
        yvals.push_back(e.coeff(static_cast<int>(qi)));
        qi *= P.q;
    }
    Poly rhs_num(big);
    for (const auto& [m, c] : g.terms) {
        std::uint16_t scalar = 0;
        for (int i = 0; i < c; ++i) scalar = big->add(scalar, 1);
        for (size_t i = 0; i < m.ye.size(); ++i)
            for (std::uint32_t rep = 0; rep < m.ye[i]; ++rep) scalar = big->mul(scalar, yvals[i]);
        rhs_num = rhs_num + e.pow(k - static_cast<int>(m.xe)).scaled(scalar);
    }
    // compare lhs_num / prod_all^k with rhs_num / e^k by cross multiplication
    return lhs_num * e.pow(k) == rhs_num * prod_all.pow(k);
}

}  // namespace dmf
