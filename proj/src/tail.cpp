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

#include "dmf/tail.hpp"

#include <algorithm>
#include <map>

namespace dmf {

Tail Tail::zero(const Field* f) {
    Tail t;
    t.f = f;
    return t;
}

Tail Tail::zero_at(const Field* f, Rat prec) {
    Tail t;
    t.f = f;
    t.exact = false;
    t.ram = static_cast<std::int32_t>(prec.den);
    t.prec_num = prec.num;
    return t;
}

Tail Tail::one(const Field* f) { return from_const(f, 1); }

Tail Tail::from_const(const Field* f, std::uint16_t c) {
    Tail t;
    t.f = f;
    if (c != 0) t.terms.push_back({0, c});
    return t;
}

Tail Tail::monomial(const Field* f, std::uint16_t c, Rat exponent) {
    Tail t;
    t.f = f;
    t.ram = static_cast<std::int32_t>(exponent.den);
    if (c != 0) t.terms.push_back({exponent.num, c});
    return t;
}

Tail Tail::from_poly(const Poly& p) {
    Tail t;
    t.f = p.f;
    for (int i = p.degree(); i >= 0; --i)
        if (p.coeff(i) != 0) t.terms.push_back({i, p.coeff(i)});
    return t;
}

Tail Tail::from_ratf(const RatF& x, Rat prec) {
    const Field* f = x.field();
    if (x.is_zero()) return zero(f);
    Tail n = from_poly(x.num);
    if (x.den.is_one()) return n;
    // monomial denominators embed exactly
    bool monomial = true;
    for (int i = 0; i < x.den.degree(); ++i)
        if (x.den.coeff(i) != 0) { monomial = false; break; }
    if (monomial) return n.shifted(Rat(-x.den.degree())).scaled(f->inv(x.den.lead()));
    // work precision generous enough that the quotient is certified past prec
    Rat w = prec + Rat(std::abs(x.num.degree()) + 2 * std::abs(x.den.degree()) + 4);
    Tail d = from_poly(x.den).truncated(w);
    Tail r = n * d.inv();
    DMF_CHECK(r.exact || Rat(r.prec_num, r.ram) >= prec, "embedding precision shortfall");
    return r;
}

Rat Tail::prec() const {
    DMF_CHECK(!exact, "precision of exact element");
    return Rat(prec_num, ram);
}

std::optional<Rat> Tail::norm_exp() const {
    if (terms.empty()) return std::nullopt;
    return Rat(terms.front().e, ram);
}

Rat Tail::known_floor() const {
    if (exact) return Rat(INT64_MIN / 2, 1);
    return -Rat(prec_num, ram);
}

void Tail::normalize() {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.e > b.e; });
    std::vector<Term> out;
    out.reserve(terms.size());
    for (size_t i = 0; i < terms.size();) {
        size_t j = i;
        std::uint16_t acc = 0;
        while (j < terms.size() && terms[j].e == terms[i].e) {
            acc = f->add(acc, terms[j].c);
            ++j;
        }
        if (acc != 0 && (exact || terms[i].e > -prec_num)) out.push_back({terms[i].e, acc});
        i = j;
    }
    terms = std::move(out);
    if (!exact) {
        // drop any below-precision terms (already filtered above)
    }
    // reduce the ramification index when possible
    if (ram > 1) {
        std::int64_t g = ram;
        for (const auto& t : terms) g = std::gcd(g, std::llabs(t.e));
        if (!exact) g = std::gcd(g, std::llabs(prec_num));
        if (g > 1) {
            for (auto& t : terms) t.e /= g;
            if (!exact) prec_num /= g;
            ram = static_cast<std::int32_t>(ram / g);
        }
    }
}

Tail Tail::promoted(const Field* nf, std::int32_t nram) const {
    DMF_CHECK(nram % ram == 0, "ramification must extend");
    Tail r;
    r.f = nf;
    r.ram = nram;
    r.exact = exact;
    std::int64_t k = nram / ram;
    if (!exact) r.prec_num = prec_num * k;
    r.terms.reserve(terms.size());
    for (const auto& t : terms) r.terms.push_back({t.e * k, embed_elem(f, nf, t.c)});
    return r;
}

void Tail::align(Tail& a, Tail& b) {
    const Field* nf = compositum(a.f, b.f);
    std::int32_t nram = static_cast<std::int32_t>(std::lcm(a.ram, b.ram));
    if (a.f != nf || a.ram != nram) a = a.promoted(nf, nram);
    if (b.f != nf || b.ram != nram) b = b.promoted(nf, nram);
}

Tail Tail::truncated(Rat newprec) const {
    Tail r = *this;
    std::int32_t nram = static_cast<std::int32_t>(std::lcm<std::int64_t>(r.ram, newprec.den));
    if (nram != r.ram) r = r.promoted(r.f, nram);
    std::int64_t pn = newprec.num * (nram / newprec.den);
    if (!r.exact) pn = std::min(pn, r.prec_num);
    r.exact = false;
    r.prec_num = pn;
    r.terms.erase(std::remove_if(r.terms.begin(), r.terms.end(),
                                 [&](const Term& t) { return t.e <= -pn; }),
                  r.terms.end());
    r.normalize();
    return r;
}

Tail Tail::with_error(Rat err_exp) const { return truncated(-err_exp); }

Tail operator+(const Tail& a0, const Tail& b0) {
    Tail a = a0, b = b0;
    Tail::align(a, b);
    Tail r;
    r.f = a.f;
    r.ram = a.ram;
    r.exact = a.exact && b.exact;
    if (!r.exact) {
        std::int64_t pa = a.exact ? INT64_MAX : a.prec_num;
        std::int64_t pb = b.exact ? INT64_MAX : b.prec_num;
        r.prec_num = std::min(pa, pb);
    }
    r.terms.reserve(a.terms.size() + b.terms.size());
    size_t i = 0, j = 0;
    while (i < a.terms.size() || j < b.terms.size()) {
        bool ta = i < a.terms.size();
        bool tb = j < b.terms.size();
        if (ta && (!tb || a.terms[i].e > b.terms[j].e)) {
            r.terms.push_back(a.terms[i++]);
        } else if (tb && (!ta || b.terms[j].e > a.terms[i].e)) {
            r.terms.push_back(b.terms[j++]);
        } else {
            std::uint16_t s = a.f->add(a.terms[i].c, b.terms[j].c);
            if (s != 0) r.terms.push_back({a.terms[i].e, s});
            ++i;
            ++j;
        }
    }
    if (!r.exact)
        r.terms.erase(std::remove_if(r.terms.begin(), r.terms.end(),
                                     [&](const Tail::Term& t) { return t.e <= -r.prec_num; }),
                      r.terms.end());
    r.normalize();
    return r;
}

Tail Tail::operator-() const {
    Tail r = *this;
    for (auto& t : r.terms) t.c = f->neg(t.c);
    return r;
}

Tail operator-(const Tail& a, const Tail& b) { return a + (-b); }

Tail operator*(const Tail& a0, const Tail& b0) {
    Tail a = a0, b = b0;
    Tail::align(a, b);
    Tail r;
    r.f = a.f;
    r.ram = a.ram;
    // precision: x = A + da, y = B + db with |da| <= q^{-Pa} etc.
    // error of the product is bounded by max(|A| q^{-Pb}, |B| q^{-Pa}).
    r.exact = a.exact && b.exact;
    if (!r.exact) {
        std::int64_t la = a.terms.empty() ? (a.exact ? INT64_MIN / 4 : -a.prec_num) : a.terms.front().e;
        std::int64_t lb = b.terms.empty() ? (b.exact ? INT64_MIN / 4 : -b.prec_num) : b.terms.front().e;
        std::int64_t bound = INT64_MAX;
        if (!b.exact) bound = std::min(bound, b.prec_num - la);
        if (!a.exact) bound = std::min(bound, a.prec_num - lb);
        r.prec_num = bound;
    }
    if (a.terms.empty() || b.terms.empty()) {
        r.normalize();
        return r;
    }
    std::map<std::int64_t, std::uint16_t, std::greater<>> acc;
    std::int64_t cutoff = r.exact ? INT64_MIN / 2 : -r.prec_num;
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms) {
            std::int64_t e = ta.e + tb.e;
            if (e <= cutoff) continue;
            auto [it, inserted] = acc.emplace(e, 0);
            it->second = a.f->add(it->second, a.f->mul(ta.c, tb.c));
            if (it->second == 0) acc.erase(it);
        }
    r.terms.reserve(acc.size());
    for (const auto& [e, c] : acc) r.terms.push_back({e, c});
    r.normalize();
    return r;
}

bool operator==(const Tail& a0, const Tail& b0) {
    Tail a = a0, b = b0;
    Tail::align(a, b);
    if (a.exact != b.exact) return false;
    if (!a.exact && a.prec_num != b.prec_num) return false;
    if (a.terms.size() != b.terms.size()) return false;
    for (size_t i = 0; i < a.terms.size(); ++i)
        if (a.terms[i].e != b.terms[i].e || a.terms[i].c != b.terms[i].c) return false;
    return true;
}

Tail Tail::scaled(std::uint16_t s) const {
    Tail r = *this;
    if (s == 0) {
        r.terms.clear();
        return r;
    }
    for (auto& t : r.terms) t.c = f->mul(t.c, s);
    return r;
}

Tail Tail::shifted(Rat dexp) const {
    Tail r = *this;
    std::int32_t nram = static_cast<std::int32_t>(std::lcm<std::int64_t>(r.ram, dexp.den));
    if (nram != r.ram) r = r.promoted(r.f, nram);
    std::int64_t d = dexp.num * (nram / dexp.den);
    for (auto& t : r.terms) t.e += d;
    if (!r.exact) r.prec_num -= d;
    return r;
}

Tail Tail::inv() const {
    if (terms.empty()) {
        throw precision_error(exact ? "inverse of exact zero"
                                    : "inverse of an element indistinguishable from zero: precision exhausted");
    }
    if (exact && terms.size() == 1) {
        Tail r = *this;
        r.terms[0].e = -terms[0].e;
        r.terms[0].c = f->inv(terms[0].c);
        return r;
    }
    DMF_CHECK(!exact, "inverse of exact multi-term series needs truncation first");
    const std::int64_t L = terms.front().e;
    // result precision prec + 2L; window of exponents L-k for 0 <= k < W
    const std::int64_t W = prec_num + L;
    DMF_CHECK(W >= 1, "invariant violation: leading term below precision");
    DMF_CHECK(W <= (1 << 22), "inversion window too large");
    std::vector<std::uint16_t> A(static_cast<size_t>(W), 0);
    for (const auto& t : terms) {
        std::int64_t k = L - t.e;
        if (k >= 0 && k < W) A[static_cast<size_t>(k)] = t.c;
    }
    std::vector<std::uint16_t> B(static_cast<size_t>(W), 0);
    std::uint16_t cinv = f->inv(A[0]);
    B[0] = cinv;
    for (std::int64_t k = 1; k < W; ++k) {
        std::uint16_t s = 0;
        for (std::int64_t i = 1; i <= k; ++i)
            if (A[i] != 0 && B[k - i] != 0) s = f->add(s, f->mul(A[i], B[k - i]));
        if (s != 0) B[static_cast<size_t>(k)] = f->mul(f->neg(s), cinv);
    }
    Tail r;
    r.f = f;
    r.ram = ram;
    r.exact = false;
    r.prec_num = prec_num + 2 * L;
    for (std::int64_t k = 0; k < W; ++k)
        if (B[static_cast<size_t>(k)] != 0) r.terms.push_back({-L - k, B[static_cast<size_t>(k)]});
    r.normalize();
    return r;
}

Tail Tail::pow_int(std::int64_t n) const {
    if (n < 0) return inv().pow_int(-n);
    Tail r = Tail::one(f);
    Tail b = *this;
    if (n == 0) return r;
    while (n > 0) {
        if (n & 1) r = r * b;
        b = (n >>= 1) ? b * b : b;
    }
    return r;
}

Tail Tail::frob_pow(std::int64_t q) const {
    Tail r;
    r.f = f;
    r.ram = ram;
    r.exact = exact;
    if (!exact) r.prec_num = prec_num * q;
    r.terms.reserve(terms.size());
    for (const auto& t : terms) r.terms.push_back({t.e * q, f->pow(t.c, q)});
    r.normalize();
    return r;
}

Tail Tail::nth_root(std::int64_t n, int char_p) const {
    DMF_CHECK(n >= 1, "root order must be positive");
    if (n == 1) return *this;
    if (terms.empty()) {
        if (exact) return *this;
        // |y| <= q^{-P/n} is all we can certify for y^n = x = O(t^{-P})
        Tail r = *this;
        r.ram = static_cast<std::int32_t>(ram * n);
        r.prec_num = prec_num;
        r.normalize();
        return r;
    }
    if (n % char_p == 0) {
        // inverse Frobenius; unique root
        Tail r;
        r.f = f;
        r.exact = exact;
        std::int64_t root_exp = ipow(f->p, f->deg - 1);
        bool divisible = true;
        for (const auto& t : terms)
            if (t.e % char_p != 0) { divisible = false; break; }
        if (divisible && (exact || prec_num % char_p == 0)) {
            r.ram = ram;
            if (!exact) r.prec_num = prec_num / char_p;
            for (const auto& t : terms) r.terms.push_back({t.e / char_p, f->pow(t.c, root_exp)});
        } else {
            r.ram = static_cast<std::int32_t>(ram * static_cast<std::int64_t>(char_p));
            if (!exact) r.prec_num = prec_num;
            for (const auto& t : terms) r.terms.push_back({t.e, f->pow(t.c, root_exp)});
        }
        r.normalize();
        return r.nth_root(n / char_p, char_p);
    }
    // tame part: extend ramification so the leading exponent divides
    Tail x = *this;
    if (x.terms.front().e % n != 0) x = x.promoted(x.f, static_cast<std::int32_t>(x.ram * n));
    const std::int64_t La = x.terms.front().e;
    DMF_CHECK(La % n == 0, "leading exponent not divisible after extension");
    // leading coefficient root, extending the constant field if needed
    std::uint16_t lead = x.terms.front().c;
    const Field* fld = x.f;
    std::optional<std::uint16_t> root = fld->nth_root(lead, n);
    for (int k = 2; !root && k <= 6; ++k) {
        if (static_cast<std::int64_t>(x.f->deg) * k > 16) break;
        const Field* bigger = Field::get(x.f->p, x.f->deg * k);
        std::uint16_t l2 = embed_elem(x.f, bigger, lead);
        root = bigger->nth_root(l2, n);
        if (root) fld = bigger;
    }
    if (!root) throw math_error("no n-th root in supported extensions");
    if (fld != x.f) x = x.promoted(fld, x.ram);

    Tail mono = Tail::monomial(fld, *root, Rat(La / n, x.ram));
    if (x.terms.size() == 1 && x.exact) return mono;
    DMF_CHECK(!x.exact, "n-th root of exact multi-term series needs truncation first");
    // Newton for z^n = 1 + u at working precision
    Tail w = x * mono.pow_int(-n);  // 1 + u
    Tail z = Tail::one(fld).truncated(w.prec());
    std::uint16_t ninv;
    {
        std::uint16_t nval = 0;
        for (int k = 0; k < static_cast<int>(n % fld->p); ++k) nval = fld->add(nval, 1);
        ninv = fld->inv(nval);
    }
    for (int iter = 0; iter < 64; ++iter) {
        Tail err = z.pow_int(n) - w;
        if (err.vanishes()) break;
        Tail corr = err * z.pow_int(n - 1).inv();
        z = z - corr.scaled(ninv);
        DMF_CHECK(iter < 63, "n-th root iteration failed to converge");
    }
    Tail y = mono * z;
    return y;
}

std::string Tail::str() const {
    std::string s;
    for (const auto& t : terms) {
        if (!s.empty()) s += " + ";
        std::string cs = f->elem_str(t.c);
        bool paren = cs.find('+') != std::string::npos;
        if (paren) cs = "(" + cs + ")";
        Rat e(t.e, ram);
        if (e == Rat(0)) s += cs;
        else {
            std::string es = (e.den == 1) ? std::to_string(e.num) : "(" + e.str() + ")";
            s += (cs == "1" ? "" : cs + "*") + std::string("t^") + es;
        }
    }
    if (s.empty()) s = "0";
    if (!exact) {
        Rat p = prec();
        std::string es = (p.den == 1) ? std::to_string(-p.num) : "(" + (-p).str() + ")";
        s += " + O(t^" + es + ")";
    }
    return s;
}

std::vector<std::pair<std::string, std::string>> Tail::json_pairs() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& t : terms) out.emplace_back(Rat(t.e, ram).str(), f->elem_str(t.c));
    return out;
}

bool agree_at_joint_precision(const Tail& a, const Tail& b, Rat* out_prec) {
    Tail d = a - b;
    if (out_prec) *out_prec = d.exact ? Rat(INT64_MAX / 2, 1) : d.prec();
    return d.vanishes();
}

}  // namespace dmf
