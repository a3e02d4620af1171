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

#include "dmf/poly.hpp"

#include <sstream>

namespace dmf {

static const Field* common_field(const Field* a, const Field* b) {
    DMF_CHECK(a == b, "mixed-field polynomial arithmetic");
    return a;
}

Poly operator+(const Poly& a, const Poly& b) {
    const Field* f = common_field(a.f, b.f);
    Poly r(f);
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = f->add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    r.trim();
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    const Field* f = common_field(a.f, b.f);
    Poly r(f);
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = f->sub(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    r.trim();
    return r;
}

Poly Poly::operator-() const {
    Poly r(f);
    r.c = c;
    for (auto& x : r.c) x = f->neg(x);
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    const Field* f = common_field(a.f, b.f);
    if (a.is_zero() || b.is_zero()) return Poly(f);
    Poly r(f);
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = f->add(r.c[i + j], f->mul(a.c[i], b.c[j]));
    }
    r.trim();
    return r;
}

Poly Poly::scaled(std::uint16_t s) const {
    Poly r(f);
    if (s == 0) return r;
    r.c = c;
    for (auto& x : r.c) x = f->mul(x, s);
    return r;
}

Poly Poly::monic() const {
    DMF_CHECK(!is_zero(), "monic of zero polynomial");
    return scaled(f->inv(lead()));
}

Poly Poly::shifted(int k) const {
    if (is_zero()) return *this;
    Poly r(f);
    r.c.assign(c.size() + k, 0);
    for (size_t i = 0; i < c.size(); ++i) r.c[i + k] = c[i];
    return r;
}

std::uint16_t Poly::eval(std::uint16_t x) const {
    std::uint16_t acc = 0;
    for (int i = degree(); i >= 0; --i) acc = f->add(f->mul(acc, x), c[i]);
    return acc;
}

Poly Poly::pow(std::int64_t e) const {
    DMF_CHECK(e >= 0, "negative polynomial power");
    Poly r = Poly::constant(f, 1);
    Poly b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Poly Poly::frob_pow(std::int64_t q) const {
    Poly r(f);
    if (is_zero()) return r;
    r.c.assign(static_cast<size_t>(degree()) * q + 1, 0);
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) r.c[i * q] = f->pow(c[i], q);
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    const Field* f = common_field(a.f, b.f);
    DMF_CHECK(!b.is_zero(), "division by zero polynomial");
    Poly q(f), r = a;
    if (a.degree() >= b.degree()) q.c.assign(a.degree() - b.degree() + 1, 0);
    std::uint16_t binv = f->inv(b.lead());
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        std::uint16_t coef = f->mul(r.lead(), binv);
        q.c[shift] = coef;
        for (int i = 0; i <= b.degree(); ++i)
            r.c[shift + i] = f->sub(r.c[shift + i], f->mul(coef, b.c[i]));
        r.trim();
    }
    q.trim();
    return {q, r};
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        auto [q, r] = divmod(x, y);
        (void)q;
        x = y;
        y = r;
    }
    return x.is_zero() ? x : x.monic();
}

bool is_irreducible(const Poly& f) {
    const int n = f.degree();
    if (n < 1) return false;
    const Field* F = f.f;
    std::int64_t Q = F->size;
    Poly fm = f.monic();
    auto powmod = [&](Poly base, std::int64_t e) {
        Poly r = Poly::constant(F, 1);
        base = divmod(base, fm).second;
        while (e > 0) {
            if (e & 1) r = divmod(r * base, fm).second;
            base = divmod(base * base, fm).second;
            e >>= 1;
        }
        return r;
    };
    Poly x = Poly::gen(F);
    // x^{Q^n} == x mod f
    Poly acc = x;
    for (int i = 0; i < n; ++i) acc = powmod(acc, Q);
    if (!divmod(acc - x, fm).second.is_zero()) return false;
    for (int l = 2; l <= n; ++l) {
        if (n % l) continue;
        bool prime = true;
        for (int d = 2; d * d <= l; ++d)
            if (l % d == 0) { prime = false; break; }
        if (!prime) continue;
        Poly acc2 = x;
        for (int i = 0; i < n / l; ++i) acc2 = powmod(acc2, Q);
        if (gcd(fm, acc2 - x).degree() >= 1) return false;
    }
    return true;
}

std::pair<bool, Poly> poly_nth_root(const Poly& a, std::int64_t n) {
    const Field* F = a.f;
    if (a.is_zero()) return {true, a};
    if (n == 1) return {true, a};
    if (n % F->p == 0) {
        // p-th root is the inverse Frobenius: unique when it exists
        for (size_t i = 0; i < a.c.size(); ++i)
            if (a.c[i] != 0 && i % F->p != 0) return {false, Poly(F)};
        Poly g(F);
        g.c.assign(a.c.size() / F->p + 1, 0);
        std::int64_t root_exp = ipow(F->p, F->deg - 1);  // x -> x^{p^{deg-1}} inverts x -> x^p
        for (size_t i = 0; i < a.c.size(); i += F->p)
            g.c[i / F->p] = F->pow(a.c[i], root_exp);
        g.trim();
        if (g.pow(F->p) != a) return {false, Poly(F)};
        return poly_nth_root(g, n / F->p);
    }
    if (a.degree() % n != 0) return {false, Poly(F)};
    int dg = static_cast<int>(a.degree() / n);
    auto lr = F->nth_root(a.lead(), n);
    if (!lr) return {false, Poly(F)};
    Poly g(F);
    g.c.assign(dg + 1, 0);
    g.c[dg] = *lr;
    // n is invertible here, so the coefficient of x^{i+(n-1)dg} in g^n depends
    // linearly on g.c[i] with slope n*lead^{n-1} != 0; solve top-down.
    std::uint16_t nval = 0;
    for (int k = 0; k < static_cast<int>(n % F->p); ++k) nval = F->add(nval, 1);
    std::uint16_t der = F->mul(nval, F->pow(g.c[dg], n - 1));
    for (int i = dg - 1; i >= 0; --i) {
        Poly gn = g.pow(n);
        int target = i + static_cast<int>(n - 1) * dg;
        std::uint16_t delta = F->mul(F->sub(a.coeff(target), gn.coeff(target)), F->inv(der));
        g.c[i] = delta;
    }
    if (g.pow(n) == a) return {true, g};
    return {false, Poly(F)};
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        if (c[i] == 0) continue;
        std::string cs = f->elem_str(c[i]);
        bool needs_paren = cs.find('+') != std::string::npos;
        std::string term;
        if (i == 0) term = needs_paren ? "(" + cs + ")" : cs;
        else {
            if (cs == "1") term = "";
            else term = (needs_paren ? "(" + cs + ")" : cs) + "*";
            term += var;
            if (i > 1) term += "^" + std::to_string(i);
        }
        if (!s.empty()) s += " + ";
        s += term.empty() ? "1" : term;
    }
    return s;
}

std::string Poly::coeff_csv() const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(c[i]);
    }
    return s;
}

Poly Poly::parse_csv(const Field* fld, const std::string& s) {
    Poly r(fld);
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        long v = std::stol(item);
        DMF_CHECK(v >= 0 && v < static_cast<long>(fld->size), "coefficient out of range");
        r.c.push_back(static_cast<std::uint16_t>(v));
    }
    r.trim();
    return r;
}

void RatF::normalize() {
    DMF_CHECK(!den.is_zero(), "rational function with zero denominator");
    if (num.is_zero()) {
        den = Poly::constant(num.f, 1);
        return;
    }
    Poly g = gcd(num, den);
    if (g.degree() > 0) {
        num = divmod(num, g).first;
        den = divmod(den, g).first;
    }
    std::uint16_t l = den.lead();
    if (l != 1) {
        std::uint16_t li = num.f->inv(l);
        num = num.scaled(li);
        den = den.scaled(li);
    }
}

RatF operator+(const RatF& a, const RatF& b) { return RatF(a.num * b.den + b.num * a.den, a.den * b.den); }
RatF operator-(const RatF& a, const RatF& b) { return RatF(a.num * b.den - b.num * a.den, a.den * b.den); }
RatF operator*(const RatF& a, const RatF& b) { return RatF(a.num * b.num, a.den * b.den); }
RatF operator/(const RatF& a, const RatF& b) {
    DMF_CHECK(!b.is_zero(), "division by zero rational function");
    return RatF(a.num * b.den, a.den * b.num);
}
RatF RatF::operator-() const {
    RatF r = *this;
    r.num = -r.num;
    return r;
}

RatF RatF::inv() const {
    DMF_CHECK(!is_zero(), "inverse of zero rational function");
    return RatF(den, num);
}

RatF RatF::pow(std::int64_t e) const {
    if (e < 0) return inv().pow(-e);
    RatF r = RatF::constant(field(), 1);
    RatF b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

RatF RatF::frob_pow(std::int64_t q) const { return RatF(num.frob_pow(q), den.frob_pow(q)); }

RatF RatF::subst(const RatF& g) const {
    auto eval_poly = [&](const Poly& p) {
        RatF acc = RatF(Poly(p.f));
        for (int i = p.degree(); i >= 0; --i)
            acc = acc * g + RatF::constant(p.f, p.coeff(i));
        return acc;
    };
    return eval_poly(num) / eval_poly(den);
}

std::string RatF::str(const std::string& var) const {
    if (is_polynomial()) return num.str(var);
    return "(" + num.str(var) + ")/(" + den.str(var) + ")";
}

RatF RatF::parse(const Field* fld, const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return RatF(Poly::parse_csv(fld, s));
    return RatF(Poly::parse_csv(fld, s.substr(0, slash)), Poly::parse_csv(fld, s.substr(slash + 1)));
}

}  // namespace dmf
