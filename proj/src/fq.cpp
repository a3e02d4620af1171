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

#include "dmf/fq.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace dmf {

namespace {

using u16 = std::uint16_t;
using u32 = std::uint32_t;

// dense F_p[x] helpers on digit vectors (ascending)
std::vector<std::uint8_t> trim(std::vector<std::uint8_t> v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

std::vector<std::uint8_t> pmul(const std::vector<std::uint8_t>& a,
                               const std::vector<std::uint8_t>& b, int p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint8_t> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return trim(r);
}

std::vector<std::uint8_t> pmod(std::vector<std::uint8_t> a,
                               const std::vector<std::uint8_t>& m, int p) {
    a = trim(a);
    const int dm = static_cast<int>(m.size()) - 1;
    // m monic
    while (static_cast<int>(a.size()) - 1 >= dm) {
        int shift = static_cast<int>(a.size()) - 1 - dm;
        int c = a.back();
        for (int i = 0; i <= dm; ++i) {
            int k = shift + i;
            a[k] = static_cast<std::uint8_t>((a[k] + p - (c * m[i]) % p) % p);
        }
        a = trim(a);
        if (a.empty()) break;
    }
    return a;
}

std::vector<std::uint8_t> pgcd(std::vector<std::uint8_t> a, std::vector<std::uint8_t> b, int p) {
    a = trim(a); b = trim(b);
    while (!b.empty()) {
        // scale b monic for pmod
        std::vector<std::uint8_t> bm = b;
        int lead = bm.back();
        if (lead != 1) {
            int li = 1;
            while ((lead * li) % p != 1) ++li;
            for (auto& c : bm) c = static_cast<std::uint8_t>((c * li) % p);
        }
        auto r = pmod(a, bm, p);
        a = b;
        b = r;
    }
    return a;
}

std::vector<std::uint8_t> ppowmod(std::vector<std::uint8_t> base, std::int64_t e,
                                  const std::vector<std::uint8_t>& m, int p) {
    std::vector<std::uint8_t> r = {1};
    base = pmod(std::move(base), m, p);
    while (e > 0) {
        if (e & 1) r = pmod(pmul(r, base, p), m, p);
        base = pmod(pmul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

bool is_irreducible(const std::vector<std::uint8_t>& f, int p) {
    const int n = static_cast<int>(f.size()) - 1;
    if (n < 1) return false;
    // x^{p^n} == x mod f, and gcd(x^{p^{n/l}} - x, f) == 1 for primes l | n
    std::vector<std::uint8_t> x = {0, 1};
    auto xp = ppowmod(x, ipow(p, n), f, p);  // p^n small here
    std::vector<std::uint8_t> diff = xp;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = static_cast<std::uint8_t>((diff[1] + p - 1) % p);
    if (!trim(diff).empty()) return false;
    for (int l = 2; l <= n; ++l) {
        if (n % l != 0) continue;
        bool prime = true;
        for (int d = 2; d * d <= l; ++d)
            if (l % d == 0) { prime = false; break; }
        if (!prime) continue;
        auto xq = ppowmod(x, ipow(p, n / l), f, p);
        std::vector<std::uint8_t> d2 = xq;
        if (d2.size() < 2) d2.resize(2, 0);
        d2[1] = static_cast<std::uint8_t>((d2[1] + p - 1) % p);
        auto g = pgcd(f, trim(d2), p);
        if (static_cast<int>(g.size()) - 1 >= 1) return false;
    }
    return true;
}

std::vector<std::uint8_t> least_irreducible(int p, int n) {
    if (n == 1) return {0, 1};  // x itself: F_p, generator is 0... handled specially
    std::int64_t count = ipow(p, n);
    for (std::int64_t idx = 0; idx < count; ++idx) {
        std::vector<std::uint8_t> f(n + 1, 0);
        std::int64_t v = idx;
        for (int i = 0; i < n; ++i) { f[i] = static_cast<std::uint8_t>(v % p); v /= p; }
        f[n] = 1;
        if (is_irreducible(f, p)) return f;
    }
    throw math_error("no irreducible polynomial found");
}

std::mutex g_field_mutex;
std::map<std::pair<int, int>, std::unique_ptr<Field>> g_fields;
std::map<std::pair<const Field*, const Field*>, u16> g_embeddings;

}  // namespace

struct FieldBuilder {
    static std::unique_ptr<Field> build(int p, int deg) {
        DMF_CHECK(p >= 2 && deg >= 1, "bad field parameters");
        auto f = std::make_unique<Field>();
        f->p = p;
        f->deg = deg;
        std::int64_t sz = ipow(p, deg);
        DMF_CHECK(sz <= 65536, "field too large for table representation");
        f->size = static_cast<u32>(sz);
        f->modulus = least_irreducible(p, deg);

        auto idx_of = [&](const std::vector<std::uint8_t>& v) {
            u32 r = 0;
            for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
                r = r * p + v[i];
            return r;
        };
        auto vec_of = [&](u32 idx) {
            std::vector<std::uint8_t> v(deg, 0);
            for (int i = 0; i < deg; ++i) { v[i] = static_cast<std::uint8_t>(idx % p); idx /= p; }
            return v;
        };

        // negation
        f->neg_table.resize(f->size);
        for (u32 a = 0; a < f->size; ++a) {
            auto va = vec_of(a);
            for (auto& c : va) c = static_cast<std::uint8_t>((p - c) % p);
            f->neg_table[a] = static_cast<u16>(idx_of(va));
        }
        if (f->size <= 256) {
            f->add_table.resize(f->size * f->size);
            for (u32 a = 0; a < f->size; ++a)
                for (u32 b = 0; b < f->size; ++b) {
                    auto va = vec_of(a), vb = vec_of(b);
                    for (int i = 0; i < deg; ++i) va[i] = static_cast<std::uint8_t>((va[i] + vb[i]) % p);
                    f->add_table[a * f->size + b] = static_cast<u16>(idx_of(va));
                }
        }

        // find a primitive element by brute force
        auto mul_raw = [&](u32 a, u32 b) {
            auto r = pmod(pmul(vec_of(a), vec_of(b), p), f->modulus, p);
            r.resize(deg, 0);
            return idx_of(r);
        };
        u32 order = f->size - 1;
        for (u32 cand = 1; cand < f->size; ++cand) {
            u32 x = 1;
            u32 steps = 0;
            do {
                x = mul_raw(x, cand);
                ++steps;
            } while (x != 1);
            if (steps == order) {
                f->exp_table.resize(order);
                f->log_table.assign(f->size, 0);
                u32 cur = 1;
                for (u32 i = 0; i < order; ++i) {
                    f->exp_table[i] = static_cast<u16>(cur);
                    f->log_table[cur] = static_cast<u16>(i);
                    cur = mul_raw(cur, cand);
                }
                break;
            }
        }
        DMF_CHECK(!f->exp_table.empty(), "no primitive element found");
        return f;
    }
};

const Field* Field::get(int p, int deg) {
    std::lock_guard<std::mutex> lock(g_field_mutex);
    auto key = std::make_pair(p, deg);
    auto it = g_fields.find(key);
    if (it == g_fields.end())
        it = g_fields.emplace(key, FieldBuilder::build(p, deg)).first;
    return it->second.get();
}

std::uint16_t Field::add_slow(std::uint16_t a, std::uint16_t b) const {
    u32 r = 0, mult = 1;
    for (int i = 0; i < deg; ++i) {
        int da = a % p, db = b % p;
        a = static_cast<u16>(a / p);
        b = static_cast<u16>(b / p);
        r += mult * ((da + db) % p);
        mult *= p;
    }
    return static_cast<u16>(r);
}

std::uint16_t Field::pow(std::uint16_t a, std::int64_t e) const {
    if (a == 0) {
        DMF_CHECK(e > 0, "0^e with e <= 0");
        return 0;
    }
    std::int64_t ord = size - 1;
    std::int64_t ee = e % ord;
    if (ee < 0) ee += ord;
    std::uint32_t le = static_cast<std::uint32_t>((static_cast<std::int64_t>(log_table[a]) * ee) % ord);
    return exp_table[le];
}

std::optional<std::uint16_t> Field::nth_root(std::uint16_t a, std::int64_t n) const {
    if (a == 0) return static_cast<u16>(0);
    for (u32 y = 1; y < size; ++y)
        if (pow(static_cast<u16>(y), n) == a) return static_cast<u16>(y);
    return std::nullopt;
}

std::string Field::elem_str(std::uint16_t a) const {
    if (deg == 1) return std::to_string(a);
    if (a == 0) return "0";
    std::string s;
    u16 v = a;
    for (int i = 0; i < deg; ++i) {
        int c = v % p;
        v = static_cast<u16>(v / p);
        if (c == 0) continue;
        std::string term;
        if (i == 0) term = std::to_string(c);
        else {
            term = (c == 1) ? "" : std::to_string(c) + "*";
            term += (i == 1) ? "g" : "g^" + std::to_string(i);
        }
        if (!s.empty()) s += "+";
        s += term;
    }
    return s;
}

std::uint16_t embed_generator(const Field* src, const Field* dst) {
    DMF_CHECK(src->p == dst->p && dst->deg % src->deg == 0, "no embedding between fields");
    if (src == dst) return src->deg == 1 ? 0 : static_cast<u16>(src->p);  // index of g = x
    std::lock_guard<std::mutex> lock(g_field_mutex);
    auto key = std::make_pair(src, dst);
    auto it = g_embeddings.find(key);
    if (it != g_embeddings.end()) return it->second;
    // least root of src->modulus in dst
    const int p = src->p;
    for (u32 y = 0; y < dst->size; ++y) {
        u16 acc = 0, xp = 1;
        bool first = true;
        for (size_t i = 0; i < src->modulus.size(); ++i) {
            int c = src->modulus[i];
            if (c != 0) {
                u16 term = xp;
                u16 scaled = 0;
                for (int j = 0; j < c; ++j) scaled = dst->add(scaled, term);
                acc = dst->add(acc, scaled);
            }
            (void)first;
            xp = dst->mul(xp, static_cast<u16>(y));
        }
        if (acc == 0) {
            g_embeddings[key] = static_cast<u16>(y);
            return static_cast<u16>(y);
        }
        (void)p;
    }
    throw math_error("embedding root not found");
}

std::uint16_t embed_elem(const Field* src, const Field* dst, std::uint16_t a) {
    if (src == dst) return a;
    u16 gim = embed_generator(src, dst);
    const int p = src->p;
    u16 acc = 0, xp = 1;
    u16 v = a;
    for (int i = 0; i < src->deg; ++i) {
        int c = v % p;
        v = static_cast<u16>(v / p);
        if (c != 0) {
            u16 scaled = 0;
            for (int j = 0; j < c; ++j) scaled = dst->add(scaled, xp);
            acc = dst->add(acc, scaled);
        }
        xp = dst->mul(xp, gim);
    }
    return acc;
}

const Field* compositum(const Field* a, const Field* b) {
    DMF_CHECK(a->p == b->p, "fields of different characteristic");
    if (a == b) return a;
    int l = std::lcm(a->deg, b->deg);
    return Field::get(a->p, l);
}

}  // namespace dmf
