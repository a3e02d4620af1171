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

#include "dmf/hecke.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace dmf {

LocalHecke::LocalHecke(const QParams& P_, Poly pi_, std::vector<int> mu_, std::size_t budget)
    : P(P_), pi(std::move(pi_)), mu(std::move(mu_)), budget_(budget) {
    DMF_CHECK(pi.is_monic() && is_irreducible(pi), "prime must be monic irreducible");
    r = static_cast<int>(mu.size());
    DMF_CHECK(r >= 2, "rank must be at least 2");
    for (size_t i = 1; i < mu.size(); ++i) DMF_CHECK(mu[i - 1] >= mu[i], "divisors must descend");
    DMF_CHECK(mu.back() == 0, "normalisation requires mu_r = 0");
    mu1 = mu[0];
    qp = ipow(P.q, pi.degree());
    ring_size = ipow(P.q, pi.degree() * std::max(mu1, 1));
    modulus_ = pi.pow(std::max(mu1, 1));
    // enumerate ring elements in index order
    elems_.reserve(ring_size);
    const Field* f = P.fq();
    for (std::int64_t idx = 0; idx < ring_size; ++idx) {
        Poly p(f);
        std::int64_t rest = idx;
        for (int i = 0; i < modulus_.degree(); ++i) {
            p.c.push_back(static_cast<std::uint16_t>(rest % P.q));
            rest /= P.q;
        }
        p.trim();
        elems_.push_back(p);
    }
    unit_.resize(ring_size);
    for (std::int64_t i = 0; i < ring_size; ++i)
        unit_[i] = gcd(elems_[i], pi).degree() == 0 ? 1 : 0;
}

std::int64_t LocalHecke::radd(std::int64_t a, std::int64_t b) const {
    Poly s = elems_[a] + elems_[b];
    std::int64_t idx = 0, mult = 1;
    for (int i = 0; i < modulus_.degree(); ++i) {
        idx += mult * s.coeff(i);
        mult *= P.q;
    }
    return idx;
}

std::int64_t LocalHecke::rmul(std::int64_t a, std::int64_t b) const {
    Poly s = divmod(elems_[a] * elems_[b], modulus_).second;
    std::int64_t idx = 0, mult = 1;
    for (int i = 0; i < modulus_.degree(); ++i) {
        idx += mult * s.coeff(i);
        mult *= P.q;
    }
    return idx;
}

bool LocalHecke::runit(std::int64_t a) const { return unit_[a] != 0; }

std::int64_t LocalHecke::vec_size() const {
    std::int64_t s = 1;
    for (int i = 0; i < r; ++i) s *= ring_size;
    return s;
}

bool LocalHecke::in_Lbar(std::int64_t xvec) const {
    std::int64_t rest = xvec;
    for (int j = 0; j < r; ++j) {
        std::int64_t cj = rest % ring_size;
        rest /= ring_size;
        if (mu[j] > 0) {
            auto [q2, rem] = divmod(elems_[cj], pi.pow(mu[j]));
            (void)q2;
            if (!rem.is_zero()) return false;
        }
    }
    return true;
}

void LocalHecke::build() const {
    auto cs = std::make_unique<Cosets>();
    std::int64_t msize = 1;
    for (int i = 0; i < r * r; ++i) {
        DMF_CHECK(msize < static_cast<std::int64_t>(budget_), "matrix enumeration budget exceeded");
        msize *= ring_size;
    }
    DMF_CHECK(msize <= static_cast<std::int64_t>(budget_), "matrix enumeration budget exceeded");

    // elements of the module L-bar
    std::vector<std::int64_t> lbar;
    for (std::int64_t x = 0; x < vec_size(); ++x)
        if (in_Lbar(x)) lbar.push_back(x);

    auto vec_mul_mat = [&](std::int64_t xvec, const std::vector<std::int64_t>& g) {
        // row vector times matrix over the ring
        std::vector<std::int64_t> xs(r);
        std::int64_t rest = xvec;
        for (int i = 0; i < r; ++i) {
            xs[i] = rest % ring_size;
            rest /= ring_size;
        }
        std::int64_t out = 0, mult = 1;
        for (int j = 0; j < r; ++j) {
            std::int64_t acc = 0;
            for (int i = 0; i < r; ++i) acc = radd(acc, rmul(xs[i], g[i * r + j]));
            out += mult * acc;
            mult *= ring_size;
        }
        return out;
    };

    auto det_of = [&](const std::vector<std::int64_t>& g) -> std::int64_t {
        // Laplace over the ring; r <= 3
        if (r == 2) {
            std::int64_t ad = rmul(g[0], g[3]), bc = rmul(g[1], g[2]);
            // subtract
            const Field* f = P.fq();
            Poly d = elems_[ad] - elems_[bc];
            (void)f;
            std::int64_t idx = 0, mult = 1;
            for (int i = 0; i < modulus_.degree(); ++i) {
                idx += mult * d.coeff(i);
                mult *= P.q;
            }
            return idx;
        }
        std::int64_t total = 0;
        // permutations of 3 elements with signs
        static const int perms[6][4] = {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1},
                                        {0, 2, 1, -1}, {2, 1, 0, -1}, {1, 0, 2, -1}};
        Poly acc(P.fq());
        for (const auto& pm : perms) {
            std::int64_t prod = rmul(rmul(g[0 * r + pm[0]], g[1 * r + pm[1]]), g[2 * r + pm[2]]);
            acc = pm[3] > 0 ? acc + elems_[prod] : acc - elems_[prod];
        }
        acc = divmod(acc, modulus_).second;
        std::int64_t idx = 0, mult = 1;
        for (int i = 0; i < modulus_.degree(); ++i) {
            idx += mult * acc.coeff(i);
            mult *= P.q;
        }
        total = idx;
        return total;
    };

    std::set<std::int64_t> lbar_set(lbar.begin(), lbar.end());
    std::map<std::vector<std::int64_t>, std::size_t> coset_of;
    std::int64_t vs = vec_size();

    std::vector<std::int64_t> g(r * r, 0);
    std::function<void(int)> iterate = [&](int pos) {
        if (pos == r * r) {
            if (!runit(det_of(g))) return;
            ++cs->group_order;
            // image of the module
            std::vector<std::int64_t> image;
            image.reserve(lbar.size());
            for (auto x : lbar) image.push_back(vec_mul_mat(x, g));
            std::sort(image.begin(), image.end());
            bool stab = true;
            for (auto x : image)
                if (!lbar_set.count(x)) { stab = false; break; }
            if (stab) ++cs->stab_order;
            auto it = coset_of.find(image);
            if (it == coset_of.end()) {
                coset_of.emplace(image, cs->translates.size());
                std::vector<bool> member(static_cast<size_t>(vs), false);
                for (auto x : image) member[static_cast<size_t>(x)] = true;
                cs->translates.push_back(std::move(member));
            }
            return;
        }
        for (std::int64_t val = 0; val < ring_size; ++val) {
            g[pos] = val;
            iterate(pos + 1);
        }
    };
    iterate(0);
    DMF_CHECK(cs->group_order % cs->stab_order == 0, "stabiliser order must divide");
    DMF_CHECK(cs->count() == cs->group_order / cs->stab_order, "coset count mismatch");
    cosets_ = std::move(cs);
}

const LocalHecke::Cosets& LocalHecke::cosets() const {
    if (!cosets_) build();
    return *cosets_;
}

std::int64_t LocalHecke::count_containing(std::int64_t xvec) const {
    const auto& cs = cosets();
    std::int64_t n = 0;
    for (const auto& tr : cs.translates)
        if (tr[static_cast<size_t>(xvec)]) ++n;
    return n;
}

std::int64_t LocalHecke::predicted_mod_qp(std::int64_t xvec) const {
    if (mu1 == 0) return 1 % qp;
    if (mu1 <= 1) return 1 % qp;
    if (mu1 >= mu[r - 2] + 2) return 0;
    // middle case: char of L' minus pi L'
    std::int64_t rest = xvec;
    bool in_pi = true;
    for (int j = 0; j < r; ++j) {
        std::int64_t cj = rest % ring_size;
        rest /= ring_size;
        auto [q2, rem] = divmod(elems_[cj], pi);
        (void)q2;
        if (!rem.is_zero()) { in_pi = false; break; }
    }
    return in_pi ? 0 : 1;
}

bool LocalHecke::classification_exhaustive() const {
    for (std::int64_t x = 0; x < vec_size(); ++x) {
        std::int64_t c = count_containing(x) % qp;
        if (c != predicted_mod_qp(x) % qp) return false;
    }
    return true;
}

bool LocalHecke::det_images_equal() const {
    // recompute det images by a second pass over the group
    std::set<std::int64_t> dets_all, dets_stab;
    std::vector<std::int64_t> lbar;
    for (std::int64_t x = 0; x < vec_size(); ++x)
        if (in_Lbar(x)) lbar.push_back(x);
    std::set<std::int64_t> lbar_set(lbar.begin(), lbar.end());

    std::vector<std::int64_t> g(r * r, 0);
    const Field* f = P.fq();
    (void)f;
    std::function<std::int64_t(const std::vector<std::int64_t>&)> det3 =
        [&](const std::vector<std::int64_t>& m) -> std::int64_t {
        Poly acc(P.fq());
        if (r == 2) {
            acc = elems_[rmul(m[0], m[3])] - elems_[rmul(m[1], m[2])];
        } else {
            static const int perms[6][4] = {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1},
                                            {0, 2, 1, -1}, {2, 1, 0, -1}, {1, 0, 2, -1}};
            for (const auto& pm : perms) {
                std::int64_t prod = rmul(rmul(m[0 * r + pm[0]], m[1 * r + pm[1]]), m[2 * r + pm[2]]);
                acc = pm[3] > 0 ? acc + elems_[prod] : acc - elems_[prod];
            }
        }
        acc = divmod(acc, modulus_).second;
        std::int64_t idx = 0, mult = 1;
        for (int i = 0; i < modulus_.degree(); ++i) {
            idx += mult * acc.coeff(i);
            mult *= P.q;
        }
        return idx;
    };
    auto vec_mul_mat = [&](std::int64_t xvec, const std::vector<std::int64_t>& m) {
        std::vector<std::int64_t> xs(r);
        std::int64_t rest = xvec;
        for (int i = 0; i < r; ++i) {
            xs[i] = rest % ring_size;
            rest /= ring_size;
        }
        std::int64_t out = 0, mult = 1;
        for (int j = 0; j < r; ++j) {
            std::int64_t acc = 0;
            for (int i = 0; i < r; ++i) acc = radd(acc, rmul(xs[i], m[i * r + j]));
            out += mult * acc;
            mult *= ring_size;
        }
        return out;
    };
    std::function<void(int)> iterate = [&](int pos) {
        if (pos == static_cast<int>(g.size())) {
            std::int64_t d = det3(g);
            if (!runit(d)) return;
            dets_all.insert(d);
            bool stab = true;
            for (auto x : lbar)
                if (!lbar_set.count(vec_mul_mat(x, g))) { stab = false; break; }
            if (stab) dets_stab.insert(d);
            return;
        }
        for (std::int64_t val = 0; val < ring_size; ++val) {
            g[pos] = val;
            iterate(pos + 1);
        }
    };
    iterate(0);
    return dets_all == dets_stab;
}

bool LocalHecke::index_formula_holds() const {
    const auto& cs = cosets();
    std::int64_t index = static_cast<std::int64_t>(cs.group_order / cs.stab_order);
    std::int64_t expected_exp = 0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j <= i; ++j) expected_exp += std::max(0, mu[j] - mu[i] - 1);
    std::int64_t qc = 1;
    for (std::int64_t i = 0; i < expected_exp; ++i) qc *= qp;
    if (index % qc != 0) return false;
    std::int64_t unit = index / qc;
    return unit % qp == 1;
}

HeckeReport global_identity_check(const GlobalHeckeSpec& spec) {
    HeckeReport rep;
    const QParams& P = spec.P;
    const Field* f = P.fq();
    int r = spec.r;
    std::ostringstream os;

    std::vector<LocalHecke> locals;
    bool degenerate = false;
    Poly prodS = Poly::constant(f, 1);   // product of the middle-case primes
    Poly boxmod = Poly::constant(f, 1);  // prod pi^{mu_1 + 1}
    for (const auto& [pi, mu] : spec.local) {
        locals.emplace_back(P, pi, mu);
        const LocalHecke& lh = locals.back();
        if (lh.mu1 >= lh.mu[r - 2] + 2) degenerate = true;
        else if (lh.mu1 >= 2) prodS = prodS * pi;
        boxmod = boxmod * pi.pow(lh.mu1 + 1);
    }

    // level of the coset: the denominator content of v
    Poly level = Poly::constant(f, 1);
    for (const auto& c : spec.v)
        if (!c.is_zero()) {
            Poly g = gcd(level, c.den);
            level = divmod(level * c.den, g).first;
        }
    for (const auto& lh : locals)
        DMF_CHECK(gcd(level, lh.pi).degree() == 0, "operator must be supported away from the level");

    // v'' = a v with a in prod S and a = 1 mod level
    Vec vpp = spec.v;
    if (level.degree() > 0 && prodS.degree() > 0) {
        // a = prodS * (prodS^{-1} mod level)
        Poly s = divmod(prodS, level).second;
        Poly inv_s(f);
        bool found = false;
        std::uint64_t total = ipow(P.q, level.degree());
        for (std::uint64_t idx = 0; idx < total && !found; ++idx) {
            Poly cand(f);
            std::uint64_t rest = idx;
            for (int i = 0; i < level.degree(); ++i) {
                cand.c.push_back(static_cast<std::uint16_t>(rest % P.q));
                rest /= P.q;
            }
            cand.trim();
            if (divmod(s * cand, level).second == Poly::constant(f, 1)) {
                inv_s = cand;
                found = true;
            }
        }
        DMF_CHECK(found, "no inverse modulo the level");
        Poly a = prodS * inv_s;
        RatF ar{a};
        for (auto& c : vpp) c = c * ar;
        // sanity: v'' - v integral
        for (int i = 0; i < r; ++i) DMF_CHECK((vpp[i] - spec.v[i]).is_polynomial(), "recentring failed");
    }

    // subset S for the inclusion-exclusion
    std::vector<const LocalHecke*> S;
    for (const auto& lh : locals)
        if (!degenerate && lh.mu1 >= 2 && lh.mu1 <= lh.mu[r - 2] + 1) S.push_back(&lh);

    // reduce a coordinate at a local prime power: num * den^{-1} mod pi^{mu1}
    auto reduce_local = [&](const RatF& x, const LocalHecke& lh) -> std::int64_t {
        Poly m = lh.pi.pow(std::max(lh.mu1, 1));
        Poly num = divmod(x.num, m).second;
        Poly den = divmod(x.den, m).second;
        // invert den mod m by exhaustive search (coprime by assumption)
        std::uint64_t total = ipow(P.q, m.degree());
        Poly dinv(f);
        bool found = false;
        for (std::uint64_t idx = 1; idx < total && !found; ++idx) {
            Poly cand(f);
            std::uint64_t rest = idx;
            for (int i = 0; i < m.degree(); ++i) {
                cand.c.push_back(static_cast<std::uint16_t>(rest % P.q));
                rest /= P.q;
            }
            cand.trim();
            if (divmod(den * cand, m).second == Poly::constant(f, 1)) {
                dinv = cand;
                found = true;
            }
        }
        DMF_CHECK(found, "denominator not invertible at the local prime");
        Poly red = divmod(num * dinv, m).second;
        std::int64_t idx = 0, mult = 1;
        for (int i = 0; i < m.degree(); ++i) {
            idx += mult * red.coeff(i);
            mult *= P.q;
        }
        return idx;
    };

    std::uint64_t per = ipow(P.q, boxmod.degree());
    std::uint64_t npoints = 1;
    for (int i = 0; i < r; ++i) npoints *= per;
    DMF_CHECK(npoints <= (1u << 22), "global box too large");

    bool all_ok = true;
    std::uint64_t checked = 0;
    for (std::uint64_t idx = 0; idx < npoints; ++idx) {
        // x = v'' + c with c over A/boxmod per coordinate
        Vec x = vpp;
        std::uint64_t rest = idx;
        for (int i = 0; i < r; ++i) {
            Poly ci(f);
            std::uint64_t rr = rest % per;
            rest /= per;
            for (int d = 0; d < boxmod.degree(); ++d) {
                ci.c.push_back(static_cast<std::uint16_t>(rr % P.q));
                rr /= P.q;
            }
            ci.trim();
            x[i] = x[i] + RatF{ci};
        }
        // C(x) = product of local counts
        std::int64_t C = 1;
        for (const auto& lh : locals) {
            std::int64_t xvec = 0, mult = 1;
            for (int i = 0; i < r; ++i) {
                xvec += mult * reduce_local(x[i], lh);
                mult *= lh.ring_size;
            }
            C *= lh.count_containing(xvec);
        }
        std::int64_t lhs = ((C % P.p) + P.p) % P.p;
        std::int64_t rhs = 0;
        if (!degenerate) {
            // sum over subsets I of S of (-1)^{|I|} char_{v'' + L_I}(x)
            for (std::uint32_t mask = 0; mask < (1u << S.size()); ++mask) {
                Poly prodI = Poly::constant(f, 1);
                int bits = 0;
                for (size_t b = 0; b < S.size(); ++b)
                    if (mask & (1u << b)) {
                        prodI = prodI * S[b]->pi;
                        ++bits;
                    }
                bool member = true;
                for (int i = 0; i < r && member; ++i) {
                    RatF diff = x[i] - vpp[i];
                    if (!diff.is_polynomial()) member = false;
                    else if (!divmod(diff.num, prodI).second.is_zero()) member = false;
                }
                if (member) rhs += (bits % 2 == 0) ? 1 : -1;
            }
        }
        rhs = ((rhs % P.p) + P.p) % P.p;
        if (lhs != rhs) {
            all_ok = false;
            break;
        }
        ++checked;
    }
    os << (degenerate ? "degenerate (identity C = 0 mod p)" : "inclusion-exclusion") << ": "
       << checked << "/" << npoints << " residues verified";
    rep.pass = all_ok && checked == npoints;
    rep.details = os.str();
    return rep;
}

HeckeReport rank2_eigen_check(const QParams& P, const Poly& pi, int k, Rat target) {
    HeckeReport rep;
    const Field* f = P.fq();
    OmegaPoint w = standard_point(P, 2);
    LatticeCoset L = LatticeCoset::standard(P, 2);
    EisValue base = eisenstein(P, k, L, w, target);

    // coset representatives of the index-pi sublattices
    std::vector<Mat> reps;
    std::uint64_t nb = ipow(P.q, pi.degree());
    for (std::uint64_t idx = 0; idx < nb; ++idx) {
        Poly b(f);
        std::uint64_t rest = idx;
        for (int i = 0; i < pi.degree(); ++i) {
            b.c.push_back(static_cast<std::uint16_t>(rest % P.q));
            rest /= P.q;
        }
        b.trim();
        reps.push_back({{RatF{pi}, RatF{b}}, {RatF(Poly(f)), RatF::constant(f, 1)}});
    }
    reps.push_back({{RatF::constant(f, 1), RatF(Poly(f))}, {RatF(Poly(f)), RatF{pi}}});

    // combinatorial sanity: each box point outside pi A^2 lies in exactly one
    bool combinatorics = true;
    {
        auto in_lattice = [&](const Mat& b, const Vec& x) {
            Vec a = row_times_mat(x, mat_inverse(b));
            for (const auto& c : a)
                if (!c.is_polynomial()) return false;
            return true;
        };
        std::uint64_t perc = ipow(P.q, pi.degree() + 1);
        for (std::uint64_t i1 = 0; i1 < perc; ++i1)
            for (std::uint64_t i2 = 0; i2 < perc; ++i2) {
                if (i1 == 0 && i2 == 0) continue;
                Poly a(f), b(f);
                std::uint64_t r1 = i1, r2 = i2;
                for (int d = 0; d <= pi.degree(); ++d) {
                    a.c.push_back(static_cast<std::uint16_t>(r1 % P.q));
                    b.c.push_back(static_cast<std::uint16_t>(r2 % P.q));
                    r1 /= P.q;
                    r2 /= P.q;
                }
                a.trim();
                b.trim();
                Vec x = {RatF{a}, RatF{b}};
                bool in_pi = divmod(a, pi).second.is_zero() && divmod(b, pi).second.is_zero();
                int count = 0;
                for (const auto& m : reps)
                    if (in_lattice(m, x)) ++count;
                // points of pi A^2 lie in every sublattice, others in exactly one
                if (in_pi ? count != static_cast<int>(reps.size()) : count != 1)
                    combinatorics = false;
            }
    }

    Tail sum = Tail::zero(f);
    for (const auto& m : reps) {
        LatticeCoset Lg(m, Vec(2, RatF(Poly(f))));
        sum = sum + eisenstein(P, k, Lg, w, target).value;
    }
    Tail resid = sum - base.value;
    rep.pass = resid.vanishes() && combinatorics;
    std::ostringstream os;
    os << reps.size() << " representatives; residual "
       << (resid.vanishes() ? "0" : resid.str()) << " [" << (resid.exact ? "exact" : "O(t^-" + resid.prec().str() + ")")
       << "]; eigenvalue of the scalar-normalised operator: " << pi.str() << "^" << k
       << "; partition sanity " << (combinatorics ? "ok" : "FAIL");
    rep.details = os.str();
    return rep;
}

}  // namespace dmf
