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

#include "dmf/eisenstein.hpp"

#include <algorithm>
#include <sstream>

namespace dmf {

Tail Trunc::apply(const Tail& x) const {
    Rat target(INT64_MIN / 8, 1);
    if (has_abs) target = std::max(target, abs_amount);
    if (has_rel && x.has_terms()) target = std::max(target, rel_digits - *x.norm_exp());
    if (target == Rat(INT64_MIN / 8, 1)) return x;
    return x.truncated(target);
}

namespace {

std::uint16_t scalar_in(const Field* f, std::int64_t n) {
    std::int64_t m = ((n % f->p) + f->p) % f->p;
    std::uint16_t r = 0;
    for (std::int64_t i = 0; i < m; ++i) r = f->add(r, 1);
    return r;
}

Rat lead_exp(const Tail& x) {
    auto n = x.norm_exp();
    DMF_CHECK(n.has_value(), "expected a nonzero value");
    return *n;
}

}  // namespace

namespace {

// Exact F_q-row-echelon on the generators by leading exponent.  The span is
// unchanged; afterwards leading terms no longer collide, which keeps the
// cancellation inside the tower one digit deep per step.
std::vector<Tail> reduce_generators(const QParams& P, std::vector<Tail> gens) {
    const Field* fq = P.fq();
    std::vector<Tail> kept;
    std::stable_sort(gens.begin(), gens.end(), [](const Tail& a, const Tail& b) {
        return *a.norm_exp() < *b.norm_exp();
    });
    for (Tail g : gens) {
        for (int guard = 0; guard < 4096; ++guard) {
            DMF_CHECK(g.has_terms(), "dependent generators in span");
            bool reduced = false;
            for (const auto& h : kept) {
                if (*h.norm_exp() != *g.norm_exp()) continue;
                const Field* cf = compositum(g.f, h.f);
                std::uint16_t cg = embed_elem(g.f, cf, g.lead_coeff());
                std::uint16_t ch = embed_elem(h.f, cf, h.lead_coeff());
                std::uint16_t ratio = cf->mul(cg, cf->inv(ch));
                // only F_q-multiples can be eliminated
                bool in_fq = false;
                std::uint16_t scal = 0;
                for (std::uint32_t c = 1; c < static_cast<std::uint32_t>(P.q); ++c) {
                    if (embed_elem(fq, cf, static_cast<std::uint16_t>(c)) == ratio) {
                        in_fq = true;
                        scal = static_cast<std::uint16_t>(c);
                        break;
                    }
                }
                if (!in_fq) continue;
                Tail hh = h;
                if (hh.f != cf) hh = hh.promoted(cf, hh.ram);
                g = g - hh.scaled(embed_elem(fq, cf, scal));
                reduced = true;
                break;
            }
            if (!reduced) break;
        }
        kept.push_back(g);
    }
    return kept;
}

}  // namespace

ExpSpace exp_space(const QParams& P, std::vector<Tail> gens, const Trunc& tr,
                   Rat max_arg_lead, bool allow_stop) {
    gens = reduce_generators(P, gens);
    std::stable_sort(gens.begin(), gens.end(), [](const Tail& a, const Tail& b) {
        return *a.norm_exp() < *b.norm_exp();
    });
    ExpSpace S;
    S.gens = gens;
    if (gens.empty()) {
        S.coeffs = {Tail::one(P.fq())};
        return S;
    }
    const Field* f = gens[0].f;
    S.coeffs = {Tail::one(f)};
    // sweep: carry the images of the remaining generators through each layer,
    // so same-norm cancellations happen one explicit subtraction at a time
    std::vector<Tail> img = gens;
    for (size_t m = 0; m < img.size(); ++m) {
        Tail w = img[m];
        if (!w.has_terms())
            throw precision_error("tower generator image vanished at working precision");

        // Once the remaining images are inflated enough, every further layer
        // perturbs an evaluation at arguments of lead <= max_arg_lead by at
        // most q^{q*M - (q-1)*nu} with M = max_i lead(c_i z^{q^i}); stop and
        // book the per-coefficient error.  This also keeps exponents small.
        Rat nu = *w.norm_exp();
        for (size_t j = m + 1; j < img.size(); ++j)
            if (img[j].has_terms()) nu = std::min(nu, *img[j].norm_exp());
        DMF_CHECK(nu < Rat(INT64_MAX / 1024, 1), "tower exponent range exceeded");
        if (allow_stop && m > 1) {
            Rat M(INT64_MIN / 8, 1);
            std::int64_t qi = 1;
            bool in_range = true;
            for (size_t i = 0; i < S.coeffs.size(); ++i) {
                if (S.coeffs[i].has_terms()) {
                    Rat term = *S.coeffs[i].norm_exp() + Rat(qi) * max_arg_lead;
                    M = std::max(M, term);
                }
                if (qi > (INT64_MAX >> 22) / P.q) { in_range = false; break; }
                qi *= P.q;
            }
            if (M == Rat(INT64_MIN / 8, 1)) M = Rat(0);
            Rat errexp = Rat(P.q) * M - Rat(P.q - 1) * nu;
            Rat floor(INT64_MIN / 8, 1);
            if (tr.has_abs) floor = std::max(floor, -tr.abs_amount);
            if (tr.has_rel) floor = std::max(floor, M - tr.rel_digits);
            if (in_range && floor > Rat(INT64_MIN / 8, 1) && errexp < floor - Rat(4)) {
                // book the per-coefficient increment of all omitted layers:
                // |delta c_{i+1}| <= |c_i|^q q^{-(q-1) nu}; the z-coefficient
                // stays exactly 1
                std::vector<Rat> eff(S.coeffs.size());
                for (size_t i = 0; i < S.coeffs.size(); ++i) {
                    const Tail& c = S.coeffs[i];
                    eff[i] = Rat(INT64_MIN / 8, 1);
                    if (c.has_terms()) eff[i] = *c.norm_exp();
                    if (!c.exact) eff[i] = std::max(eff[i], -c.prec());
                }
                Rat prev = eff[0];
                for (size_t i = 1; i < S.coeffs.size(); ++i) {
                    Rat ei = Rat(P.q) * prev - Rat(P.q - 1) * nu;
                    S.coeffs[i] = S.coeffs[i].with_error(ei);
                    prev = std::max(eff[i], ei);
                }
                S.stopped = true;
                S.stop_nu = nu;
                break;
            }
        }

        Tail winv_pow = tr.apply(w).pow_int(P.q - 1).inv();  // w^{1-q}
        std::vector<Tail> next(S.coeffs.size() + 1, Tail::zero(w.f));
        for (size_t i = 0; i < S.coeffs.size(); ++i) {
            next[i] = next[i] + S.coeffs[i];
            next[i + 1] = next[i + 1] - tr.apply(S.coeffs[i].frob_pow(P.q) * winv_pow);
        }
        for (auto& c : next) c = tr.apply(c);
        S.coeffs = std::move(next);
        for (size_t j = m + 1; j < img.size(); ++j)
            img[j] = tr.apply(img[j] - winv_pow * img[j].frob_pow(P.q));
    }
    return S;
}

Tail exp_space_eval(const QParams& P, const ExpSpace& S, const Tail& z, const Trunc& tr) {
    Tail zp = z;
    Tail acc = z;  // coeffs[0] = 1
    Rat maxterm = z.has_terms() ? *z.norm_exp() : Rat(INT64_MIN / 8, 1);
    for (size_t i = 1; i < S.coeffs.size(); ++i) {
        zp = tr.apply(zp.frob_pow(P.q));
        Tail term = S.coeffs[i] * zp;
        if (term.has_terms()) maxterm = std::max(maxterm, *term.norm_exp());
        else if (!term.exact) maxterm = std::max(maxterm, -term.prec());
        acc = acc + term;
    }
    if (S.stopped) {
        // omitted layers and omitted top coefficients perturb the value by
        // at most q^{q*maxterm - (q-1)*nu}
        acc = acc.with_error(Rat(P.q) * maxterm - Rat(P.q - 1) * S.stop_nu);
    }
    return tr.apply(acc);
}

namespace {

// distinct dominance classes: all generator norms pairwise distinct
void require_distinct_norms(const std::vector<Rat>& norms) {
    for (size_t i = 0; i < norms.size(); ++i)
        for (size_t j = i + 1; j < norms.size(); ++j)
            DMF_CHECK(norms[i] != norms[j], "generator norms collide; no certificate");
}

struct RowData {
    std::vector<Tail> values;  // row value paired with omega
    std::vector<Rat> leads;
};

RowData row_values(const QParams& P, const Mat& rows, const std::vector<Tail>& omega_cols,
                   Rat embed_prec) {
    RowData rd;
    const Field* f = P.fq();
    for (const auto& row : rows) {
        Tail acc = Tail::zero(f);
        for (size_t j = 0; j < row.size(); ++j) {
            if (row[j].is_zero()) continue;
            Tail xe = Tail::from_ratf(row[j], embed_prec + lead_exp(omega_cols[j]) + Rat(2));
            acc = acc + xe * omega_cols[j];
        }
        DMF_CHECK(acc.has_terms(), "degenerate row value");
        rd.values.push_back(acc);
        rd.leads.push_back(lead_exp(acc));
    }
    return rd;
}

void push_row_gens(BoxSpec* box, const Tail& value, Rat lead, Rat cap_exp) {
    // generators t^s * value for 0 <= s <= floor(cap_exp - lead)
    std::int64_t smax = rat_floor(cap_exp - lead);
    for (std::int64_t s = 0; s <= smax; ++s) {
        Tail g = value.shifted(Rat(s));
        box->gens.push_back(g);
        box->gen_norms.push_back(lead + Rat(s));
    }
}

Rat tail_exponent_from_caps(const std::vector<Rat>& leads, Rat D) {
    // first omitted norm per row is lead + floor(D - lead) + 1
    Rat t = Rat(INT64_MAX / 4, 1);
    for (const auto& l : leads) {
        std::int64_t smax = rat_floor(D - l);
        Rat first_out = l + Rat(smax + 1);  // also right when smax < 0
        t = std::min(t, first_out);
    }
    return t;
}

}  // namespace

BoxSpec box_for_coset(const QParams& P, const LatticeCoset& coset, const OmegaPoint& omega,
                      Rat D) {
    DMF_CHECK(omega.rank() == coset.r, "rank mismatch");
    DMF_CHECK(omega.certified || check_certificate(omega), "point lacks a certificate");
    BoxSpec box;
    std::vector<Tail> cols(omega.entries.begin(), omega.entries.end());
    Rat embed_prec = Rat(4) * (D + Rat(4));
    RowData rd = row_values(P, coset.hnf_basis(), cols, embed_prec);
    // dominance classes must be pairwise distinct mod 1
    for (size_t i = 0; i < rd.leads.size(); ++i)
        for (size_t j = i + 1; j < rd.leads.size(); ++j) {
            Rat d = rd.leads[i] - rd.leads[j];
            DMF_CHECK(d.den != 1, "row dominance classes collide");
        }
    for (size_t i = 0; i < rd.values.size(); ++i)
        push_row_gens(&box, rd.values[i], rd.leads[i], D);
    require_distinct_norms(box.gen_norms);
    box.tail_exp = tail_exponent_from_caps(rd.leads, D);
    box.shift_in_lattice = coset.v_in_lattice();
    const Field* f = P.fq();
    if (box.shift_in_lattice) {
        box.z0 = Tail::zero(f);
    } else {
        box.z0 = Tail::zero(f);
        for (int j = 0; j < coset.r; ++j) {
            if (coset.v[j].is_zero()) continue;
            Tail xe = Tail::from_ratf(coset.v[j], embed_prec + lead_exp(cols[j]) + Rat(2));
            box.z0 = box.z0 + xe * cols[j];
        }
        DMF_CHECK(box.z0.has_terms(), "shift value vanishes but v is not in L");
        DMF_CHECK(lead_exp(box.z0) < box.tail_exp, "shift norm exceeds the ball");
    }
    return box;
}

BoxSpec box_for_transformed(const QParams& P, const LatticeCoset& coset, const Mat& gamma,
                            const OmegaPoint& omega, Rat D) {
    BoxSpec box;
    const Field* f = P.fq();
    Rat embed_prec = Rat(4) * (D + Rat(4));
    std::vector<Tail> gw = mat_times_omega(P, gamma, omega, embed_prec);
    for (const auto& e : gw) DMF_CHECK(e.has_terms(), "gamma*omega has a vanishing entry");

    // caps are transferred from the Hermite side so the span covers the ball
    LatticeCoset tc = coset.transformed(gamma);
    std::vector<Tail> cols(omega.entries.begin(), omega.entries.end());
    RowData hr = row_values(P, tc.hnf_basis(), cols, embed_prec);
    for (size_t i = 0; i < hr.leads.size(); ++i)
        for (size_t j = i + 1; j < hr.leads.size(); ++j) {
            Rat d = hr.leads[i] - hr.leads[j];
            DMF_CHECK(d.den != 1, "transformed dominance classes collide");
        }
    box.tail_exp = tail_exponent_from_caps(hr.leads, D);

    // H = U * (den * B * gamma): express Hermite rows over the B*gamma rows
    Poly den = tc.hnf_denominator();
    Mat bg = mat_mul(coset.basis, gamma);
    Mat bg_int = mat_scaled(bg, RatF{den});
    Mat H, U;
    hermite_form(bg_int, &H, &U);
    int r = coset.r;
    std::vector<std::int64_t> caps(r, -1);
    for (int j = 0; j < r; ++j) {
        std::int64_t capj = rat_floor(D - hr.leads[j]);
        if (capj < 0) continue;
        for (int i = 0; i < r; ++i) {
            if (U[j][i].is_zero()) continue;
            DMF_CHECK(U[j][i].is_polynomial(), "transform matrix must be integral");
            caps[i] = std::max(caps[i], capj + U[j][i].num.degree());
        }
    }
    // generator values: rows of B paired against gamma*omega; the certified
    // tail comes from the Hermite side, so colliding norms are fine here
    RowData rd = row_values(P, coset.basis, gw, embed_prec);
    for (int i = 0; i < r; ++i) {
        for (std::int64_t s = 0; s <= caps[i]; ++s) {
            box.gens.push_back(rd.values[i].shifted(Rat(s)));
            box.gen_norms.push_back(rd.leads[i] + Rat(s));
        }
    }
    box.shift_in_lattice = coset.v_in_lattice();
    box.z0 = Tail::zero(f);
    if (!box.shift_in_lattice) {
        for (int j = 0; j < r; ++j) {
            if (coset.v[j].is_zero()) continue;
            Tail xe = Tail::from_ratf(coset.v[j], embed_prec + lead_exp(gw[j]) + Rat(2));
            box.z0 = box.z0 + xe * gw[j];
        }
        DMF_CHECK(box.z0.has_terms(), "transformed shift vanishes but v is not in L");
        DMF_CHECK(lead_exp(box.z0) < box.tail_exp, "shift norm exceeds the ball");
    }
    return box;
}

namespace {

// sum of h^{-k} over the nonzero span elements, from the tower coefficients
Tail newton_power_sum(const QParams& P, int k, const ExpSpace& S, const Trunc& tr) {
    const Field* f = S.coeffs[0].f;
    // sigma_j of the inverse roots: (-1)^j times the z^j coefficient of e(z)/z
    std::vector<Tail> sigma(static_cast<size_t>(k) + 1, Tail::zero(f));
    std::int64_t qi = 1;
    for (size_t i = 0; i < S.coeffs.size(); ++i) {
        std::int64_t j = qi - 1;
        if (j >= 1 && j <= k) {
            std::uint16_t sg = scalar_in(f, (j % 2 == 0) ? 1 : -1);
            sigma[static_cast<size_t>(j)] = S.coeffs[i].scaled(sg);
        }
        if (qi > k) break;
        qi *= P.q;
    }
    std::vector<Tail> p(static_cast<size_t>(k) + 1, Tail::zero(f));
    for (int m = 1; m <= k; ++m) {
        Tail acc = Tail::zero(f);
        for (int j = 1; j < m; ++j) {
            std::uint16_t sg = scalar_in(f, (j % 2 == 1) ? 1 : -1);
            acc = acc + (sigma[j] * p[m - j]).scaled(sg);
        }
        std::uint16_t sg = scalar_in(f, (m % 2 == 1) ? m : -m);
        acc = acc + sigma[m].scaled(sg);
        p[m] = tr.apply(acc);
    }
    return p[k];
}

}  // namespace

Tail box_sum_grouped(const QParams& P, int k, const BoxSpec& box, const Trunc& tr) {
    Rat lz = box.shift_in_lattice ? Rat(0) : *box.z0.norm_exp();
    ExpSpace S = exp_space(P, box.gens, tr, std::max(lz, Rat(0)));
    Tail val;
    if (box.shift_in_lattice) {
        val = newton_power_sum(P, k, S, tr);
    } else {
        Tail e = exp_space_eval(P, S, box.z0, tr);
        Tail x = tr.apply(e).inv();
        const GossPoly& g = goss(P.q, k);
        std::vector<Tail> ys;
        for (size_t i = 1; i <= g.max_y_index(); ++i)
            ys.push_back(i < S.coeffs.size() ? S.coeffs[i] : Tail::zero(x.f));
        val = goss_eval_tail(g, x, ys);
    }
    return val.with_error(Rat(-k) * box.tail_exp);
}

namespace {

void span_recurse(const QParams& P, const BoxSpec& box, size_t level, const Tail& partial,
                  bool zero, const std::function<void(const Tail&, bool)>& leaf,
                  std::size_t* count, std::size_t budget) {
    if (level == box.gens.size()) {
        if (++*count > budget) throw budget_error("span enumeration budget exceeded");
        leaf(partial, zero);
        return;
    }
    const Field* f = box.gens[level].f;
    span_recurse(P, box, level + 1, partial, zero, leaf, count, budget);
    for (std::uint32_t c = 1; c < static_cast<std::uint32_t>(P.q); ++c) {
        std::uint16_t ce = embed_elem(P.fq(), f, static_cast<std::uint16_t>(c));
        Tail next = partial + box.gens[level].scaled(ce);
        span_recurse(P, box, level + 1, next, false, leaf, count, budget);
    }
}

}  // namespace

Tail box_sum_direct(const QParams& P, int k, const BoxSpec& box, const Trunc& tr,
                    std::size_t budget) {
    const Field* f = box.gens.empty() ? P.fq() : box.gens[0].f;
    Tail acc = Tail::zero(f);
    Tail start = box.shift_in_lattice ? Tail::zero(f) : box.z0;
    std::size_t count = 0;
    span_recurse(P, box, 0, start, true, [&](const Tail& x, bool zero_coords) {
        if (box.shift_in_lattice && zero_coords) return;  // omit the origin
        Tail v = tr.apply(x);
        DMF_CHECK(v.has_terms(), "lattice point value vanished at working precision");
        acc = acc + v.inv().pow_int(k);
    }, &count, budget);
    return tr.apply(acc).with_error(Rat(-k) * box.tail_exp);
}

namespace {

Rat auto_ball(const QParams& P, int k, Rat target) {
    (void)P;
    Rat d = target / Rat(k);
    return Rat(rat_floor(d) + 1);
}

EisValue eval_with(const QParams& P, int k, Rat target, const EisOptions& opts,
                   const std::function<BoxSpec(Rat)>& mk) {
    Rat D = opts.D_override;
    if (D < Rat(-1000000)) D = auto_ball(P, k, target);
    Rat margin = opts.work_margin;
    for (int attempt = 0; attempt < 5; ++attempt) {
        BoxSpec box = mk(D);
        Trunc tr = Trunc::absolute(Rat(k) * box.tail_exp + margin);
        tr.rel_digits = tr.rel_digits + margin;
        try {
            Tail v = opts.direct ? box_sum_direct(P, k, box, tr, opts.budget)
                                 : box_sum_grouped(P, k, box, tr);
            EisValue out;
            out.value = v;
            out.tail_exp = box.tail_exp;
            out.D = D;
            out.dim = static_cast<int>(box.gens.size());
            if (v.exact || v.prec() >= target) return out;
        } catch (const precision_error&) {
            if (attempt == 4) throw;
        }
        margin = margin * Rat(2) + Rat(8);
    }
    throw precision_error("requested precision not reached within retry budget");
}

}  // namespace

namespace {

// the ball must contain the shift value
Rat shift_norm_hint(const LatticeCoset& coset, const std::vector<Rat>& leads) {
    Rat m(INT64_MIN / 8, 1);
    for (size_t i = 0; i < coset.v.size(); ++i)
        if (!coset.v[i].is_zero()) m = std::max(m, Rat(coset.v[i].deg_total()) + leads[i]);
    return m;
}

}  // namespace

EisValue eisenstein(const QParams& P, int k, const LatticeCoset& coset, const OmegaPoint& omega,
                    Rat target, const EisOptions& opts) {
    DMF_CHECK(k >= 1, "weight must be positive");
    EisOptions o = opts;
    Rat hint = shift_norm_hint(coset, omega.leads());
    if (o.D_override < Rat(-1000000) && hint > Rat(INT64_MIN / 16, 1)) {
        Rat base = auto_ball(P, k, target);
        if (hint + Rat(1) > base) o.D_override = Rat(rat_floor(hint)) + Rat(2);
    }
    return eval_with(P, k, target, o,
                     [&](Rat D) { return box_for_coset(P, coset, omega, D); });
}

EisValue eisenstein_transformed(const QParams& P, int k, const LatticeCoset& coset,
                                const Mat& gamma, const OmegaPoint& omega, Rat target,
                                const EisOptions& opts) {
    EisOptions o = opts;
    if (o.D_override < Rat(-1000000)) {
        Rat embed_prec = Rat(64);
        std::vector<Tail> gw = mat_times_omega(P, gamma, omega, embed_prec);
        std::vector<Rat> leads;
        for (const auto& e : gw) leads.push_back(*e.norm_exp());
        Rat hint = shift_norm_hint(coset, leads);
        Rat base = auto_ball(P, k, target);
        if (hint > Rat(INT64_MIN / 16, 1) && hint + Rat(1) > base)
            o.D_override = Rat(rat_floor(hint)) + Rat(2);
    }
    return eval_with(P, k, target, o,
                     [&](Rat D) { return box_for_transformed(P, coset, gamma, omega, D); });
}

Tail exp_product(const QParams& P, const BoxSpec& box, const Tail& z, const Trunc& tr,
                 std::size_t budget) {
    DMF_CHECK(z.has_terms(), "exponential of zero is zero; pass a nonzero argument");
    Rat lz = lead_exp(z);
    DMF_CHECK(lz < box.tail_exp, "argument norm exceeds the product ball");
    const Field* f = box.gens.empty() ? z.f : box.gens[0].f;
    // e(z) = z * prod (h - z)/h over nonzero h in the span
    Tail num = Tail::one(f);
    Tail den = Tail::one(f);
    std::size_t count = 0;
    span_recurse(P, box, 0, Tail::zero(f), true, [&](const Tail& h, bool zero_coords) {
        if (zero_coords) return;
        num = tr.apply(num * (h - z));
        den = tr.apply(den * h);
    }, &count, budget);
    Tail val = z * num * tr.apply(den).inv();
    // omitted points multiply by 1 + O(q^{lz - tail});
    Rat err = lead_exp(val) + lz - box.tail_exp;
    return val.with_error(err);
}

std::vector<Tail> exp_coefficients(const QParams& P, const LatticeCoset& lattice,
                                   const OmegaPoint& omega, Rat D, int upto, const Trunc& tr) {
    BoxSpec box = box_for_coset(P, lattice.lattice_only(), omega, D);
    ExpSpace S = exp_space(P, box.gens, tr);
    const Field* f = S.coeffs[0].f;
    std::vector<Tail> out;
    // per-coefficient omitted-point error: err_i <= max(|c_{i-1}|, err_{i-1})^q * q^{-(q-1) tail}
    Rat err_prev = Rat(INT64_MIN / 8, 1);
    for (int i = 0; i <= upto; ++i) {
        Tail c = (static_cast<size_t>(i) < S.coeffs.size()) ? S.coeffs[i] : Tail::zero(f);
        if (i == 0) {
            out.push_back(c);  // exactly 1
            continue;
        }
        Rat lead_prev = out[i - 1].has_terms() ? lead_exp(out[i - 1]) : err_prev;
        Rat err = Rat(P.q) * std::max(lead_prev, err_prev) - Rat(P.q - 1) * box.tail_exp;
        out.push_back(c.with_error(err));
        err_prev = err;
    }
    return out;
}

// ---------------- checks ----------------

namespace {

std::string prec_str(const Tail& x) {
    if (x.exact) return "exact";
    return "O(t^-" + x.prec().str() + ")";
}

}  // namespace

CheckReport weight1_inversion_check(const QParams& P, const LatticeCoset& coset,
                                    const OmegaPoint& omega, Rat target, Rat D_exp_product) {
    CheckReport rep;
    // route one: direct sum of reciprocals
    EisOptions dopts;
    dopts.direct = true;
    dopts.D_override = D_exp_product;
    EisValue e1 = eisenstein(P, 1, coset, omega, Rat(0), dopts);
    // route two: literal truncated product for e_{L omega}(v omega)
    BoxSpec pbox = box_for_coset(P, coset.lattice_only(), omega, D_exp_product);
    Trunc tr = Trunc::absolute(pbox.tail_exp + Rat(12));
    BoxSpec cbox = box_for_coset(P, coset, omega, D_exp_product);
    Tail z = cbox.z0;
    Tail ev = exp_product(P, pbox, z, tr);
    Tail resid = e1.value * ev - Tail::one(P.fq());
    rep.pass = resid.vanishes();
    std::ostringstream os;
    os << "E1*e(v omega) - 1 = " << resid.str() << " [joint " << prec_str(resid) << "]";
    // corroborate at the requested precision with the grouped route
    EisValue g1 = eisenstein(P, 1, coset, omega, target);
    rep.pass = rep.pass && agree_at_joint_precision(g1.value, e1.value);
    os << "; grouped/direct agree to " << prec_str(g1.value - e1.value);
    rep.details = os.str();
    return rep;
}

CheckReport slash_check(const QParams& P, int k, const LatticeCoset& coset, const Mat& gamma,
                        const OmegaPoint& omega, Rat target) {
    CheckReport rep;
    EisValue lhs = eisenstein(P, k, coset.transformed(gamma), omega, target);
    EisValue rhs = eisenstein_transformed(P, k, coset, gamma, omega, target);
    Tail resid = lhs.value - rhs.value;
    rep.pass = resid.vanishes();
    rep.details = "slash residual " + resid.str() + " [joint " + prec_str(resid) + "]";
    return rep;
}

CheckReport splitting_check(const QParams& P, int k, const LatticeCoset& coset,
                            const LatticeCoset& sub, const OmegaPoint& omega, Rat target) {
    CheckReport rep;
    EisValue whole = eisenstein(P, k, coset, omega, target);
    auto reps = quotient_reps(P, coset.lattice_only(), sub);
    Tail sum = Tail::zero(P.fq());
    for (const auto& rep_vec : reps) {
        Vec nv(coset.r, RatF(Poly(P.fq())));
        for (int i = 0; i < coset.r; ++i) nv[i] = coset.v[i] + rep_vec[i];
        LatticeCoset piece(sub.basis, nv);
        sum = sum + eisenstein(P, k, piece, omega, target).value;
    }
    Tail resid = whole.value - sum;
    rep.pass = resid.vanishes();
    std::ostringstream os;
    os << reps.size() << " cosets, residual " << resid.str() << " [joint " << prec_str(resid)
       << "]";
    rep.details = os.str();
    return rep;
}

CheckReport doubling_check(const QParams& P, int k, const LatticeCoset& coset,
                           const OmegaPoint& omega, Rat target) {
    CheckReport rep;
    EisValue base = eisenstein(P, k, coset, omega, target);
    EisOptions big;
    big.D_override = base.D * Rat(2);
    EisValue twice = eisenstein(P, k, coset, omega, target, big);
    Rat joint;
    rep.pass = agree_at_joint_precision(base.value, twice.value, &joint);
    rep.details = "ball " + base.D.str() + " vs " + big.D_override.str() +
                  ": certified digits agree to O(t^-" + joint.str() + ")";
    return rep;
}

CheckReport alpha_equivariance_check(const QParams& P, int k, const LatticeCoset& coset,
                                     const OmegaPoint& omega, Rat target) {
    CheckReport rep;
    rep.pass = true;
    Rat D = auto_ball(P, k, std::min(target, Rat(4)));
    BoxSpec box = box_for_coset(P, coset, omega, D);
    Trunc tr = Trunc::absolute(Rat(k) * box.tail_exp + Rat(8));
    Tail base = box_sum_direct(P, k, box, tr);
    const Field* f = P.fq();
    for (std::uint32_t a = 2; a < static_cast<std::uint32_t>(P.q); ++a) {
        Vec av = coset.v;
        for (auto& c : av) c = c * RatF::constant(f, static_cast<std::uint16_t>(a));
        BoxSpec abox = box_for_coset(P, coset.translated(av), omega, D);
        Tail scaled = box_sum_direct(P, k, abox, tr);
        std::uint16_t ainvk = f->pow(f->inv(static_cast<std::uint16_t>(a)), k);
        if (!(scaled == base.scaled(ainvk))) rep.pass = false;
    }
    if (P.q == 2) rep.details = "trivial scalar group";
    else rep.details = rep.pass ? "exact equality for all scalars" : "mismatch";
    return rep;
}

Tail u_parameter_rank2(const QParams& P, const UFrame& frame, const Tail& omega1,
                       const Tail& omega2, Rat stratum_depth, const Trunc& tr) {
    // Lambda' = lambda_scale * L' is a rank-one lattice; u = 1/e_{Lambda' xi}(omega1)
    const Field* f = P.fq();
    RatF lgen = frame.lambda_scale * frame.lprime.basis[0][0];
    Tail gen_val = Tail::from_ratf(lgen, Rat(64)) * omega2;
    Rat lead = lead_exp(gen_val);
    BoxSpec box;
    std::int64_t smax = rat_floor(stratum_depth - lead);
    for (std::int64_t s = 0; s <= smax; ++s) {
        box.gens.push_back(gen_val.shifted(Rat(s)));
        box.gen_norms.push_back(lead + Rat(s));
    }
    box.tail_exp = lead + Rat(smax + 1);
    box.z0 = Tail::zero(f);
    box.shift_in_lattice = true;
    DMF_CHECK(lead_exp(omega1) < box.tail_exp, "schedule point exceeds the u ball");
    ExpSpace S = exp_space(P, box.gens, tr, lead_exp(omega1));
    Tail e = exp_space_eval(P, S, omega1, tr);
    Rat err = lead_exp(e) + lead_exp(omega1) - box.tail_exp;
    return tr.apply(e).with_error(err).inv();
}

namespace {

// inner sum over x' in v' + L'-ball of (z' - h)^{-k} for the rank-2 frame
Tail stratum_value(const QParams& P, int k, const LatticeCoset& lprime, const Tail& omega2,
                   const Tail& z, Rat depth, const Trunc& tr) {
    const Field* f = P.fq();
    RatF bgen = lprime.basis[0][0];
    Tail gen_val = Tail::from_ratf(bgen, Rat(64)) * omega2;
    Rat lead = lead_exp(gen_val);
    std::vector<Tail> gens;
    std::int64_t smax = rat_floor(depth - lead);
    for (std::int64_t s = 0; s <= smax; ++s) gens.push_back(gen_val.shifted(Rat(s)));
    ExpSpace S = exp_space(P, gens, tr, lead_exp(z));
    Tail e = exp_space_eval(P, S, z, tr);
    Tail x = tr.apply(e).inv();
    const GossPoly& g = goss(P.q, k);
    std::vector<Tail> ys;
    for (size_t i = 1; i <= g.max_y_index(); ++i)
        ys.push_back(i < S.coeffs.size() ? S.coeffs[i] : Tail::zero(f));
    return goss_eval_tail(g, x, ys);
}

// sum over the x1 != 0 strata of the coset at the scaled point
Tail higher_strata_sum(const QParams& P, int k, const UFrame& fr, const Tail& omega1,
                       const Tail& omega2, int stratum_deg, Rat rel) {
    const Field* f = P.fq();
    Trunc tr = Trunc::rel(rel);
    Tail acc = Tail::zero(f);
    // x1 = v1 + c * l1_gen over c with deg <= stratum_deg
    std::uint64_t per = ipow(P.q, stratum_deg + 1);
    for (std::uint64_t idx = 0; idx < per; ++idx) {
        Poly c(f);
        std::uint64_t rest = idx;
        for (int i = 0; i <= stratum_deg; ++i) {
            c.c.push_back(static_cast<std::uint16_t>(rest % P.q));
            rest /= P.q;
        }
        c.trim();
        RatF x1 = fr.v1 + RatF{c} * fr.l1_gen;
        if (x1.is_zero()) continue;
        Tail x1w = Tail::from_ratf(x1, Rat(64)) * omega1;
        Tail z = x1w;
        if (!fr.lprime.v[0].is_zero())
            z = z + Tail::from_ratf(fr.lprime.v[0], Rat(64)) * omega2;
        Rat depth = lead_exp(z) + rel + Rat(4);
        acc = acc + stratum_value(P, k, fr.lprime, omega2, z, depth, tr);
    }
    return acc;
}

Rat observed_exp(const Tail& x) {
    if (x.has_terms()) return *x.norm_exp();
    if (x.exact) return Rat(INT64_MIN / 8, 1);
    return -x.prec();  // below the working floor
}

}  // namespace

UOrderReport u_order_one_check(const QParams& P, const LatticeCoset& coset,
                               const std::vector<int>& schedule, Rat final_target) {
    UOrderReport rep;
    const Field* f = P.fq();
    UFrame fr = u_frame(P, coset);
    DMF_CHECK(coset.r == 2, "schedule checks are rank-2");
    DMF_CHECK(!(fr.v1 * fr.l1_gen.inv()).is_polynomial(), "v1 lies in L1; use the constant-term check");
    // the unique generator of (v1)+L1 with [L':x1 Lambda'] = 1
    RatF x1 = fr.v1;
    bool found = false;
    for (std::uint64_t idx = 0; idx < static_cast<std::uint64_t>(ipow(P.q, 3)) && !found; ++idx) {
        Poly c(f);
        std::uint64_t rest = idx;
        for (int i = 0; i <= 2; ++i) {
            c.c.push_back(static_cast<std::uint16_t>(rest % P.q));
            rest /= P.q;
        }
        c.trim();
        RatF cand = fr.v1 + RatF{c} * fr.l1_gen;
        if (!cand.is_zero() && frame_index_log_q(P, fr, cand) == 0) {
            x1 = cand;
            found = true;
        }
    }
    DMF_CHECK(found, "no index-one element in the coset");
    Rat rel = final_target + Rat(16);
    std::ostringstream os;
    bool decreasing = true;
    Rat prev = Rat(INT64_MAX / 4, 1);
    for (int s : schedule) {
        Tail w1 = Tail::monomial(f, 1, Rat(1, 2) + Rat(s));
        Tail w2 = Tail::one(f);
        Tail u = u_parameter_rank2(P, fr, w1, w2, Rat(s) + rel + Rat(2), Trunc::rel(rel));
        Tail E = higher_strata_sum(P, 1, fr, w1, w2, 2, rel);
        Tail ratio = E * Tail::from_ratf(x1, Rat(64)) * u.inv() - Tail::one(f);
        Rat ex = observed_exp(ratio);
        rep.residual_exps.push_back(ex);
        os << "s=" << s << ": |E*x1/u - 1| <= q^" << ex.str() << "; ";
        if (!(ex < prev) && !(prev <= -final_target)) decreasing = false;
        prev = ex;
    }
    rep.pass = decreasing && rep.residual_exps.back() <= -final_target;
    rep.details = os.str();
    return rep;
}

UOrderReport u_constant_term_check(const QParams& P, int k, const LatticeCoset& coset,
                                   const std::vector<int>& schedule, Rat final_target) {
    UOrderReport rep;
    const Field* f = P.fq();
    UFrame fr = u_frame(P, coset);
    DMF_CHECK(coset.r == 2, "schedule checks are rank-2");
    DMF_CHECK(fr.v1.is_zero() || (fr.v1 * fr.l1_gen.inv()).is_polynomial(),
              "v1 not in L1; use the order-one check");
    Rat rel = final_target + Rat(16);
    // the limit value: rank-one Eisenstein sum over v' + L'
    OmegaPoint wprime;
    wprime.entries = {Tail::one(f)};
    wprime.certified = true;
    EisValue cterm = eisenstein(P, k, fr.lprime, wprime, final_target + Rat(4));
    std::ostringstream os;
    os << "limit " << cterm.value.str() << "; ";
    bool decreasing = true;
    Rat prev = Rat(INT64_MAX / 4, 1);
    for (int s : schedule) {
        Tail w1 = Tail::monomial(f, 1, Rat(1, 2) + Rat(s));
        Tail w2 = Tail::one(f);
        Tail R = higher_strata_sum(P, k, fr, w1, w2, 2, rel);
        Rat ex = observed_exp(R);
        rep.residual_exps.push_back(ex);
        os << "s=" << s << ": |E - E'| = q^" << ex.str() << "; ";
        if (!(ex < prev) && !(prev <= -final_target)) decreasing = false;
        prev = ex;
    }
    rep.pass = decreasing && rep.residual_exps.back() <= -final_target;
    // non-vacuity: the constant term itself is nonzero for these cosets
    if (!cterm.value.has_terms() && !coset.v_in_lattice()) rep.pass = false;
    rep.details = os.str();
    return rep;
}

}  // namespace dmf
