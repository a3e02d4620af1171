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

#ifndef DMF_FQ_HPP
#define DMF_FQ_HPP

#include <optional>
#include <string>
#include <vector>

#include "dmf/common.hpp"

namespace dmf {

// F_{p^n} with a deterministic defining polynomial: the lexicographically
// least monic irreducible of degree n over F_p (coefficient tuples compared
// from the constant term up).  Elements are indices 0..p^n-1 encoding the
// base-p digit vector of their polynomial representative in the generator.
class Field {
  public:
    int p;
    int deg;
    std::uint32_t size;                 // p^deg
    std::vector<std::uint8_t> modulus;  // monic, length deg+1

    // exp_table[i] = index of g^i for a primitive g, log_table inverse.
    std::vector<std::uint16_t> exp_table;
    std::vector<std::uint16_t> log_table;  // log_table[0] unused

    static const Field* get(int p, int deg);

    std::uint16_t add(std::uint16_t a, std::uint16_t b) const {
        return add_table.empty() ? add_slow(a, b) : add_table[a * size + b];
    }
    std::uint16_t neg(std::uint16_t a) const { return neg_table[a]; }
    std::uint16_t sub(std::uint16_t a, std::uint16_t b) const { return add(a, neg(b)); }
    std::uint16_t mul(std::uint16_t a, std::uint16_t b) const {
        if (a == 0 || b == 0) return 0;
        std::uint32_t e = log_table[a] + log_table[b];
        if (e >= size - 1) e -= size - 1;
        return exp_table[e];
    }
    std::uint16_t inv(std::uint16_t a) const {
        DMF_CHECK(a != 0, "inverse of zero field element");
        std::uint32_t e = (size - 1 - log_table[a]) % (size - 1);
        return exp_table[e];
    }
    std::uint16_t pow(std::uint16_t a, std::int64_t e) const;
    // n-th root within this field, least index if several; nullopt if none.
    std::optional<std::uint16_t> nth_root(std::uint16_t a, std::int64_t n) const;

    std::string elem_str(std::uint16_t a) const;  // polynomial in "g"

  private:
    std::vector<std::uint16_t> add_table;  // only for small fields
    std::vector<std::uint16_t> neg_table;
    std::uint16_t add_slow(std::uint16_t a, std::uint16_t b) const;
    friend struct FieldBuilder;
};

// Image of src's generator in dst (least-index root of src's modulus).
// Requires src->p == dst->p and src->deg | dst->deg.
std::uint16_t embed_generator(const Field* src, const Field* dst);
std::uint16_t embed_elem(const Field* src, const Field* dst, std::uint16_t a);

// Smallest common overfield F_{p^lcm(da,db)}.
const Field* compositum(const Field* a, const Field* b);

// The base parameters q = p^e shared by a whole computation.
struct QParams {
    int p;
    int e;
    std::int64_t q;

    QParams(int p_, int e_) : p(p_), e(e_), q(ipow(p_, e_)) {}
    const Field* fq() const { return Field::get(p, e); }
};

}  // namespace dmf

#endif
