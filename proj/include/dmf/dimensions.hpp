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

#ifndef DMF_DIMENSIONS_HPP
#define DMF_DIMENSIONS_HPP

#include <cstdint>

namespace dmf {

std::uint64_t binomial(std::int64_t n, std::int64_t k);

// dimension of the full level-(t) weight-k space:
//   sum over (i_1..i_{r-1}) in {0,1} of q^{sum nu*i_nu} * C(k, sum i_nu)
std::uint64_t dim_level_t(std::int64_t q, int r, int k);

// number of partitions of k with parts in {q-1, q^2-1, ..., q^r-1}
std::uint64_t partitions_qpow(std::int64_t q, int r, int k);

// type-m subspace dimension: P_S(k - m (q^r-1)/(q-1)), zero below threshold
std::uint64_t dim_type_m(std::int64_t q, int r, int k, int m);

// weight-k monomial count in r algebraically independent weight-one forms;
// this is the upper-unitriangular level dimension
std::uint64_t dim_weight_one_monomials(int r, int k);

// the printed closed form C(k-1, r-1); kept for comparison reports, it
// undercounts (see the decisions ledger)
std::uint64_t dim_weight_one_stated(int r, int k);

}  // namespace dmf

#endif
