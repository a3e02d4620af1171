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

#include "dmf/dimensions.hpp"

#include <vector>

#include "dmf/common.hpp"

namespace dmf {

std::uint64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        DMF_CHECK(r <= UINT64_MAX / static_cast<std::uint64_t>(n - k + i), "binomial overflow");
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

std::uint64_t dim_level_t(std::int64_t q, int r, int k) {
    DMF_CHECK(k >= 0 && r >= 1, "bad dimension query");
    std::uint64_t total = 0;
    int bits = r - 1;
    for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
        std::int64_t weight = 0;
        int ones = 0;
        for (int nu = 1; nu <= bits; ++nu)
            if (mask & (1u << (nu - 1))) {
                weight += nu;
                ++ones;
            }
        std::uint64_t qp = 1;
        for (std::int64_t i = 0; i < weight; ++i) qp *= static_cast<std::uint64_t>(q);
        total += qp * binomial(k, ones);
    }
    return total;
}

std::uint64_t partitions_qpow(std::int64_t q, int r, int k) {
    DMF_CHECK(k >= 0 && r >= 1, "bad partition query");
    std::vector<std::uint64_t> ways(static_cast<size_t>(k) + 1, 0);
    ways[0] = 1;
    std::int64_t part = q - 1;
    for (int i = 1; i <= r; ++i) {
        if (part <= static_cast<std::int64_t>(k))
            for (std::int64_t v = part; v <= k; ++v) ways[v] += ways[v - part];
        part = part * q + (q - 1);  // q^{i+1} - 1
    }
    return ways[static_cast<size_t>(k)];
}

std::uint64_t dim_type_m(std::int64_t q, int r, int k, int m) {
    DMF_CHECK(m >= 0 && m < q - 1, "type out of range");
    std::int64_t qr1 = 1;
    for (int i = 0; i < r; ++i) qr1 *= q;
    std::int64_t shift = m * ((qr1 - 1) / (q - 1));
    if (k < shift) return 0;
    return partitions_qpow(q, r, static_cast<int>(k - shift));
}

std::uint64_t dim_weight_one_monomials(int r, int k) { return binomial(k + r - 1, r - 1); }

std::uint64_t dim_weight_one_stated(int r, int k) { return binomial(k - 1, r - 1); }

}  // namespace dmf
