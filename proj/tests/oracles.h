// Copyright 2026 The romit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Independent reference computations for the tests. Nothing here calls the
// library's algebra: everything is dense, direct and slow on purpose.

#ifndef ROMIT_TESTS_ORACLES_H
#define ROMIT_TESTS_ORACLES_H

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "romit/signed_dist.h"

namespace romit::oracle {

using Dense = std::vector<double>;

inline Dense to_dense(const SignedDist &d) {
    Dense v(std::size_t{1} << d.width(), 0.0);
    for (const auto &e : d.entries()) {
        v[e.mask] = e.weight;
    }
    return v;
}

/// z = sum over x ^ y == z of a_x b_y, by a double loop over all pairs.
inline Dense xor_conv(const Dense &a, const Dense &b) {
    Dense out(a.size(), 0.0);
    for (std::size_t x = 0; x < a.size(); x++) {
        for (std::size_t y = 0; y < b.size(); y++) {
            out[x ^ y] += a[x] * b[y];
        }
    }
    return out;
}

/// W[s] = sum_x d_x (-1)^popcount(x & s), straight from the definition.
inline Dense wht(const Dense &d) {
    Dense out(d.size(), 0.0);
    for (std::size_t s = 0; s < d.size(); s++) {
        for (std::size_t x = 0; x < d.size(); x++) {
            out[s] += (std::popcount(x & s) & 1) ? -d[x] : d[x];
        }
    }
    return out;
}

/// Convolution inverse by Gauss elimination on the dense matrix M(i, j) = p(i ^ j).
inline Dense xor_inverse(const Dense &p) {
    const std::size_t n = p.size();
    std::vector<Dense> a(n, Dense(n + 1, 0.0));
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = 0; j < n; j++) {
            a[i][j] = p[i ^ j];
        }
        a[i][n] = i == 0 ? 1.0 : 0.0;
    }
    for (std::size_t c = 0; c < n; c++) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; r++) {
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) {
                piv = r;
            }
        }
        std::swap(a[c], a[piv]);
        for (std::size_t r = 0; r < n; r++) {
            if (r != c) {
                const double f = a[r][c] / a[c][c];
                for (std::size_t k = c; k <= n; k++) {
                    a[r][k] -= f * a[c][k];
                }
            }
        }
    }
    Dense q(n);
    for (std::size_t i = 0; i < n; i++) {
        q[i] = a[i][n] / a[i][i];
    }
    return q;
}

inline double l1(const Dense &a, const Dense &b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        s += std::abs(a[i] - b[i]);
    }
    return s;
}

/// Random sparse probability distribution with weight p0 at zero and the
/// remaining mass spread over `support` distinct nonzero strings.
inline SignedDist random_dist(unsigned n, double p0, std::size_t support, std::mt19937_64 &rng) {
    std::uniform_int_distribution<uint64_t> mask(1, (uint64_t{1} << n) - 1);
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    std::vector<uint64_t> masks;
    while (masks.size() < support) {
        const uint64_t m = mask(rng);
        if (std::find(masks.begin(), masks.end(), m) == masks.end()) {
            masks.push_back(m);
        }
    }
    std::vector<double> w;
    double total = 0;
    for (std::size_t i = 0; i < support; i++) {
        w.push_back(unit(rng));
        total += w.back();
    }
    std::vector<SignedDist::Entry> entries{{0, p0}};
    for (std::size_t i = 0; i < support; i++) {
        entries.push_back({masks[i], (1 - p0) * w[i] / total});
    }
    return SignedDist(n, std::move(entries));
}

/// Two-state chain for the protected memory bit with a readout that lies
/// with probability f: P(ok -> flipped) = f, P(flipped -> ok) = 1 - f.
/// Returns P(memory flipped) after rounds 1..R, starting from ok.
inline std::vector<double> memory_flip_curve(double f, unsigned rounds) {
    std::vector<double> out;
    double bad = 0;
    for (unsigned r = 0; r < rounds; r++) {
        bad = (1 - bad) * f + bad * f;
        out.push_back(bad);
    }
    return out;
}

/// p_AB(eps) = (9/16 - eps) 00 + 3/16 01 + 3/16 10 + (1/16 + eps) 11.
inline RationalDist correlated_pair(const Rational &eps) {
    return RationalDist(2, {{0b00, Rational(9, 16) - eps},
                            {0b01, Rational(3, 16)},
                            {0b10, Rational(3, 16)},
                            {0b11, Rational(1, 16) + eps}});
}

}  // namespace romit::oracle

#endif
