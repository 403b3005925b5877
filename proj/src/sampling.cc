// Copyright 2026 The qecbound Authors
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

#include "qecbound/sampling.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qecbound {

uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b) {
    auto splitmix = [](uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    };
    return splitmix(splitmix(splitmix(seed) ^ a) ^ (b * 0xd6e8feb86659fd93ULL));
}

ErrorBitstring sample_error(std::span<const double> v, Rng &rng) {
    std::vector<uint32_t> support;
    for (size_t i = 0; i < v.size(); i++) {
        if (rng.bernoulli(v[i])) {
            support.push_back(static_cast<uint32_t>(i));
        }
    }
    return ErrorBitstring(v.size(), std::move(support));
}

std::optional<ErrorBitstring> sample_unseen(std::span<const double> v, const VisitedSet &visited, Rng &rng,
                                            size_t max_rejections) {
    if (v.size() != visited.n()) {
        throw std::invalid_argument("sample_unseen: probability vector length mismatch");
    }
    for (size_t rejected = 0; rejected < max_rejections; rejected++) {
        ErrorBitstring e = sample_error(v, rng);
        if (!visited.contains(e)) {
            return e;
        }
    }
    return std::nullopt;
}

double bernoulli_kl(double p, double q) {
    auto term = [](double a, double b) {
        if (a == 0) {
            return 0.0;
        }
        if (b == 0) {
            return std::numeric_limits<double>::infinity();
        }
        return a * std::log(a / b);
    };
    return term(p, q) + term(1 - p, 1 - q);
}

ConfidenceInterval kl_confidence_interval(double theta_hat, size_t n, double alpha) {
    if (n == 0) {
        throw std::invalid_argument("kl_confidence_interval: need at least one sample");
    }
    if (!(alpha > 0 && alpha < 1)) {
        throw std::invalid_argument("kl_confidence_interval: alpha must lie in (0, 1)");
    }
    if (!(theta_hat >= 0 && theta_hat <= 1)) {
        throw std::invalid_argument("kl_confidence_interval: theta_hat must lie in [0, 1]");
    }
    const double N = static_cast<double>(n);
    ConfidenceInterval ci{alpha, 0, 1};
    if (theta_hat == 0) {
        ci.upper = 1 - std::pow(alpha / 2, 1 / N);
        return ci;
    }
    if (theta_hat == 1) {
        ci.lower = std::pow(alpha / 2, 1 / N);
        return ci;
    }

    const double target = std::log(2 / alpha) / N;
    constexpr int kMaxIterations = 200;
    constexpr double kTolerance = 1e-12;

    // KL(theta_hat || q) decreases on (0, theta_hat]: keep lo on the far side of the root.
    double lo = 0, hi = theta_hat;
    for (int it = 0; it < kMaxIterations; it++) {
        double mid = lo + (hi - lo) / 2;
        if (mid == lo || mid == hi) {
            break;
        }
        (bernoulli_kl(theta_hat, mid) > target ? lo : hi) = mid;
        if (hi - lo < kTolerance && std::abs(bernoulli_kl(theta_hat, lo) - target) < kTolerance) {
            break;
        }
    }
    ci.lower = lo;

    // Increasing on [theta_hat, 1).
    lo = theta_hat;
    hi = 1;
    for (int it = 0; it < kMaxIterations; it++) {
        double mid = lo + (hi - lo) / 2;
        if (mid == lo || mid == hi) {
            break;
        }
        (bernoulli_kl(theta_hat, mid) > target ? hi : lo) = mid;
        if (hi - lo < kTolerance && std::abs(bernoulli_kl(theta_hat, hi) - target) < kTolerance) {
            break;
        }
    }
    ci.upper = hi;
    return ci;
}

ProbabilisticBounds probabilistic_bounds(const BoundAccumulators &acc, const ConfidenceInterval &ci) {
    const double sum_l = acc.sum_L.value();
    const double unexplored = std::max(0.0, 1 - acc.sum_S.value());
    return {sum_l + unexplored * ci.lower, sum_l + unexplored * ci.upper, ci.alpha};
}

SampleEstimate estimate_unseen(std::span<const double> v, const VisitedSet &visited, Decoder &decoder,
                               const FootprintTable &table, size_t samples, Rng &rng) {
    SampleEstimate estimate;
    std::vector<ErrorBitstring> drawn;
    drawn.reserve(samples);
    for (size_t k = 0; k < samples; k++) {
        auto e = sample_unseen(v, visited, rng);
        if (!e) {
            break;
        }
        drawn.push_back(std::move(*e));
    }
    std::vector<BitVector> syndromes;
    syndromes.reserve(drawn.size());
    for (const auto &e : drawn) {
        syndromes.push_back(table.syndrome(e));
    }
    auto predictions = decoder.decode_batch(syndromes);
    for (size_t k = 0; k < drawn.size(); k++) {
        estimate.hits += predictions[k] != table.observable(drawn[k]);
    }
    estimate.samples = drawn.size();
    return estimate;
}

ConfidenceInterval direct_sampling_interval(const DetectorErrorModel &model, std::span<const double> v,
                                            Decoder &decoder, size_t n, double alpha, uint64_t seed) {
    FootprintTable table(model);
    Rng rng(derive_seed(seed, 0));
    size_t hits = 0;
    for (size_t k = 0; k < n; k++) {
        ErrorBitstring e = sample_error(v, rng);
        hits += decoder.decode(table.syndrome(e)) != table.observable(e);
    }
    return kl_confidence_interval(static_cast<double>(hits) / static_cast<double>(n), n, alpha);
}

}  // namespace qecbound
