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

#ifndef QECBOUND_SAMPLING_H
#define QECBOUND_SAMPLING_H

#include <cstdint>
#include <optional>
#include <random>
#include <span>

#include "qecbound/decoders.h"
#include "qecbound/errorspace.h"
#include "qecbound/polynomial.h"

namespace qecbound {

/// Seedable 64-bit Mersenne Twister with a 53-bit uniform in [0, 1).
class Rng {
   public:
    explicit Rng(uint64_t seed) : engine_(seed) {
    }
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }
    bool bernoulli(double p) {
        return uniform() < p;
    }
    uint64_t next_u64() {
        return engine_();
    }

   private:
    std::mt19937_64 engine_;
};

/// Independent stream seed for (seed, a, b) via splitmix64 mixing.
uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b = 0);

inline constexpr size_t kMaxConsecutiveRejections = 1'000'000;

/// Each bit i set independently with probability v_i.
ErrorBitstring sample_error(std::span<const double> v, Rng &rng);

/// Rejection sample from the error distribution conditioned on not being in `visited`. Returns
/// nullopt after `max_rejections` consecutive rejections (the visited set holds nearly all mass).
std::optional<ErrorBitstring> sample_unseen(std::span<const double> v, const VisitedSet &visited, Rng &rng,
                                            size_t max_rejections = kMaxConsecutiveRejections);

struct SampleEstimate {
    size_t samples = 0;
    size_t hits = 0;
    double theta_hat() const {
        return samples ? static_cast<double>(hits) / static_cast<double>(samples) : 0.0;
    }
};

struct ConfidenceInterval {
    double alpha = 0;
    double lower = 0;
    double upper = 1;
};

/// KL(p || q) for Bernoulli distributions, with 0 ln 0 = 0.
double bernoulli_kl(double p, double q);

/// Chernoff interval from the KL formulation: the set of q with KL(theta_hat || q) <= ln(2/alpha)/N.
ConfidenceInterval kl_confidence_interval(double theta_hat, size_t n, double alpha);

struct ProbabilisticBounds {
    double lower = 0;
    double upper = 1;
    double alpha = 0;
};

/// sum_L + (1 - sum_S) * [ci.lower, ci.upper].
ProbabilisticBounds probabilistic_bounds(const BoundAccumulators &acc, const ConfidenceInterval &ci);

/// Draws `samples` unseen strings and counts logical errors. Stops early (returning fewer
/// samples) if rejection sampling gives up.
SampleEstimate estimate_unseen(std::span<const double> v, const VisitedSet &visited, Decoder &decoder,
                               const FootprintTable &table, size_t samples, Rng &rng);

/// Plain Monte Carlo: N unconditional samples, interval around the logical-error fraction.
ConfidenceInterval direct_sampling_interval(const DetectorErrorModel &model, std::span<const double> v,
                                            Decoder &decoder, size_t n, double alpha, uint64_t seed);

}  // namespace qecbound

#endif
