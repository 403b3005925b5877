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


#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qecbound/decoders.h"
#include "qecbound/sampling.h"
#include "support/oracles.h"

namespace qecbound {
namespace {

DetectorErrorModel repetition_model() {
    DetectorErrorModel m;
    m.add_channel(Probability::concrete(0.01), {0}, {0});
    m.add_channel(Probability::concrete(0.01), {0, 1}, {});
    m.add_channel(Probability::concrete(0.01), {1}, {});
    return m;
}

TEST(Rng, Reproducible) {
    Rng a(7), b(7), c(8);
    for (int i = 0; i < 10; i++) {
        double x = a.uniform();
        EXPECT_EQ(x, b.uniform());
        EXPECT_GE(x, 0.0);
        EXPECT_LT(x, 1.0);
    }
    EXPECT_NE(Rng(7).next_u64(), c.next_u64());
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
    EXPECT_NE(derive_seed(1, 0, 0), derive_seed(1, 0, 1));
    EXPECT_EQ(derive_seed(5, 3, 2), derive_seed(5, 3, 2));
}

TEST(Kl, Divergence) {
    EXPECT_EQ(bernoulli_kl(0.3, 0.3), 0.0);
    EXPECT_NEAR(bernoulli_kl(0.5, 0.25), 0.5 * std::log(2.0) + 0.5 * std::log(0.5 / 0.75), 1e-15);
    EXPECT_TRUE(std::isinf(bernoulli_kl(0.5, 0.0)));
    EXPECT_NEAR(bernoulli_kl(0.0, 0.2), -std::log(0.8), 1e-15);
}

TEST(Kl, ClosedFormBranches) {
    ConfidenceInterval zero = kl_confidence_interval(0, 10000, 0.01);
    EXPECT_EQ(zero.lower, 0.0);
    EXPECT_NEAR(zero.upper, 1 - std::pow(0.005, 1.0 / 10000), 1e-12);
    EXPECT_NEAR(zero.upper, 5.2969e-4, 1e-8);
    ConfidenceInterval one = kl_confidence_interval(1, 100, 0.01);
    EXPECT_NEAR(one.lower, std::pow(0.005, 0.01), 1e-12);
    EXPECT_EQ(one.upper, 1.0);
}

TEST(Kl, Symmetry) {
    ConfidenceInterval ci = kl_confidence_interval(0.5, 200, 0.05);
    EXPECT_NEAR(0.5 - ci.lower, ci.upper - 0.5, 1e-11);
}

TEST(Kl, RootsSolveTheEquation) {
    for (double theta : {0.001, 0.02, 0.3, 0.77, 0.999}) {
        for (size_t n : {10u, 1000u, 100000u}) {
            ConfidenceInterval ci = kl_confidence_interval(theta, n, 0.01);
            const double target = std::log(2 / 0.01) / static_cast<double>(n);
            EXPECT_LE(ci.lower, theta);
            EXPECT_GE(ci.upper, theta);
            if (ci.lower > 0) {
                EXPECT_NEAR(bernoulli_kl(theta, ci.lower), target, 1e-10) << theta << " " << n;
            }
            if (ci.upper < 1) {
                EXPECT_NEAR(bernoulli_kl(theta, ci.upper), target, 1e-10) << theta << " " << n;
            }
        }
    }
}

TEST(Kl, WidthShrinksWithSamples) {
    double last = 2;
    for (size_t n : {10u, 100u, 1000u, 10000u, 100000u}) {
        ConfidenceInterval ci = kl_confidence_interval(0.1, n, 0.01);
        EXPECT_LT(ci.upper - ci.lower, last);
        last = ci.upper - ci.lower;
    }
}

TEST(Kl, InvalidArguments) {
    EXPECT_THROW(kl_confidence_interval(0.5, 0, 0.01), std::invalid_argument);
    EXPECT_THROW(kl_confidence_interval(0.5, 10, 0), std::invalid_argument);
    EXPECT_THROW(kl_confidence_interval(0.5, 10, 1), std::invalid_argument);
    EXPECT_THROW(kl_confidence_interval(1.5, 10, 0.1), std::invalid_argument);
}

TEST(Kl, CoverageSmall) {
    std::mt19937_64 rng(99);
    for (double theta : {0.01, 0.1}) {
        std::binomial_distribution<size_t> draw(1000, theta);
        int covered = 0;
        const int trials = 500;
        for (int t = 0; t < trials; t++) {
            ConfidenceInterval ci = kl_confidence_interval(draw(rng) / 1000.0, 1000, 0.01);
            covered += ci.lower <= theta && theta <= ci.upper;
        }
        EXPECT_GE(covered, trials * 0.97) << theta;
    }
}

TEST(SampleUnseen, EmptyVisitedIsPlainDraw) {
    std::vector<double> v = {0.5, 0.5};
    VisitedSet visited(2);
    Rng a(3), b(3);
    for (int i = 0; i < 20; i++) {
        EXPECT_EQ(*sample_unseen(v, visited, a), sample_error(v, b));
    }
}

TEST(SampleUnseen, RespectsVisitedSet) {
    std::vector<double> v(3, 0.01);
    VisitedSet visited(3);
    WeightOrderCursor c(3);
    for (int k = 0; k < 4; k++) {
        visited.insert(*c.next());
    }
    Rng rng(1);
    for (int i = 0; i < 200; i++) {
        auto e = sample_unseen(v, visited, rng);
        ASSERT_TRUE(e);
        EXPECT_GE(e->weight(), 2u);
    }
}

TEST(SampleUnseen, GivesUpWhenEverythingIsVisited) {
    std::vector<double> v(2, 0.3);
    VisitedSet visited(2);
    WeightOrderCursor c(2);
    while (auto e = c.next()) {
        visited.insert(*e);
    }
    Rng rng(1);
    EXPECT_FALSE(sample_unseen(v, visited, rng, 1000));
}

TEST(SampleUnseen, ConditionalFrequencies) {
    std::vector<double> v = {0.3, 0.2, 0.4};
    VisitedSet visited(3);
    visited.insert(ErrorBitstring::from_string("000"));
    visited.insert(ErrorBitstring::from_string("100"));
    // Exact conditional bit marginals.
    double mass = 0;
    std::vector<double> marginal(3, 0);
    for (uint64_t m = 0; m < 8; m++) {
        if (m == 0 || m == 1) {
            continue;
        }
        double p = oracle::minterm_product(m, v);
        mass += p;
        for (int i = 0; i < 3; i++) {
            if (m >> i & 1) {
                marginal[i] += p;
            }
        }
    }
    Rng rng(17);
    const int n = 100000;
    std::vector<int> counts(3, 0);
    for (int k = 0; k < n; k++) {
        auto e = sample_unseen(v, visited, rng);
        for (uint32_t i : e->support()) {
            counts[i]++;
        }
    }
    for (int i = 0; i < 3; i++) {
        double p = marginal[i] / mass;
        double sigma = std::sqrt(p * (1 - p) / n);
        EXPECT_NEAR(counts[i] / static_cast<double>(n), p, 3 * sigma) << i;
    }
}

TEST(ProbabilisticBounds, Examples) {
    BoundAccumulators acc;
    acc.sum_L.add(0.1);
    acc.sum_S.add(0.6);
    ProbabilisticBounds vacuous = probabilistic_bounds(acc, {0.01, 0, 1});
    EXPECT_DOUBLE_EQ(vacuous.lower, 0.1);
    EXPECT_DOUBLE_EQ(vacuous.upper, 0.5);
    BoundAccumulators full;
    full.sum_L.add(0.2);
    full.sum_S.add(1.0);
    ProbabilisticBounds tight = probabilistic_bounds(full, {0.01, 0.3, 0.9});
    EXPECT_EQ(tight.lower, 0.2);
    EXPECT_EQ(tight.upper, 0.2);
}

TEST(DirectSampling, ExtremeDecoders) {
    // One channel, so the syndrome determines the observable.
    DetectorErrorModel single;
    single.add_channel(Probability::concrete(0.3), {0}, {0});
    std::vector<double> vs = {0.3};
    TableDecoder wrong(1, 1, {{BitVector::from_string("0"), BitVector::from_string("1")},
                              {BitVector::from_string("1"), BitVector::from_string("0")}});
    TableDecoder right(1, 1, {{BitVector::from_string("1"), BitVector::from_string("1")}});
    ConfidenceInterval a = direct_sampling_interval(single, vs, wrong, 1000, 0.01, 1);
    EXPECT_NEAR(a.lower, std::pow(0.005, 1e-3), 1e-12);
    EXPECT_EQ(a.upper, 1.0);
    ConfidenceInterval b = direct_sampling_interval(single, vs, right, 1000, 0.01, 1);
    EXPECT_EQ(b.lower, 0.0);
    EXPECT_NEAR(b.upper, 1 - std::pow(0.005, 1e-3), 1e-12);
}

TEST(DirectSampling, CoversRepetitionRate) {
    DetectorErrorModel m = repetition_model();
    std::vector<double> v(3, 0.01);
    auto ml = build_ml_decoder(m, v);
    int covered = 0;
    for (uint64_t seed = 0; seed < 100; seed++) {
        ConfidenceInterval ci = direct_sampling_interval(m, v, *ml, 20000, 0.01, seed);
        covered += ci.lower <= 2.98e-4 && 2.98e-4 <= ci.upper;
    }
    EXPECT_GE(covered, 97);
}

}  // namespace
}  // namespace qecbound
