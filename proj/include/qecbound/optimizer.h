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

// Exact optimization of error polynomials over boxes. Multilinear polynomials attain their
// extrema at box vertices; coordinates whose partial derivative has a certified sign are fixed
// to the matching face, and the remaining free coordinates are searched exhaustively.

#ifndef QECBOUND_OPTIMIZER_H
#define QECBOUND_OPTIMIZER_H

#include <cstdint>
#include <vector>

#include "qecbound/polynomial.h"

namespace qecbound {

struct OptimizerOptions {
    /// Largest number of free coordinates searched exhaustively (2^f vertices).
    size_t max_free_variables = 24;
};

enum class Fixing : uint8_t {
    Free,        // left to the exhaustive phase
    Lower,       // derivative sign certified; fixed to the lower face
    Upper,       // fixed to the upper face
    Degenerate,  // lower == upper
};

struct OptimizationResult {
    std::vector<double> vertex;
    double value = 0;  // polynomial at `vertex`
    bool exact = true;
    /// Certified bound on the optimum: an upper bound on the max (maximize) or a lower bound
    /// on the min (minimize). Equals `value` when exact.
    double certified_bound = 0;
    std::vector<Fixing> fixing;
    size_t free_variables = 0;  // coordinates left after pruning
    size_t sweeps = 0;
};

OptimizationResult maximize(const ErrorPolynomial &poly, const Hyperrectangle &box, const OptimizerOptions &options = {});
OptimizationResult minimize(const ErrorPolynomial &poly, const Hyperrectangle &box, const OptimizerOptions &options = {});

struct RobustnessBounds {
    double lower = 0;
    double upper = 1;
    bool exact = true;
    std::vector<double> witness;  // vertex attaining `lower`
};

/// lower = max of p_{L∩S}; upper = 1 - min of p_{S\L} (or the certified bound on that min when
/// the exhaustive phase was skipped).
RobustnessBounds robustness_bounds(const ErrorPolynomial &logical, const ErrorPolynomial &non_logical,
                                   const Hyperrectangle &box, const OptimizerOptions &options = {});

}  // namespace qecbound

#endif
