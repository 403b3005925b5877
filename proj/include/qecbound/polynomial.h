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

// Error minterms and error polynomials.
//
// The minterm of e over variables x_0..x_{n-1} is  prod_{e_i=1} x_i * prod_{e_i=0} (1 - x_i),
// i.e. the probability of exactly the channels in e firing. An error polynomial is a sum of
// distinct minterms.

#ifndef QECBOUND_POLYNOMIAL_H
#define QECBOUND_POLYNOMIAL_H

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qecbound/errorspace.h"

namespace qecbound {

/// Absolute soundness margin applied to reported bounds to cover floating-point accumulation.
inline constexpr double kFpMargin = 1e-12;

/// Neumaier's compensated summation.
class CompensatedSum {
   public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const {
        return sum_ + comp_;
    }

   private:
    double sum_ = 0;
    double comp_ = 0;
};

/// Evaluates minterms at a fixed interior point as base * prod_{i in e} v_i / (1 - v_i).
class MintermEvaluator {
   public:
    /// Every v_i must lie strictly inside (0, 1).
    explicit MintermEvaluator(std::vector<double> v);

    size_t size() const {
        return v_.size();
    }
    const std::vector<double> &point() const {
        return v_;
    }
    double base() const {
        return base_;
    }
    double operator()(const ErrorBitstring &e) const;

   private:
    std::vector<double> v_;
    std::vector<double> ratio_;
    double base_ = 1;
};

/// Direct product form; any v in [0,1]^n.
double minterm_eval(const ErrorBitstring &e, std::span<const double> v);

struct BoundAccumulators {
    CompensatedSum sum_L;
    CompensatedSum sum_S;
    size_t count_L = 0;
    size_t count_S = 0;
};

void accumulate(BoundAccumulators &acc, const ErrorBitstring &e, bool is_logical_error, const MintermEvaluator &eval);

struct Interval {
    double lower = 0;
    double upper = 0;
};

/// [sum_L, 1 - (sum_S - sum_L)], without the floating-point margin.
Interval accuracy_bounds(const BoundAccumulators &acc);

struct Hyperrectangle {
    std::vector<double> lower;
    std::vector<double> upper;

    size_t size() const {
        return lower.size();
    }
    /// Throws std::invalid_argument unless 0 <= lower_i <= upper_i <= 1.
    void validate() const;
    bool contains(std::span<const double> x) const;
    std::vector<double> midpoint() const;

    static Hyperrectangle point(std::vector<double> v);
    /// [lo * v_i, hi * v_i], clipped to [0, 1].
    static Hyperrectangle scaled(std::span<const double> v, double lo, double hi);
};

struct Literal {
    uint32_t var = 0;
    bool positive = true;  // x_var when true, (1 - x_var) otherwise
    bool operator==(const Literal &) const = default;
};

/// coefficient * product of literals; literals sorted by variable, one per variable at most.
struct SignedTerm {
    double coefficient = 1;
    std::vector<Literal> literals;

    bool operator==(const SignedTerm &) const = default;
    std::string str() const;
};

/// The minterm of e as a term with a literal for every variable.
SignedTerm minterm_term(const ErrorBitstring &e);
double evaluate_terms(std::span<const SignedTerm> terms, std::span<const double> x);

/// Sum of per-term minima and maxima over the box; contains the range of the sum.
Interval bound_terms_individually(std::span<const SignedTerm> terms, const Hyperrectangle &box);

/// Product-rule derivative term by term, without combining terms.
std::vector<SignedTerm> partial_derivative(std::span<const SignedTerm> terms, uint32_t i);

/// As partial_derivative, then terms with identical literals are merged and zeros dropped.
/// Throws std::invalid_argument if some term lacks variable i.
std::vector<SignedTerm> partial_derivative_simplified(std::span<const SignedTerm> terms, uint32_t i);

/// A set of distinct minterms over n variables.
class ErrorPolynomial {
   public:
    ErrorPolynomial() = default;
    explicit ErrorPolynomial(size_t n) : n_(n) {
    }

    size_t num_variables() const {
        return n_;
    }
    size_t size() const {
        return minterms_.size();
    }
    bool empty() const {
        return minterms_.empty();
    }
    const std::vector<ErrorBitstring> &minterms() const {
        return minterms_;
    }
    /// The caller guarantees e is not already present.
    void add(ErrorBitstring e);

    /// Compensated sum of the minterms at x in [0,1]^n.
    double evaluate(std::span<const double> x) const;
    std::vector<SignedTerm> terms() const;

   private:
    size_t n_ = 0;
    std::vector<ErrorBitstring> minterms_;
};

}  // namespace qecbound

#endif
