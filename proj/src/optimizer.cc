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

#include "qecbound/optimizer.h"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace qecbound {

namespace {

// Product of nonnegative factors that can divide a factor back out, even a zero one.
struct Product {
    double nonzero = 1;
    uint32_t zeros = 0;

    void mul(double x) {
        if (x == 0) {
            zeros++;
        } else {
            nonzero *= x;
        }
    }
    void div(double x) {
        if (x == 0) {
            zeros--;
        } else {
            nonzero /= x;
        }
    }
    double value() const {
        return zeros ? 0 : nonzero;
    }
    double value_without(double x) const {
        if (x == 0) {
            return zeros > 1 ? 0 : nonzero;
        }
        return zeros ? 0 : nonzero / x;
    }
};

uint64_t mix(uint64_t h) {
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    h *= 0xc4ceb9fe1a85ec53ULL;
    h ^= h >> 33;
    return h;
}

// Reduced polynomial sum_t coef[t] * prod_{i active} lit_i(t), where lit_i(t) is x_i when bit i of
// the term's pattern is set and (1 - x_i) otherwise. Inactive coordinates have been substituted.
class ReducedPolynomial {
   public:
    ReducedPolynomial(const ErrorPolynomial &poly, const Hyperrectangle &box, double sign)
        : n_(poly.num_variables()), words_((n_ + 63) / 64), box_(box), active_(n_) {
        const size_t t = poly.size();
        coef_.assign(t, sign);
        pattern_.assign(t * words_, 0);
        for (size_t k = 0; k < t; k++) {
            for (uint32_t i : poly.minterms()[k].support()) {
                pattern_[k * words_ + (i >> 6)] |= uint64_t{1} << (i & 63);
            }
        }
        for (size_t i = 0; i < n_; i++) {
            active_.set(i);
        }
    }

    size_t num_terms() const {
        return coef_.size();
    }
    bool bit(size_t term, size_t i) const {
        return (pattern_[term * words_ + (i >> 6)] >> (i & 63)) & 1;
    }
    bool active(size_t i) const {
        return active_[i];
    }
    size_t num_active() const {
        return active_.popcount();
    }
    const BitVector &active_set() const {
        return active_;
    }

    double lit_min(size_t term, size_t i) const {
        return bit(term, i) ? box_.lower[i] : 1 - box_.upper[i];
    }
    double lit_max(size_t term, size_t i) const {
        return bit(term, i) ? box_.upper[i] : 1 - box_.lower[i];
    }

    /// Substitutes x_i := a in every term.
    void substitute(size_t i, double a) {
        for (size_t t = 0; t < coef_.size(); t++) {
            coef_[t] *= bit(t, i) ? a : 1 - a;
        }
        active_.set(i, false);
    }

    /// Recomputes per-term literal products over active coordinates.
    void refresh_products() {
        pmin_.assign(coef_.size(), Product{});
        pmax_.assign(coef_.size(), Product{});
        active_.for_each_one([&](size_t i) {
            for (size_t t = 0; t < coef_.size(); t++) {
                pmin_[t].mul(lit_min(t, i));
                pmax_[t].mul(lit_max(t, i));
            }
        });
    }

    void drop_from_products(size_t i) {
        for (size_t t = 0; t < coef_.size(); t++) {
            pmin_[t].div(lit_min(t, i));
            pmax_[t].div(lit_max(t, i));
        }
    }

    struct DerivativeBounds {
        double lower = 0;
        double upper = 0;
        double magnitude = 0;  // sum of |contribution| endpoints, for rounding tolerance
    };

    /// Termwise bounds of the matching-term-simplified derivative in x_i over the box.
    DerivativeBounds derivative_bounds(size_t i) {
        struct Group {
            uint32_t rep;
            double c1 = 0;  // coefficients of terms with literal x_i
            double c0 = 0;  // coefficients of terms with literal (1 - x_i)
        };
        std::vector<uint64_t> mask(active_.words().begin(), active_.words().end());
        mask[i >> 6] &= ~(uint64_t{1} << (i & 63));

        std::vector<Group> groups;
        std::vector<uint32_t> chain;
        std::unordered_map<uint64_t, uint32_t> head;
        head.reserve(coef_.size());
        for (size_t t = 0; t < coef_.size(); t++) {
            if (coef_[t] == 0) {
                continue;
            }
            const uint64_t *p = &pattern_[t * words_];
            uint64_t h = 0x243f6a8885a308d3ULL;
            for (size_t w = 0; w < words_; w++) {
                h = mix(h ^ (p[w] & mask[w]));
            }
            uint32_t g = UINT32_MAX;
            auto it = head.find(h);
            if (it != head.end()) {
                for (uint32_t cand = it->second; cand != UINT32_MAX; cand = chain[cand]) {
                    const uint64_t *q = &pattern_[groups[cand].rep * words_];
                    bool same = true;
                    for (size_t w = 0; w < words_ && same; w++) {
                        same = ((p[w] ^ q[w]) & mask[w]) == 0;
                    }
                    if (same) {
                        g = cand;
                        break;
                    }
                }
            }
            if (g == UINT32_MAX) {
                g = static_cast<uint32_t>(groups.size());
                groups.push_back(Group{static_cast<uint32_t>(t)});
                uint32_t prev = it == head.end() ? UINT32_MAX : it->second;
                chain.push_back(prev);
                head[h] = g;
            }
            (bit(t, i) ? groups[g].c1 : groups[g].c0) += coef_[t];
        }

        CompensatedSum lo, hi;
        double magnitude = 0;
        for (const auto &g : groups) {
            double d = g.c1 - g.c0;
            if (d == 0) {
                continue;
            }
            double pmin = pmin_[g.rep].value_without(lit_min(g.rep, i));
            double pmax = pmax_[g.rep].value_without(lit_max(g.rep, i));
            double a = d > 0 ? d * pmin : d * pmax;
            double b = d > 0 ? d * pmax : d * pmin;
            lo.add(a);
            hi.add(b);
            magnitude += std::abs(a) + std::abs(b) + (std::abs(g.c1) + std::abs(g.c0)) * pmax;
        }
        return {lo.value(), hi.value(), magnitude};
    }

    /// Termwise upper bound of the reduced polynomial over the box.
    double termwise_max() const {
        CompensatedSum sum;
        for (size_t t = 0; t < coef_.size(); t++) {
            double c = coef_[t];
            sum.add(c >= 0 ? c * pmax_[t].value() : c * pmin_[t].value());
        }
        return sum.value();
    }

    /// Values at all 2^f vertices of the active coordinates (listed in `free`), bit k of the
    /// index selecting the upper face of free[k].
    std::vector<double> vertex_values(const std::vector<uint32_t> &free) const {
        const size_t f = free.size();
        std::vector<double> table(size_t{1} << f, 0.0);
        for (size_t t = 0; t < coef_.size(); t++) {
            if (coef_[t] == 0) {
                continue;
            }
            size_t index = 0;
            for (size_t k = 0; k < f; k++) {
                index |= size_t{bit(t, free[k])} << k;
            }
            table[index] += coef_[t];
        }
        // Axis by axis: (coefficient of (1-x), coefficient of x) -> (value at lower, value at upper).
        for (size_t k = 0; k < f; k++) {
            const double l = box_.lower[free[k]], u = box_.upper[free[k]];
            const size_t step = size_t{1} << k;
            for (size_t base = 0; base < table.size(); base += 2 * step) {
                for (size_t j = base; j < base + step; j++) {
                    double a0 = table[j], a1 = table[j + step];
                    table[j] = a0 * (1 - l) + a1 * l;
                    table[j + step] = a0 * (1 - u) + a1 * u;
                }
            }
        }
        return table;
    }

   private:
    size_t n_;
    size_t words_;
    const Hyperrectangle &box_;
    BitVector active_;
    std::vector<double> coef_;
    std::vector<uint64_t> pattern_;
    std::vector<Product> pmin_, pmax_;
};

// Maximizes sign * poly.
OptimizationResult optimize(const ErrorPolynomial &poly, const Hyperrectangle &box, const OptimizerOptions &options,
                            double sign) {
    box.validate();
    const size_t n = poly.num_variables();
    if (box.size() != n) {
        throw std::invalid_argument("optimizer: box has " + std::to_string(box.size()) + " coordinates, polynomial has " +
                                    std::to_string(n) + " variables");
    }

    OptimizationResult result;
    result.fixing.assign(n, Fixing::Free);
    result.vertex = box.lower;
    if (poly.empty()) {
        return result;
    }

    ReducedPolynomial reduced(poly, box, sign);
    for (size_t i = 0; i < n; i++) {
        if (box.lower[i] == box.upper[i]) {
            reduced.substitute(i, box.lower[i]);
            result.fixing[i] = Fixing::Degenerate;
            result.vertex[i] = box.lower[i];
        }
    }

    // Sweep in ascending order; repeat while the previous sweep fixed something.
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    bool changed = true;
    while (changed && reduced.num_active() > 0) {
        changed = false;
        result.sweeps++;
        reduced.refresh_products();
        const double f = static_cast<double>(reduced.num_active());
        for (size_t i = 0; i < n; i++) {
            if (!reduced.active(i)) {
                continue;
            }
            auto bounds = reduced.derivative_bounds(i);
            const double tol = 4 * (f + 2) * kEps * bounds.magnitude;
            Fixing fix = Fixing::Free;
            if (bounds.lower > tol) {
                fix = Fixing::Upper;
            } else if (bounds.upper < -tol) {
                fix = Fixing::Lower;
            }
            if (fix == Fixing::Free) {
                continue;
            }
            double a = fix == Fixing::Upper ? box.upper[i] : box.lower[i];
            result.fixing[i] = fix;
            result.vertex[i] = a;
            reduced.drop_from_products(i);
            reduced.substitute(i, a);
            changed = true;
        }
    }

    std::vector<uint32_t> free;
    reduced.active_set().for_each_one([&](size_t i) { free.push_back(static_cast<uint32_t>(i)); });
    result.free_variables = free.size();

    if (free.size() <= options.max_free_variables) {
        std::vector<double> table = reduced.vertex_values(free);
        size_t best = 0;
        for (size_t k = 1; k < table.size(); k++) {
            if (table[k] > table[best]) {
                best = k;
            }
        }
        for (size_t k = 0; k < free.size(); k++) {
            result.vertex[free[k]] = (best >> k) & 1 ? box.upper[free[k]] : box.lower[free[k]];
        }
        result.exact = true;
        result.value = poly.evaluate(result.vertex);
        result.certified_bound = result.value;
    } else {
        // Heuristic vertex: upper face for maximization, lower face for minimization.
        for (uint32_t i : free) {
            result.vertex[i] = sign > 0 ? box.upper[i] : box.lower[i];
        }
        reduced.refresh_products();
        result.exact = false;
        result.value = poly.evaluate(result.vertex);
        result.certified_bound = sign * reduced.termwise_max();
    }
    return result;
}

}  // namespace

OptimizationResult maximize(const ErrorPolynomial &poly, const Hyperrectangle &box, const OptimizerOptions &options) {
    return optimize(poly, box, options, 1.0);
}

OptimizationResult minimize(const ErrorPolynomial &poly, const Hyperrectangle &box, const OptimizerOptions &options) {
    return optimize(poly, box, options, -1.0);
}

RobustnessBounds robustness_bounds(const ErrorPolynomial &logical, const ErrorPolynomial &non_logical,
                                   const Hyperrectangle &box, const OptimizerOptions &options) {
    RobustnessBounds bounds;
    OptimizationResult hi = maximize(logical, box, options);
    bounds.lower = std::clamp(hi.value, 0.0, 1.0);
    bounds.witness = hi.vertex;
    bounds.exact = hi.exact;
    if (!non_logical.empty()) {
        OptimizationResult lo = minimize(non_logical, box, options);
        bounds.upper = std::clamp(1 - lo.certified_bound, 0.0, 1.0);
        bounds.exact = bounds.exact && lo.exact;
    }
    return bounds;
}

}  // namespace qecbound
