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

#include "qecbound/polynomial.h"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "qecbound/probability.h"

namespace qecbound {

MintermEvaluator::MintermEvaluator(std::vector<double> v) : v_(std::move(v)) {
    ratio_.reserve(v_.size());
    for (double p : v_) {
        if (!(p > 0 && p < 1)) {
            throw std::invalid_argument("MintermEvaluator: probabilities must lie strictly inside (0, 1), got " +
                                        format_double(p));
        }
        base_ *= 1 - p;
        ratio_.push_back(p / (1 - p));
    }
}

double MintermEvaluator::operator()(const ErrorBitstring &e) const {
    if (e.size() != v_.size()) {
        throw std::invalid_argument("minterm length mismatch");
    }
    double value = base_;
    for (uint32_t i : e.support()) {
        value *= ratio_[i];
    }
    return value;
}

double minterm_eval(const ErrorBitstring &e, std::span<const double> v) {
    if (e.size() != v.size()) {
        throw std::invalid_argument("minterm length mismatch");
    }
    double value = 1;
    size_t k = 0;
    const auto &support = e.support();
    for (size_t i = 0; i < v.size(); i++) {
        if (k < support.size() && support[k] == i) {
            value *= v[i];
            k++;
        } else {
            value *= 1 - v[i];
        }
    }
    return value;
}

void accumulate(BoundAccumulators &acc, const ErrorBitstring &e, bool is_logical_error, const MintermEvaluator &eval) {
    double m = eval(e);
    acc.sum_S.add(m);
    acc.count_S++;
    if (is_logical_error) {
        acc.sum_L.add(m);
        acc.count_L++;
    }
}

Interval accuracy_bounds(const BoundAccumulators &acc) {
    double l = acc.sum_L.value();
    double s = acc.sum_S.value();
    return {l, 1 - (s - l)};
}

void Hyperrectangle::validate() const {
    if (lower.size() != upper.size()) {
        throw std::invalid_argument("box: lower and upper have different lengths");
    }
    for (size_t i = 0; i < lower.size(); i++) {
        if (!(0 <= lower[i] && lower[i] <= upper[i] && upper[i] <= 1)) {
            throw std::invalid_argument("box: invalid interval [" + format_double(lower[i]) + ", " +
                                        format_double(upper[i]) + "] for variable " + std::to_string(i));
        }
    }
}

bool Hyperrectangle::contains(std::span<const double> x) const {
    if (x.size() != lower.size()) {
        return false;
    }
    for (size_t i = 0; i < x.size(); i++) {
        if (x[i] < lower[i] || x[i] > upper[i]) {
            return false;
        }
    }
    return true;
}

std::vector<double> Hyperrectangle::midpoint() const {
    std::vector<double> mid(lower.size());
    for (size_t i = 0; i < mid.size(); i++) {
        mid[i] = lower[i] + (upper[i] - lower[i]) / 2;
    }
    return mid;
}

Hyperrectangle Hyperrectangle::point(std::vector<double> v) {
    return Hyperrectangle{v, v};
}

Hyperrectangle Hyperrectangle::scaled(std::span<const double> v, double lo, double hi) {
    if (!(lo >= 0 && lo <= hi)) {
        throw std::invalid_argument("box scale must satisfy 0 <= lo <= hi");
    }
    Hyperrectangle box;
    for (double p : v) {
        box.lower.push_back(std::min(1.0, p * lo));
        box.upper.push_back(std::min(1.0, p * hi));
    }
    return box;
}

std::string SignedTerm::str() const {
    std::string result = format_double(coefficient);
    for (const auto &lit : literals) {
        std::string x = "x" + std::to_string(lit.var);
        result += lit.positive ? "*" + x : "*(1-" + x + ")";
    }
    return result;
}

SignedTerm minterm_term(const ErrorBitstring &e) {
    SignedTerm term;
    term.literals.reserve(e.size());
    for (size_t i = 0; i < e.size(); i++) {
        term.literals.push_back({static_cast<uint32_t>(i), e.test(i)});
    }
    return term;
}

double evaluate_terms(std::span<const SignedTerm> terms, std::span<const double> x) {
    CompensatedSum sum;
    for (const auto &term : terms) {
        double value = term.coefficient;
        for (const auto &lit : term.literals) {
            value *= lit.positive ? x[lit.var] : 1 - x[lit.var];
        }
        sum.add(value);
    }
    return sum.value();
}

Interval bound_terms_individually(std::span<const SignedTerm> terms, const Hyperrectangle &box) {
    CompensatedSum lo, hi;
    for (const auto &term : terms) {
        // Literal factors are nonnegative, so the product's range is [prod of minima, prod of maxima].
        double pmin = 1, pmax = 1;
        for (const auto &lit : term.literals) {
            double l = box.lower.at(lit.var), u = box.upper.at(lit.var);
            pmin *= lit.positive ? l : 1 - u;
            pmax *= lit.positive ? u : 1 - l;
        }
        if (term.coefficient >= 0) {
            lo.add(term.coefficient * pmin);
            hi.add(term.coefficient * pmax);
        } else {
            lo.add(term.coefficient * pmax);
            hi.add(term.coefficient * pmin);
        }
    }
    return {lo.value(), hi.value()};
}

std::vector<SignedTerm> partial_derivative(std::span<const SignedTerm> terms, uint32_t i) {
    std::vector<SignedTerm> result;
    for (const auto &term : terms) {
        auto it = std::find_if(term.literals.begin(), term.literals.end(), [&](const Literal &l) { return l.var == i; });
        if (it == term.literals.end()) {
            continue;  // constant in x_i
        }
        SignedTerm d;
        d.coefficient = it->positive ? term.coefficient : -term.coefficient;
        d.literals.reserve(term.literals.size() - 1);
        for (const auto &lit : term.literals) {
            if (lit.var != i) {
                d.literals.push_back(lit);
            }
        }
        result.push_back(std::move(d));
    }
    return result;
}

std::vector<SignedTerm> partial_derivative_simplified(std::span<const SignedTerm> terms, uint32_t i) {
    for (const auto &term : terms) {
        bool has = std::any_of(term.literals.begin(), term.literals.end(), [&](const Literal &l) { return l.var == i; });
        if (!has) {
            throw std::invalid_argument("partial_derivative_simplified: a term lacks variable x" + std::to_string(i));
        }
    }
    auto key_of = [](const SignedTerm &t) {
        std::vector<std::pair<uint32_t, bool>> key;
        for (const auto &lit : t.literals) {
            key.emplace_back(lit.var, lit.positive);
        }
        return key;
    };
    std::vector<SignedTerm> raw = partial_derivative(terms, i);
    std::map<std::vector<std::pair<uint32_t, bool>>, size_t> position;
    std::vector<SignedTerm> merged;
    for (auto &term : raw) {
        auto [it, inserted] = position.emplace(key_of(term), merged.size());
        if (inserted) {
            merged.push_back(std::move(term));
        } else {
            merged[it->second].coefficient += term.coefficient;
        }
    }
    std::erase_if(merged, [](const SignedTerm &t) { return t.coefficient == 0; });
    return merged;
}

void ErrorPolynomial::add(ErrorBitstring e) {
    if (e.size() != n_) {
        throw std::invalid_argument("ErrorPolynomial: minterm length mismatch");
    }
    minterms_.push_back(std::move(e));
}

double ErrorPolynomial::evaluate(std::span<const double> x) const {
    if (x.size() != n_) {
        throw std::invalid_argument("ErrorPolynomial: point length mismatch");
    }
    CompensatedSum sum;
    bool interior = std::all_of(x.begin(), x.end(), [](double p) { return p > 0 && p < 1; });
    if (interior) {
        MintermEvaluator eval(std::vector<double>(x.begin(), x.end()));
        for (const auto &e : minterms_) {
            sum.add(eval(e));
        }
    } else {
        for (const auto &e : minterms_) {
            sum.add(minterm_eval(e, x));
        }
    }
    return sum.value();
}

std::vector<SignedTerm> ErrorPolynomial::terms() const {
    std::vector<SignedTerm> result;
    result.reserve(minterms_.size());
    for (const auto &e : minterms_) {
        result.push_back(minterm_term(e));
    }
    return result;
}

}  // namespace qecbound
