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

#include "qecbound/errorspace.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qecbound {

namespace {

// Advances `combo` to the successor in weight order. Returns false past the all-ones string.
bool next_in_order(std::vector<uint32_t> &combo, size_t n) {
    const size_t w = combo.size();
    for (size_t i = w; i-- > 0;) {
        if (combo[i] < n - w + i) {
            combo[i]++;
            for (size_t j = i + 1; j < w; j++) {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    if (w == n) {
        return false;
    }
    combo.resize(w + 1);
    std::iota(combo.begin(), combo.end(), 0u);
    return true;
}

}  // namespace

ErrorBitstring::ErrorBitstring(size_t n, std::vector<uint32_t> support) : n_(n), support_(std::move(support)) {
    for (size_t k = 0; k < support_.size(); k++) {
        if (support_[k] >= n_ || (k > 0 && support_[k - 1] >= support_[k])) {
            throw std::invalid_argument("ErrorBitstring: support must be increasing and below n");
        }
    }
}

ErrorBitstring ErrorBitstring::from_string(std::string_view bits) {
    std::vector<uint32_t> support;
    for (size_t k = 0; k < bits.size(); k++) {
        if (bits[k] == '1') {
            support.push_back(static_cast<uint32_t>(k));
        } else if (bits[k] != '0') {
            throw std::invalid_argument("ErrorBitstring: expected only '0' and '1'");
        }
    }
    return ErrorBitstring(bits.size(), std::move(support));
}

ErrorBitstring ErrorBitstring::from_bits(const BitVector &bits) {
    return ErrorBitstring(bits.size(), bits.ones());
}

bool ErrorBitstring::test(size_t i) const {
    return std::binary_search(support_.begin(), support_.end(), static_cast<uint32_t>(i));
}

ErrorBitstring ErrorBitstring::flipped(size_t i) const {
    ErrorBitstring result = *this;
    auto it = std::lower_bound(result.support_.begin(), result.support_.end(), static_cast<uint32_t>(i));
    if (it != result.support_.end() && *it == i) {
        result.support_.erase(it);
    } else {
        result.support_.insert(it, static_cast<uint32_t>(i));
    }
    return result;
}

ErrorBitstring ErrorBitstring::rotated() const {
    ErrorBitstring result = *this;
    if (!support_.empty() && support_.back() == n_ - 1) {
        // The last index wraps to the front.
        result.support_.pop_back();
        for (auto &i : result.support_) {
            i++;
        }
        result.support_.insert(result.support_.begin(), 0);
    } else {
        for (auto &i : result.support_) {
            i++;
        }
    }
    return result;
}

BitVector ErrorBitstring::to_bits() const {
    BitVector bits(n_);
    for (uint32_t i : support_) {
        bits.set(i);
    }
    return bits;
}

std::string ErrorBitstring::str() const {
    std::string result(n_, '0');
    for (uint32_t i : support_) {
        result[i] = '1';
    }
    return result;
}

size_t ErrorBitstring::hash() const {
    uint64_t h = 0x9e3779b97f4a7c15ULL ^ n_;
    for (uint32_t i : support_) {
        h ^= i + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<size_t>(h);
}

WeightOrderCursor::WeightOrderCursor(size_t n, size_t start_weight, size_t offset, size_t stride)
    : n_(n), stride_(stride) {
    if (stride == 0) {
        throw std::invalid_argument("WeightOrderCursor: stride must be positive");
    }
    if (start_weight > n) {
        exhausted_ = true;
        return;
    }
    combo_.resize(start_weight);
    std::iota(combo_.begin(), combo_.end(), 0u);
    for (size_t k = 0; k < offset && !exhausted_; k++) {
        advance_one();
    }
}

void WeightOrderCursor::advance_one() {
    if (!next_in_order(combo_, n_)) {
        exhausted_ = true;
    }
}

ErrorBitstring WeightOrderCursor::peek() const {
    if (exhausted_) {
        throw std::logic_error("WeightOrderCursor: exhausted");
    }
    return ErrorBitstring(n_, combo_);
}

std::optional<ErrorBitstring> WeightOrderCursor::next() {
    if (exhausted_) {
        return std::nullopt;
    }
    ErrorBitstring result(n_, combo_);
    for (size_t k = 0; k < stride_ && !exhausted_; k++) {
        advance_one();
    }
    return result;
}

std::string_view strategy_name(Strategy s) {
    switch (s) {
        case Strategy::Hamming: return "hamming";
        case Strategy::Split: return "split";
        case Strategy::LocalFlip: return "local-flip";
        case Strategy::LocalShift: return "local-shift";
        case Strategy::LocalBoth: return "local-both";
    }
    return "?";
}

Strategy parse_strategy(std::string_view name) {
    for (Strategy s : {Strategy::Hamming, Strategy::Split, Strategy::LocalFlip, Strategy::LocalShift, Strategy::LocalBoth}) {
        if (strategy_name(s) == name) {
            return s;
        }
    }
    throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

bool is_local(Strategy s) {
    return s == Strategy::LocalFlip || s == Strategy::LocalShift || s == Strategy::LocalBoth;
}

std::vector<WeightOrderCursor> partition_workers(const EnumerationPlan &plan, size_t n) {
    const size_t k = plan.workers;
    if (k == 0) {
        throw std::invalid_argument("partition_workers: worker count must be at least 1");
    }
    std::vector<WeightOrderCursor> cursors;
    if (plan.strategy != Strategy::Split || k == 1) {
        for (size_t i = 0; i < k; i++) {
            cursors.emplace_back(n, 0, i, k);
        }
        return cursors;
    }
    if (!plan.distance) {
        throw std::invalid_argument("partition_workers: split strategy requires a distance ansatz");
    }
    const size_t low = (k + 1) / 2;
    const size_t high = k - low;
    const size_t high_weight = *plan.distance / 2 + 1;
    for (size_t i = 0; i < low; i++) {
        cursors.emplace_back(n, 0, i, low);
    }
    for (size_t i = 0; i < high; i++) {
        cursors.emplace_back(n, high_weight, i, high);
    }
    return cursors;
}

VisitedSet::VisitedSet(size_t n) : n_(n) {
}

bool VisitedSet::below_frontier(const ErrorBitstring &e) const {
    if (complete_ || e.weight() < frontier_.size()) {
        return true;
    }
    return e.weight() == frontier_.size() && e.support() < frontier_;
}

bool VisitedSet::contains(const ErrorBitstring &e) const {
    return below_frontier(e) || extras_.count(e) > 0;
}

void VisitedSet::advance_frontier() {
    if (!next_in_order(frontier_, n_)) {
        complete_ = true;
    }
}

bool VisitedSet::insert(const ErrorBitstring &e) {
    if (e.size() != n_) {
        throw std::invalid_argument("VisitedSet: length mismatch");
    }
    if (contains(e)) {
        return false;
    }
    count_++;
    if (e.weight() != frontier_.size() || e.support() != frontier_) {
        extras_.insert(e);
        return true;
    }
    advance_frontier();
    while (!complete_) {
        auto it = extras_.find(ErrorBitstring(n_, frontier_));
        if (it == extras_.end()) {
            break;
        }
        extras_.erase(it);
        advance_frontier();
    }
    return true;
}

std::vector<ErrorBitstring> local_moves_flip(const ErrorBitstring &e) {
    std::vector<ErrorBitstring> result;
    result.reserve(e.size());
    for (size_t i = 0; i < e.size(); i++) {
        result.push_back(e.flipped(i));
    }
    return result;
}

std::vector<ErrorBitstring> local_moves_shift(const ErrorBitstring &e) {
    std::vector<ErrorBitstring> result;
    ErrorBitstring current = e;
    for (size_t j = 1; j < e.size(); j++) {
        current = current.rotated();
        if (current == e) {
            break;  // rotation period reached; later rotations repeat
        }
        result.push_back(current);
    }
    return result;
}

FootprintTable::FootprintTable(const DetectorErrorModel &model)
    : n_det_(model.n_detectors), n_obs_(model.n_observables) {
    dets_.reserve(model.n_channels());
    obs_.reserve(model.n_channels());
    for (size_t c = 0; c < model.n_channels(); c++) {
        BitVector d(n_det_), o(n_obs_);
        for (uint32_t k : model.det_footprint[c]) {
            d.set(k);
        }
        for (uint32_t k : model.obs_footprint[c]) {
            o.set(k);
        }
        dets_.push_back(std::move(d));
        obs_.push_back(std::move(o));
    }
}

void FootprintTable::check(const ErrorBitstring &e) const {
    if (e.size() != dets_.size()) {
        throw std::invalid_argument("error bitstring length " + std::to_string(e.size()) + " does not match " +
                                    std::to_string(dets_.size()) + " channels");
    }
}

BitVector FootprintTable::syndrome(const ErrorBitstring &e) const {
    check(e);
    BitVector result(n_det_);
    for (uint32_t c : e.support()) {
        result ^= dets_[c];
    }
    return result;
}

BitVector FootprintTable::observable(const ErrorBitstring &e) const {
    check(e);
    BitVector result(n_obs_);
    for (uint32_t c : e.support()) {
        result ^= obs_[c];
    }
    return result;
}

BitVector syndrome_of(const DetectorErrorModel &model, const ErrorBitstring &e) {
    return FootprintTable(model).syndrome(e);
}

BitVector observable_of(const DetectorErrorModel &model, const ErrorBitstring &e) {
    return FootprintTable(model).observable(e);
}

}  // namespace qecbound
