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

#ifndef QECBOUND_ERRORSPACE_H
#define QECBOUND_ERRORSPACE_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "qecbound/bit_vector.h"
#include "qecbound/dem.h"

namespace qecbound {

/// Selection of fired channels, stored as its sorted support. Bit 0 is leftmost in str().
class ErrorBitstring {
   public:
    ErrorBitstring() = default;
    explicit ErrorBitstring(size_t n) : n_(n) {
    }
    /// `support` must be strictly increasing with entries < n.
    ErrorBitstring(size_t n, std::vector<uint32_t> support);

    static ErrorBitstring from_string(std::string_view bits);
    static ErrorBitstring from_bits(const BitVector &bits);

    size_t size() const {
        return n_;
    }
    size_t weight() const {
        return support_.size();
    }
    const std::vector<uint32_t> &support() const {
        return support_;
    }
    bool test(size_t i) const;
    /// Copy with bit i flipped.
    ErrorBitstring flipped(size_t i) const;
    /// τ: every index i moves to (i + 1) mod n.
    ErrorBitstring rotated() const;

    BitVector to_bits() const;
    std::string str() const;
    size_t hash() const;

    bool operator==(const ErrorBitstring &) const = default;

   private:
    size_t n_ = 0;
    std::vector<uint32_t> support_;
};

struct ErrorBitstringHash {
    size_t operator()(const ErrorBitstring &e) const {
        return e.hash();
    }
};

/// Weight-class order: weights ascending, supports in lexicographic order within a weight.
/// A cursor emits positions offset, offset + stride, ... of that order starting from the first
/// string of `start_weight`.
class WeightOrderCursor {
   public:
    WeightOrderCursor(size_t n, size_t start_weight = 0, size_t offset = 0, size_t stride = 1);

    bool exhausted() const {
        return exhausted_;
    }
    /// Next string, or nullopt once the space (2^n strings) is exhausted.
    std::optional<ErrorBitstring> next();
    /// The string next() would return. Requires !exhausted().
    ErrorBitstring peek() const;

    size_t current_weight() const {
        return combo_.size();
    }

   private:
    void advance_one();

    size_t n_;
    size_t stride_;
    bool exhausted_ = false;
    std::vector<uint32_t> combo_;
};

enum class Strategy { Hamming, Split, LocalFlip, LocalShift, LocalBoth };

std::string_view strategy_name(Strategy s);
Strategy parse_strategy(std::string_view name);
bool is_local(Strategy s);

struct EnumerationPlan {
    Strategy strategy = Strategy::Hamming;
    size_t workers = 1;
    std::optional<size_t> distance;  // required for Split
};

/// One cursor per worker; see WeightOrderCursor for the striding rule.
std::vector<WeightOrderCursor> partition_workers(const EnumerationPlan &plan, size_t n);

/// Enumerated strings: everything below (complete weight, frontier) in weight order, plus extras
/// visited out of order.
class VisitedSet {
   public:
    explicit VisitedSet(size_t n);

    bool contains(const ErrorBitstring &e) const;
    /// Returns false if already present.
    bool insert(const ErrorBitstring &e);

    size_t size() const {
        return count_;
    }
    size_t n() const {
        return n_;
    }
    bool complete() const {
        return complete_;
    }
    /// All strings of weight below this are present.
    size_t complete_weight() const {
        return complete_ ? n_ + 1 : frontier_.size();
    }
    const std::vector<uint32_t> &frontier() const {
        return frontier_;
    }
    size_t extras_size() const {
        return extras_.size();
    }

   private:
    bool below_frontier(const ErrorBitstring &e) const;
    void advance_frontier();

    size_t n_;
    size_t count_ = 0;
    bool complete_ = false;
    std::vector<uint32_t> frontier_;  // first absent string of the weight order
    std::unordered_set<ErrorBitstring, ErrorBitstringHash> extras_;
};

inline bool membership(const VisitedSet &visited, const ErrorBitstring &e) {
    return visited.contains(e);
}

/// The n strings at Hamming distance 1.
std::vector<ErrorBitstring> local_moves_flip(const ErrorBitstring &e);
/// Distinct nontrivial rotations τ^j(e), 1 ≤ j < n, excluding e itself.
std::vector<ErrorBitstring> local_moves_shift(const ErrorBitstring &e);

/// Packed per-channel footprints for fast syndrome/observable evaluation.
class FootprintTable {
   public:
    explicit FootprintTable(const DetectorErrorModel &model);

    size_t n_channels() const {
        return dets_.size();
    }
    size_t n_detectors() const {
        return n_det_;
    }
    size_t n_observables() const {
        return n_obs_;
    }
    const BitVector &detectors_of(size_t channel) const {
        return dets_[channel];
    }
    const BitVector &observables_of(size_t channel) const {
        return obs_[channel];
    }

    BitVector syndrome(const ErrorBitstring &e) const;
    BitVector observable(const ErrorBitstring &e) const;

   private:
    void check(const ErrorBitstring &e) const;

    size_t n_det_;
    size_t n_obs_;
    std::vector<BitVector> dets_;
    std::vector<BitVector> obs_;
};

BitVector syndrome_of(const DetectorErrorModel &model, const ErrorBitstring &e);
BitVector observable_of(const DetectorErrorModel &model, const ErrorBitstring &e);

}  // namespace qecbound

#endif
