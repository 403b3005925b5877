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

#ifndef QECBOUND_PROBABILITY_H
#define QECBOUND_PROBABILITY_H

#include <cstdint>
#include <optional>
#include <string>

namespace qecbound {

/// A channel probability: either a concrete value or a symbolic variable `x<k>` times a scale factor
/// (1, 1/3 or 1/15 after depolarizing decomposition).
struct Probability {
    double value = 0;
    std::optional<uint32_t> variable;
    uint32_t divisor = 1;

    static Probability concrete(double p) {
        return Probability{p, std::nullopt, 1};
    }
    static Probability symbolic(uint32_t var, uint32_t divisor = 1) {
        return Probability{0, var, divisor};
    }

    bool is_symbolic() const {
        return variable.has_value();
    }
    bool operator==(const Probability &other) const = default;

    /// `0.01`, `x3`, or `x3/15`. Concrete values use the shortest text that round-trips exactly.
    std::string str() const;
};

std::string format_double(double value);

}  // namespace qecbound

#endif
