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

// Detector error models: independent Bernoulli error mechanisms with their detector and observable
// footprints. The text form is a subset of Stim's DEM syntax:
//
//     dem 2 1                   # optional: detector and observable counts
//     error(0.01) D0 L0
//     error(0.01) D0 D1
//     error(x2/3) D1            # symbolic models only

#ifndef QECBOUND_DEM_H
#define QECBOUND_DEM_H

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qecbound/probability.h"

namespace qecbound {

struct DetectorErrorModel {
    size_t n_detectors = 0;
    size_t n_observables = 0;
    std::vector<Probability> probabilities;
    std::vector<std::vector<uint32_t>> det_footprint;  // sorted, per channel
    std::vector<std::vector<uint32_t>> obs_footprint;  // sorted, per channel

    size_t n_channels() const {
        return probabilities.size();
    }

    /// Appends a channel. Footprints are sorted; indices beyond the current counts grow them.
    void add_channel(Probability p, std::vector<uint32_t> dets, std::vector<uint32_t> obs);

    bool is_symbolic() const;
    /// Concrete probability vector; throws if any channel is symbolic.
    std::vector<double> concrete_probabilities() const;

    bool operator==(const DetectorErrorModel &) const = default;
};

class DemParseError : public std::runtime_error {
   public:
    DemParseError(size_t line, const std::string &message);
    size_t line() const {
        return line_;
    }

   private:
    size_t line_;
};

/// Parses DEM text. Symbolic `error(x<k>)` / `error(x<k>/<div>)` entries are accepted.
DetectorErrorModel parse_dem(std::string_view text);

/// Writes a concrete model; throws std::invalid_argument on symbolic channels.
std::string write_dem(const DetectorErrorModel &model);

/// Writes a model whose channels may be symbolic.
std::string write_symbolic_dem(const DetectorErrorModel &model);

/// FNV-1a 64-bit digest of the canonical text form, as 16 hex digits.
std::string model_digest(const DetectorErrorModel &model);

}  // namespace qecbound

#endif
