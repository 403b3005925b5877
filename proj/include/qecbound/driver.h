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

#ifndef QECBOUND_DRIVER_H
#define QECBOUND_DRIVER_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qecbound/decoders.h"
#include "qecbound/dem.h"
#include "qecbound/errorspace.h"
#include "qecbound/optimizer.h"
#include "qecbound/polynomial.h"

namespace qecbound {

enum class Mode { Accuracy, Robustness };

struct RunConfig {
    Mode mode = Mode::Accuracy;
    EnumerationPlan plan;
    std::optional<uint64_t> max_shots;
    std::optional<double> time_limit_s;
    /// Unseen-string samples per checkpoint (accuracy only); 0 disables sampling.
    size_t samples = 0;
    double alpha = 0.01;
    uint64_t seed = 0;
    /// Checkpoints at shots 1, g, g^2, ... (rounded up), plus a final one.
    double checkpoint_growth = 2;
    /// Robustness: largest p_{S\L} store before its bound freezes.
    size_t non_logical_store_cap = 10'000'000;
    OptimizerOptions optimizer;
    /// Syndromes decoded per batch request inside a worker.
    size_t decode_batch = 1024;
};

struct BoundRecord {
    uint64_t shots = 0;
    double lower = 0;
    double upper = 1;
    bool sound = true;
    std::optional<double> alpha;        // probabilistic records only
    std::optional<uint64_t> samples;    // probabilistic records: samples drawn at this checkpoint
    std::optional<bool> exact;          // robustness records: optimizer exactness
    bool frozen = false;                // robustness: p_{S\L} store capped, upper frozen
    double elapsed_s = 0;
};

struct BoundsTrace {
    std::vector<BoundRecord> records;
    // Final summary.
    uint64_t shots = 0;
    double lower = 0;
    double upper = 1;
    bool exhausted = false;
    std::optional<std::vector<double>> witness_vertex;
    std::optional<bool> exact;
    std::vector<ErrorBitstring> logical_errors;  // filled only when requested
};

/// Receives trace events as they happen.
class TraceSink {
   public:
    virtual ~TraceSink() = default;
    virtual void on_record(const BoundRecord &record) = 0;
    virtual void on_final(const BoundsTrace &trace) = 0;
};

struct RunOptions {
    TraceSink *sink = nullptr;
    /// Keep the list of enumerated logical-error strings in the trace.
    bool collect_logical_errors = false;
};

/// Algorithm driver for concrete models: enumerate, decode, accumulate, report bounds.
BoundsTrace run_accuracy(const DetectorErrorModel &model, std::span<const double> v, const DecoderFactory &decoders,
                         const RunConfig &config, const RunOptions &options = {});

/// Worst case over the box of the logical error rate of a fixed decoder.
BoundsTrace run_robustness(const DetectorErrorModel &model, const DecoderFactory &decoders, const Hyperrectangle &box,
                           const RunConfig &config, const RunOptions &options = {});

/// Plain Monte Carlo trace: at each checkpoint, the KL interval of the logical-error fraction so
/// far. Records are marked unsound.
BoundsTrace run_direct_sampling(const DetectorErrorModel &model, std::span<const double> v, Decoder &decoder,
                                uint64_t max_shots, double alpha, uint64_t seed, double checkpoint_growth = 2);

enum class RecordKind { Any, Sound, Probabilistic };

/// First shots value whose record has lower > 0 and upper / lower <= ratio.
std::optional<uint64_t> convergence_shots(const BoundsTrace &trace, double ratio, RecordKind kind = RecordKind::Any);

/// Exact logical error rate by enumerating all 2^n strings (small models).
double exact_logical_error_rate(const DetectorErrorModel &model, std::span<const double> v, Decoder &decoder);

}  // namespace qecbound

#endif
