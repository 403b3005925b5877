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

#include "qecbound/driver.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <exception>
#include <thread>
#include <unordered_set>

#include "qecbound/sampling.h"

namespace qecbound {

namespace {

using Clock = std::chrono::steady_clock;

struct ShotResult {
    ErrorBitstring e;
    bool logical = false;
};

// One enumeration worker: its cursor, its decoder, and the local-search queue. Between rounds the
// worker keeps strings it decoded ahead of time; they are re-checked against the visited set
// before being reported.
class Worker {
   public:
    Worker(WeightOrderCursor cursor, std::unique_ptr<Decoder> decoder, const FootprintTable &table, Strategy strategy,
           size_t batch)
        : cursor_(std::move(cursor)), decoder_(std::move(decoder)), table_(table), strategy_(strategy),
          batch_(std::max<size_t>(batch, 1)) {
    }

    Decoder &decoder() {
        return *decoder_;
    }

    bool idle() const {
        return cursor_.exhausted() && ahead_.empty() && local_.empty();
    }

    void run_round(const VisitedSet &visited, size_t quota, std::optional<Clock::time_point> deadline,
                   std::vector<ShotResult> &out) {
        emitted_.clear();
        size_t produced = 0;
        while (produced < quota) {
            if (deadline && (produced & 255) == 255 && Clock::now() >= *deadline) {
                break;
            }
            if (!local_.empty()) {
                ShotResult r = std::move(local_.front());
                local_.pop_front();
                if (fresh(visited, r.e)) {
                    emit(std::move(r), out);
                    produced++;
                }
                continue;
            }
            if (ahead_.empty()) {
                refill(visited);
                if (ahead_.empty()) {
                    break;
                }
            }
            ShotResult r = std::move(ahead_.front());
            ahead_.pop_front();
            if (!fresh(visited, r.e)) {
                continue;
            }
            bool explore = r.logical && is_local(strategy_);
            ErrorBitstring origin = explore ? r.e : ErrorBitstring();
            emit(std::move(r), out);
            produced++;
            if (explore) {
                queue_neighbors(visited, origin);
            }
        }
    }

   private:
    bool fresh(const VisitedSet &visited, const ErrorBitstring &e) const {
        return !visited.contains(e) && !emitted_.count(e);
    }

    void emit(ShotResult r, std::vector<ShotResult> &out) {
        emitted_.insert(r.e);
        out.push_back(std::move(r));
    }

    void decode_into(std::vector<ErrorBitstring> strings, std::deque<ShotResult> &queue) {
        std::vector<BitVector> syndromes;
        syndromes.reserve(strings.size());
        for (const auto &e : strings) {
            syndromes.push_back(table_.syndrome(e));
        }
        std::vector<BitVector> predictions = decoder_->decode_batch(syndromes);
        for (size_t k = 0; k < strings.size(); k++) {
            bool logical = predictions[k] != table_.observable(strings[k]);
            queue.push_back(ShotResult{std::move(strings[k]), logical});
        }
    }

    void refill(const VisitedSet &visited) {
        std::vector<ErrorBitstring> strings;
        while (strings.size() < batch_) {
            auto e = cursor_.next();
            if (!e) {
                break;
            }
            if (fresh(visited, *e)) {
                strings.push_back(std::move(*e));
            }
        }
        if (!strings.empty()) {
            decode_into(std::move(strings), ahead_);
        }
    }

    // One hop: neighbors of a cursor string are explored, theirs are not.
    void queue_neighbors(const VisitedSet &visited, const ErrorBitstring &origin) {
        std::vector<ErrorBitstring> moves;
        if (strategy_ == Strategy::LocalFlip || strategy_ == Strategy::LocalBoth) {
            moves = local_moves_flip(origin);
        }
        if (strategy_ == Strategy::LocalShift || strategy_ == Strategy::LocalBoth) {
            auto shifts = local_moves_shift(origin);
            moves.insert(moves.end(), shifts.begin(), shifts.end());
        }
        std::unordered_set<ErrorBitstring, ErrorBitstringHash> seen;
        std::vector<ErrorBitstring> fresh_moves;
        for (auto &m : moves) {
            if (fresh(visited, m) && seen.insert(m).second) {
                fresh_moves.push_back(std::move(m));
            }
        }
        if (!fresh_moves.empty()) {
            decode_into(std::move(fresh_moves), local_);
        }
    }

    WeightOrderCursor cursor_;
    std::unique_ptr<Decoder> decoder_;
    const FootprintTable &table_;
    Strategy strategy_;
    size_t batch_;
    std::deque<ShotResult> ahead_;
    std::deque<ShotResult> local_;
    std::unordered_set<ErrorBitstring, ErrorBitstringHash> emitted_;
};

// Mode-specific bound bookkeeping, owned by the aggregator.
class Aggregator {
   public:
    virtual ~Aggregator() = default;
    virtual void add(const ErrorBitstring &e, bool logical) = 0;
    /// Sound (and possibly probabilistic) records for the current state.
    virtual void checkpoint(uint64_t shots, bool exhausted, size_t index, double elapsed, const VisitedSet &visited,
                            Decoder &decoder, std::vector<BoundRecord> &out) = 0;
    virtual void finish(BoundsTrace &trace) = 0;
};

class AccuracyAggregator : public Aggregator {
   public:
    AccuracyAggregator(std::span<const double> v, const FootprintTable &table, const RunConfig &config)
        : v_(v.begin(), v.end()), eval_(v_), table_(table), config_(config) {
    }

    void add(const ErrorBitstring &e, bool logical) override {
        accumulate(acc_, e, logical, eval_);
    }

    void checkpoint(uint64_t shots, bool exhausted, size_t index, double elapsed, const VisitedSet &visited,
                    Decoder &decoder, std::vector<BoundRecord> &out) override {
        Interval raw = accuracy_bounds(acc_);
        BoundRecord sound;
        sound.shots = shots;
        sound.elapsed_s = elapsed;
        if (exhausted) {
            sound.lower = sound.upper = std::clamp(raw.lower, 0.0, 1.0);
        } else {
            sound.lower = std::max(0.0, raw.lower - kFpMargin);
            sound.upper = std::min(1.0, raw.upper + kFpMargin);
        }
        sound.lower = lower_ = std::max(lower_, sound.lower);
        sound.upper = upper_ = exhausted ? sound.upper : std::min(upper_, sound.upper);
        out.push_back(sound);

        if (config_.samples > 0 && !exhausted) {
            Rng rng(derive_seed(config_.seed, index, 1));
            SampleEstimate est = estimate_unseen(v_, visited, decoder, table_, config_.samples, rng);
            if (est.samples > 0) {
                ConfidenceInterval ci = kl_confidence_interval(est.theta_hat(), est.samples, config_.alpha);
                ProbabilisticBounds pb = probabilistic_bounds(acc_, ci);
                BoundRecord rec;
                rec.shots = shots;
                rec.sound = false;
                rec.alpha = config_.alpha;
                rec.samples = est.samples;
                rec.lower = std::clamp(pb.lower, sound.lower, sound.upper);
                rec.upper = std::clamp(pb.upper, sound.lower, sound.upper);
                rec.elapsed_s = elapsed;
                out.push_back(rec);
            }
        }
    }

    void finish(BoundsTrace &trace) override {
        trace.lower = lower_;
        trace.upper = upper_;
    }

   private:
    std::vector<double> v_;
    MintermEvaluator eval_;
    const FootprintTable &table_;
    const RunConfig &config_;
    BoundAccumulators acc_;
    double lower_ = 0;
    double upper_ = 1;
};

class RobustnessAggregator : public Aggregator {
   public:
    RobustnessAggregator(size_t n, const Hyperrectangle &box, const RunConfig &config)
        : box_(box), config_(config), logical_(n), non_logical_(n) {
    }

    void add(const ErrorBitstring &e, bool logical) override {
        if (logical) {
            logical_.add(e);
        } else if (non_logical_.size() < config_.non_logical_store_cap) {
            non_logical_.add(e);
        } else {
            frozen_ = true;
        }
    }

    void checkpoint(uint64_t shots, bool exhausted, size_t, double elapsed, const VisitedSet &, Decoder &,
                    std::vector<BoundRecord> &out) override {
        OptimizationResult hi = maximize(logical_, box_, config_.optimizer);
        bool exact = hi.exact;
        double raw_upper = upper_;
        if (!frozen_) {
            if (non_logical_.empty()) {
                raw_upper = 1;
            } else {
                OptimizationResult lo = minimize(non_logical_, box_, config_.optimizer);
                raw_upper = 1 - lo.certified_bound;
                exact = exact && lo.exact;
            }
        } else {
            exact = false;
        }

        BoundRecord rec;
        rec.shots = shots;
        rec.elapsed_s = elapsed;
        rec.exact = exact;
        rec.frozen = frozen_;
        double value = std::clamp(hi.value, 0.0, 1.0);
        if (exhausted && exact) {
            rec.lower = rec.upper = value;
        } else {
            rec.lower = std::max(0.0, value - kFpMargin);
            rec.upper = std::min(1.0, raw_upper + kFpMargin);
        }
        if (rec.lower > lower_ || witness_.empty()) {
            witness_ = hi.vertex;
        }
        rec.lower = lower_ = std::max(lower_, rec.lower);
        rec.upper = upper_ = (exhausted && exact) ? rec.upper : std::min(upper_, rec.upper);
        exact_ = exact;
        out.push_back(rec);
    }

    void finish(BoundsTrace &trace) override {
        trace.lower = lower_;
        trace.upper = upper_;
        trace.witness_vertex = witness_;
        trace.exact = exact_;
    }

   private:
    const Hyperrectangle &box_;
    const RunConfig &config_;
    ErrorPolynomial logical_;
    ErrorPolynomial non_logical_;
    bool frozen_ = false;
    bool exact_ = true;
    double lower_ = 0;
    double upper_ = 1;
    std::vector<double> witness_;
};

BoundsTrace run_enumeration(const DetectorErrorModel &model, const DecoderFactory &decoders, const RunConfig &config,
                            const RunOptions &options, Aggregator &aggregator) {
    const auto start = Clock::now();
    std::optional<Clock::time_point> deadline;
    if (config.time_limit_s) {
        deadline = start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*config.time_limit_s));
    }
    if (config.plan.strategy == Strategy::Split && !config.plan.distance && config.plan.workers > 1) {
        throw std::invalid_argument("split strategy requires a distance ansatz");
    }
    if (!(config.checkpoint_growth > 1)) {
        throw std::invalid_argument("checkpoint growth factor must exceed 1");
    }

    const size_t n = model.n_channels();
    FootprintTable table(model);
    std::vector<Worker> workers;
    {
        auto cursors = partition_workers(config.plan, n);
        for (size_t w = 0; w < cursors.size(); w++) {
            auto decoder = decoders(w);
            if (decoder->num_detectors() != model.n_detectors || decoder->num_observables() != model.n_observables) {
                throw std::invalid_argument("decoder dimensions (" + std::to_string(decoder->num_detectors()) + ", " +
                                            std::to_string(decoder->num_observables()) + ") do not match the model (" +
                                            std::to_string(model.n_detectors) + ", " +
                                            std::to_string(model.n_observables) + ")");
            }
            workers.emplace_back(std::move(cursors[w]), std::move(decoder), table, config.plan.strategy,
                                 config.decode_batch);
        }
    }
    const size_t k = workers.size();

    BoundsTrace trace;
    VisitedSet visited(n);
    uint64_t shots = 0;
    uint64_t next_checkpoint = 1;
    size_t checkpoint_index = 0;
    std::optional<uint64_t> last_checkpoint_shots;
    std::vector<std::vector<ShotResult>> results(k);

    auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };
    auto checkpoint = [&](bool exhausted) {
        std::vector<BoundRecord> records;
        aggregator.checkpoint(shots, exhausted, checkpoint_index++, elapsed(), visited, workers[0].decoder(), records);
        for (const auto &r : records) {
            trace.records.push_back(r);
            if (options.sink) {
                options.sink->on_record(r);
            }
        }
        last_checkpoint_shots = shots;
    };

    constexpr uint64_t kMaxRound = 1 << 16;
    bool stop = false;
    while (!stop && !visited.complete()) {
        if (config.max_shots && shots >= *config.max_shots) {
            break;
        }
        if (deadline && Clock::now() >= *deadline) {
            break;
        }
        if (std::all_of(workers.begin(), workers.end(), [](const Worker &w) { return w.idle(); })) {
            break;
        }
        uint64_t target = next_checkpoint - shots;
        if (config.max_shots) {
            target = std::min(target, *config.max_shots - shots);
        }
        target = std::clamp<uint64_t>(target, 1, kMaxRound);
        const size_t quota = static_cast<size_t>((target + k - 1) / k);

        for (auto &r : results) {
            r.clear();
        }
        if (k == 1) {
            workers[0].run_round(visited, quota, deadline, results[0]);
        } else {
            std::vector<std::exception_ptr> errors(k);
            {
                std::vector<std::jthread> threads;
                threads.reserve(k);
                for (size_t w = 0; w < k; w++) {
                    threads.emplace_back([&, w] {
                        try {
                            workers[w].run_round(visited, quota, deadline, results[w]);
                        } catch (...) {
                            errors[w] = std::current_exception();
                        }
                    });
                }
            }
            for (auto &err : errors) {
                if (err) {
                    std::rethrow_exception(err);
                }
            }
        }

        // Merge in worker order; strings found by two workers in the same round count once.
        for (size_t w = 0; w < k && !stop; w++) {
            for (auto &r : results[w]) {
                if (config.max_shots && shots >= *config.max_shots) {
                    stop = true;
                    break;
                }
                if (!visited.insert(r.e)) {
                    continue;
                }
                shots++;
                aggregator.add(r.e, r.logical);
                if (r.logical && options.collect_logical_errors) {
                    trace.logical_errors.push_back(r.e);
                }
            }
        }
        if (shots >= next_checkpoint && !visited.complete()) {
            checkpoint(false);
            while (next_checkpoint <= shots) {
                next_checkpoint = std::max(next_checkpoint + 1,
                                           static_cast<uint64_t>(std::ceil(next_checkpoint * config.checkpoint_growth)));
            }
        }
    }

    trace.exhausted = visited.complete();
    if (trace.exhausted || last_checkpoint_shots != shots) {
        checkpoint(trace.exhausted);
    }
    trace.shots = shots;
    aggregator.finish(trace);
    if (options.sink) {
        options.sink->on_final(trace);
    }
    return trace;
}

}  // namespace

BoundsTrace run_accuracy(const DetectorErrorModel &model, std::span<const double> v, const DecoderFactory &decoders,
                         const RunConfig &config, const RunOptions &options) {
    if (v.size() != model.n_channels()) {
        throw std::invalid_argument("run_accuracy: probability vector has " + std::to_string(v.size()) +
                                    " entries for " + std::to_string(model.n_channels()) + " channels");
    }
    FootprintTable table(model);
    AccuracyAggregator aggregator(v, table, config);
    return run_enumeration(model, decoders, config, options, aggregator);
}

BoundsTrace run_robustness(const DetectorErrorModel &model, const DecoderFactory &decoders, const Hyperrectangle &box,
                           const RunConfig &config, const RunOptions &options) {
    box.validate();
    if (box.size() != model.n_channels()) {
        throw std::invalid_argument("run_robustness: box has " + std::to_string(box.size()) + " coordinates for " +
                                    std::to_string(model.n_channels()) + " channels");
    }
    if (config.samples > 0) {
        throw std::invalid_argument("sampling is available in accuracy mode only");
    }
    RobustnessAggregator aggregator(model.n_channels(), box, config);
    return run_enumeration(model, decoders, config, options, aggregator);
}

BoundsTrace run_direct_sampling(const DetectorErrorModel &model, std::span<const double> v, Decoder &decoder,
                                uint64_t max_shots, double alpha, uint64_t seed, double checkpoint_growth) {
    if (v.size() != model.n_channels()) {
        throw std::invalid_argument("run_direct_sampling: probability vector length mismatch");
    }
    const auto start = Clock::now();
    FootprintTable table(model);
    Rng rng(derive_seed(seed, 0));
    std::unordered_map<BitVector, BitVector> cache;  // decoders are pure functions of the syndrome

    BoundsTrace trace;
    uint64_t hits = 0;
    uint64_t next_checkpoint = 1;
    for (uint64_t shot = 1; shot <= max_shots; shot++) {
        ErrorBitstring e = sample_error(v, rng);
        BitVector syndrome = table.syndrome(e);
        auto it = cache.find(syndrome);
        if (it == cache.end()) {
            it = cache.emplace(syndrome, decoder.decode(syndrome)).first;
        }
        hits += it->second != table.observable(e);
        if (shot == next_checkpoint || shot == max_shots) {
            ConfidenceInterval ci = kl_confidence_interval(static_cast<double>(hits) / static_cast<double>(shot),
                                                           static_cast<size_t>(shot), alpha);
            BoundRecord rec;
            rec.shots = shot;
            rec.lower = ci.lower;
            rec.upper = ci.upper;
            rec.sound = false;
            rec.alpha = alpha;
            rec.samples = shot;
            rec.elapsed_s = std::chrono::duration<double>(Clock::now() - start).count();
            trace.records.push_back(rec);
            while (next_checkpoint <= shot) {
                next_checkpoint =
                    std::max(next_checkpoint + 1, static_cast<uint64_t>(std::ceil(next_checkpoint * checkpoint_growth)));
            }
        }
    }
    trace.shots = max_shots;
    if (!trace.records.empty()) {
        trace.lower = trace.records.back().lower;
        trace.upper = trace.records.back().upper;
    }
    return trace;
}

std::optional<uint64_t> convergence_shots(const BoundsTrace &trace, double ratio, RecordKind kind) {
    if (!(ratio >= 1)) {
        throw std::invalid_argument("convergence_shots: ratio must be at least 1");
    }
    for (const auto &r : trace.records) {
        if ((kind == RecordKind::Sound && !r.sound) || (kind == RecordKind::Probabilistic && r.sound)) {
            continue;
        }
        if (r.lower > 0 && r.upper / r.lower <= ratio) {
            return r.shots;
        }
    }
    return std::nullopt;
}

double exact_logical_error_rate(const DetectorErrorModel &model, std::span<const double> v, Decoder &decoder) {
    const size_t n = model.n_channels();
    if (n > 30) {
        throw std::invalid_argument("exact_logical_error_rate: too many channels to enumerate");
    }
    FootprintTable table(model);
    CompensatedSum sum;
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); mask++) {
        std::vector<uint32_t> support;
        for (size_t i = 0; i < n; i++) {
            if ((mask >> i) & 1) {
                support.push_back(static_cast<uint32_t>(i));
            }
        }
        ErrorBitstring e(n, std::move(support));
        if (is_logical_error(decoder, table, e)) {
            sum.add(minterm_eval(e, v));
        }
    }
    return sum.value();
}

}  // namespace qecbound
