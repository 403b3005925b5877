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


// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit status on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <unistd.h>

#include "qecbound/compiler.h"
#include "qecbound/driver.h"
#include "qecbound/external_decoder.h"
#include "qecbound/sampling.h"
#include "qecbound/trace.h"
#include "support/compiler_oracle.h"
#include "support/instances.h"
#include "support/oracles.h"
#include "support/test_data.h"

namespace qecbound {
namespace {

constexpr double kRepetitionRate = 2.98e-4;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) {
                detail += "; ";
            }
            detail += what;
        }
    }
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

DetectorErrorModel repetition_model() {
    return parse_dem(test_data::kRepetitionDem);
}

DecoderFactory ml_factory(const DetectorErrorModel &m, std::span<const double> v) {
    std::shared_ptr<MlDecoder> ml = build_ml_decoder(m, v);
    return [ml](size_t) -> std::unique_ptr<Decoder> { return std::make_unique<MlDecoder>(*ml); };
}

DecoderFactory greedy_factory(const DetectorErrorModel &m, std::vector<double> v) {
    return [&m, v](size_t) -> std::unique_ptr<Decoder> { return build_greedy_decoder(m, v); };
}

RunConfig plan(Strategy s, size_t workers, std::optional<size_t> distance = std::nullopt) {
    RunConfig c;
    c.plan = {s, workers, distance};
    return c;
}

bool sound_sequence_ok(const BoundsTrace &t, double exact, double tol, std::string &why) {
    double lower = 0, upper = 1;
    for (const auto &r : t.records) {
        if (!r.sound) {
            continue;
        }
        if (r.lower > exact + tol || r.upper < exact - tol) {
            why = "shots " + std::to_string(r.shots) + " [" + fmt(r.lower) + ", " + fmt(r.upper) +
                  "] misses exact " + fmt(exact);
            return false;
        }
        if (r.lower < lower || r.upper > upper) {
            why = "non-monotone at shots " + std::to_string(r.shots);
            return false;
        }
        lower = r.lower;
        upper = r.upper;
    }
    return true;
}

// Distribution table: errors on data qubits 0, 2, 4; detectors s0 = e0 ^ e1, s1 = e1 ^ e2; observable e0.
Outcome criterion_1() {
    Outcome out;
    QecProgram p = parse_program(read_file(std::string(QECBOUND_TEST_DATA) + "/repetition_d3.qec"));
    DetectorErrorModel m = compile_to_dem(p);
    out.require(m.n_channels() == 3 && m.n_detectors == 2 && m.n_observables == 1, "model shape");
    if (!out.pass) {
        return out;
    }
    struct Row {
        const char *error, *syndrome, *observable;
        double probability;
    };
    const double a = 0.99, b = 0.01;
    const Row rows[] = {{"000", "00", "0", a * a * a}, {"100", "10", "1", b * a * a}, {"010", "11", "0", a * b * a},
                        {"001", "01", "0", a * a * b}, {"110", "01", "1", b * b * a}, {"101", "11", "1", b * a * b},
                        {"011", "10", "0", a * b * b}, {"111", "00", "1", b * b * b}};
    auto v = m.concrete_probabilities();
    double total = 0;
    for (const auto &row : rows) {
        auto e = ErrorBitstring::from_string(row.error);
        const std::string s = syndrome_of(m, e).str(), o = observable_of(m, e).str();
        const double pr = minterm_eval(e, v);
        total += pr;
        out.require(s == row.syndrome && o == row.observable, std::string(row.error) + " -> " + s + "," + o);
        out.require(std::abs(pr - row.probability) <= 2 * std::numeric_limits<double>::epsilon() * row.probability,
                    std::string(row.error) + " probability " + fmt(pr));
    }
    out.require(std::abs(total - 1) < 1e-15, "probabilities sum to " + fmt(total));
    if (out.pass) {
        out.detail = "8/8 rows match";
    }
    return out;
}

Outcome criterion_2() {
    Outcome out;
    DetectorErrorModel m = repetition_model();
    std::vector<double> v(3, 0.01);
    auto ml = build_ml_decoder(m, v);
    FootprintTable table(m);
    std::set<std::string> logical;
    for (const char *s : {"000", "100", "010", "001", "110", "101", "011", "111"}) {
        if (is_logical_error(*ml, table, ErrorBitstring::from_string(s))) {
            logical.insert(s);
        }
    }
    out.require(logical == std::set<std::string>{"111", "110", "011", "101"}, "ML logical-error set differs");
    BoundsTrace t = run_accuracy(m, v, ml_factory(m, v), RunConfig{});
    out.require(t.exhausted, "not exhausted");
    out.require(std::abs(t.lower - kRepetitionRate) <= 1e-12 && std::abs(t.upper - kRepetitionRate) <= 1e-12,
                "bounds [" + fmt(t.lower) + ", " + fmt(t.upper) + "]");
    if (out.pass) {
        out.detail = "L = {111, 110, 011, 101}, lower = upper = " + fmt(t.lower);
    }
    return out;
}

Literal pos(uint32_t i) {
    return {i, true};
}
Literal neg(uint32_t i) {
    return {i, false};
}

Outcome criterion_3() {
    Outcome out;
    const Hyperrectangle box2{{0.009, 0.009}, {0.011, 0.011}};
    const Hyperrectangle box3{{0.009, 0.009, 0.009}, {0.011, 0.011, 0.011}};
    auto check = [&](const char *name, std::span<const SignedTerm> d, const Hyperrectangle &box, double lo, double hi,
                     double tol, bool expect_pruned) {
        Interval b = bound_terms_individually(d, box);
        const bool pruned = b.lower > 0 || b.upper < 0;
        out.require(std::abs(b.lower - lo) <= tol && std::abs(b.upper - hi) <= tol,
                    std::string(name) + " [" + fmt(b.lower) + ", " + fmt(b.upper) + "]");
        out.require(pruned == expect_pruned, std::string(name) + " prune outcome");
    };
    // x0(1-x1) + (1-x0)x1
    std::vector<SignedTerm> xor2 = {{1, {pos(0), neg(1)}}, {1, {neg(0), pos(1)}}};
    check("xor", partial_derivative_simplified(xor2, 0), box2, 0.978, 0.982, 1e-15, true);
    std::vector<SignedTerm> mixed = {{1, {pos(0), neg(1), pos(2)}}, {1, {neg(0), pos(1), neg(2)}}};
    check("mixed sign", partial_derivative_simplified(mixed, 0), box3, -0.002, 0.002, 1e-15, false);
    std::vector<SignedTerm> matching = {
        {1, {pos(0), neg(1), pos(2)}}, {1, {neg(0), neg(1), pos(2)}}, {1, {pos(0), pos(1), pos(2)}}};
    // The printed values -1.9e-3 and 2.1e-3 are these rounded to two significant digits.
    check("matching unsimplified", partial_derivative(matching, 0), box3, -1.919e-3, 2.121e-3, 1e-15, false);
    check("matching simplified", partial_derivative_simplified(matching, 0), box3, 8.1e-5, 1.21e-4, 1e-18, true);
    if (out.pass) {
        out.detail = "[0.978, 0.982] pruned; [-0.002, 0.002] kept; [-1.919e-3, 2.121e-3] kept; [8.1e-5, 1.21e-4] pruned";
    }
    return out;
}

Outcome criterion_4() {
    Outcome out;
    std::mt19937_64 rng(404);
    for (int t = 0; t < 200; t++) {
        oracle::PolynomialInstance inst = oracle::random_instance(rng, 14, 64);
        for (bool maximizing : {true, false}) {
            auto check = oracle::check_optimizer(inst, maximizing);
            if (!check.ok) {
                out.require(false, "instance " + std::to_string(t) + ": " + check.detail);
            }
        }
    }
    if (out.pass) {
        out.detail = "200 instances x {max, min} equal brute force";
    }
    return out;
}

Outcome criterion_5() {
    Outcome out;
    DetectorErrorModel m = repetition_model();
    Hyperrectangle box{std::vector<double>(3, 0.009), std::vector<double>(3, 0.011)};
    BoundsTrace t = run_robustness(m, ml_factory(m, box.midpoint()), box, RunConfig{});
    const double worst =
        oracle::brute_force_vertices({0b111, 0b011, 0b110, 0b101}, box.lower, box.upper).max_value;
    out.require(std::abs(t.lower - worst) <= 1e-12 && std::abs(t.upper - worst) <= 1e-12,
                "box bounds [" + fmt(t.lower) + ", " + fmt(t.upper) + "] vs " + fmt(worst));
    out.require(std::abs(worst - 3.6034e-4) < 5e-9, "brute force value " + fmt(worst));
    std::vector<double> v(3, 0.01);
    BoundsTrace point = run_robustness(m, ml_factory(m, v), Hyperrectangle::point(v), RunConfig{});
    out.require(std::abs(point.lower - kRepetitionRate) <= 1e-12 && std::abs(point.upper - kRepetitionRate) <= 1e-12,
                "degenerate box [" + fmt(point.lower) + ", " + fmt(point.upper) + "]");
    if (out.pass) {
        out.detail = "worst case " + fmt(t.lower) + "; degenerate box " + fmt(point.lower);
    }
    return out;
}

// Criteria 6 and 8 share one suite: 50 models x 3 decoders, sampling enabled.
struct SuiteResult {
    Outcome sandwich;
    Outcome nesting;
};

SuiteResult sandwich_suite() {
    SuiteResult res;
    std::mt19937_64 rng(606);
    const Strategy strategies[] = {Strategy::Hamming, Strategy::Split, Strategy::LocalFlip, Strategy::LocalShift,
                                   Strategy::LocalBoth};
    size_t runs = 0, probabilistic = 0;
    for (int t = 0; t < 50; t++) {
        const size_t n = 2 + rng() % 13;
        DetectorErrorModel m = oracle::random_model(rng, n, 1 + rng() % 6, 1 + rng() % 2, 0.001, 0.25);
        auto v = m.concrete_probabilities();
        std::shared_ptr<MlDecoder> ml = build_ml_decoder(m, v);
        // Random lookup table over every reachable syndrome.
        std::unordered_map<BitVector, BitVector> random_table;
        for (uint64_t mask = 0; mask < (uint64_t{1} << n); mask++) {
            auto s = BitVector::from_string(oracle::bits_str(oracle::xor_footprints(m.det_footprint, m.n_detectors, mask)));
            if (!random_table.count(s)) {
                BitVector o(m.n_observables);
                for (size_t k = 0; k < m.n_observables; k++) {
                    o.set(k, rng() & 1);
                }
                random_table.emplace(s, o);
            }
        }
        std::vector<std::pair<std::string, DecoderFactory>> decoders = {
            {"ml", ml_factory(m, v)},
            {"greedy", greedy_factory(m, v)},
            {"random", [&m, random_table](size_t) -> std::unique_ptr<Decoder> {
                 return std::make_unique<TableDecoder>(m.n_detectors, m.n_observables, random_table);
             }}};
        for (auto &[name, factory] : decoders) {
            auto probe = factory(0);
            const double exact = exact_logical_error_rate(m, v, *probe);
            RunConfig c = plan(strategies[runs % 5], 1 + runs % 4, 3);
            c.samples = 200;
            c.seed = runs;
            BoundsTrace trace = run_accuracy(m, v, factory, c);
            runs++;
            const std::string tag = "model " + std::to_string(t) + " " + name + ": ";
            std::string why;
            res.sandwich.require(sound_sequence_ok(trace, exact, 1e-12, why), tag + why);
            res.sandwich.require(trace.exhausted && std::abs(trace.lower - exact) <= 1e-12, tag + "final bounds");
            const BoundRecord *sound = nullptr;
            for (const auto &r : trace.records) {
                if (r.sound) {
                    sound = &r;
                    continue;
                }
                probabilistic++;
                res.nesting.require(sound && sound->shots == r.shots && r.lower >= sound->lower &&
                                        r.upper <= sound->upper,
                                    tag + "probabilistic record at shots " + std::to_string(r.shots) + " escapes");
            }
        }
    }
    if (res.sandwich.pass) {
        res.sandwich.detail = std::to_string(runs) + " runs, every sound checkpoint brackets the exact rate";
    }
    res.nesting.detail = std::to_string(probabilistic) + " probabilistic records nested" +
                         (res.nesting.detail.empty() ? "" : "; " + res.nesting.detail);
    return res;
}

Outcome criterion_7() {
    Outcome out;
    const double alpha = 0.01, trials = 2000;
    const double threshold = 0.99 - 3 * std::sqrt(0.99 * 0.01 / trials);
    std::mt19937_64 rng(707);
    std::string summary;
    for (double theta : {0.001, 0.01, 0.1}) {
        for (size_t n : {1000u, 10000u}) {
            std::binomial_distribution<size_t> draw(n, theta);
            int covered = 0;
            for (int t = 0; t < trials; t++) {
                auto ci = kl_confidence_interval(static_cast<double>(draw(rng)) / static_cast<double>(n), n, alpha);
                covered += ci.lower <= theta && theta <= ci.upper;
            }
            const double coverage = covered / trials;
            out.require(coverage >= threshold, "theta " + fmt(theta) + " N " + std::to_string(n) + " coverage " +
                                                   fmt(coverage));
            summary += (summary.empty() ? "" : " ") + fmt(coverage);
        }
    }
    for (size_t n : {1u, 10u, 1000u, 10000u, 1000000u}) {
        auto zero = kl_confidence_interval(0, n, alpha);
        auto one = kl_confidence_interval(1, n, alpha);
        const double root = std::pow(alpha / 2, 1.0 / static_cast<double>(n));
        out.require(zero.lower == 0 && std::abs(zero.upper - (1 - root)) <= 1e-12, "theta_hat = 0 branch, N " +
                                                                                   std::to_string(n));
        out.require(one.upper == 1 && std::abs(one.lower - root) <= 1e-12, "theta_hat = 1 branch, N " +
                                                                            std::to_string(n));
    }
    if (out.pass) {
        out.detail = "coverage " + summary + " >= " + fmt(threshold) + "; closed forms match";
    }
    return out;
}

Outcome criterion_8(Outcome nesting) {
    DetectorErrorModel m = repetition_model();
    std::vector<double> v(3, 0.01);
    auto factory = ml_factory(m, v);
    int contained = 0;
    const int runs = 1000;
    for (int s = 0; s < runs; s++) {
        RunConfig c;
        c.samples = 200;
        c.seed = 8000 + s;
        BoundsTrace t = run_accuracy(m, v, factory, c);
        bool all = true;
        for (const auto &r : t.records) {
            if (!r.sound) {
                all = all && r.lower <= kRepetitionRate && kRepetitionRate <= r.upper;
            }
        }
        contained += all;
    }
    nesting.require(contained >= 990, "exact rate contained in " + std::to_string(contained) + "/1000 runs");
    if (nesting.pass) {
        nesting.detail += "; exact rate contained in " + std::to_string(contained) + "/1000 runs";
    }
    return nesting;
}

Outcome criterion_9() {
    Outcome out;
    std::mt19937_64 rng(909);
    int compiled = 0, verdicts = 0;
    while (compiled < 100) {
        QecProgram p = parse_program(oracle::random_program_text(rng, 4, 6));
        auto verdict = oracle::check_verdicts_dense(p, 1000, rng());
        verdicts++;
        out.require(verdict.agrees, "verdicts differ:\n" + to_text(p) + verdict.detail);
        if (!check_well_defined(p).well_defined) {
            continue;
        }
        auto result = oracle::check_compile_dense(p, rng());
        out.require(result.agrees, "compiled map differs:\n" + to_text(p) + result.detail);
        compiled++;
    }
    if (out.pass) {
        out.detail = "100 compiled programs match dense simulation; " + std::to_string(verdicts) +
                     " verdict checks agree";
    }
    return out;
}

Outcome criterion_10() {
    Outcome out;
    DetectorErrorModel m = repetition_model();
    std::vector<double> v(3, 0.01);
    const std::string path = "/tmp/qecbound_acceptance_" + std::to_string(::getpid()) + ".dem";
    std::ofstream(path) << write_dem(m);
    const std::string command = std::string(QECBOUND_DECODER_BIN) + " " + path;
    DecoderFactory external = [&](size_t) -> std::unique_ptr<Decoder> {
        return connect_external_decoder(command, m.n_detectors, m.n_observables);
    };
    RunConfig c;
    c.samples = 1000;
    c.seed = 10;
    BoundsTrace local = run_accuracy(m, v, ml_factory(m, v), c);
    BoundsTrace remote = run_accuracy(m, v, external, c);
    std::remove(path.c_str());
    out.require(canonical_records(local.records) == canonical_records(remote.records), "records differ");
    out.require(final_to_json(local) == final_to_json(remote), "final summaries differ");
    if (out.pass) {
        out.detail = std::to_string(local.records.size()) + " records identical";
    }
    return out;
}

Outcome criterion_11() {
    Outcome out;
    const std::string text = read_file(std::string(QECBOUND_TEST_DATA) + "/repetition_d3_r8.qec");
    DetectorErrorModel base = compile_to_dem(parse_program(text));
    const double ratio = std::sqrt(10.0);
    const uint64_t enum_cap = 2'000'000, sample_cap = 10'000'000;
    std::vector<double> enum_shots, sample_shots;
    std::string summary = std::to_string(base.n_channels()) + " channels;";
    for (double scale : {1e-2, 1e-3, 1e-4}) {
        std::vector<double> v(base.n_channels(), scale);
        RunConfig c;
        c.max_shots = enum_cap;
        c.checkpoint_growth = 1.02;
        BoundsTrace enumerated = run_accuracy(base, v, greedy_factory(base, v), c);
        auto greedy = build_greedy_decoder(base, v);
        BoundsTrace sampled = run_direct_sampling(base, v, *greedy, sample_cap, 0.01, 11);
        auto e = convergence_shots(enumerated, ratio, RecordKind::Sound);
        auto s = convergence_shots(sampled, ratio, RecordKind::Probabilistic);
        const double inf = std::numeric_limits<double>::infinity();
        enum_shots.push_back(e ? static_cast<double>(*e) : inf);
        sample_shots.push_back(s ? static_cast<double>(*s) : inf);
        summary += " v=" + fmt(scale) + ": enum " + (e ? std::to_string(*e) : "inf") + ", direct " +
                   (s ? std::to_string(*s) : "inf");
    }
    // Below about 1e-3 the enumeration count levels off: the ratio is then set by how much of the
    // lowest logical weight layer has been visited, which does not depend on v. Require no step
    // up and a strict drop end to end. A run that never converges counts as infinite.
    for (size_t k = 1; k < enum_shots.size(); k++) {
        out.require(enum_shots[k] <= enum_shots[k - 1], "enumeration increases");
        out.require(sample_shots[k] > sample_shots[k - 1], "direct sampling does not increase");
    }
    out.require(enum_shots.back() < enum_shots.front(), "enumeration does not decrease end to end");
    out.detail = summary + (out.detail.empty() ? "" : "; " + out.detail);
    return out;
}

}  // namespace
}  // namespace qecbound

// Optional arguments select criteria by number; all run by default.
int main(int argc, char **argv) {
    using namespace qecbound;
    std::set<int> selected;
    for (int i = 1; i < argc; i++) {
        selected.insert(std::atoi(argv[i]));
    }
    using clock = std::chrono::steady_clock;
    int failed = 0;
    int ran = 0;
    auto report = [&](int id, const char *title, double limit_s, const std::function<Outcome()> &fn) {
        if (!selected.empty() && !selected.count(id)) {
            return;
        }
        ran++;
        const auto start = clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double elapsed = std::chrono::duration<double>(clock::now() - start).count();
        if (limit_s > 0 && elapsed > limit_s) {
            o.pass = false;
            o.detail += "; exceeded " + fmt(limit_s) + " s";
        }
        failed += !o.pass;
        std::printf("[%s] C%d %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", id, title, elapsed, o.detail.c_str());
        std::fflush(stdout);
    };
    report(1, "repetition-code distribution", 1, criterion_1);
    report(2, "ML logical-error set and exhaustion", 1, criterion_2);
    report(3, "derivative-pruning worked examples", 0, criterion_3);
    report(4, "optimizer exactness vs brute force", 300, criterion_4);
    report(5, "robustness oracle", 0, criterion_5);
    std::optional<SuiteResult> suite;
    report(6, "sandwich and monotone refinement", 600, [&] {
        suite = sandwich_suite();
        return suite->sandwich;
    });
    report(7, "confidence-interval coverage", 0, criterion_7);
    report(8, "hybrid nesting", 0, [&] {
        if (!suite) {
            suite = sandwich_suite();
        }
        return criterion_8(suite->nesting);
    });
    report(9, "compiler oracle", 600, criterion_9);
    report(10, "black-box decoder parity", 0, criterion_10);
    report(11, "scaling trend vs direct sampling", 600, criterion_11);
    std::printf("%d/%d criteria passed\n", ran - failed, ran);
    return failed == 0 ? 0 : 1;
}
