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


#include <gtest/gtest.h>

#include <random>

#include "qecbound/compiler.h"
#include "qecbound/tableau.h"
#include "support/compiler_oracle.h"
#include "support/test_data.h"

namespace qecbound {
namespace {

TEST(Tableau, ZeroStateMeasuresZero) {
    SymbolicTableau t(2, 4);
    SignExpr m = t.measure(0);
    EXPECT_TRUE(m.deterministic());
    EXPECT_FALSE(m.constant);
}

TEST(Tableau, PauliXFlipsOutcome) {
    SymbolicTableau t(1, 4);
    t.x(0);
    SignExpr m = t.measure(0);
    EXPECT_TRUE(m.deterministic());
    EXPECT_TRUE(m.constant);
}

TEST(Tableau, HadamardGivesFreshRandomBit) {
    SymbolicTableau t(1, 4);
    t.h(0);
    SignExpr first = t.measure(0);
    EXPECT_FALSE(first.deterministic());
    // Measuring again repeats the same free bit.
    SignExpr second = t.measure(0);
    EXPECT_EQ(first, second);
    EXPECT_EQ(t.num_random_bits(), 1u);
}

TEST(Tableau, BellPairParityIsDeterministic) {
    SymbolicTableau t(2, 4);
    t.h(0);
    t.cx(0, 1);
    SignExpr a = t.measure(0);
    SignExpr b = t.measure(1);
    EXPECT_FALSE(a.deterministic());
    SignExpr parity = a;
    parity ^= b;
    EXPECT_TRUE(parity.deterministic());
    EXPECT_FALSE(parity.constant);
}

TEST(Tableau, ResetReturnsToZero) {
    SymbolicTableau t(1, 4);
    t.h(0);
    t.reset(0);
    SignExpr m = t.measure(0);
    EXPECT_TRUE(m.deterministic());
    EXPECT_FALSE(m.constant);
}

TEST(Tableau, SPhaseSequence) {
    // H S S H = H Z H = X.
    SymbolicTableau t(1, 4);
    t.h(0);
    t.s(0);
    t.s(0);
    t.h(0);
    SignExpr m = t.measure(0);
    EXPECT_TRUE(m.deterministic());
    EXPECT_TRUE(m.constant);
    // H S SDG H = I.
    SymbolicTableau u(1, 4);
    u.h(0);
    u.s(0);
    u.sdg(0);
    u.h(0);
    EXPECT_FALSE(u.measure(0).constant);
}

TEST(Tableau, InvariantsHoldUnderRandomCircuits) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; trial++) {
        const size_t n = 1 + rng() % 5;
        SymbolicTableau t(n, 64);
        for (int step = 0; step < 40; step++) {
            size_t a = rng() % n, b = rng() % n;
            switch (rng() % 9) {
                case 0: t.h(a); break;
                case 1: t.s(a); break;
                case 2: t.sdg(a); break;
                case 3: t.x(a); break;
                case 4: t.z(a); break;
                case 5: if (a != b) t.cx(a, b); break;
                case 6: if (a != b) t.cz(a, b); break;
                case 7: t.measure(a); break;
                default: t.reset(a); break;
            }
            ASSERT_TRUE(t.check_invariants()) << "trial " << trial << " step " << step;
        }
    }
}

TEST(WellDefined, RepetitionProgram) {
    WellDefinednessReport r = check_well_defined(parse_program(test_data::kRepetitionProgram));
    EXPECT_TRUE(r.well_defined);
    ASSERT_EQ(r.declarations.size(), 3u);
    for (const auto &d : r.declarations) {
        EXPECT_TRUE(d.deterministic);
        EXPECT_FALSE(d.value);
    }
}

TEST(WellDefined, SuperpositionMeasurement) {
    WellDefinednessReport r = check_well_defined(parse_program("H 0\nM m0 <- 0\nDETECTOR m0\n"));
    EXPECT_FALSE(r.well_defined);
    EXPECT_EQ(r.offending(), std::vector<size_t>{0});
}

TEST(WellDefined, BellParity) {
    QecProgram p = parse_program("H 0\nCX 0 1\nM m0 <- 0\nM m1 <- 1\nDETECTOR m0 m1\n");
    WellDefinednessReport r = check_well_defined(p);
    EXPECT_TRUE(r.well_defined);
    EXPECT_FALSE(r.declarations[0].value);
    auto dense = oracle::check_verdicts_dense(p, 200, 1);
    EXPECT_TRUE(dense.agrees) << dense.detail;
}

TEST(WellDefined, ConstantOneDeclaration) {
    WellDefinednessReport r = check_well_defined(parse_program("X 0\nM a <- 0\nDETECTOR a\n"));
    EXPECT_TRUE(r.well_defined);
    EXPECT_TRUE(r.declarations[0].value);
}

TEST(Decompose, RepetitionChannels) {
    auto channels = decompose_channels(parse_program(test_data::kRepetitionProgram));
    ASSERT_EQ(channels.size(), 3u);
    const uint32_t qubits[] = {0, 2, 4};
    for (size_t k = 0; k < 3; k++) {
        EXPECT_EQ(channels[k].probability, Probability::concrete(0.01));
        EXPECT_EQ(channels[k].pauli.components, (std::map<uint32_t, PauliKind>{{qubits[k], PauliKind::X}}));
        EXPECT_EQ(channels[k].index, k);
    }
}

TEST(Decompose, Depolarize1) {
    auto channels = decompose_channels(parse_program("DEPOLARIZE1(0.003) 0\n"));
    ASSERT_EQ(channels.size(), 3u);
    const PauliKind order[] = {PauliKind::X, PauliKind::Y, PauliKind::Z};
    for (size_t k = 0; k < 3; k++) {
        EXPECT_DOUBLE_EQ(channels[k].probability.value, 0.001);
        EXPECT_EQ(channels[k].pauli.components.at(0), order[k]);
    }
}

TEST(Decompose, Depolarize2) {
    auto channels = decompose_channels(parse_program("DEPOLARIZE2(0.15) 0 1\n"));
    ASSERT_EQ(channels.size(), 15u);
    std::vector<std::string> names;
    for (const auto &c : channels) {
        EXPECT_DOUBLE_EQ(c.probability.value, 0.01);
        names.push_back(c.pauli.str());
    }
    // I < X < Y < Z on the first qubit, then the second.
    EXPECT_EQ(names.front(), "X1");
    EXPECT_EQ(names[3], "X0");
    EXPECT_EQ(names.back(), "Z0 Z1");
}

TEST(Decompose, SymbolicScaleFactors) {
    auto channels = decompose_channels(parse_symbolic_program("DEPOLARIZE1(x4) 0\nXERR(x5) 1\nDEPOLARIZE2(x6) 0 1\n"));
    ASSERT_EQ(channels.size(), 19u);
    EXPECT_EQ(channels[0].probability, Probability::symbolic(4, 3));
    EXPECT_EQ(channels[3].probability, Probability::symbolic(5, 1));
    EXPECT_EQ(channels[4].probability, Probability::symbolic(6, 15));
}

TEST(Compile, RepetitionFootprints) {
    DetectorErrorModel m = compile_to_dem(parse_program(test_data::kRepetitionProgram));
    EXPECT_EQ(m.n_detectors, 2u);
    EXPECT_EQ(m.n_observables, 1u);
    using V = std::vector<uint32_t>;
    EXPECT_EQ(m.det_footprint, (std::vector<V>{{0}, {0, 1}, {1}}));
    EXPECT_EQ(m.obs_footprint, (std::vector<V>{{0}, {}, {}}));
}

TEST(Compile, UnreachedErrorHasEmptyFootprint) {
    DetectorErrorModel m = compile_to_dem(parse_program("XERR(0.01) 1\nM a <- 0\nOBSERVABLE a\n"));
    ASSERT_EQ(m.n_channels(), 1u);
    EXPECT_TRUE(m.det_footprint[0].empty());
    EXPECT_TRUE(m.obs_footprint[0].empty());
}

TEST(Compile, ZeroProbabilityDropped) {
    DetectorErrorModel m = compile_to_dem(parse_program("XERR(0) 0\nXERR(0.1) 0\nM a <- 0\nDETECTOR a\n"));
    EXPECT_EQ(m.n_channels(), 1u);
}

TEST(Compile, CertainErrorRejected) {
    EXPECT_THROW(compile_to_dem(parse_program("XERR(1) 0\nM a <- 0\nDETECTOR a\n")), CompileError);
}

TEST(Compile, NotWellDefinedRejected) {
    EXPECT_THROW(compile_to_dem(parse_program("H 0\nXERR(0.1) 0\nM a <- 0\nDETECTOR a\n")), CompileError);
}

TEST(Compile, ResetClearsFrame) {
    DetectorErrorModel m = compile_to_dem(parse_program("XERR(0.1) 0\nR 0\nM a <- 0\nDETECTOR a\n"));
    EXPECT_TRUE(m.det_footprint[0].empty());
}

TEST(Compile, ZErrorVisibleAfterHadamardBasisChange) {
    DetectorErrorModel m = compile_to_dem(parse_program("H 0\nZERR(0.1) 0\nH 0\nM a <- 0\nDETECTOR a\n"));
    EXPECT_EQ(m.det_footprint[0], std::vector<uint32_t>{0});
}

TEST(Compile, SymbolicModel) {
    DetectorErrorModel m = compile_to_dem(parse_symbolic_program(test_data::kSymbolicRepetitionProgram));
    EXPECT_TRUE(m.is_symbolic());
    EXPECT_EQ(m.probabilities[1], Probability::symbolic(2));
}

TEST(Compile, LinearityOfFootprints) {
    DetectorErrorModel m = compile_to_dem(parse_program("DEPOLARIZE2(0.1) 0 1\nCX 0 1\nM a <- 0\nM b <- 1\n"
                                                        "DETECTOR b\nOBSERVABLE a\n"));
    std::mt19937_64 rng(2);
    const size_t n = m.n_channels();
    for (int t = 0; t < 200; t++) {
        BitVector x(n), y(n);
        for (size_t i = 0; i < n; i++) {
            x.set(i, rng() & 1);
            y.set(i, rng() & 1);
        }
        auto ex = ErrorBitstring::from_bits(x), ey = ErrorBitstring::from_bits(y);
        auto exy = ErrorBitstring::from_bits(x ^ y);
        EXPECT_EQ(syndrome_of(m, exy), syndrome_of(m, ex) ^ syndrome_of(m, ey));
        EXPECT_EQ(observable_of(m, exy), observable_of(m, ex) ^ observable_of(m, ey));
    }
}

TEST(Compile, MatchesDenseSimulationOnRandomPrograms) {
    std::mt19937_64 rng(17);
    int checked = 0;
    while (checked < 30) {
        QecProgram p = parse_program(oracle::random_program_text(rng, 4, 6));
        if (!check_well_defined(p).well_defined) {
            continue;
        }
        auto result = oracle::check_compile_dense(p, rng());
        EXPECT_TRUE(result.agrees) << to_text(p) << result.detail;
        checked++;
    }
}

TEST(WellDefined, VerdictsMatchDenseRandomization) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; trial++) {
        QecProgram p = parse_program(oracle::random_program_text(rng, 4, 6));
        auto result = oracle::check_verdicts_dense(p, 200, rng());
        EXPECT_TRUE(result.agrees) << to_text(p) << result.detail;
    }
}

}  // namespace
}  // namespace qecbound
