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

#ifndef QECBOUND_TABLEAU_H
#define QECBOUND_TABLEAU_H

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qecbound/bit_vector.h"

namespace qecbound {

/// Affine GF(2) expression: constant XOR the parity of a subset of free random bits.
struct SignExpr {
    bool constant = false;
    BitVector free_bits;

    bool deterministic() const {
        return free_bits.none();
    }
    SignExpr &operator^=(const SignExpr &other) {
        constant ^= other.constant;
        free_bits ^= other.free_bits;
        return *this;
    }
    bool operator==(const SignExpr &) const = default;
};

/// Stabilizer tableau (destabilizers + stabilizers) whose row signs are affine expressions over
/// the outcomes of earlier nondeterministic measurements. Each nondeterministic measurement
/// introduces one fresh free bit.
class SymbolicTableau {
   public:
    SymbolicTableau(size_t num_qubits, size_t max_random_bits);

    void h(size_t q);
    void s(size_t q);
    void sdg(size_t q);
    void x(size_t q);
    void y(size_t q);
    void z(size_t q);
    void cx(size_t control, size_t target);
    void cz(size_t a, size_t b);

    /// Z-basis measurement. Returns the outcome as an expression over free bits.
    SignExpr measure(size_t q);
    /// Measure then conditionally flip back to |0>.
    void reset(size_t q);

    size_t num_qubits() const {
        return n_;
    }
    size_t num_random_bits() const {
        return random_bits_used_;
    }

    /// Generators independent and commuting; destabilizer i anticommutes only with stabilizer i.
    bool check_invariants() const;

   private:
    struct Row {
        BitVector xs;
        BitVector zs;
        SignExpr sign;
    };

    void rowsum(Row &target, const Row &source) const;
    SignExpr blank_sign() const;

    size_t n_;
    size_t max_random_bits_;
    size_t random_bits_used_ = 0;
    std::vector<Row> rows_;  // [0, n): destabilizers, [n, 2n): stabilizers
};

}  // namespace qecbound

#endif
