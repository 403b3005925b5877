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

#include "qecbound/tableau.h"

#include <cassert>
#include <stdexcept>

namespace qecbound {

SymbolicTableau::SymbolicTableau(size_t num_qubits, size_t max_random_bits)
    : n_(num_qubits), max_random_bits_(max_random_bits) {
    rows_.reserve(2 * n_);
    for (size_t i = 0; i < 2 * n_; i++) {
        Row row{BitVector(n_), BitVector(n_), blank_sign()};
        if (i < n_) {
            row.xs.set(i);
        } else {
            row.zs.set(i - n_);
        }
        rows_.push_back(std::move(row));
    }
}

SignExpr SymbolicTableau::blank_sign() const {
    return SignExpr{false, BitVector(max_random_bits_)};
}

void SymbolicTableau::h(size_t q) {
    for (auto &row : rows_) {
        bool x = row.xs[q];
        bool z = row.zs[q];
        row.sign.constant ^= x && z;
        row.xs.set(q, z);
        row.zs.set(q, x);
    }
}

void SymbolicTableau::s(size_t q) {
    for (auto &row : rows_) {
        bool x = row.xs[q];
        bool z = row.zs[q];
        row.sign.constant ^= x && z;
        row.zs.set(q, z ^ x);
    }
}

void SymbolicTableau::sdg(size_t q) {
    s(q);
    z(q);
}

void SymbolicTableau::x(size_t q) {
    for (auto &row : rows_) {
        row.sign.constant ^= row.zs[q];
    }
}

void SymbolicTableau::y(size_t q) {
    for (auto &row : rows_) {
        row.sign.constant ^= row.xs[q] ^ row.zs[q];
    }
}

void SymbolicTableau::z(size_t q) {
    for (auto &row : rows_) {
        row.sign.constant ^= row.xs[q];
    }
}

void SymbolicTableau::cx(size_t c, size_t t) {
    for (auto &row : rows_) {
        bool xc = row.xs[c], zc = row.zs[c], xt = row.xs[t], zt = row.zs[t];
        row.sign.constant ^= xc && zt && (xt == zc);
        row.xs.set(t, xt ^ xc);
        row.zs.set(c, zc ^ zt);
    }
#ifndef NDEBUG
    assert(check_invariants());
#endif
}

void SymbolicTableau::cz(size_t a, size_t b) {
    h(b);
    cx(a, b);
    h(b);
}

// Phase exponent (mod 4) contributed by multiplying Pauli (x1,z1) onto (x2,z2).
static int pauli_product_phase(bool x1, bool z1, bool x2, bool z2) {
    if (!x1 && !z1) {
        return 0;
    }
    if (x1 && z1) {
        return static_cast<int>(z2) - static_cast<int>(x2);
    }
    if (x1) {
        return static_cast<int>(z2) * (2 * static_cast<int>(x2) - 1);
    }
    return static_cast<int>(x2) * (1 - 2 * static_cast<int>(z2));
}

void SymbolicTableau::rowsum(Row &target, const Row &source) const {
    int phase = 0;
    for (size_t j = 0; j < n_; j++) {
        phase += pauli_product_phase(source.xs[j], source.zs[j], target.xs[j], target.zs[j]);
    }
    phase = ((phase % 4) + 4) % 4;
    assert(phase == 0 || phase == 2);
    target.sign ^= source.sign;
    target.sign.constant ^= phase == 2;
    target.xs ^= source.xs;
    target.zs ^= source.zs;
}

SignExpr SymbolicTableau::measure(size_t q) {
    size_t pivot = 2 * n_;
    for (size_t i = n_; i < 2 * n_; i++) {
        if (rows_[i].xs[q]) {
            pivot = i;
            break;
        }
    }

    if (pivot == 2 * n_) {
        Row scratch{BitVector(n_), BitVector(n_), blank_sign()};
        for (size_t i = 0; i < n_; i++) {
            if (rows_[i].xs[q]) {
                rowsum(scratch, rows_[i + n_]);
            }
        }
        return scratch.sign;
    }

    for (size_t i = 0; i < 2 * n_; i++) {
        if (i != pivot && rows_[i].xs[q]) {
            rowsum(rows_[i], rows_[pivot]);
        }
    }
    if (random_bits_used_ >= max_random_bits_) {
        throw std::logic_error("SymbolicTableau: random bit capacity exhausted");
    }
    rows_[pivot - n_] = rows_[pivot];
    Row &stab = rows_[pivot];
    stab.xs.clear();
    stab.zs.clear();
    stab.zs.set(q);
    stab.sign = blank_sign();
    stab.sign.free_bits.set(random_bits_used_++);
#ifndef NDEBUG
    assert(check_invariants());
#endif
    return stab.sign;
}

void SymbolicTableau::reset(size_t q) {
    SignExpr outcome = measure(q);
    for (auto &row : rows_) {
        if (row.zs[q]) {
            row.sign ^= outcome;
        }
    }
}

bool SymbolicTableau::check_invariants() const {
    auto anticommute = [&](const Row &a, const Row &b) {
        bool parity = false;
        for (size_t j = 0; j < n_; j++) {
            parity ^= (a.xs[j] && b.zs[j]) ^ (a.zs[j] && b.xs[j]);
        }
        return parity;
    };
    for (size_t i = 0; i < 2 * n_; i++) {
        for (size_t k = i + 1; k < 2 * n_; k++) {
            bool expected = k == i + n_;
            if (anticommute(rows_[i], rows_[k]) != expected) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace qecbound
