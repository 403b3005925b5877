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

#ifndef QECBOUND_BIT_VECTOR_H
#define QECBOUND_BIT_VECTOR_H

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qecbound {

/// Fixed-length packed bit vector over GF(2).
///
/// Textual renderings put bit 0 leftmost, so "100" has only bit 0 set.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(size_t num_bits) : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {
    }

    static BitVector from_string(std::string_view text);

    size_t size() const {
        return num_bits_;
    }
    size_t num_words() const {
        return words_.size();
    }
    std::span<const uint64_t> words() const {
        return words_;
    }
    std::span<uint64_t> words() {
        return words_;
    }

    bool operator[](size_t k) const {
        return (words_[k >> 6] >> (k & 63)) & 1;
    }
    void set(size_t k, bool value = true) {
        uint64_t mask = uint64_t{1} << (k & 63);
        if (value) {
            words_[k >> 6] |= mask;
        } else {
            words_[k >> 6] &= ~mask;
        }
    }
    void flip(size_t k) {
        words_[k >> 6] ^= uint64_t{1} << (k & 63);
    }
    void clear();

    BitVector &operator^=(const BitVector &other);
    BitVector &operator&=(const BitVector &other);
    BitVector &operator|=(const BitVector &other);
    friend BitVector operator^(BitVector a, const BitVector &b) {
        a ^= b;
        return a;
    }

    bool operator==(const BitVector &other) const = default;

    size_t popcount() const;
    bool any() const;
    bool none() const {
        return !any();
    }

    /// Indices of set bits in ascending order.
    std::vector<uint32_t> ones() const;

    /// Calls `fn(k)` for each set bit k in ascending order.
    template <typename Fn>
    void for_each_one(Fn &&fn) const {
        for (size_t w = 0; w < words_.size(); w++) {
            uint64_t word = words_[w];
            while (word) {
                fn(w * 64 + static_cast<size_t>(std::countr_zero(word)));
                word &= word - 1;
            }
        }
    }

    std::string str() const;
    size_t hash() const;

   private:
    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

/// XOR-accumulates `src` into `dst`; `dst` must have at least as many words.
inline void xor_words(std::span<uint64_t> dst, std::span<const uint64_t> src) {
    for (size_t k = 0; k < src.size(); k++) {
        dst[k] ^= src[k];
    }
}

size_t hash_words(std::span<const uint64_t> words);

}  // namespace qecbound

template <>
struct std::hash<qecbound::BitVector> {
    size_t operator()(const qecbound::BitVector &v) const {
        return v.hash();
    }
};

#endif
