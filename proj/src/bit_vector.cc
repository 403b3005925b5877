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

#include "qecbound/bit_vector.h"

#include <stdexcept>

namespace qecbound {

BitVector BitVector::from_string(std::string_view text) {
    BitVector result(text.size());
    for (size_t k = 0; k < text.size(); k++) {
        if (text[k] == '1') {
            result.set(k);
        } else if (text[k] != '0') {
            throw std::invalid_argument("bit string may only contain '0' and '1': " + std::string(text));
        }
    }
    return result;
}

void BitVector::clear() {
    for (auto &w : words_) {
        w = 0;
    }
}

BitVector &BitVector::operator^=(const BitVector &other) {
    if (other.num_bits_ != num_bits_) {
        throw std::invalid_argument("BitVector length mismatch");
    }
    xor_words(words_, other.words_);
    return *this;
}

BitVector &BitVector::operator&=(const BitVector &other) {
    if (other.num_bits_ != num_bits_) {
        throw std::invalid_argument("BitVector length mismatch");
    }
    for (size_t k = 0; k < words_.size(); k++) {
        words_[k] &= other.words_[k];
    }
    return *this;
}

BitVector &BitVector::operator|=(const BitVector &other) {
    if (other.num_bits_ != num_bits_) {
        throw std::invalid_argument("BitVector length mismatch");
    }
    for (size_t k = 0; k < words_.size(); k++) {
        words_[k] |= other.words_[k];
    }
    return *this;
}

size_t BitVector::popcount() const {
    size_t total = 0;
    for (auto w : words_) {
        total += static_cast<size_t>(std::popcount(w));
    }
    return total;
}

bool BitVector::any() const {
    for (auto w : words_) {
        if (w) {
            return true;
        }
    }
    return false;
}

std::vector<uint32_t> BitVector::ones() const {
    std::vector<uint32_t> result;
    for_each_one([&](size_t k) { result.push_back(static_cast<uint32_t>(k)); });
    return result;
}

std::string BitVector::str() const {
    std::string result(num_bits_, '0');
    for_each_one([&](size_t k) { result[k] = '1'; });
    return result;
}

size_t hash_words(std::span<const uint64_t> words) {
    // splitmix-style mixing per word.
    uint64_t h = 0x9E3779B97F4A7C15ULL ^ words.size();
    for (uint64_t w : words) {
        uint64_t z = w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        h ^= z ^ (z >> 31);
    }
    return static_cast<size_t>(h);
}

size_t BitVector::hash() const {
    return hash_words(words_) ^ num_bits_;
}

}  // namespace qecbound
