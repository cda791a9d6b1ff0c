// Copyright 2026 The revmix Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef REVMIX_BITS_H
#define REVMIX_BITS_H

#include <cstdint>
#include <string>
#include <string_view>

namespace revmix {

/// An n-bit string, 1 <= n <= 64. Wire a (1-based) is bit n-a of `word`, so
/// wire 1 is the most significant bit and `to_string` reads left to right.
class BitString {
   public:
    BitString(int n, uint64_t word);
    static BitString zeros(int n);
    /// Parses a string of '0'/'1' characters.
    static BitString from_string(std::string_view text);

    int size() const {
        return n_;
    }
    uint64_t word() const {
        return word_;
    }
    int bit(int a) const;
    void set_bit(int a, int value);
    std::string to_string() const;

    bool operator==(const BitString &other) const = default;

   private:
    int n_;
    uint64_t word_;
};

/// Mask with the low n bits set.
constexpr uint64_t low_mask(int n) {
    return n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
}

/// Bit position (from the least significant end) of wire a in an n-bit word.
constexpr int wire_shift(int n, int a) {
    return n - a;
}

}  // namespace revmix

#endif
