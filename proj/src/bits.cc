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

#include "revmix/bits.h"

#include "revmix/errors.h"

namespace revmix {

BitString::BitString(int n, uint64_t word) : n_(n), word_(word) {
    if (n < 1 || n > 64) {
        throw DimensionError("bit string width must be in [1, 64], got " + std::to_string(n));
    }
    if ((word & ~low_mask(n)) != 0) {
        throw DimensionError("bit string value has bits above width " + std::to_string(n));
    }
}

BitString BitString::zeros(int n) {
    return BitString(n, 0);
}

BitString BitString::from_string(std::string_view text) {
    if (text.empty() || text.size() > 64) {
        throw ParseError("bit string must have 1..64 characters");
    }
    uint64_t w = 0;
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw ParseError(std::string("bad bit character '") + c + "'");
        }
        w = (w << 1) | uint64_t(c == '1');
    }
    return BitString((int)text.size(), w);
}

int BitString::bit(int a) const {
    if (a < 1 || a > n_) {
        throw PlacementError("wire " + std::to_string(a) + " out of range [1, " + std::to_string(n_) + "]");
    }
    return int((word_ >> wire_shift(n_, a)) & 1);
}

void BitString::set_bit(int a, int value) {
    if (a < 1 || a > n_) {
        throw PlacementError("wire " + std::to_string(a) + " out of range [1, " + std::to_string(n_) + "]");
    }
    uint64_t m = uint64_t{1} << wire_shift(n_, a);
    word_ = value ? (word_ | m) : (word_ & ~m);
}

std::string BitString::to_string() const {
    std::string out(n_, '0');
    for (int a = 1; a <= n_; a++) {
        out[a - 1] = char('0' + bit(a));
    }
    return out;
}

}  // namespace revmix
