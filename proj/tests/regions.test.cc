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

#include <gtest/gtest.h>

#include "revmix/errors.h"
#include "revmix/regions.h"
#include "revmix/walk_operator.h"

namespace revmix {
namespace {

const RegionLabel kEq0{RegionScheme::hamming, RegionPart::eq0};
const RegionLabel kEq1{RegionScheme::hamming, RegionPart::eq1};
const RegionLabel kGe2{RegionScheme::hamming, RegionPart::ge2};

TEST(Regions, HammingParts) {
    EXPECT_EQ(classify_region(TupleState::from_strings({"0110", "0110", "1111"}), RegionScheme::hamming), kEq0);
    EXPECT_EQ(classify_region(TupleState::from_strings({"0110", "0111", "1100"}), RegionScheme::hamming), kEq1);
    EXPECT_EQ(classify_region(TupleState::from_strings({"0110", "1010"}), RegionScheme::hamming), kGe2);
}

TEST(Regions, SuffixParts) {
    // m = 6, ell = 2: window is wires 3..5.
    RegionLabel coll{RegionScheme::suffix, RegionPart::coll};
    RegionLabel safe{RegionScheme::suffix, RegionPart::safe};
    RegionLabel eq0{RegionScheme::suffix, RegionPart::eq0};
    EXPECT_EQ(classify_region(TupleState::from_strings({"001010", "111011"}), RegionScheme::suffix, 2), coll);
    EXPECT_EQ(classify_region(TupleState::from_strings({"001010", "001110"}), RegionScheme::suffix, 2), safe);
    EXPECT_EQ(classify_region(TupleState::from_strings({"001010", "001010"}), RegionScheme::suffix, 2), eq0);
    EXPECT_THROW(check_suffix_window(6, 5), PlacementError);
    EXPECT_THROW(check_suffix_window(6, 0), PlacementError);
    EXPECT_NO_THROW(check_suffix_window(6, 4));
}

TEST(Regions, PartsPartitionTheStateSpace) {
    const TupleShape shape{4, 2};
    for (uint64_t i = 0; i < shape.dim(); i++) {
        TupleState x = TupleState::from_index(shape, i);
        int d = min_pairwise_distance(x);
        RegionPart p = classify_region(x, RegionScheme::hamming).part;
        EXPECT_EQ(p, d == 0 ? RegionPart::eq0 : d == 1 ? RegionPart::eq1 : RegionPart::ge2);
    }
}

TEST(Regions, TildeClass) {
    EXPECT_EQ(tilde_class(TupleState::from_strings({"0000", "0100"})), (std::vector<int>{2}));
    // Pairs differing only at wire 3 and only at wire 1.
    EXPECT_EQ(tilde_class(TupleState::from_strings({"0000", "0010", "1000"})), (std::vector<int>{1, 3}));
    EXPECT_TRUE(tilde_class(TupleState::from_strings({"0000", "0011"})).empty());
}

TEST(Escape, ZeroLawFromBothSides) {
    auto spec = OperatorSpec::r_subset(4, 2, 3);
    EXPECT_EQ(region_escape_probability(spec, TupleState::from_strings({"0000", "0001"}), kEq0), 0.0);
    TupleState same = TupleState::from_strings({"1010", "1010"});
    EXPECT_EQ(region_escape_probability(spec, same, kEq1), 0.0);
    EXPECT_EQ(region_escape_probability(spec, same, kGe2), 0.0);
}

// Hand-derived values at (m, k) = (6, 2).
TEST(Escape, StayInSingleClassUnderSubsetOfFive) {
    // With prob 1/6 the unchosen wire is a and nothing changes; otherwise the
    // second image must be the first with bit a flipped: 1/31.
    auto spec = OperatorSpec::r_subset(6, 2, 5);
    TupleState x = TupleState::from_strings({"010011", "011011"});
    double stay = 0.0;
    const TupleShape shape{6, 2};
    for (uint64_t y = 0; y < shape.dim(); y++) {
        TupleState ys = TupleState::from_index(shape, y);
        if (tilde_class(ys) == std::vector<int>{3}) {
            stay += transition_probability(spec, x, ys);
        }
    }
    EXPECT_NEAR(stay, 1.0 / 6.0 + (5.0 / 6.0) * (1.0 / 31.0), 1e-14);
    EXPECT_LE(stay, 1.0 / 6.0 + 6.0 * 4.0 / 32.0);
}

TEST(Escape, FullWalkFromFarToNear) {
    // The image pair is uniform over ordered distinct pairs: 6 of 63 partners are at distance 1.
    auto spec = OperatorSpec::r_full(6, 2);
    TupleState far = TupleState::from_strings({"000000", "110000"});
    EXPECT_NEAR(region_escape_probability(spec, far, kEq1), 6.0 / 63.0, 1e-14);
}

TEST(Escape, FullWalkBetweenTildeClasses) {
    auto spec = OperatorSpec::r_full(6, 2);
    TupleState x = TupleState::from_strings({"000000", "100000"});
    const TupleShape shape{6, 2};
    double to_b = 0.0;
    for (uint64_t y = 0; y < shape.dim(); y++) {
        TupleState ys = TupleState::from_index(shape, y);
        if (tilde_class(ys) == std::vector<int>{4}) {
            to_b += transition_probability(spec, x, ys);
        }
    }
    EXPECT_NEAR(to_b, 1.0 / 63.0, 1e-14);
}

TEST(Escape, BoundChecksPassAtSixTwo) {
    auto checks = region_bound_checks(6, 2, 3);
    EXPECT_GE(checks.size(), 10u);
    for (const auto &c : checks) {
        if (!c.asserted) {
            continue;
        }
        EXPECT_TRUE(c.pass) << c.name << " observed " << c.observed << " bound " << c.bound;
        if (c.exact_zero) {
            EXPECT_EQ(c.observed, 0.0) << c.name;
        }
    }
}

TEST(Escape, PrintedFullStepBoundIsReportedNotAsserted) {
    // From distance >= 2, one full step reaches distance 1 with probability 6/63 at
    // (6, 2), above k^2/2^m = 1/16 and equal to the union bound m/(2^m - 1).
    for (const auto &c : region_bound_checks(6, 2, 3)) {
        if (c.name == "B>=2 to B=1 under R[m], printed step bound") {
            EXPECT_FALSE(c.asserted);
            EXPECT_FALSE(c.pass);
            EXPECT_NEAR(c.observed, 6.0 / 63.0, 1e-14);
        }
        if (c.name == "B>=2 to B=1 under R[m], union bound") {
            EXPECT_TRUE(c.asserted);
            EXPECT_TRUE(c.pass);
        }
    }
}

}  // namespace
}  // namespace revmix
