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

#include "revmix/circuit_codec.h"
#include "revmix/errors.h"

namespace revmix {
namespace {

TEST(Codec, RoundTripsSampledCircuits) {
    Rng rng(21);
    for (Architecture arch : {Architecture::generic, Architecture::nearest_neighbor, Architecture::brickwork}) {
        for (GateDist dist : {GateDist::alternating, GateDist::des2}) {
            Circuit c = sample_circuit(arch, dist, 7, 9, rng);
            std::string doc = encode_circuit(c);
            Circuit back = decode_circuit(doc);
            EXPECT_EQ(back, c);
            EXPECT_EQ(encode_circuit(back), doc);
        }
    }
}

TEST(Codec, CanonicalDocumentIsByteStable) {
    const std::string doc = R"({"n":4,"arch":"generic","gates":[{"site":[1,2,4],"perm":[0,1,2,3,4,5,7,6]}]})";
    EXPECT_EQ(encode_circuit(decode_circuit(doc)), doc);
}

TEST(Codec, AcceptsWhitespace) {
    const std::string doc = "{\n  \"n\": 3,\n  \"arch\": \"nn\",\n  \"gates\": []\n}\n";
    Circuit c = decode_circuit(doc);
    EXPECT_EQ(c.n(), 3);
    EXPECT_EQ(encode_circuit(c), R"({"n":3,"arch":"nn","gates":[]})");
}

TEST(Codec, RejectsNonBijection) {
    const std::string doc = R"({"n":4,"arch":"generic","gates":[{"site":[1,2,3],"perm":[0,0,2,3,4,5,6,7]}]})";
    try {
        decode_circuit(doc);
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.field, "gates[0].perm");
    }
}

TEST(Codec, RejectsOddNonDes2Gate) {
    // Swapping local values 0 and 3 changes two bits at once: odd and not of DES[2] form.
    const std::string doc = R"({"n":4,"arch":"generic","gates":[{"site":[1,2,3],"perm":[3,1,2,0,4,5,6,7]}]})";
    try {
        decode_circuit(doc);
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.field, "gates[0].perm");
    }
}

TEST(Codec, SyntaxErrorsReportLine) {
    const std::string doc = "{\n\"n\": 4,\n\"arch\": \"generic\",\n\"gates\": [ oops ]\n}";
    try {
        decode_circuit(doc);
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line, 4);
    }
}

TEST(Codec, RejectsStructuralMistakes) {
    EXPECT_THROW(decode_circuit(R"({"n":4,"arch":"diagonal","gates":[]})"), ParseError);
    EXPECT_THROW(decode_circuit(R"({"n":4,"arch":"nn","gates":[{"site":[1,2,4],"perm":[0,1,2,3,4,5,6,7]}]})"),
                 ParseError);
    EXPECT_THROW(decode_circuit(R"({"n":4,"arch":"generic","gates":[],"layers":[]})"), ParseError);
    EXPECT_THROW(decode_circuit(R"({"n":4,"arch":"generic"})"), ParseError);
    // Brickwork "gates" must equal the concatenated layers.
    EXPECT_THROW(decode_circuit(R"({"n":3,"arch":"brickwork","gates":[{"site":[1,2,3],"perm":[0,1,2,3,4,5,6,7]}],)"
                                R"("layers":[{"parity":1,"gates":[]}]})"),
                 ParseError);
}

}  // namespace
}  // namespace revmix
