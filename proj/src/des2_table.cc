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

#include <algorithm>
#include <cstdio>
#include <deque>
#include <fstream>
#include <sstream>

#include "revmix/errors.h"
#include "revmix/paths.h"

namespace revmix {

namespace {

constexpr const char *kHeader = "revmix-des2-table v1";

std::vector<Gate3> des2_generators() {
    std::vector<Gate3> out;
    for (const Gate3 &g : des2_pair_gates()) {
        if (!g.is_identity() && std::find(out.begin(), out.end(), g) == out.end()) {
            out.push_back(g);
        }
    }
    return out;
}

uint64_t fnv1a(const std::string &s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string perm_digits(const Perm8 &p) {
    std::string s;
    for (uint8_t v : p) {
        s += char('0' + v);
    }
    return s;
}

Perm8 parse_perm_digits(const std::string &s, int line) {
    if (s.size() != 8) {
        throw ParseError("expected 8 permutation digits", line);
    }
    Perm8 p{};
    for (int i = 0; i < 8; i++) {
        if (s[i] < '0' || s[i] > '7') {
            throw ParseError("bad permutation digit", line);
        }
        p[i] = uint8_t(s[i] - '0');
    }
    try {
        Gate3 check(p);
    } catch (const std::invalid_argument &) {
        throw ParseError("not a permutation", line);
    }
    return p;
}

}  // namespace

Des2WordTable Des2WordTable::build() {
    Des2WordTable t;
    t.generators_ = des2_generators();
    t.words_.assign(40320, {});
    t.reached_.assign(40320, 0);
    std::vector<uint32_t> parent(40320, 0);
    std::vector<int8_t> letter(40320, -1);
    const uint32_t root = Gate3().rank();
    t.reached_[root] = 1;
    std::deque<uint32_t> queue = {root};
    std::vector<uint32_t> order;
    while (!queue.empty()) {
        uint32_t r = queue.front();
        queue.pop_front();
        order.push_back(r);
        Gate3 e(perm_unrank(r));
        for (size_t j = 0; j < t.generators_.size(); j++) {
            uint32_t nr = e.then(t.generators_[j]).rank();
            if (!t.reached_[nr]) {
                t.reached_[nr] = 1;
                parent[nr] = r;
                letter[nr] = int8_t(j);
                queue.push_back(nr);
            }
        }
    }
    // BFS order guarantees parents are finished before children.
    for (uint32_t r : order) {
        if (r != root) {
            t.words_[r] = t.words_[parent[r]];
            t.words_[r].push_back(uint8_t(letter[r]));
        }
    }
    return t;
}

std::vector<int> Des2WordTable::word_indices(const Gate3 &g) const {
    if (!g.is_even()) {
        throw ParityError("DES[2] words are only served for even gates, got " + g.to_string());
    }
    uint32_t r = g.rank();
    if (!reached_[r]) {
        throw IncompleteMapError("gate " + g.to_string() + " is not in the word table");
    }
    return std::vector<int>(words_[r].begin(), words_[r].end());
}

std::vector<Gate3> Des2WordTable::word(const Gate3 &g) const {
    std::vector<Gate3> out;
    for (int j : word_indices(g)) {
        out.push_back(generators_[j]);
    }
    return out;
}

uint32_t Des2WordTable::reached() const {
    uint32_t c = 0;
    for (uint8_t v : reached_) {
        c += v;
    }
    return c;
}

uint32_t Des2WordTable::reached_even() const {
    uint32_t c = 0;
    for (uint32_t r = 0; r < 40320; r++) {
        c += reached_[r] && is_even_perm(perm_unrank(r));
    }
    return c;
}

int Des2WordTable::diameter() const {
    size_t d = 0;
    for (uint32_t r = 0; r < 40320; r++) {
        if (reached_[r]) {
            d = std::max(d, words_[r].size());
        }
    }
    return int(d);
}

std::string Des2WordTable::serialize() const {
    std::ostringstream out;
    out << kHeader << "\n";
    out << "generators " << generators_.size() << "\n";
    for (const auto &g : generators_) {
        out << perm_digits(g.perm()) << "\n";
    }
    out << "elements " << reached() << "\n";
    for (uint32_t r = 0; r < 40320; r++) {
        if (!reached_[r]) {
            continue;
        }
        out << perm_digits(perm_unrank(r)) << " " << words_[r].size();
        for (uint8_t j : words_[r]) {
            out << " " << int(j);
        }
        out << "\n";
    }
    std::string body = out.str();
    char sum[40];
    std::snprintf(sum, sizeof(sum), "checksum %016llx\n", (unsigned long long)fnv1a(body));
    return body + sum;
}

Des2WordTable Des2WordTable::parse(const std::string &text) {
    size_t cut = text.rfind("checksum ");
    if (cut == std::string::npos) {
        throw ParseError("missing checksum line");
    }
    std::string body = text.substr(0, cut);
    int checksum_line = 1 + int(std::count(body.begin(), body.end(), '\n'));
    unsigned long long expected = 0;
    if (std::sscanf(text.c_str() + cut, "checksum %llx", &expected) != 1 || expected != fnv1a(body)) {
        throw ParseError("checksum mismatch", checksum_line);
    }
    std::istringstream in(body);
    std::string line;
    int line_no = 0;
    auto next = [&]() {
        if (!std::getline(in, line)) {
            throw ParseError("unexpected end of table", line_no + 1);
        }
        return ++line_no;
    };
    next();
    if (line != kHeader) {
        throw ParseError("bad header", line_no);
    }
    Des2WordTable t;
    size_t count = 0;
    next();
    if (std::sscanf(line.c_str(), "generators %zu", &count) != 1) {
        throw ParseError("expected generator count", line_no);
    }
    for (size_t j = 0; j < count; j++) {
        next();
        t.generators_.emplace_back(parse_perm_digits(line, line_no));
    }
    if (t.generators_ != des2_generators()) {
        throw ParseError("generator list differs from the DES[2] gate set", line_no);
    }
    next();
    if (std::sscanf(line.c_str(), "elements %zu", &count) != 1) {
        throw ParseError("expected element count", line_no);
    }
    t.words_.assign(40320, {});
    t.reached_.assign(40320, 0);
    for (size_t e = 0; e < count; e++) {
        int at = next();
        std::istringstream ls(line);
        std::string digits;
        size_t len = 0;
        if (!(ls >> digits >> len)) {
            throw ParseError("expected 'perm length letters...'", at);
        }
        Perm8 p = parse_perm_digits(digits, at);
        std::vector<uint8_t> w;
        Gate3 acc;
        for (size_t i = 0; i < len; i++) {
            int j;
            if (!(ls >> j) || j < 0 || size_t(j) >= t.generators_.size()) {
                throw ParseError("bad generator index", at);
            }
            w.push_back(uint8_t(j));
            acc = acc.then(t.generators_[j]);
        }
        if (!(acc == Gate3(p))) {
            throw ParseError("word does not compose to its permutation", at);
        }
        uint32_t r = perm_rank(p);
        t.words_[r] = std::move(w);
        t.reached_[r] = 1;
    }
    return t;
}

void Des2WordTable::save(const std::string &path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw Error("cannot write " + path);
    }
    f << serialize();
}

Des2WordTable Des2WordTable::load(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw Error("cannot read " + path);
    }
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

const Des2WordTable &des2_table() {
    static const Des2WordTable table = Des2WordTable::build();
    return table;
}

Word des2_word(const Gate3 &g, const Placement &site) {
    Word w;
    for (const Gate3 &letter : des2_table().word(g)) {
        w.push_back(GeneratorEdge{letter, site});
    }
    return w;
}

}  // namespace revmix
