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

#include "revmix/circuit_codec.h"

#include <algorithm>

#include "json.hpp"
#include "revmix/errors.h"

namespace revmix {

using nlohmann::ordered_json;

namespace {

ordered_json gate_json(const PlacedGate &pg) {
    ordered_json g;
    g["site"] = {pg.site.site[0], pg.site.site[1], pg.site.site[2]};
    ordered_json perm = ordered_json::array();
    for (uint8_t v : pg.gate.perm()) {
        perm.push_back(int(v));
    }
    g["perm"] = perm;
    return g;
}

ordered_json gates_json(const std::vector<PlacedGate> &gates) {
    ordered_json arr = ordered_json::array();
    for (const auto &pg : gates) {
        arr.push_back(gate_json(pg));
    }
    return arr;
}

const ordered_json &field(const ordered_json &obj, const char *key, const std::string &path) {
    if (!obj.is_object()) {
        throw ParseError("expected an object", 0, path.empty() ? "document" : path);
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError("missing field", 0, path.empty() ? key : path + "." + key);
    }
    return *it;
}

int as_int(const ordered_json &v, const std::string &path) {
    if (!v.is_number_integer()) {
        throw ParseError("expected an integer", 0, path);
    }
    return v.get<int>();
}

PlacedGate parse_gate(const ordered_json &g, const std::string &path) {
    const auto &site = field(g, "site", path);
    if (!site.is_array() || site.size() != 3) {
        throw ParseError("expected 3 wire indices", 0, path + ".site");
    }
    Placement s{{as_int(site[0], path + ".site[0]"), as_int(site[1], path + ".site[1]"),
                 as_int(site[2], path + ".site[2]")}};
    const auto &perm = field(g, "perm", path);
    if (!perm.is_array() || perm.size() != 8) {
        throw ParseError("expected 8 image values", 0, path + ".perm");
    }
    Perm8 p{};
    for (int v = 0; v < 8; v++) {
        int x = as_int(perm[v], path + ".perm[" + std::to_string(v) + "]");
        if (x < 0 || x > 7) {
            throw ParseError("image value out of range 0..7", 0, path + ".perm[" + std::to_string(v) + "]");
        }
        p[v] = uint8_t(x);
    }
    Gate3 gate;
    try {
        gate = Gate3(p);
    } catch (const std::invalid_argument &) {
        throw ParseError("perm is not a bijection", 0, path + ".perm");
    }
    if (!is_circuit_gate(gate)) {
        throw ParseError("perm is an odd permutation and not a DES[2] gate", 0, path + ".perm");
    }
    return PlacedGate{gate, s};
}

std::vector<PlacedGate> parse_gates(const ordered_json &arr, const std::string &path) {
    if (!arr.is_array()) {
        throw ParseError("expected an array", 0, path);
    }
    std::vector<PlacedGate> out;
    for (size_t i = 0; i < arr.size(); i++) {
        out.push_back(parse_gate(arr[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

}  // namespace

std::string encode_circuit(const Circuit &c) {
    ordered_json doc;
    doc["n"] = c.n();
    doc["arch"] = to_string(c.arch());
    doc["gates"] = gates_json(c.gates());
    if (c.arch() == Architecture::brickwork) {
        ordered_json layers = ordered_json::array();
        for (const auto &layer : c.layers()) {
            ordered_json l;
            l["parity"] = layer.parity;
            l["gates"] = gates_json(layer.gates);
            layers.push_back(l);
        }
        doc["layers"] = layers;
    }
    return doc.dump();
}

Circuit decode_circuit(std::string_view text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error &e) {
        size_t offset = std::min<size_t>(e.byte, text.size());
        int line = 1 + int(std::count(text.begin(), text.begin() + offset, '\n'));
        throw ParseError(e.what(), line);
    }
    int n = as_int(field(doc, "n", ""), "n");
    const auto &arch_field = field(doc, "arch", "");
    if (!arch_field.is_string()) {
        throw ParseError("expected a string", 0, "arch");
    }
    Architecture arch = parse_architecture(arch_field.get<std::string>());
    auto gates = parse_gates(field(doc, "gates", ""), "gates");

    auto wrap = [](const std::string &path, auto &&fn) {
        try {
            fn();
        } catch (const ParseError &) {
            throw;
        } catch (const Error &e) {
            throw ParseError(e.what(), 0, path);
        }
    };

    Circuit c = [&] {
        try {
            return Circuit(n, arch);
        } catch (const Error &e) {
            throw ParseError(e.what(), 0, "n");
        }
    }();
    if (arch == Architecture::brickwork) {
        const auto &layers = field(doc, "layers", "");
        if (!layers.is_array()) {
            throw ParseError("expected an array", 0, "layers");
        }
        for (size_t i = 0; i < layers.size(); i++) {
            std::string path = "layers[" + std::to_string(i) + "]";
            BrickLayer layer;
            layer.parity = as_int(field(layers[i], "parity", path), path + ".parity");
            layer.gates = parse_gates(field(layers[i], "gates", path), path + ".gates");
            wrap(path, [&] { c.add_layer(layer); });
        }
        if (c.gates() != gates) {
            throw ParseError("does not equal the concatenation of the layers", 0, "gates");
        }
    } else {
        if (doc.contains("layers")) {
            throw ParseError("only brickwork circuits carry layers", 0, "layers");
        }
        for (size_t i = 0; i < gates.size(); i++) {
            wrap("gates[" + std::to_string(i) + "].site", [&] { c.add_gate(gates[i].gate, gates[i].site); });
        }
    }
    return c;
}

}  // namespace revmix
