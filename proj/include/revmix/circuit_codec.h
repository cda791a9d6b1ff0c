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

#ifndef REVMIX_CIRCUIT_CODEC_H
#define REVMIX_CIRCUIT_CODEC_H

#include <string>
#include <string_view>

#include "revmix/circuit.h"

namespace revmix {

/// Canonical single-line JSON:
///   {"n":4,"arch":"generic","gates":[{"site":[1,2,3],"perm":[0,1,...]}]}
/// Brickwork circuits also carry "layers":[{"parity":0,"gates":[...]}].
std::string encode_circuit(const Circuit &c);

/// Inverse of encode_circuit. Accepts any whitespace. Throws ParseError with the
/// line for syntax errors and the field path (e.g. "gates[2].perm") otherwise.
Circuit decode_circuit(std::string_view text);

}  // namespace revmix

#endif
