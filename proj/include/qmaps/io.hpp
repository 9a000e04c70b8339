// Copyright 2026 The qmaps Authors
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

// JSON envelopes for matrices, maps, dilations, operations and process tensors.
//
// A matrix is {"rows": n, "cols": m, "data": [[re, im], ...]} in row-major
// order. Malformed input raises ParseError; well-formed input that violates a
// type invariant raises ValidationError or DimensionError.

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qmaps/channels.hpp"
#include "qmaps/linalg.hpp"
#include "qmaps/maps.hpp"
#include "qmaps/process_tensor.hpp"
#include "qmaps/superchannel.hpp"

namespace qmaps::io {

using Json = nlohmann::json;

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json map_to_json(const QuantumMap& map);
QuantumMap map_from_json(const Json& j);

Json dilation_to_json(const Dilation& dilation);
Dilation dilation_from_json(const Json& j);

Json operation_to_json(const ControlOperation& op);
ControlOperation operation_from_json(const Json& j);

Json process_tensor_to_json(const ProcessTensor& pt);
ProcessTensor process_tensor_from_json(const Json& j);

/// Throws ParseError when the file cannot be read or parsed.
Json read_json_file(const std::filesystem::path& path);
/// Writes to a temporary sibling and renames it into place.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);
/// Two-space indented JSON with a trailing newline.
std::string dump(const Json& j);

}  // namespace qmaps::io
