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

#include "qmaps/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "qmaps/errors.hpp"

namespace qmaps::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    throw ParseError(std::string("field '") + key + "' must be an integer");
  }
  const auto n = v.get<long long>();
  if (n <= 0) throw ParseError(std::string("field '") + key + "' must be positive");
  return static_cast<std::size_t>(n);
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

Json matrices_to_json(const std::vector<ComplexMatrix>& ms) {
  Json arr = Json::array();
  for (const auto& m : ms) arr.push_back(matrix_to_json(m));
  return arr;
}

std::vector<ComplexMatrix> matrices_from_json(const Json& j, const char* key) {
  const Json& arr = field(j, key);
  if (!arr.is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
  std::vector<ComplexMatrix> out;
  for (const auto& m : arr) out.push_back(matrix_from_json(m));
  return out;
}

template <typename F>
auto translate_json_errors(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (const auto& z : m.data()) data.push_back(Json::array({z.real(), z.imag()}));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  return translate_json_errors([&] {
    const std::size_t rows = size_field(j, "rows");
    const std::size_t cols = size_field(j, "cols");
    const Json& data = field(j, "data");
    if (!data.is_array() || data.size() != rows * cols) {
      throw ParseError("matrix data must be an array of " + std::to_string(rows * cols) +
                       " [re, im] pairs");
    }
    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (const auto& z : data) {
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        throw ParseError("matrix entries must be [re, im] number pairs");
      }
      const double re = z[0].get<double>();
      const double im = z[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) {
        throw ValidationError("matrix entries must be finite");
      }
      entries.emplace_back(re, im);
    }
    return ComplexMatrix(rows, cols, std::move(entries));
  });
}

Json map_to_json(const QuantumMap& map) {
  Json payload;
  switch (map.representation()) {
    case Representation::tomographic: {
      const auto& t = map.as<TomographicRep>();
      payload = Json{{"inputs", matrices_to_json(t.inputs)},
                     {"duals", matrices_to_json(t.duals)},
                     {"outputs", matrices_to_json(t.outputs)}};
      break;
    }
    case Representation::kraus: {
      const auto& o = map.as<OperatorSumRep>();
      if (o.is_kraus()) {
        payload = Json{{"operators", matrices_to_json(o.left)}};
      } else {
        payload = Json{{"left", matrices_to_json(o.left)}, {"right", matrices_to_json(o.right)}};
      }
      break;
    }
    case Representation::aform:
      payload = matrix_to_json(map.as<AForm>().matrix);
      break;
    case Representation::bform:
      payload = matrix_to_json(map.as<BForm>().matrix);
      break;
  }
  return Json{{"d_in", map.d_in()},
              {"d_out", map.d_out()},
              {"repr", to_string(map.representation())},
              {"payload", std::move(payload)}};
}

QuantumMap map_from_json(const Json& j) {
  return translate_json_errors([&]() -> QuantumMap {
    const std::size_t d_in = size_field(j, "d_in");
    const std::size_t d_out = size_field(j, "d_out");
    const std::string repr = string_field(j, "repr");
    const Json& payload = field(j, "payload");
    if (repr == "tomographic") {
      auto inputs = matrices_from_json(payload, "inputs");
      auto outputs = matrices_from_json(payload, "outputs");
      std::vector<ComplexMatrix> duals = payload.contains("duals")
                                             ? matrices_from_json(payload, "duals")
                                             : dual_basis(inputs);
      QuantumMap map(d_in, d_out,
                     TomographicRep{std::move(inputs), std::move(duals), std::move(outputs)});
      const auto& t = map.as<TomographicRep>();
      for (std::size_t a = 0; a < t.inputs.size(); ++a)
        for (std::size_t b = 0; b < t.inputs.size(); ++b) {
          const Complex expected = a == b ? 1.0 : 0.0;
          if (std::abs(hs_inner(t.duals[a], t.inputs[b]) - expected) > 1e-10) {
            throw ValidationError("tomographic payload: duals are not dual to the inputs");
          }
        }
      return map;
    }
    if (repr == "kraus") {
      if (payload.contains("operators")) {
        return QuantumMap(d_in, d_out, OperatorSumRep::kraus(matrices_from_json(payload, "operators")));
      }
      return QuantumMap(d_in, d_out,
                        OperatorSumRep{matrices_from_json(payload, "left"),
                                       matrices_from_json(payload, "right")});
    }
    if (repr == "aform") return QuantumMap(d_in, d_out, AForm{matrix_from_json(payload)});
    if (repr == "bform") return QuantumMap(d_in, d_out, BForm{matrix_from_json(payload)});
    throw ParseError("unknown representation '" + repr + "'");
  });
}

Json dilation_to_json(const Dilation& dilation) {
  return Json{{"d_s", dilation.d_s},
              {"d_e", dilation.d_e},
              {"initial_se", matrix_to_json(dilation.initial_se)},
              {"unitaries", matrices_to_json(dilation.unitaries)}};
}

Dilation dilation_from_json(const Json& j) {
  return translate_json_errors([&] {
    Dilation d;
    d.d_s = size_field(j, "d_s");
    d.d_e = size_field(j, "d_e");
    d.initial_se = matrix_from_json(field(j, "initial_se"));
    d.unitaries = matrices_from_json(j, "unitaries");
    d.validate();
    return d;
  });
}

Json operation_to_json(const ControlOperation& op) {
  return Json{{"d", op.d},
              {"bform", matrix_to_json(op.bform)},
              {"trace_class", to_string(op.trace_class)}};
}

ControlOperation operation_from_json(const Json& j) {
  return translate_json_errors([&] {
    ControlOperation op;
    op.d = size_field(j, "d");
    op.bform = matrix_from_json(field(j, "bform"));
    op.trace_class = trace_class_from_string(string_field(j, "trace_class"));
    op.validate();
    return op;
  });
}

Json process_tensor_to_json(const ProcessTensor& pt) {
  return Json{{"k", pt.steps()},
              {"d_s", pt.d_s()},
              {"leg_order", ProcessTensor::leg_order(pt.steps())},
              {"choi", matrix_to_json(pt.choi())}};
}

ProcessTensor process_tensor_from_json(const Json& j) {
  return translate_json_errors([&] {
    const std::size_t k = size_field(j, "k");
    const std::size_t d_s = size_field(j, "d_s");
    const std::string order = string_field(j, "leg_order");
    if (order != ProcessTensor::leg_order(k) &&
        order != "out_k,in_{k-1},out_{k-1},...,in_0,out_0") {
      throw ParseError("leg_order '" + order + "' does not match the expected '" +
                       ProcessTensor::leg_order(k) + "'");
    }
    return ProcessTensor(k, d_s, matrix_from_json(field(j, "choi")));
  });
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::exception& e) {
    throw ParseError("cannot parse '" + path.string() + "': " + e.what());
  }
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write '" + tmp.string() + "'");
    out << text;
    out.flush();
    if (!out) throw ParseError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw ParseError("cannot move output into place at '" + path.string() + "'");
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qmaps::io
