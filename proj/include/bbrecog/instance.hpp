// Copyright 2026 The bbrecog Authors
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

#ifndef BBRECOG_INSTANCE_HPP_
#define BBRECOG_INSTANCE_HPP_

// Instance files for simulated black boxes.
//
// An instance is fully determined by (q, flavor, seed, exponent mode). The
// file publishes what a black-box user may see: handle widths, the global
// exponents of the group and of the bundle's field, and the identity handle.
// The field order and the flavor sit in a separate "whitebox" section, with
// q masked by a seed-derived key so it does not appear in clear.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include "bbrecog/adjoint_oracle.hpp"
#include "bbrecog/errors.hpp"
#include "bbrecog/exponent.hpp"
#include "bbrecog/handles.hpp"
#include "bbrecog/keyed_permutation.hpp"
#include "bbrecog/simulated_group.hpp"
#include "json.hpp"

namespace bbrecog {

inline constexpr const char* kInstanceSchema = "bbrecog.instance/1";

struct InstanceConfig {
  std::uint64_t q = 7;
  Flavor flavor = Flavor::kSl2;
  std::uint64_t seed = 1;
  ExponentMode mode = ExponentMode::kExact;
};

inline const char* ExponentModeName(ExponentMode m) {
  return m == ExponentMode::kExact ? "exact" : "multiple";
}

inline ExponentMode ParseExponentMode(std::string_view name) {
  if (name == "exact") return ExponentMode::kExact;
  if (name == "multiple") return ExponentMode::kMultiple;
  throw Error(ErrorCode::kConfig,
              "unknown exponent mode: " + std::string(name));
}

namespace instance_detail {

inline std::uint64_t SealMask(std::uint64_t seed) {
  return SplitMix64(seed ^ 0x5ea1ed0f0e11ULL);
}

inline std::string Hex64(std::uint64_t v) {
  std::string out;
  handle_detail::AppendHex(out, v);
  return out;
}

inline Exponent FieldExponent(const SimulatedGroup& g) {
  if (g.flavor() == Flavor::kPgl2) {
    return PglAdjointBundle::Build(g).field().exponent();
  }
  return AdjointBundle::Build(g).field().exponent();
}

}  // namespace instance_detail

// Builds the simulated group (which validates q) and its public summary.
inline nlohmann::ordered_json InstanceToJson(const InstanceConfig& c) {
  SimulatedGroup g(c.q, c.flavor, c.seed, c.mode);
  nlohmann::ordered_json j;
  j["schema"] = kInstanceSchema;
  j["seed"] = c.seed;
  j["exponent_mode"] = ExponentModeName(c.mode);
  j["field"] = {{"handle_width", FieldHandle::kWidth},
                {"exponent", ToDecimal(instance_detail::FieldExponent(g))}};
  j["group"] = {{"handle_width", GroupHandle::kWidth},
                {"exponent", ToDecimal(g.exponent())},
                {"identity", g.identity().ToHex()}};
  j["whitebox"] = {
      {"q_sealed",
       instance_detail::Hex64(c.q ^ instance_detail::SealMask(c.seed))},
      {"flavor", FlavorName(c.flavor)}};
  return j;
}

// Parses and re-derives an instance; the published values must match the
// rebuilt simulation exactly.
inline InstanceConfig InstanceFromJson(const nlohmann::ordered_json& j) {
  InstanceConfig c;
  try {
    if (j.at("schema").get<std::string>() != kInstanceSchema) {
      throw Error(ErrorCode::kMalformedInput, "unsupported instance schema");
    }
    c.seed = j.at("seed").get<std::uint64_t>();
    c.mode = ParseExponentMode(j.at("exponent_mode").get<std::string>());
    const auto& wb = j.at("whitebox");
    c.q = handle_detail::ParseHex64(wb.at("q_sealed").get<std::string>()) ^
          instance_detail::SealMask(c.seed);
    c.flavor = ParseFlavor(wb.at("flavor").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedInput,
                std::string("instance file: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kMalformedInput) throw;
    throw Error(ErrorCode::kMalformedInput,
                std::string("instance file: ") + e.what());
  }
  nlohmann::ordered_json regenerated;
  try {
    regenerated = InstanceToJson(c);
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformedInput,
                std::string("instance file: ") + e.what());
  }
  if (regenerated != j) {
    throw Error(ErrorCode::kMalformedInput,
                "instance file does not match its regenerated instance");
  }
  return c;
}

inline std::string DumpJson(const nlohmann::ordered_json& j) {
  return j.dump(2) + "\n";
}

inline void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open for writing: " + path);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path);
}

inline std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline InstanceConfig ReadInstanceFile(const std::string& path) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(ReadTextFile(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kMalformedInput,
                std::string("instance file: ") + e.what());
  }
  return InstanceFromJson(j);
}

}  // namespace bbrecog

#endif  // BBRECOG_INSTANCE_HPP_
