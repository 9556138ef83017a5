#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mvapx/mvtsp.hpp"
#include "mvapx/rounding.hpp"

namespace mvapx::io {

using Json = nlohmann::ordered_json;

/// {"kind":"mvtsp","n":..,"costs":[[..]],"requests":[..]}, costs as "p/q".
Json to_json(const mvtsp::Instance& inst);
mvtsp::Instance mvtsp_from_json(const Json& j);

/// {"kind":"bdgpe","ground":[..],"p":{mask:value},"b":{mask:value},
///  "costs":[..],"hyperedges":[{"members":[..],"m":[..],"f":..,"g":..}],
///  "regime":..}. Members are element indices; names are accepted on read.
Json to_json(const rounding::BdgpeInstance& inst);
rounding::BdgpeInstance bdgpe_from_json(const Json& j);

/// Lowercase hex SHA-256 of the compact serialization.
std::string sha256_hex(const std::string& bytes);
std::string digest(const mvtsp::Instance& inst);
std::string digest(const rounding::BdgpeInstance& inst);

struct TourSolution {
  std::string instance_digest;
  mvtsp::EdgeMultiplicity edges;
};

/// {"kind":"tour","instance_digest":..,"edges":{"u-v":k,..}}, edges in
/// lexicographic order.
Json to_json(const TourSolution& sol);
TourSolution tour_from_json(const Json& j);

struct ElementSolution {
  std::string instance_digest;
  IntVector z;
};

/// {"kind":"element","instance_digest":..,"z":[..]}.
Json to_json(const ElementSolution& sol);
ElementSolution element_from_json(const Json& j);

/// Throws Error(kInvalidInput) on unreadable files or malformed JSON.
Json read_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace mvapx::io
