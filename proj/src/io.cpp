#include "mvapx/io.hpp"

#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "mvapx/errors.hpp"

namespace mvapx::io {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::kInvalidInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

void expect_kind(const Json& j, const char* kind) {
  const Json& k = field(j, "kind");
  if (!k.is_string() || k.get<std::string>() != kind) {
    malformed(std::string("expected kind '") + kind + "', got " + k.dump());
  }
}

std::int64_t as_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) malformed(what + " must be an integer");
  return j.get<std::int64_t>();
}

std::string as_string(const Json& j, const std::string& what) {
  if (!j.is_string()) malformed(what + " must be a string");
  return j.get<std::string>();
}

const Json& as_array(const Json& j, const std::string& what) {
  if (!j.is_array()) malformed(what + " must be an array");
  return j;
}

}  // namespace

Json to_json(const mvtsp::Instance& inst) {
  Json costs = Json::array();
  for (std::size_t u = 0; u < inst.n; ++u) {
    Json row = Json::array();
    for (std::size_t v = 0; v < inst.n; ++v) row.push_back(to_string(inst.cost(u, v)));
    costs.push_back(std::move(row));
  }
  Json j;
  j["kind"] = "mvtsp";
  j["n"] = inst.n;
  j["costs"] = std::move(costs);
  j["requests"] = inst.requests;
  return j;
}

mvtsp::Instance mvtsp_from_json(const Json& j) {
  expect_kind(j, "mvtsp");
  const std::int64_t n = as_int(field(j, "n"), "n");
  if (n < 1) malformed("n must be positive");
  mvtsp::Instance inst;
  inst.n = static_cast<std::size_t>(n);
  const Json& rows = as_array(field(j, "costs"), "costs");
  if (rows.size() != inst.n) malformed("costs must have n rows");
  for (const Json& row : rows) {
    if (!row.is_array() || row.size() != inst.n) malformed("costs must be n x n");
    for (const Json& c : row) inst.costs.push_back(parse_rational(as_string(c, "cost")));
  }
  for (const Json& r : as_array(field(j, "requests"), "requests")) inst.requests.push_back(as_int(r, "request"));
  mvtsp::validate_shape(inst);
  for (std::size_t u = 0; u < inst.n; ++u) {
    for (std::size_t v = 0; v < u; ++v) {
      if (inst.cost(u, v) != inst.cost(v, u)) malformed("costs must be symmetric");
    }
  }
  return inst;
}

Json to_json(const rounding::BdgpeInstance& inst) {
  const gpoly::GroundSet& ground = inst.pair.ground();
  gpoly::require_enumerable(inst.pair);
  Json p = Json::object();
  Json b = Json::object();
  for (gpoly::Subset x = 0; x <= ground.full(); ++x) {
    const gpoly::Border border = inst.pair.query(x);
    p[std::to_string(x)] = border.lower.to_string();
    b[std::to_string(x)] = border.upper.to_string();
  }
  Json costs = Json::array();
  for (const Rational& c : inst.costs) costs.push_back(to_string(c));
  Json hyperedges = Json::array();
  for (const rounding::Hyperedge& h : inst.hyperedges) {
    Json e;
    e["members"] = h.members;
    e["m"] = h.m;
    e["f"] = h.f ? Json(*h.f) : Json(nullptr);
    e["g"] = h.g ? Json(*h.g) : Json(nullptr);
    hyperedges.push_back(std::move(e));
  }
  Json j;
  j["kind"] = "bdgpe";
  j["ground"] = ground.names;
  j["p"] = std::move(p);
  j["b"] = std::move(b);
  j["costs"] = std::move(costs);
  j["hyperedges"] = std::move(hyperedges);
  j["regime"] = std::string(rounding::to_string(inst.regime));
  return j;
}

rounding::BdgpeInstance bdgpe_from_json(const Json& j) {
  expect_kind(j, "bdgpe");
  gpoly::GroundSet ground;
  for (const Json& name : as_array(field(j, "ground"), "ground")) ground.names.push_back(as_string(name, "element name"));
  if (ground.size() > gpoly::kEnumerationCap) {
    throw Error(ErrorKind::kGroundSetTooLarge, "ground set of " + std::to_string(ground.size()) +
                                                   " elements exceeds the cap " +
                                                   std::to_string(gpoly::kEnumerationCap));
  }
  const std::size_t tables = std::size_t{1} << ground.size();
  auto read_table = [&](const char* key) {
    const Json& t = field(j, key);
    if (!t.is_object() || t.size() != tables) malformed(std::string(key) + " needs one entry per subset");
    std::vector<ExtInt> out(tables);
    for (std::size_t x = 0; x < tables; ++x) {
      const std::string mask = std::to_string(x);
      if (!t.contains(mask)) malformed(std::string(key) + " lacks subset " + mask);
      out[x] = ExtInt::parse(as_string(t.at(mask), std::string(key) + "[" + mask + "]"));
    }
    return out;
  };
  std::vector<ExtInt> p = read_table("p");
  std::vector<ExtInt> b = read_table("b");

  rounding::BdgpeInstance inst{gpoly::make_explicit(ground, std::move(p), std::move(b)), {}, {},
                               rounding::parse_regime(as_string(field(j, "regime"), "regime"))};
  for (const Json& c : as_array(field(j, "costs"), "costs")) inst.costs.push_back(parse_rational(as_string(c, "cost")));
  for (const Json& e : as_array(field(j, "hyperedges"), "hyperedges")) {
    rounding::Hyperedge h;
    for (const Json& s : as_array(field(e, "members"), "members")) {
      if (s.is_string()) {
        h.members.push_back(ground.index_of(s.get<std::string>()));
      } else {
        const std::int64_t i = as_int(s, "member");
        if (i < 0) malformed("negative member index");
        h.members.push_back(static_cast<std::size_t>(i));
      }
    }
    for (const Json& m : as_array(field(e, "m"), "m")) h.m.push_back(as_int(m, "multiplicity"));
    if (!field(e, "f").is_null()) h.f = as_int(e.at("f"), "f");
    if (!field(e, "g").is_null()) h.g = as_int(e.at("g"), "g");
    inst.hyperedges.push_back(std::move(h));
  }
  rounding::validate(inst);
  return inst;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::kInternal, "SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

std::string digest(const mvtsp::Instance& inst) { return sha256_hex(to_json(inst).dump()); }
std::string digest(const rounding::BdgpeInstance& inst) { return sha256_hex(to_json(inst).dump()); }

Json to_json(const TourSolution& sol) {
  Json edges = Json::object();
  for (const auto& [e, k] : sol.edges.entries()) edges[edge_name(e)] = k;
  Json j;
  j["kind"] = "tour";
  j["instance_digest"] = sol.instance_digest;
  j["edges"] = std::move(edges);
  return j;
}

TourSolution tour_from_json(const Json& j) {
  expect_kind(j, "tour");
  TourSolution sol;
  sol.instance_digest = as_string(field(j, "instance_digest"), "instance_digest");
  const Json& edges = field(j, "edges");
  if (!edges.is_object()) malformed("edges must be an object");
  for (const auto& [name, k] : edges.items()) {
    const std::int64_t count = as_int(k, "multiplicity of " + name);
    if (count < 0) malformed("negative multiplicity for " + name);
    sol.edges.add(parse_edge_name(name), count);
  }
  return sol;
}

Json to_json(const ElementSolution& sol) {
  Json j;
  j["kind"] = "element";
  j["instance_digest"] = sol.instance_digest;
  j["z"] = sol.z;
  return j;
}

ElementSolution element_from_json(const Json& j) {
  expect_kind(j, "element");
  ElementSolution sol;
  sol.instance_digest = as_string(field(j, "instance_digest"), "instance_digest");
  for (const Json& x : as_array(field(j, "z"), "z")) sol.z.push_back(as_int(x, "z entry"));
  return sol;
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const nlohmann::json::exception& e) {
    malformed(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) malformed("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) malformed("failed writing " + path.string());
}

}  // namespace mvapx::io
