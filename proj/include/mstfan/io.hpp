#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "mstfan/cone.hpp"
#include "mstfan/triangulate.hpp"

namespace mstfan {

inline constexpr const char* kVersion = "mstfan 0.1.0";

struct Generator {
  std::string name;  // ngon, cube, prism or crosspoly
  int n = 0;

  bool operator==(const Generator&) const = default;
};

// Accepts "ngon 5", "ngon:5" and "ngon5".
Generator parse_generator(std::string_view text);
std::string to_string(const Generator& g);

// ngon n: (i, i^2); cube n: {0,1}^n labelled by coordinate strings; prism n:
// ngon n x {0,1} labelled "i_b"; crosspoly n: +-e_i labelled "+i" / "-i".
// Throws ScaleGuardError past 64 points.
PointConfiguration generate(const Generator& g);
PointConfiguration generate(std::string_view text);

struct Instance {
  PointConfiguration config;
  std::optional<HeightFunction> heights;
  std::optional<Generator> generator;
};

// {dim, points, labels, heights: {label: "p/q"}, generator: {name, n}}.
nlohmann::json to_json(const Instance& instance);
// Throws ValidationError on any schema violation.
Instance instance_from_json(const nlohmann::json& doc);

// FNV-1a 64 of the compact serialization, as 16 hex digits.
std::string digest(const nlohmann::json& doc);

nlohmann::json to_json(const PointConfiguration& config, const LinearForm& f);  // {label: "p/q"}, zeros omitted
nlohmann::json to_json(const PointConfiguration& config, const Simplex& s);     // [labels]
nlohmann::json to_json(const PointConfiguration& config, const Ridge& r);
nlohmann::json to_json(const RationalVector& v);
nlohmann::json heights_json(const PointConfiguration& config, const RationalVector& values);

// Graph-description text: nodes are cells, edges carry their lengths.
std::string to_dot(const PointConfiguration& config, const DualGraph& g);

}  // namespace mstfan
