#include "mstfan/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <sstream>

#include "mstfan/errors.hpp"

namespace mstfan {

using nlohmann::json;

Generator parse_generator(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
  Generator g{std::string(text.substr(0, i)), 0};
  while (i < text.size() && (text[i] == ' ' || text[i] == ':')) ++i;
  const auto digits = text.substr(i);
  if (g.name.empty() || digits.empty()) throw ValidationError("generator must look like 'ngon 5'");
  auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), g.n);
  if (ec != std::errc() || end != digits.data() + digits.size()) throw ValidationError("bad generator size");
  if (g.name != "ngon" && g.name != "cube" && g.name != "prism" && g.name != "crosspoly") {
    throw ValidationError("unknown generator '" + g.name + "'");
  }
  return g;
}

std::string to_string(const Generator& g) { return g.name + " " + std::to_string(g.n); }

PointConfiguration generate(const Generator& g) {
  std::vector<IntPoint> points;
  std::vector<Label> labels;
  if (g.name == "ngon") {
    if (g.n < 3) throw ValidationError("ngon needs n >= 3");
    if (g.n > 64) throw ScaleGuardError("ngon is limited to 64 points");
    for (long long i = 0; i < g.n; ++i) {
      points.push_back({i, i * i});
      labels.push_back(std::to_string(i));
    }
    return PointConfiguration(2, points, labels);
  }
  if (g.name == "cube") {
    if (g.n < 1) throw ValidationError("cube needs n >= 1");
    if (g.n > 6) throw ScaleGuardError("cube is limited to 64 points");
    for (int i = 0; i < (1 << g.n); ++i) {
      IntPoint p;
      Label l;
      for (int k = 0; k < g.n; ++k) {
        p.push_back(i >> k & 1);
        l += static_cast<char>('0' + (i >> k & 1));
      }
      points.push_back(p);
      labels.push_back(l);
    }
    return PointConfiguration(g.n, points, labels);
  }
  if (g.name == "prism") {
    if (g.n < 3) throw ValidationError("prism needs n >= 3");
    if (g.n > 32) throw ScaleGuardError("prism is limited to 64 points");
    for (long long i = 0; i < g.n; ++i) {
      for (long long b = 0; b < 2; ++b) {
        points.push_back({i, i * i, b});
        labels.push_back(std::to_string(i) + "_" + std::to_string(b));
      }
    }
    return PointConfiguration(3, points, labels);
  }
  if (g.name == "crosspoly") {
    if (g.n < 1) throw ValidationError("crosspoly needs n >= 1");
    if (g.n > 32) throw ScaleGuardError("crosspoly is limited to 64 points");
    for (int k = 0; k < g.n; ++k) {
      for (int s : {1, -1}) {
        IntPoint p(static_cast<std::size_t>(g.n), 0);
        p[static_cast<std::size_t>(k)] = s;
        points.push_back(p);
        labels.push_back((s > 0 ? "+" : "-") + std::to_string(k + 1));
      }
    }
    return PointConfiguration(g.n, points, labels);
  }
  throw ValidationError("unknown generator '" + g.name + "'");
}

PointConfiguration generate(std::string_view text) { return generate(parse_generator(text)); }

json to_json(const RationalVector& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

json heights_json(const PointConfiguration& config, const RationalVector& values) {
  json out = json::object();
  for (std::size_t i = 0; i < values.size(); ++i) out[config.label(static_cast<PointIndex>(i))] = to_string(values[i]);
  return out;
}

json to_json(const Instance& instance) {
  const auto& c = instance.config;
  json doc;
  doc["dim"] = c.dim();
  doc["points"] = c.points();
  doc["labels"] = c.labels();
  if (instance.heights) doc["heights"] = heights_json(c, instance.heights->values());
  if (instance.generator) doc["generator"] = {{"name", instance.generator->name}, {"n", instance.generator->n}};
  return doc;
}

Instance instance_from_json(const json& doc) {
  try {
    if (!doc.is_object()) throw ValidationError("instance must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
      if (key != "dim" && key != "points" && key != "labels" && key != "heights" && key != "generator") {
        throw ValidationError("unknown instance field '" + key + "'");
      }
    }
    PointConfiguration config(doc.at("dim").get<int>(), doc.at("points").get<std::vector<IntPoint>>(),
                              doc.at("labels").get<std::vector<Label>>());
    Instance out{config, std::nullopt, std::nullopt};
    if (doc.contains("heights")) {
      std::map<Label, Rational> values;
      for (const auto& [label, value] : doc.at("heights").items()) {
        if (!value.is_string()) throw ValidationError("heights must be \"p/q\" strings");
        values[label] = parse_rational(value.get<std::string>());
      }
      out.heights = HeightFunction::from_labels(config, values);
    }
    if (doc.contains("generator")) {
      out.generator = Generator{doc.at("generator").at("name").get<std::string>(), doc.at("generator").at("n").get<int>()};
    }
    return out;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed instance: ") + e.what());
  }
}

std::string digest(const json& doc) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char ch : doc.dump()) {
    hash ^= ch;
    hash *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

json to_json(const PointConfiguration& config, const LinearForm& f) {
  json out = json::object();
  for (auto i : f.support()) out[config.label(i)] = to_string(f[static_cast<std::size_t>(i)]);
  return out;
}

json to_json(const PointConfiguration& config, const Simplex& s) {
  json out = json::array();
  for (auto v : s.vertices) out.push_back(config.label(v));
  return out;
}

json to_json(const PointConfiguration& config, const Ridge& r) {
  return {{"left", to_json(config, r.left())}, {"right", to_json(config, r.right())}};
}

std::string to_dot(const PointConfiguration& config, const DualGraph& g) {
  std::ostringstream out;
  out << "graph dual {\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    out << "  n" << i << " [label=\"" << to_string(config, g.nodes[i]) << "\"];\n";
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    out << "  n" << g.endpoints[e].first << " -- n" << g.endpoints[e].second << " [label=\"" << to_string(g.lengths[e])
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace mstfan
