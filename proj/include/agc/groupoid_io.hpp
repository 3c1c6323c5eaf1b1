#pragma once

// JSON schemas:
//   groupoid: { "objects": [string], "morphisms": [{"id","src","tgt"}],
//               "identity": {object: morphism-id}, "compose": [[g, f, gf]],
//               "grading": {object: natural}? }
//   functor:  { "domain": path, "codomain": path,
//               "object_map": {...}, "morphism_map": {...} }
// Functor paths are resolved relative to the functor file.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "agc/errors.hpp"
#include "agc/groupoid.hpp"

namespace agc {

class InputError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline std::size_t lookup_object(const FiniteGroupoid& g, const std::string& name) {
  auto i = g.find_object(name);
  if (!i) throw InputError("unknown object '" + name + "'");
  return *i;
}

inline std::size_t lookup_morphism(const FiniteGroupoid& g, const std::string& id) {
  auto i = g.find_morphism(id);
  if (!i) throw InputError("unknown morphism '" + id + "'");
  return *i;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

inline FiniteGroupoid groupoid_from_json(const nlohmann::json& j) {
  try {
    FiniteGroupoid g;
    for (const auto& o : j.at("objects")) g.add_object(o.get<std::string>());
    for (const auto& m : j.at("morphisms"))
      g.add_morphism(m.at("id").get<std::string>(), detail::lookup_object(g, m.at("src").get<std::string>()),
                     detail::lookup_object(g, m.at("tgt").get<std::string>()));
    for (const auto& [obj, mid] : j.at("identity").items())
      g.set_identity(detail::lookup_object(g, obj), detail::lookup_morphism(g, mid.get<std::string>()));
    for (const auto& triple : j.at("compose")) {
      if (!triple.is_array() || triple.size() != 3) throw InputError("compose entries must be [g, f, gf]");
      g.set_composite(detail::lookup_morphism(g, triple[0].get<std::string>()),
                      detail::lookup_morphism(g, triple[1].get<std::string>()),
                      detail::lookup_morphism(g, triple[2].get<std::string>()));
    }
    if (j.contains("grading"))
      for (const auto& [obj, d] : j.at("grading").items()) g.set_degree(detail::lookup_object(g, obj), d.get<std::size_t>());
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed groupoid JSON: ") + e.what());
  }
}

inline nlohmann::ordered_json groupoid_to_json(const FiniteGroupoid& g) {
  nlohmann::ordered_json j;
  j["objects"] = nlohmann::ordered_json::array();
  for (std::size_t x = 0; x < g.object_count(); ++x) j["objects"].push_back(g.object(x));
  j["morphisms"] = nlohmann::ordered_json::array();
  for (std::size_t f = 0; f < g.morphism_count(); ++f) {
    const auto& m = g.morphism(f);
    j["morphisms"].push_back({{"id", m.id}, {"src", g.object(m.source)}, {"tgt", g.object(m.target)}});
  }
  j["identity"] = nlohmann::ordered_json::object();
  for (std::size_t x = 0; x < g.object_count(); ++x)
    if (auto id = g.identity(x)) j["identity"][g.object(x)] = g.morphism(*id).id;
  j["compose"] = nlohmann::ordered_json::array();
  for (const auto& [gm, fm] : g.composite_pairs())
    j["compose"].push_back({g.morphism(gm).id, g.morphism(fm).id, g.morphism(*g.compose(gm, fm)).id});
  if (g.is_graded()) {
    j["grading"] = nlohmann::ordered_json::object();
    for (std::size_t x = 0; x < g.object_count(); ++x)
      if (auto d = g.degree(x)) j["grading"][g.object(x)] = *d;
  }
  return j;
}

inline FiniteGroupoid load_groupoid(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(detail::read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return groupoid_from_json(j);
}

inline GroupoidFunctor load_functor(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(detail::read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  const auto base = path.parent_path();
  try {
    GroupoidFunctor f{load_groupoid(base / j.at("domain").get<std::string>()),
                      load_groupoid(base / j.at("codomain").get<std::string>()),
                      {},
                      {}};
    f.object_map.assign(f.domain.object_count(), f.codomain.object_count());
    f.morphism_map.assign(f.domain.morphism_count(), f.codomain.morphism_count());
    for (const auto& [k, v] : j.at("object_map").items())
      f.object_map[detail::lookup_object(f.domain, k)] = detail::lookup_object(f.codomain, v.get<std::string>());
    for (const auto& [k, v] : j.at("morphism_map").items())
      f.morphism_map[detail::lookup_morphism(f.domain, k)] = detail::lookup_morphism(f.codomain, v.get<std::string>());
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": malformed functor JSON: " + e.what());
  }
}

}  // namespace agc
