#pragma once

// JSON forms of group specs, scalars, character tables, McKay graphs and
// invariant bases. Requires nlohmann/json (single header json.hpp).

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mf/characters.hpp"
#include "mf/groups.hpp"
#include "mf/invariants.hpp"
#include "mf/mckay.hpp"

namespace mf {

using Json = nlohmann::json;

/// A group spec as read from disk; p, m, N are optional there and may come from flags.
struct GroupSpecFile {
  std::optional<std::uint64_t> p, m, N;
  CyclotomicMatrixSpec spec;
};

namespace detail {

inline std::string line_and_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline std::int64_t integer_at(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) throw Error(ErrorKind::ValidationError, path + " must be an integer", path);
  return v.get<std::int64_t>();
}

inline std::uint64_t positive_at(const Json& v, const std::string& path) {
  const std::int64_t x = integer_at(v, path);
  if (x < 1) throw Error(ErrorKind::ValidationError, path + " must be positive", path);
  return static_cast<std::uint64_t>(x);
}

inline CyclotomicEntry entry_from_json(const Json& v, const std::string& path) {
  if (!v.is_object()) throw Error(ErrorKind::ValidationError, path + " must be an object {\"k\": c}", path);
  CyclotomicEntry e;
  for (const auto& [key, coeff] : v.items()) {
    std::int64_t k = 0;
    std::size_t used = 0;
    try {
      k = std::stoll(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != key.size())
      throw Error(ErrorKind::ValidationError, path + " has non-integer exponent \"" + key + "\"", path);
    const std::int64_t c = integer_at(coeff, path + "." + key);
    if (c != 0) e[k] += c;
  }
  return e;
}

}  // namespace detail

inline GroupSpecFile parse_group_spec(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "malformed JSON at " + detail::line_and_column(text, e.byte == 0 ? 0 : e.byte - 1),
                std::to_string(e.byte));
  }
  if (!doc.is_object()) throw Error(ErrorKind::ValidationError, "top level must be an object", "$");
  GroupSpecFile out;
  for (const char* key : {"p", "m", "N"}) {
    if (!doc.contains(key)) continue;
    const std::uint64_t v = detail::positive_at(doc[key], key);
    (key[0] == 'p' ? out.p : key[0] == 'm' ? out.m : out.N) = v;
  }
  if (!doc.contains("zeta_order")) throw Error(ErrorKind::ValidationError, "missing zeta_order", "zeta_order");
  out.spec.order_hint = detail::positive_at(doc["zeta_order"], "zeta_order");
  if (!doc.contains("generators") || !doc["generators"].is_array())
    throw Error(ErrorKind::ValidationError, "generators must be a list", "generators");
  const Json& gens = doc["generators"];
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const std::string gp = "generators[" + std::to_string(g) + "]";
    if (!gens[g].is_array() || gens[g].size() != 2) throw Error(ErrorKind::ValidationError, gp + " must be 2x2", gp);
    CyclotomicMatrix mat;
    for (std::size_t r = 0; r < 2; ++r) {
      const std::string rp = gp + "[" + std::to_string(r) + "]";
      if (!gens[g][r].is_array() || gens[g][r].size() != 2) throw Error(ErrorKind::ValidationError, gp + " must be 2x2", rp);
      for (std::size_t c = 0; c < 2; ++c)
        mat[r][c] = detail::entry_from_json(gens[g][r][c], rp + "[" + std::to_string(c) + "]");
    }
    out.spec.generators.push_back(std::move(mat));
  }
  return out;
}

inline Json group_spec_to_json(const GroupSpecFile& f) {
  Json doc;
  if (f.p) doc["p"] = *f.p;
  if (f.m) doc["m"] = *f.m;
  if (f.N) doc["N"] = *f.N;
  doc["zeta_order"] = f.spec.order_hint;
  doc["generators"] = Json::array();
  for (const auto& mat : f.spec.generators) {
    Json jm = Json::array();
    for (const auto& row : mat) {
      Json jr = Json::array();
      for (const auto& entry : row) {
        Json je = Json::object();
        for (const auto& [k, c] : entry) je[std::to_string(k)] = c;
        jr.push_back(je);
      }
      jm.push_back(jr);
    }
    doc["generators"].push_back(jm);
  }
  return doc;
}

template <class Tag>
Json scalar_to_json(const Residue<Tag>& x) {
  const auto ring = x.ring();
  std::vector<std::uint64_t> coeffs(x.coeffs().begin(), x.coeffs().end());
  return Json{{"coeffs", coeffs}, {"p", ring.p()}, {"m", ring.m()}, {"N", ring.N()}};
}

template <class Tag>
Residue<Tag> scalar_from_json(const Json& j, const ResidueRing<Tag>& ring) {
  if (j.at("p").get<std::uint64_t>() != ring.p() || j.at("m").get<std::uint64_t>() != static_cast<std::uint64_t>(ring.m()) ||
      j.at("N").get<std::uint64_t>() != static_cast<std::uint64_t>(ring.N()))
    throw Error(ErrorKind::ValidationError, "scalar belongs to a different ring");
  const auto coeffs = j.at("coeffs").get<std::vector<std::uint64_t>>();
  return ring.from_coeffs(coeffs);
}

inline Json mckay_to_json(const McKayGraph& g) { return Json{{"dims", g.dims}, {"arrows", g.arrows}}; }

inline Json class_function_to_json(const ClassFunction& f) {
  Json out = Json::array();
  for (const auto& v : f) out.push_back(v.coeffs());
  return out;
}

inline ClassFunction class_function_from_json(const Json& j, int exponent) {
  ClassFunction f;
  for (const auto& v : j) f.push_back(Cyclotomic::from_power_coeffs(exponent, v.get<std::vector<std::int64_t>>()));
  return f;
}

/// Values are integer coefficient vectors in the basis 1, zeta_e, ..., zeta_e^{phi(e)-1}.
inline Json character_table_to_json(const CharacterTable& t) {
  Json chars = Json::array();
  for (const auto& chi : t.characters) chars.push_back(class_function_to_json(chi));
  return Json{{"exponent", t.exponent},
              {"group_order", t.group_order},
              {"class_sizes", t.classes.sizes},
              {"class_representatives", t.classes.representatives},
              {"dims", t.dims},
              {"characters", chars},
              {"chi_std", class_function_to_json(t.chi_std)},
              {"chi_det", class_function_to_json(t.chi_det)}};
}

/// Rebuilds a table for `group` from stored characters, revalidating orthogonality.
inline CharacterTable character_table_from_json(const Json& j, const FqGroup& group) {
  CharacterTable t = detail::table_skeleton(group);
  t.abelian = group.is_abelian();
  if (j.at("exponent").get<int>() != t.exponent || j.at("group_order").get<std::uint64_t>() != t.group_order ||
      j.at("class_representatives").get<std::vector<std::size_t>>() != t.classes.representatives)
    throw Error(ErrorKind::MismatchDetected, "stored character table belongs to another group");
  for (const auto& chi : j.at("characters")) t.characters.push_back(class_function_from_json(chi, t.exponent));
  detail::sort_and_validate(t);
  return t;
}

/// Basis rows as lists of residue-field element indices.
inline Json invariant_bases_to_json(const std::vector<GradedSubspaceBasis<FqScalar>>& bases) {
  Json out = Json::array();
  for (const auto& b : bases) {
    Json rows = Json::array();
    for (const auto& f : b.basis) {
      std::vector<std::uint64_t> idx;
      for (const auto& c : f.coordinates(b.degree)) idx.push_back(c.index());
      rows.push_back(idx);
    }
    out.push_back(Json{{"degree", b.degree}, {"rows", rows}});
  }
  return out;
}

inline std::vector<GradedSubspaceBasis<FqScalar>> invariant_bases_from_json(const Json& j, const FqField& k) {
  std::vector<GradedSubspaceBasis<FqScalar>> out;
  for (const auto& jb : j) {
    GradedSubspaceBasis<FqScalar> b;
    b.degree = jb.at("degree").get<int>();
    for (const auto& row : jb.at("rows")) {
      Row<FqScalar> r;
      for (auto idx : row.get<std::vector<std::uint64_t>>()) r.push_back(k.from_index(idx));
      b.basis.push_back(GradedPoly<FqScalar>::from_coordinates(k, b.degree, b.degree, r));
    }
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace mf
