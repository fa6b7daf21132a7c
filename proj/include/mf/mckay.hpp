#pragma once

// McKay graph Mc(k^2, G): vertices are the irreducibles W_0..W_m, with
// c[i][j] arrows W_i -> W_j where c[i][j] is the multiplicity of W_i in
// k^2 (x) W_j. The same graph is the AR quiver of the invariant ring.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mf/characters.hpp"
#include "mf/groups.hpp"

namespace mf {

struct McKayGraph {
  std::vector<std::string> vertex_labels;
  std::vector<std::int64_t> dims;
  std::vector<std::vector<std::int64_t>> arrows;
  std::string group_fingerprint;

  std::size_t vertex_count() const { return dims.size(); }

  bool symmetric() const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
      for (std::size_t j = 0; j < arrows.size(); ++j)
        if (arrows[i][j] != arrows[j][i]) return false;
    return true;
  }

  bool connected() const {
    const std::size_t n = vertex_count();
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w = 0; w < n; ++w) {
        if (!seen[w] && (arrows[v][w] > 0 || arrows[w][v] > 0)) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    for (bool s : seen)
      if (!s) return false;
    return true;
  }

  /// Column j must satisfy sum_i c[i][j] dim_i = 2 dim_j.
  bool dimension_count_holds() const {
    for (std::size_t j = 0; j < vertex_count(); ++j) {
      std::int64_t total = 0;
      for (std::size_t i = 0; i < vertex_count(); ++i) total += arrows[i][j] * dims[i];
      if (total != 2 * dims[j]) return false;
    }
    return true;
  }
};

/// Arrow matrix for an arbitrary 2-dimensional class function `rep`.
inline std::vector<std::vector<std::int64_t>> mckay_arrows(const CharacterTable& table, const ClassFunction& rep) {
  const std::size_t r = table.size();
  std::vector<std::vector<std::int64_t>> c(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t j = 0; j < r; ++j) {
    const auto mult = table.decompose(table.product(rep, table.characters[j]));
    for (std::size_t i = 0; i < r; ++i) c[i][j] = mult[i];
  }
  return c;
}

inline McKayGraph mckay_graph(const CharacterTable& table, std::string fingerprint = {}) {
  McKayGraph g;
  g.dims = table.dims;
  for (std::size_t i = 0; i < table.size(); ++i) g.vertex_labels.push_back("W_" + std::to_string(i));
  g.arrows = mckay_arrows(table, table.chi_std);
  g.group_fingerprint = std::move(fingerprint);
  if (!g.dimension_count_holds()) throw Error(ErrorKind::MismatchDetected, "McKay column dimension count fails");
  return g;
}

struct QuiverCertificate {
  McKayGraph graph;
  std::vector<std::vector<std::int64_t>> quiver_side;  // arrows from lifted traces
  bool certificate = false;
  CharacterTable table;
};

/// Computes the arrow matrix twice: from the character table of the reduced
/// group, and from traces of the lifted matrices over V_N (eigenvalues matched
/// against powers of theta_e, then decomposed). Both must agree entrywise.
/// A precomputed table of the reduced group may be passed in.
inline QuiverCertificate quiver_equals_mckay(const DvrGroup& lifted, std::optional<CharacterTable> table = std::nullopt) {
  QuiverCertificate out;
  const FqGroup reduced = reduce_group(lifted);
  out.table = table ? std::move(*table) : character_table(reduced);
  out.graph = mckay_graph(out.table, lifted.fingerprint());

  const int e = out.table.exponent;
  const FqField k = reduced.ring();
  const FqScalar zeta = primitive_root_of_unity(k, static_cast<std::uint64_t>(e));
  const DvrScalar theta = hensel_lift_root(lifted.ring(), static_cast<std::uint64_t>(e), zeta);
  ClassFunction lifted_trace;
  for (std::size_t rep : out.table.classes.representatives) {
    const auto& g = lifted.element(rep);
    auto [s1, s2] = detail::eigen_exponents(g, theta, e);
    ClassFunction::value_type value = Cyclotomic::root_power(e, s1) + Cyclotomic::root_power(e, s2);
    if (value.evaluate(zeta) != reduce_scalar(g.trace()))
      throw Error(ErrorKind::MismatchDetected, "reduced trace disagrees with lifted eigenvalues", g.to_string());
    lifted_trace.push_back(std::move(value));
  }
  out.quiver_side = mckay_arrows(out.table, lifted_trace);
  if (out.quiver_side != out.graph.arrows) {
    throw Error(ErrorKind::MismatchDetected, "quiver arrows from V_N traces differ from the McKay graph");
  }
  out.certificate = true;
  return out;
}

/// Graphviz DOT. Parallel arrows collapse to one edge labelled with the count.
inline std::string export_dot(const McKayGraph& graph, bool undirected = false) {
  if (undirected && !graph.symmetric())
    throw Error(ErrorKind::ValidationError, "undirected rendering requires a symmetric arrow matrix");
  std::ostringstream out;
  const std::string arrow = undirected ? " -- " : " -> ";
  out << (undirected ? "graph" : "digraph") << " McKay {\n";
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    out << "  W" << i << " [label=\"W_" << i << " (dim " << graph.dims[i] << ")\"];\n";
  }
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    for (std::size_t j = undirected ? i : 0; j < graph.vertex_count(); ++j) {
      const auto c = graph.arrows[i][j];
      if (c == 0) continue;
      out << "  W" << i << arrow << "W" << j;
      if (c > 1) out << " [label=\"" << c << "\"]";
      out << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace mf
