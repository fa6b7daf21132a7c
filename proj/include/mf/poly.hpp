#pragma once

// Truncated polynomials in two or three variables over F_q or V_N, and the
// linear substitution action of GL_2 on two-variable polynomials.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "mf/groups.hpp"
#include "mf/linalg.hpp"

namespace mf {

using Exponent = std::array<int, 3>;

inline int total_degree(const Exponent& e) { return e[0] + e[1] + e[2]; }

/// Degree-d monomials in two variables in graded-lex order: x1^d, x1^{d-1} x2, ..., x2^d.
inline std::vector<Exponent> monomials2(int d) {
  std::vector<Exponent> out;
  for (int a = d; a >= 0; --a) out.push_back({a, d - a, 0});
  return out;
}

inline std::string monomial_string(const Exponent& e, const std::array<const char*, 3>& names) {
  std::string s;
  for (int v = 0; v < 3; ++v) {
    if (e[v] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[v];
    if (e[v] > 1) s += "^" + std::to_string(e[v]);
  }
  return s.empty() ? "1" : s;
}

template <class S>
class GradedPoly {
 public:
  using ring_type = typename S::ring_type;

  GradedPoly() = default;
  GradedPoly(ring_type ring, int nvars, int cap) : ring_(ring), nvars_(nvars), cap_(cap) {}

  static GradedPoly monomial(ring_type ring, int nvars, int cap, Exponent e, const S& c) {
    GradedPoly f(ring, nvars, cap);
    f.add_term(e, c);
    return f;
  }
  static GradedPoly variable(ring_type ring, int nvars, int cap, int v) {
    Exponent e{0, 0, 0};
    e[static_cast<std::size_t>(v)] = 1;
    return monomial(ring, nvars, cap, e, ring.one());
  }
  static GradedPoly constant(ring_type ring, int nvars, int cap, const S& c) { return monomial(ring, nvars, cap, {0, 0, 0}, c); }

  const ring_type& ring() const { return ring_; }
  int nvars() const { return nvars_; }
  int cap() const { return cap_; }
  const std::map<Exponent, S>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  S coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? ring_.zero() : it->second;
  }

  void add_term(const Exponent& e, const S& c) {
    if (total_degree(e) > cap_ || c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Single degree if homogeneous, -1 for zero, -2 if mixed.
  int homogeneous_degree() const {
    if (terms_.empty()) return -1;
    const int d = total_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) != d) return -2;
    return d;
  }

  GradedPoly component(int d) const {
    GradedPoly out(ring_, nvars_, cap_);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) == d) out.terms_.emplace(e, c);
    return out;
  }

  GradedPoly with_cap(int cap) const {
    GradedPoly out(ring_, nvars_, cap);
    for (const auto& [e, c] : terms_) out.add_term(e, c);
    return out;
  }

  GradedPoly& operator+=(const GradedPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  GradedPoly& operator-=(const GradedPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
    GradedPoly out(a.ring_, a.nvars_, std::min(a.cap_, b.cap_));
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
      }
    }
    return out;
  }
  friend GradedPoly operator*(const S& s, const GradedPoly& f) {
    GradedPoly out(f.ring_, f.nvars_, f.cap_);
    for (const auto& [e, c] : f.terms_) out.add_term(e, s * c);
    return out;
  }
  friend bool operator==(const GradedPoly& a, const GradedPoly& b) { return a.terms_ == b.terms_; }

  GradedPoly pow(int k) const {
    GradedPoly result = constant(ring_, nvars_, cap_, ring_.one());
    for (int i = 0; i < k; ++i) result = result * *this;
    return result;
  }

  std::string to_string(const std::array<const char*, 3>& names = {"x1", "x2", "x3"}) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!s.empty()) s += " + ";
      if (total_degree(it->first) == 0) {
        s += it->second.to_string();
      } else if (it->second.is_one()) {
        s += monomial_string(it->first, names);
      } else {
        s += it->second.to_string() + "*" + monomial_string(it->first, names);
      }
    }
    return s;
  }

  /// Coordinates of the degree-d component in the graded-lex monomial order.
  Row<S> coordinates(int d) const {
    Row<S> v;
    for (const auto& e : monomials2(d)) v.push_back(coefficient(e));
    return v;
  }

  static GradedPoly from_coordinates(ring_type ring, int cap, int d, const Row<S>& v) {
    GradedPoly f(ring, 2, cap);
    const auto mons = monomials2(d);
    for (std::size_t i = 0; i < mons.size(); ++i) f.add_term(mons[i], v[i]);
    return f;
  }

 private:
  ring_type ring_;
  int nvars_ = 2;
  int cap_ = 0;
  std::map<Exponent, S> terms_;
};

/// Linear substitution x_i -> sum_j g(j, i) x_j, a left action:
/// act(gh, f) = act(g, act(h, f)).
template <class S>
GradedPoly<S> act(const Mat2<S>& g, const GradedPoly<S>& f) {
  const auto ring = f.ring();
  const int cap = f.cap();
  GradedPoly<S> x1 = GradedPoly<S>::variable(ring, 2, cap, 0);
  GradedPoly<S> x2 = GradedPoly<S>::variable(ring, 2, cap, 1);
  const GradedPoly<S> images[2] = {g(0, 0) * x1 + g(1, 0) * x2, g(0, 1) * x1 + g(1, 1) * x2};
  int max_a = 0, max_b = 0;
  for (const auto& [e, c] : f.terms()) {
    max_a = std::max(max_a, e[0]);
    max_b = std::max(max_b, e[1]);
  }
  std::vector<GradedPoly<S>> pa{GradedPoly<S>::constant(ring, 2, cap, ring.one())};
  std::vector<GradedPoly<S>> pb = pa;
  for (int i = 0; i < max_a; ++i) pa.push_back(pa.back() * images[0]);
  for (int i = 0; i < max_b; ++i) pb.push_back(pb.back() * images[1]);
  GradedPoly<S> out(ring, 2, cap);
  for (const auto& [e, c] : f.terms()) out += c * (pa[static_cast<std::size_t>(e[0])] * pb[static_cast<std::size_t>(e[1])]);
  return out;
}

/// Matrix (rows indexed by output monomial) of act(g) on the degree-d piece.
template <class S>
std::vector<Row<S>> action_matrix(const Mat2<S>& g, int d) {
  const auto ring = g.ring();
  const auto mons = monomials2(d);
  std::vector<Row<S>> m(mons.size(), Row<S>(mons.size(), ring.zero()));
  for (std::size_t c = 0; c < mons.size(); ++c) {
    const auto image = act(g, GradedPoly<S>::monomial(ring, 2, d, mons[c], ring.one())).coordinates(d);
    for (std::size_t r = 0; r < mons.size(); ++r) m[r][c] = image[r];
  }
  return m;
}

}  // namespace mf
