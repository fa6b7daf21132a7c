#pragma once

// Exact arithmetic in Z[zeta_e], stored as integer coefficient vectors reduced
// modulo the e-th cyclotomic polynomial (length phi(e), low-to-high).

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "mf/errors.hpp"

namespace mf {

namespace detail {

using IntPoly = std::vector<std::int64_t>;

/// Exact division of integer polynomials by a monic divisor.
inline IntPoly divide_monic(IntPoly a, const IntPoly& b) {
  const std::size_t db = b.size() - 1;
  if (a.size() <= db) return {0};
  IntPoly q(a.size() - db, 0);
  for (std::size_t k = a.size(); k-- > db;) {
    const std::int64_t t = a[k];
    q[k - db] = t;
    for (std::size_t j = 0; j <= db; ++j) a[k - db + j] -= t * b[j];
  }
  for (std::size_t j = 0; j < db; ++j) {
    if (a[j] != 0) throw Error(ErrorKind::MismatchDetected, "inexact cyclotomic division");
  }
  return q;
}

inline const IntPoly& cyclotomic_polynomial(int e) {
  static std::mutex mutex;
  static std::map<int, IntPoly> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
  }
  IntPoly num(static_cast<std::size_t>(e) + 1, 0);
  num[0] = -1;
  num[static_cast<std::size_t>(e)] = 1;
  for (int d = 1; d < e; ++d) {
    if (e % d == 0) num = divide_monic(num, cyclotomic_polynomial(d));
  }
  std::lock_guard lock(mutex);
  return cache.emplace(e, std::move(num)).first->second;
}

}  // namespace detail

class Cyclotomic {
 public:
  Cyclotomic() = default;
  explicit Cyclotomic(int e) : e_(e), c_(static_cast<std::size_t>(phi()), 0) {}

  static Cyclotomic from_int(int e, std::int64_t v) {
    Cyclotomic r(e);
    r.c_[0] = v;
    return r;
  }
  /// zeta_e^s for any integer s.
  static Cyclotomic root_power(int e, std::int64_t s) {
    std::vector<std::int64_t> raw(static_cast<std::size_t>(e), 0);
    raw[static_cast<std::size_t>(((s % e) + e) % e)] = 1;
    return from_power_coeffs(e, raw);
  }
  /// Reduces sum_s raw[s] zeta^s, for raw of any length.
  static Cyclotomic from_power_coeffs(int e, std::vector<std::int64_t> raw) {
    const auto& phi_poly = detail::cyclotomic_polynomial(e);
    const std::size_t deg = phi_poly.size() - 1;
    for (std::size_t k = raw.size(); k-- > deg;) {
      const std::int64_t t = raw[k];
      if (t == 0) continue;
      for (std::size_t j = 0; j <= deg; ++j) raw[k - deg + j] -= t * phi_poly[j];
    }
    Cyclotomic r(e);
    for (std::size_t i = 0; i < deg && i < raw.size(); ++i) r.c_[i] = raw[i];
    return r;
  }

  int order() const { return e_; }
  int phi() const { return static_cast<int>(detail::cyclotomic_polynomial(e_).size()) - 1; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }

  bool is_integer() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  std::int64_t integer_value() const {
    if (!is_integer()) throw Error(ErrorKind::MismatchDetected, "cyclotomic value is not rational: " + to_string());
    return c_[0];
  }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    std::vector<std::int64_t> raw(a.c_.size() + b.c_.size(), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) raw[i + j] += a.c_[i] * b.c_[j];
    }
    return from_power_coeffs(a.e_, std::move(raw));
  }
  Cyclotomic scaled(std::int64_t k) const {
    Cyclotomic r = *this;
    for (auto& v : r.c_) v *= k;
    return r;
  }

  /// Complex conjugation, zeta -> zeta^{-1}.
  Cyclotomic conj() const {
    std::vector<std::int64_t> raw(static_cast<std::size_t>(e_), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) raw[(static_cast<std::size_t>(e_) - i) % static_cast<std::size_t>(e_)] += c_[i];
    return from_power_coeffs(e_, std::move(raw));
  }

  /// Image under zeta -> zeta^k (Galois action when gcd(k, e) = 1).
  Cyclotomic galois(std::int64_t k) const {
    std::vector<std::int64_t> raw(static_cast<std::size_t>(e_), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      raw[static_cast<std::size_t>(((static_cast<std::int64_t>(i) * k) % e_ + e_) % e_)] += c_[i];
    }
    return from_power_coeffs(e_, std::move(raw));
  }

  /// Evaluation at a chosen e-th root of unity in some commutative ring.
  template <class S>
  S evaluate(const S& root) const {
    S acc = root.ring().zero();
    S power = root.ring().one();
    for (std::int64_t v : c_) {
      acc += power.scaled(v);
      power *= root;
    }
    return acc;
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return a.e_ == b.e_ && a.c_ == b.c_; }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }
  friend bool operator<(const Cyclotomic& a, const Cyclotomic& b) { return a.c_ < b.c_; }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(c_[i]);
    }
    return s + "]";
  }

 private:
  int e_ = 1;
  std::vector<std::int64_t> c_ = {0};
};

}  // namespace mf
