#pragma once

// Cyclotomic specs of the groups used throughout the tests and the CLI, and
// the minimal residue-field degree that carries their roots of unity.

#include <cstdint>

#include "mf/arith.hpp"
#include "mf/groups.hpp"

namespace mf {

inline CyclotomicEntry monomial(std::int64_t exponent, std::int64_t coeff = 1) { return {{exponent, coeff}}; }
inline CyclotomicEntry constant(std::int64_t c) {
  if (c == 0) return {};
  return {{0, c}};
}

/// Cyclic group of order n + 1 generated by diag(z, z^{-1}).
inline CyclotomicMatrixSpec cyclic_an_spec(std::uint64_t n) {
  CyclotomicMatrixSpec spec;
  spec.order_hint = n + 1;
  spec.generators.push_back({{{monomial(1), constant(0)}, {constant(0), monomial(-1)}}});
  return spec;
}

/// Quaternion group of order 8: <diag(z, z^3), [[0,-1],[1,0]]>, z of order 4.
inline CyclotomicMatrixSpec quaternion_spec() {
  CyclotomicMatrixSpec spec;
  spec.order_hint = 4;
  spec.generators.push_back({{{monomial(1), constant(0)}, {constant(0), monomial(3)}}});
  spec.generators.push_back({{{constant(0), constant(-1)}, {constant(1), constant(0)}}});
  return spec;
}

/// <diag(z, 1)>, z of order `order`; every non-identity element is a pseudo-reflection.
inline CyclotomicMatrixSpec reflection_spec(std::uint64_t order = 3) {
  CyclotomicMatrixSpec spec;
  spec.order_hint = order;
  spec.generators.push_back({{{monomial(1), constant(0)}, {constant(0), constant(1)}}});
  return spec;
}

/// Smallest m >= 1 with e | p^m - 1.
inline int minimal_extension_degree(std::uint64_t p, std::uint64_t e) {
  if (e % p == 0) throw Error(ErrorKind::BadOrder, "p divides " + std::to_string(e));
  std::uint64_t power = p % e;
  for (int m = 1; m <= kMaxExtensionDegree; ++m) {
    if ((power + e - 1) % e == 0) return m;
    power = static_cast<std::uint64_t>(static_cast<unsigned __int128>(power) * p % e);
  }
  throw Error(ErrorKind::NoSuchRoot, "no extension of degree <= " + std::to_string(kMaxExtensionDegree) + " has " +
                                         std::to_string(e) + "-th roots of unity");
}

}  // namespace mf
