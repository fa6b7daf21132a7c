#pragma once

// Exact arithmetic in the finite field F_{p^m} and in the truncated unramified
// ring V_N = (Z/p^N)[t]/(h), where h is a monic lift of an irreducible
// polynomial over F_p. The field is the N = 1 case of the same construction.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "mf/errors.hpp"

namespace mf {

inline constexpr int kMaxExtensionDegree = 16;

// ---------------------------------------------------------------------------
// Integer helpers

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t n) {
  std::uint64_t result = 1 % n;
  base %= n;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, n);
    base = mul_mod(base, base, n);
    exp >>= 1U;
  }
  return result;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Distinct prime factors in increasing order.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// p^k, throwing if the result does not fit in 62 bits.
inline std::uint64_t checked_pow(std::uint64_t p, int k) {
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) {
    if (r > (std::uint64_t{1} << 62) / p) {
      throw Error(ErrorKind::ValidationError,
                  "p^" + std::to_string(k) + " exceeds 62 bits for p = " + std::to_string(p));
    }
    r *= p;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Polynomials over F_p, used only for the irreducibility search.

namespace detail {

using PolyFp = std::vector<std::uint64_t>;  // low-to-high, trimmed

inline void trim(PolyFp& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline PolyFp poly_mod(PolyFp a, const PolyFp& f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t lead_inv = pow_mod(f.back(), p - 2, p);
  while (a.size() > df) {
    const std::uint64_t t = mul_mod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t j = 0; j <= df; ++j) {
      a[shift + j] = (a[shift + j] + p - mul_mod(t, f[j], p)) % p;
    }
    trim(a);
  }
  return a;
}

inline PolyFp poly_mulmod(const PolyFp& a, const PolyFp& b, const PolyFp& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PolyFp r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mul_mod(a[i], b[j], p)) % p;
  }
  return poly_mod(std::move(r), f, p);
}

inline PolyFp poly_gcd(PolyFp a, PolyFp b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyFp r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// x^(p^k) mod f.
inline PolyFp frobenius_power_of_x(const PolyFp& f, std::uint64_t p, int k) {
  PolyFp x = poly_mod({0, 1}, f, p);
  for (int i = 0; i < k; ++i) {
    PolyFp result{1};
    PolyFp base = x;
    std::uint64_t e = p;
    while (e > 0) {
      if (e & 1U) result = poly_mulmod(result, base, f, p);
      base = poly_mulmod(base, base, f, p);
      e >>= 1U;
    }
    x = std::move(result);
  }
  return x;
}

}  // namespace detail

/// Rabin's irreducibility test for a monic polynomial over F_p.
inline bool is_irreducible_mod_p(const std::vector<std::uint64_t>& monic, std::uint64_t p) {
  detail::PolyFp f = monic;
  detail::trim(f);
  const int m = static_cast<int>(f.size()) - 1;
  if (m < 1) return false;
  if (m == 1) return true;
  detail::PolyFp x = {0, 1};
  auto minus_x = [&](detail::PolyFp g) {
    if (g.size() < 2) g.resize(2, 0);
    g[1] = (g[1] + p - 1) % p;
    detail::trim(g);
    return g;
  };
  if (!minus_x(detail::frobenius_power_of_x(f, p, m)).empty()) return false;
  for (std::uint64_t r : prime_factors(static_cast<std::uint64_t>(m))) {
    auto g = detail::poly_gcd(f, minus_x(detail::frobenius_power_of_x(f, p, m / static_cast<int>(r))), p);
    if (g.size() != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Ring descriptors

namespace detail {

struct RingData {
  std::uint64_t p = 0;
  int m = 0;
  int N = 0;
  std::uint64_t modulus_pow = 0;      // p^N
  std::uint64_t residue_order = 0;    // p^m
  std::vector<std::uint64_t> modulus; // monic, length m + 1, entries mod p^N
  const RingData* residue = nullptr;  // N = 1 ring with the same modulus mod p

  mutable std::once_flag generator_once;
  mutable std::uint64_t generator_index = 0;
};

inline const RingData* intern_ring(std::uint64_t p, int m, int N, const std::vector<std::uint64_t>& modulus) {
  static std::mutex mutex;
  static std::map<std::tuple<std::uint64_t, int, int, std::vector<std::uint64_t>>, std::unique_ptr<RingData>> registry;
  std::lock_guard lock(mutex);
  auto key = std::make_tuple(p, m, N, modulus);
  auto it = registry.find(key);
  if (it != registry.end()) return it->second.get();
  auto data = std::make_unique<RingData>();
  data->p = p;
  data->m = m;
  data->N = N;
  data->modulus_pow = checked_pow(p, N);
  data->residue_order = checked_pow(p, m);
  data->modulus = modulus;
  for (auto& c : data->modulus) c %= data->modulus_pow;
  const RingData* raw = data.get();
  registry.emplace(std::move(key), std::move(data));
  if (N == 1) {
    const_cast<RingData*>(raw)->residue = raw;
  } else {
    std::vector<std::uint64_t> reduced = modulus;
    for (auto& c : reduced) c %= p;
    auto rkey = std::make_tuple(p, m, 1, reduced);
    auto rit = registry.find(rkey);
    if (rit == registry.end()) {
      auto rdata = std::make_unique<RingData>();
      rdata->p = p;
      rdata->m = m;
      rdata->N = 1;
      rdata->modulus_pow = p;
      rdata->residue_order = raw->residue_order;
      rdata->modulus = reduced;
      rdata->residue = rdata.get();
      rit = registry.emplace(std::move(rkey), std::move(rdata)).first;
    }
    const_cast<RingData*>(raw)->residue = rit->second.get();
  }
  return raw;
}

}  // namespace detail

struct FqTag {};
struct DvrTag {};

template <class Tag>
class Residue;

/// Handle to an interned ring (Z/p^N)[t]/(h). Cheap to copy; compares by identity.
template <class Tag>
class ResidueRing {
 public:
  using scalar_type = Residue<Tag>;

  ResidueRing() = default;
  explicit ResidueRing(const detail::RingData* data) : data_(data) {}

  std::uint64_t p() const { return data_->p; }
  int m() const { return data_->m; }
  int N() const { return data_->N; }
  std::uint64_t modulus_pow() const { return data_->modulus_pow; }
  /// Size of the residue field, p^m.
  std::uint64_t residue_order() const { return data_->residue_order; }
  const std::vector<std::uint64_t>& modulus_poly() const { return data_->modulus; }
  const detail::RingData* data() const { return data_; }

  scalar_type zero() const { return scalar_type(data_); }
  scalar_type one() const { return from_int(1); }
  scalar_type from_int(std::int64_t v) const;
  scalar_type from_coeffs(std::span<const std::uint64_t> coeffs) const;
  /// Element whose coefficient vector is the base-p^N digit expansion of `index`.
  scalar_type from_index(std::uint64_t index) const;

  friend bool operator==(const ResidueRing& a, const ResidueRing& b) { return a.data_ == b.data_; }

 private:
  const detail::RingData* data_ = nullptr;
};

using FqField = ResidueRing<FqTag>;
using DvrRing = ResidueRing<DvrTag>;

template <class Tag>
class Residue {
 public:
  using ring_type = ResidueRing<Tag>;

  Residue() = default;
  explicit Residue(const detail::RingData* data) : data_(data) { coeffs_.fill(0); }

  ring_type ring() const { return ring_type(data_); }
  const detail::RingData* data() const { return data_; }
  int degree() const { return data_->m; }
  std::span<const std::uint64_t> coeffs() const { return {coeffs_.data(), static_cast<std::size_t>(data_->m)}; }
  std::uint64_t coeff(int i) const { return coeffs_[static_cast<std::size_t>(i)]; }

  bool is_zero() const {
    for (int i = 0; i < data_->m; ++i)
      if (coeffs_[i] != 0) return false;
    return true;
  }
  bool is_one() const {
    if (coeffs_[0] != 1 % data_->modulus_pow) return false;
    for (int i = 1; i < data_->m; ++i)
      if (coeffs_[i] != 0) return false;
    return true;
  }
  /// A unit iff its reduction mod p is nonzero.
  bool is_unit() const {
    for (int i = 0; i < data_->m; ++i)
      if (coeffs_[i] % data_->p != 0) return true;
    return false;
  }

  /// Index in the base-p^N digit ordering (low coefficient least significant).
  std::uint64_t index() const {
    std::uint64_t idx = 0;
    for (int i = data_->m - 1; i >= 0; --i) idx = idx * data_->modulus_pow + coeffs_[i];
    return idx;
  }

  Residue operator-() const {
    Residue r(data_);
    const auto n = data_->modulus_pow;
    for (int i = 0; i < data_->m; ++i) r.coeffs_[i] = coeffs_[i] == 0 ? 0 : n - coeffs_[i];
    return r;
  }

  Residue& operator+=(const Residue& o) {
    const auto n = data_->modulus_pow;
    for (int i = 0; i < data_->m; ++i) {
      coeffs_[i] += o.coeffs_[i];
      if (coeffs_[i] >= n) coeffs_[i] -= n;
    }
    return *this;
  }
  Residue& operator-=(const Residue& o) {
    const auto n = data_->modulus_pow;
    for (int i = 0; i < data_->m; ++i) coeffs_[i] = coeffs_[i] >= o.coeffs_[i] ? coeffs_[i] - o.coeffs_[i] : coeffs_[i] + n - o.coeffs_[i];
    return *this;
  }
  Residue& operator*=(const Residue& o) { return *this = *this * o; }

  friend Residue operator+(Residue a, const Residue& b) { return a += b; }
  friend Residue operator-(Residue a, const Residue& b) { return a -= b; }

  friend Residue operator*(const Residue& a, const Residue& b) {
    const auto* d = a.data_;
    const int m = d->m;
    const auto n = d->modulus_pow;
    Residue r(d);
    if (m == 1) {
      r.coeffs_[0] = mul_mod(a.coeffs_[0], b.coeffs_[0], n);
      return r;
    }
    std::array<std::uint64_t, 2 * kMaxExtensionDegree> prod{};
    for (int i = 0; i < m; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (int j = 0; j < m; ++j) {
        prod[i + j] = (prod[i + j] + mul_mod(a.coeffs_[i], b.coeffs_[j], n)) % n;
      }
    }
    for (int k = 2 * m - 2; k >= m; --k) {
      const std::uint64_t t = prod[k];
      if (t == 0) continue;
      prod[k] = 0;
      for (int j = 0; j < m; ++j) {
        const std::uint64_t s = mul_mod(t, d->modulus[j], n);
        auto& slot = prod[k - m + j];
        slot = slot >= s ? slot - s : slot + n - s;
      }
    }
    for (int i = 0; i < m; ++i) r.coeffs_[i] = prod[i];
    return r;
  }

  /// Multiplication by an integer.
  Residue scaled(std::int64_t k) const { return *this * ring().from_int(k); }

  Residue pow(std::uint64_t e) const {
    Residue result = ring().one();
    Residue base = *this;
    while (e > 0) {
      if (e & 1U) result *= base;
      base *= base;
      e >>= 1U;
    }
    return result;
  }

  Residue inverse() const {
    if (!is_unit()) throw Error(ErrorKind::NotInvertible, "element is not a unit");
    const auto* res = data_->residue;
    Residue<FqTag> reduced(res);
    for (int i = 0; i < data_->m; ++i) reduced.coeffs_[i] = coeffs_[i] % data_->p;
    Residue<FqTag> inv0 = reduced.pow(res->residue_order - 2);
    Residue x(data_);
    for (int i = 0; i < data_->m; ++i) x.coeffs_[i] = inv0.coeffs_[i];
    // Newton: x <- x (2 - a x), precision doubles each step.
    const Residue two = ring().from_int(2);
    for (int step = 0; step < 64 && !(*this * x).is_one(); ++step) x = x * (two - *this * x);
    return x;
  }

  friend bool operator==(const Residue& a, const Residue& b) {
    if (a.data_ != b.data_) return false;
    for (int i = 0; i < a.data_->m; ++i)
      if (a.coeffs_[i] != b.coeffs_[i]) return false;
    return true;
  }
  friend bool operator<(const Residue& a, const Residue& b) {
    for (int i = 0; i < a.data_->m; ++i) {
      if (a.coeffs_[i] != b.coeffs_[i]) return a.coeffs_[i] < b.coeffs_[i];
    }
    return false;
  }

  std::string to_string() const {
    if (data_->m == 1) return std::to_string(coeffs_[0]);
    std::string s = "[";
    for (int i = 0; i < data_->m; ++i) {
      if (i) s += ",";
      s += std::to_string(coeffs_[i]);
    }
    return s + "]";
  }

 private:
  template <class>
  friend class Residue;
  template <class>
  friend class ResidueRing;

  const detail::RingData* data_ = nullptr;
  std::array<std::uint64_t, kMaxExtensionDegree> coeffs_{};
};

using FqScalar = Residue<FqTag>;
using DvrScalar = Residue<DvrTag>;

template <class Tag>
Residue<Tag> ResidueRing<Tag>::from_int(std::int64_t v) const {
  scalar_type r(data_);
  const auto n = static_cast<std::int64_t>(data_->modulus_pow);
  std::int64_t c = v % n;
  if (c < 0) c += n;
  r.coeffs_[0] = static_cast<std::uint64_t>(c);
  return r;
}

template <class Tag>
Residue<Tag> ResidueRing<Tag>::from_coeffs(std::span<const std::uint64_t> coeffs) const {
  scalar_type r(data_);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (static_cast<int>(i) >= data_->m) {
      if (coeffs[i] % data_->modulus_pow != 0)
        throw Error(ErrorKind::ValidationError, "coefficient vector longer than extension degree");
      continue;
    }
    r.coeffs_[i] = coeffs[i] % data_->modulus_pow;
  }
  return r;
}

template <class Tag>
Residue<Tag> ResidueRing<Tag>::from_index(std::uint64_t index) const {
  scalar_type r(data_);
  for (int i = 0; i < data_->m; ++i) {
    r.coeffs_[i] = index % data_->modulus_pow;
    index /= data_->modulus_pow;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Constructors

/// Smallest monic irreducible of degree m over F_p, coefficient vectors
/// compared lexicographically with the constant term most significant.
inline std::vector<std::uint64_t> smallest_irreducible(std::uint64_t p, int m) {
  const std::uint64_t count = checked_pow(p, m);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<std::uint64_t> f(static_cast<std::size_t>(m) + 1, 0);
    std::uint64_t rest = idx;
    for (int i = m - 1; i >= 0; --i) {
      f[static_cast<std::size_t>(i)] = rest % p;
      rest /= p;
    }
    f[static_cast<std::size_t>(m)] = 1;
    if (is_irreducible_mod_p(f, p)) return f;
  }
  throw Error(ErrorKind::NotFound, "no irreducible polynomial found");  // unreachable for prime p
}

inline FqField make_field(std::uint64_t p, int m) {
  if (!is_prime(p)) throw Error(ErrorKind::NonPrimeModulus, std::to_string(p) + " is not prime");
  if (m < 1 || m > kMaxExtensionDegree)
    throw Error(ErrorKind::ValidationError, "extension degree must be in [1, " + std::to_string(kMaxExtensionDegree) + "]");
  return FqField(detail::intern_ring(p, m, 1, smallest_irreducible(p, m)));
}

/// V_N over the residue field make_field(p, m); the modulus is lifted with the
/// same integer coefficients.
inline DvrRing make_dvr(std::uint64_t p, int m, int N) {
  if (N < 1) throw Error(ErrorKind::ValidationError, "precision N must be >= 1");
  FqField field = make_field(p, m);
  return DvrRing(detail::intern_ring(p, m, N, field.modulus_poly()));
}

inline FqField residue_field(const DvrRing& ring) { return FqField(ring.data()->residue); }

inline FqScalar reduce_scalar(const DvrScalar& x) {
  const auto* res = x.data()->residue;
  std::array<std::uint64_t, kMaxExtensionDegree> c{};
  for (int i = 0; i < x.degree(); ++i) c[i] = x.coeff(i) % res->p;
  return FqField(res).from_coeffs(std::span<const std::uint64_t>(c.data(), static_cast<std::size_t>(x.degree())));
}

/// Coefficientwise lift of a residue-field element into V_N (digits in [0, p)).
inline DvrScalar lift_scalar(const DvrRing& ring, const FqScalar& x) {
  return ring.from_coeffs(x.coeffs());
}

// ---------------------------------------------------------------------------
// Roots of unity

inline std::uint64_t multiplicative_order(const FqScalar& x) {
  if (x.is_zero()) throw Error(ErrorKind::NotInvertible, "zero has no multiplicative order");
  const std::uint64_t group_order = x.ring().residue_order() - 1;
  std::uint64_t order = group_order;
  for (std::uint64_t r : prime_factors(group_order)) {
    while (order % r == 0 && x.pow(order / r).is_one()) order /= r;
  }
  return order;
}

/// Generator of F_q^*, the first element in index order of full order.
inline FqScalar multiplicative_generator(const FqField& field) {
  const auto* d = field.data();
  std::call_once(d->generator_once, [&] {
    const std::uint64_t q = d->residue_order;
    const auto factors = prime_factors(q - 1);
    for (std::uint64_t idx = 1; idx < q; ++idx) {
      FqScalar g = field.from_index(idx);
      bool full = true;
      for (std::uint64_t r : factors) {
        if (g.pow((q - 1) / r).is_one()) {
          full = false;
          break;
        }
      }
      if (full) {
        d->generator_index = idx;
        return;
      }
    }
  });
  return field.from_index(d->generator_index);
}

inline FqScalar primitive_root_of_unity(const FqField& field, std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::BadOrder, "root order must be positive");
  if (n % field.p() == 0) throw Error(ErrorKind::BadOrder, "p divides " + std::to_string(n));
  const std::uint64_t q1 = field.residue_order() - 1;
  if (q1 % n != 0)
    throw Error(ErrorKind::NoSuchRoot, std::to_string(n) + " does not divide " + std::to_string(q1));
  return multiplicative_generator(field).pow(q1 / n);
}

/// Unique lift of an n-th root of unity zeta to V_N, by Newton iteration on x^n - 1.
inline DvrScalar hensel_lift_root(const DvrRing& ring, std::uint64_t n, const FqScalar& zeta) {
  if (n == 0 || n % ring.p() == 0) throw Error(ErrorKind::BadOrder, "p divides " + std::to_string(n));
  if (zeta.data() != ring.data()->residue) throw Error(ErrorKind::ValidationError, "zeta is not in the residue field of the ring");
  if (!zeta.pow(n).is_one()) throw Error(ErrorKind::NotARoot, "zeta^" + std::to_string(n) + " != 1");
  DvrScalar x = lift_scalar(ring, zeta);
  const DvrScalar one = ring.one();
  const DvrScalar n_scalar = ring.from_int(static_cast<std::int64_t>(n));
  int steps = 0;
  while (true) {
    DvrScalar residual = x.pow(n) - one;
    if (residual.is_zero()) break;
    if (++steps > 64) throw Error(ErrorKind::MismatchDetected, "Newton iteration did not converge");
    x = x - residual * (n_scalar * x.pow(n - 1)).inverse();
  }
  return x;
}

}  // namespace mf
