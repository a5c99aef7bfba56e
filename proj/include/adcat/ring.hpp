#pragma once

// Exact coefficient rings and their automorphisms.
//
// A `Ring` is a cheap handle onto an immutable description; elements are
// plain `Elem` values that only make sense together with the ring that
// produced them.  `Scalar` pairs the two when an element travels alone.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "adcat/errors.hpp"

namespace adcat {

/// Coefficients of an element of F_{p^k}, lowest degree first, each in [0, p).
using Poly = std::vector<std::int64_t>;

struct Elem {
  std::variant<mpz_class, mpq_class, std::int64_t, Poly, std::vector<Elem>> v;
};

enum class RingKind { Integers, Rationals, PrimeField, FiniteField, IntegersMod, Product };

namespace detail {

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::int64_t mod_norm(std::int64_t a, std::int64_t n) {
  a %= n;
  return a < 0 ? a + n : a;
}

inline std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t n) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % n);
}

inline std::int64_t mod_pow(std::int64_t a, std::int64_t e, std::int64_t n) {
  std::int64_t r = 1 % n;
  a = mod_norm(a, n);
  while (e > 0) {
    if (e & 1) r = mod_mul(r, a, n);
    a = mod_mul(a, a, n);
    e >>= 1;
  }
  return r;
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Remainder of `a` modulo the monic `m` over F_p.  Both lowest degree first.
inline Poly poly_rem(Poly a, const Poly& m, std::int64_t p) {
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    std::int64_t lead = a.back();
    std::size_t shift = a.size() - 1 - dm;
    if (lead != 0)
      for (std::size_t i = 0; i <= dm; ++i)
        a[shift + i] = mod_norm(a[shift + i] - mod_mul(lead, m[i], p), p);
    a.pop_back();
  }
  return a;
}

inline bool poly_is_zero(const Poly& a) {
  for (auto c : a)
    if (c != 0) return false;
  return true;
}

// Monic irreducibility by trial division with every monic polynomial of
// degree 1..deg/2.  Degrees here are tiny.
inline bool poly_irreducible(const Poly& f, std::int64_t p) {
  const std::size_t deg = f.size() - 1;
  if (deg <= 1) return true;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::int64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::int64_t code = 0; code < count; ++code) {
      Poly g(d + 1, 0);
      g[d] = 1;
      std::int64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = c % p;
        c /= p;
      }
      if (poly_is_zero(poly_rem(f, g, p))) return false;
    }
  }
  return true;
}

// The monic irreducible of degree k over F_p whose coefficient vector
// (c_0, ..., c_{k-1}) read as a base-p number c_0 + c_1 p + ... is smallest.
inline Poly smallest_irreducible(std::int64_t p, std::int64_t k) {
  std::int64_t count = 1;
  for (std::int64_t i = 0; i < k; ++i) count *= p;
  for (std::int64_t code = 0; code < count; ++code) {
    Poly f(static_cast<std::size_t>(k) + 1, 0);
    f[static_cast<std::size_t>(k)] = 1;
    std::int64_t c = code;
    for (std::int64_t i = 0; i < k; ++i) {
      f[static_cast<std::size_t>(i)] = c % p;
      c /= p;
    }
    if (poly_irreducible(f, p)) return f;
  }
  throw InvalidRing("no irreducible polynomial found");
}

}  // namespace detail

class Ring {
 public:
  /// The integers.
  Ring() : Ring(make(RingKind::Integers)) {}

  static Ring integers() { return Ring(make(RingKind::Integers)); }
  static Ring rationals() { return Ring(make(RingKind::Rationals)); }

  static Ring prime_field(std::int64_t p) {
    if (!detail::is_prime(p)) throw InvalidRing("PrimeField needs a prime, got " + std::to_string(p));
    auto impl = make(RingKind::PrimeField);
    impl->p = p;
    return Ring(std::move(impl));
  }

  static Ring finite_field(std::int64_t p, std::int64_t k) {
    if (!detail::is_prime(p)) throw InvalidRing("FiniteField needs a prime, got " + std::to_string(p));
    if (k < 1 || k > 16) throw InvalidRing("FiniteField degree must lie in [1, 16]");
    auto impl = make(RingKind::FiniteField);
    impl->p = p;
    impl->k = k;
    impl->modulus_poly = detail::smallest_irreducible(p, k);
    return Ring(std::move(impl));
  }

  static Ring integers_mod(std::int64_t n) {
    if (n < 2) throw InvalidRing("IntegersMod needs n >= 2, got " + std::to_string(n));
    if (n > (std::int64_t{1} << 40)) throw InvalidRing("IntegersMod modulus too large");
    auto impl = make(RingKind::IntegersMod);
    impl->n = n;
    return Ring(std::move(impl));
  }

  static Ring product(const Ring& base, std::int64_t width) {
    if (width < 1) throw InvalidRing("Product needs width >= 1");
    auto impl = make(RingKind::Product);
    impl->base = std::make_shared<Ring>(base);
    impl->k = width;
    return Ring(std::move(impl));
  }

  RingKind kind() const { return impl_->kind; }
  std::int64_t prime() const { return impl_->p; }
  std::int64_t degree() const { return impl_->k; }
  std::int64_t modulus() const { return impl_->n; }
  std::int64_t width() const { return impl_->k; }
  const Ring& base() const { return *impl_->base; }
  /// Defining polynomial of a FiniteField, monic, lowest degree first.
  const Poly& field_modulus() const { return impl_->modulus_poly; }

  bool is_field() const {
    return kind() == RingKind::Rationals || kind() == RingKind::PrimeField ||
           kind() == RingKind::FiniteField;
  }
  /// Rings with a Euclidean elimination: the integers and every field.
  bool is_euclidean() const { return kind() == RingKind::Integers || is_field(); }
  bool is_domain() const { return is_euclidean(); }

  friend bool operator==(const Ring& a, const Ring& b) {
    if (a.impl_ == b.impl_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case RingKind::Integers:
      case RingKind::Rationals:
        return true;
      case RingKind::PrimeField:
        return a.prime() == b.prime();
      case RingKind::FiniteField:
        return a.prime() == b.prime() && a.degree() == b.degree();
      case RingKind::IntegersMod:
        return a.modulus() == b.modulus();
      case RingKind::Product:
        return a.width() == b.width() && a.base() == b.base();
    }
    return false;
  }
  friend bool operator!=(const Ring& a, const Ring& b) { return !(a == b); }

  std::string name() const {
    switch (kind()) {
      case RingKind::Integers: return "Integers";
      case RingKind::Rationals: return "Rationals";
      case RingKind::PrimeField: return "PrimeField(" + std::to_string(prime()) + ")";
      case RingKind::FiniteField:
        return "FiniteField(" + std::to_string(prime()) + "," + std::to_string(degree()) + ")";
      case RingKind::IntegersMod: return "IntegersMod(" + std::to_string(modulus()) + ")";
      case RingKind::Product: return "Product(" + base().name() + "," + std::to_string(width()) + ")";
    }
    return "?";
  }

  Elem from_int(long long c) const {
    switch (kind()) {
      case RingKind::Integers: return Elem{mpz_class(static_cast<long>(c))};
      case RingKind::Rationals: return Elem{mpq_class(static_cast<long>(c))};
      case RingKind::PrimeField: return Elem{detail::mod_norm(c, prime())};
      case RingKind::IntegersMod: return Elem{detail::mod_norm(c, modulus())};
      case RingKind::FiniteField: {
        Poly a(static_cast<std::size_t>(degree()), 0);
        a[0] = detail::mod_norm(c, prime());
        return Elem{std::move(a)};
      }
      case RingKind::Product: {
        std::vector<Elem> xs(static_cast<std::size_t>(width()), base().from_int(c));
        return Elem{std::move(xs)};
      }
    }
    throw InvalidRing("unknown ring kind");
  }
  Elem zero() const { return from_int(0); }
  Elem one() const { return from_int(1); }

  Elem add(const Elem& a, const Elem& b) const {
    switch (kind()) {
      case RingKind::Integers: return Elem{mpz_class(z(a) + z(b))};
      case RingKind::Rationals: return Elem{mpq_class(q(a) + q(b))};
      case RingKind::PrimeField: return Elem{detail::mod_norm(i(a) + i(b), prime())};
      case RingKind::IntegersMod: return Elem{detail::mod_norm(i(a) + i(b), modulus())};
      case RingKind::FiniteField: {
        Poly r = poly(a);
        const Poly& y = poly(b);
        for (std::size_t t = 0; t < r.size(); ++t) r[t] = detail::mod_norm(r[t] + y[t], prime());
        return Elem{std::move(r)};
      }
      case RingKind::Product: return componentwise(a, b, [this](const Elem& x, const Elem& y) {
        return base().add(x, y);
      });
    }
    throw InvalidRing("unknown ring kind");
  }

  Elem neg(const Elem& a) const {
    switch (kind()) {
      case RingKind::Integers: return Elem{mpz_class(-z(a))};
      case RingKind::Rationals: return Elem{mpq_class(-q(a))};
      case RingKind::PrimeField: return Elem{detail::mod_norm(-i(a), prime())};
      case RingKind::IntegersMod: return Elem{detail::mod_norm(-i(a), modulus())};
      case RingKind::FiniteField: {
        Poly r = poly(a);
        for (auto& c : r) c = detail::mod_norm(-c, prime());
        return Elem{std::move(r)};
      }
      case RingKind::Product: {
        std::vector<Elem> r;
        for (const auto& x : prod(a)) r.push_back(base().neg(x));
        return Elem{std::move(r)};
      }
    }
    throw InvalidRing("unknown ring kind");
  }

  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

  Elem mul(const Elem& a, const Elem& b) const {
    switch (kind()) {
      case RingKind::Integers: return Elem{mpz_class(z(a) * z(b))};
      case RingKind::Rationals: return Elem{mpq_class(q(a) * q(b))};
      case RingKind::PrimeField: return Elem{detail::mod_mul(i(a), i(b), prime())};
      case RingKind::IntegersMod: return Elem{detail::mod_mul(i(a), i(b), modulus())};
      case RingKind::FiniteField: {
        const Poly& x = poly(a);
        const Poly& y = poly(b);
        Poly r(x.size() + y.size() - 1, 0);
        for (std::size_t s = 0; s < x.size(); ++s)
          for (std::size_t t = 0; t < y.size(); ++t)
            r[s + t] = detail::mod_norm(r[s + t] + detail::mod_mul(x[s], y[t], prime()), prime());
        r = detail::poly_rem(std::move(r), field_modulus(), prime());
        r.resize(static_cast<std::size_t>(degree()), 0);
        return Elem{std::move(r)};
      }
      case RingKind::Product: return componentwise(a, b, [this](const Elem& x, const Elem& y) {
        return base().mul(x, y);
      });
    }
    throw InvalidRing("unknown ring kind");
  }

  Elem pow(const Elem& a, mpz_class e) const {
    Elem result = one();
    Elem sq = a;
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) result = mul(result, sq);
      sq = mul(sq, sq);
      e >>= 1;
    }
    return result;
  }

  bool equal(const Elem& a, const Elem& b) const {
    switch (kind()) {
      case RingKind::Integers: return z(a) == z(b);
      case RingKind::Rationals: return q(a) == q(b);
      case RingKind::PrimeField:
      case RingKind::IntegersMod: return i(a) == i(b);
      case RingKind::FiniteField: return poly(a) == poly(b);
      case RingKind::Product: {
        const auto& x = prod(a);
        const auto& y = prod(b);
        for (std::size_t t = 0; t < x.size(); ++t)
          if (!base().equal(x[t], y[t])) return false;
        return true;
      }
    }
    return false;
  }

  bool is_zero(const Elem& a) const {
    switch (kind()) {
      case RingKind::Integers: return sgn(z(a)) == 0;
      case RingKind::Rationals: return sgn(q(a)) == 0;
      case RingKind::PrimeField:
      case RingKind::IntegersMod: return i(a) == 0;
      case RingKind::FiniteField: return detail::poly_is_zero(poly(a));
      case RingKind::Product:
        for (const auto& x : prod(a))
          if (!base().is_zero(x)) return false;
        return true;
    }
    return false;
  }

  bool is_one(const Elem& a) const { return equal(a, one()); }

  std::optional<Elem> inverse(const Elem& a) const {
    switch (kind()) {
      case RingKind::Integers:
        if (z(a) == 1 || z(a) == -1) return a;
        return std::nullopt;
      case RingKind::Rationals:
        if (sgn(q(a)) == 0) return std::nullopt;
        return Elem{mpq_class(1 / q(a))};
      case RingKind::PrimeField:
        if (i(a) == 0) return std::nullopt;
        return Elem{detail::mod_pow(i(a), prime() - 2, prime())};
      case RingKind::IntegersMod: {
        mpz_class r, x(static_cast<long>(i(a))), n(static_cast<long>(modulus()));
        if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t()) == 0) return std::nullopt;
        return Elem{static_cast<std::int64_t>(r.get_si())};
      }
      case RingKind::FiniteField: {
        if (is_zero(a)) return std::nullopt;
        mpz_class order;
        mpz_ui_pow_ui(order.get_mpz_t(), static_cast<unsigned long>(prime()),
                      static_cast<unsigned long>(degree()));
        return pow(a, order - 2);
      }
      case RingKind::Product: {
        std::vector<Elem> r;
        for (const auto& x : prod(a)) {
          auto inv = base().inverse(x);
          if (!inv) return std::nullopt;
          r.push_back(*inv);
        }
        return Elem{std::move(r)};
      }
    }
    return std::nullopt;
  }

  bool is_unit(const Elem& a) const { return inverse(a).has_value(); }

  /// True when `a` is a well-formed element of this ring.
  bool contains(const Elem& a) const {
    switch (kind()) {
      case RingKind::Integers: return std::holds_alternative<mpz_class>(a.v);
      case RingKind::Rationals: return std::holds_alternative<mpq_class>(a.v);
      case RingKind::PrimeField:
      case RingKind::IntegersMod: {
        if (!std::holds_alternative<std::int64_t>(a.v)) return false;
        auto x = std::get<std::int64_t>(a.v);
        return x >= 0 && x < (kind() == RingKind::PrimeField ? prime() : modulus());
      }
      case RingKind::FiniteField: {
        if (!std::holds_alternative<Poly>(a.v)) return false;
        const auto& x = std::get<Poly>(a.v);
        if (x.size() != static_cast<std::size_t>(degree())) return false;
        for (auto c : x)
          if (c < 0 || c >= prime()) return false;
        return true;
      }
      case RingKind::Product: {
        if (!std::holds_alternative<std::vector<Elem>>(a.v)) return false;
        const auto& xs = std::get<std::vector<Elem>>(a.v);
        if (xs.size() != static_cast<std::size_t>(width())) return false;
        for (const auto& x : xs)
          if (!base().contains(x)) return false;
        return true;
      }
    }
    return false;
  }

  /// Number of elements, or 0 for the infinite rings.
  mpz_class cardinality() const {
    switch (kind()) {
      case RingKind::Integers:
      case RingKind::Rationals: return 0;
      case RingKind::PrimeField: return mpz_class(static_cast<long>(prime()));
      case RingKind::IntegersMod: return mpz_class(static_cast<long>(modulus()));
      case RingKind::FiniteField: {
        mpz_class r;
        mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(prime()),
                      static_cast<unsigned long>(degree()));
        return r;
      }
      case RingKind::Product: {
        mpz_class b = base().cardinality();
        mpz_class r = 1;
        for (std::int64_t t = 0; t < width(); ++t) r *= b;
        return r;
      }
    }
    return 0;
  }

  /// Human-readable rendering, used in diagnostics and reports.
  std::string to_string(const Elem& a) const {
    switch (kind()) {
      case RingKind::Integers: return z(a).get_str();
      case RingKind::Rationals: return q(a).get_str();
      case RingKind::PrimeField:
      case RingKind::IntegersMod: return std::to_string(i(a));
      case RingKind::FiniteField: {
        std::string s = "[";
        for (std::size_t t = 0; t < poly(a).size(); ++t) s += (t ? "," : "") + std::to_string(poly(a)[t]);
        return s + "]";
      }
      case RingKind::Product: {
        std::string s = "(";
        for (std::size_t t = 0; t < prod(a).size(); ++t) s += (t ? "," : "") + base().to_string(prod(a)[t]);
        return s + ")";
      }
    }
    return "?";
  }

  // Typed views.  They assume `contains(a)`.
  static const mpz_class& z(const Elem& a) { return std::get<mpz_class>(a.v); }
  static const mpq_class& q(const Elem& a) { return std::get<mpq_class>(a.v); }
  static std::int64_t i(const Elem& a) { return std::get<std::int64_t>(a.v); }
  static const Poly& poly(const Elem& a) { return std::get<Poly>(a.v); }
  static const std::vector<Elem>& prod(const Elem& a) { return std::get<std::vector<Elem>>(a.v); }

 private:
  struct Impl {
    RingKind kind{RingKind::Integers};
    std::int64_t p{0};
    std::int64_t k{0};
    std::int64_t n{0};
    Poly modulus_poly;
    std::shared_ptr<Ring> base;
  };

  static std::shared_ptr<Impl> make(RingKind k) {
    auto impl = std::make_shared<Impl>();
    impl->kind = k;
    return impl;
  }

  explicit Ring(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

  template <class F>
  Elem componentwise(const Elem& a, const Elem& b, F&& f) const {
    const auto& x = prod(a);
    const auto& y = prod(b);
    std::vector<Elem> r;
    r.reserve(x.size());
    for (std::size_t t = 0; t < x.size(); ++t) r.push_back(f(x[t], y[t]));
    return Elem{std::move(r)};
  }

  std::shared_ptr<const Impl> impl_;
};

/// An element bundled with its ring.
struct Scalar {
  Ring ring;
  Elem value;
};

enum class ArithOp { Add, Sub, Mul };

/// Checked binary arithmetic on bundled elements.
inline Scalar ring_arith(const Scalar& a, const Scalar& b, ArithOp op) {
  if (a.ring != b.ring) throw RingMismatch(a.ring.name() + " vs " + b.ring.name());
  if (!a.ring.contains(a.value) || !a.ring.contains(b.value))
    throw RingMismatch("operand is not an element of " + a.ring.name());
  switch (op) {
    case ArithOp::Add: return {a.ring, a.ring.add(a.value, b.value)};
    case ArithOp::Sub: return {a.ring, a.ring.sub(a.value, b.value)};
    case ArithOp::Mul: return {a.ring, a.ring.mul(a.value, b.value)};
  }
  throw Error("unknown arithmetic operation");
}

enum class AutKind { Identity, Frobenius, Rotation };

/// A ring automorphism from the supported families: the identity, a power of
/// Frobenius on a finite field, or a coordinate rotation on a product ring.
class RingAut {
 public:
  static RingAut identity(const Ring& r) { return RingAut(r, AutKind::Identity, 0); }

  static RingAut frobenius(const Ring& r, std::int64_t e) {
    if (r.kind() != RingKind::FiniteField) throw UnsupportedRing("Frobenius needs a FiniteField, got " + r.name());
    return RingAut(r, AutKind::Frobenius, detail::mod_norm(e, r.degree()));
  }

  static RingAut rotation(const Ring& r, std::int64_t offset) {
    if (r.kind() != RingKind::Product) throw UnsupportedRing("Rotation needs a Product ring, got " + r.name());
    return RingAut(r, AutKind::Rotation, detail::mod_norm(offset, r.width()));
  }

  const Ring& ring() const { return ring_; }
  AutKind kind() const { return kind_; }
  /// Frobenius exponent e (x -> x^(p^e)) or rotation offset.
  std::int64_t power() const { return power_; }

  bool is_trivial() const { return kind_ == AutKind::Identity || power_ == 0; }

  /// sigma^j for any integer j, including negative powers.
  RingAut pow(std::int64_t j) const {
    switch (kind_) {
      case AutKind::Identity: return *this;
      case AutKind::Frobenius: return frobenius(ring_, power_ * j);
      case AutKind::Rotation: return rotation(ring_, power_ * j);
    }
    return *this;
  }

  RingAut inverse() const { return pow(-1); }

  Elem apply(const Elem& a) const {
    if (is_trivial()) return a;
    if (kind_ == AutKind::Frobenius) {
      Elem r = a;
      for (std::int64_t t = 0; t < power_; ++t) r = ring_.pow(r, mpz_class(static_cast<long>(ring_.prime())));
      return r;
    }
    const auto& xs = Ring::prod(a);
    const auto w = xs.size();
    std::vector<Elem> r;
    r.reserve(w);
    for (std::size_t t = 0; t < w; ++t) r.push_back(xs[(t + static_cast<std::size_t>(power_)) % w]);
    return Elem{std::move(r)};
  }

  Scalar apply(const Scalar& a) const {
    if (a.ring != ring_) throw RingMismatch(a.ring.name() + " vs " + ring_.name());
    return {ring_, apply(a.value)};
  }

  std::string name() const {
    switch (kind_) {
      case AutKind::Identity: return "Identity";
      case AutKind::Frobenius: return "Frobenius(" + std::to_string(power_) + ")";
      case AutKind::Rotation: return "Rotation(" + std::to_string(power_) + ")";
    }
    return "?";
  }

  friend bool operator==(const RingAut& a, const RingAut& b) {
    if (a.ring_ != b.ring_) return false;
    if (a.is_trivial() && b.is_trivial()) return true;
    return a.kind_ == b.kind_ && a.power_ == b.power_;
  }
  friend bool operator!=(const RingAut& a, const RingAut& b) { return !(a == b); }

 private:
  RingAut(Ring r, AutKind k, std::int64_t power) : ring_(std::move(r)), kind_(k), power_(power) {}

  Ring ring_;
  AutKind kind_;
  std::int64_t power_;
};

}  // namespace adcat
