#pragma once

// Seeded sampling of ring elements and matrices.  std::mt19937_64 has a
// fully specified output sequence; the bounded draws below avoid the
// implementation-defined standard distributions so reports are reproducible
// across toolchains.

#include <cstdint>
#include <random>

#include "adcat/matrix.hpp"

namespace adcat {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [lo, hi] (modulo bias is irrelevant at these ranges).
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(gen_() % span);
  }

  bool coin() { return (gen_() & 1) != 0; }

  /// A random element; `bound` caps |integer| parts and rational denominators.
  Elem element(const Ring& r, std::int64_t bound) {
    switch (r.kind()) {
      case RingKind::Integers: return r.from_int(uniform(-bound, bound));
      case RingKind::Rationals: {
        mpq_class x(mpz_class(static_cast<long>(uniform(-bound, bound))),
                    mpz_class(static_cast<long>(uniform(1, std::max<std::int64_t>(bound, 1)))));
        x.canonicalize();
        return Elem{x};
      }
      case RingKind::PrimeField: return Elem{uniform(0, r.prime() - 1)};
      case RingKind::IntegersMod: return Elem{uniform(0, r.modulus() - 1)};
      case RingKind::FiniteField: {
        Poly a(static_cast<std::size_t>(r.degree()));
        for (auto& c : a) c = uniform(0, r.prime() - 1);
        return Elem{std::move(a)};
      }
      case RingKind::Product: {
        std::vector<Elem> xs;
        for (std::int64_t t = 0; t < r.width(); ++t) xs.push_back(element(r.base(), bound));
        return Elem{std::move(xs)};
      }
    }
    return r.zero();
  }

  Mat matrix(const Ring& r, std::size_t rows, std::size_t cols, std::int64_t bound) {
    Mat m(r, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = element(r, bound);
    return m;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace adcat
