#pragma once

// Brute-force oracles shared by the test suites.  Nothing here calls the
// elimination routines under test: enumeration and matrix products only.

#include <functional>
#include <vector>

#include "adcat/matrix.hpp"

namespace adcat::testing {

/// Every element of a finite ring, built directly from its representation.
inline std::vector<Elem> all_elements(const Ring& r) {
  std::vector<Elem> out;
  switch (r.kind()) {
    case RingKind::PrimeField:
      for (std::int64_t a = 0; a < r.prime(); ++a) out.push_back(Elem{a});
      break;
    case RingKind::IntegersMod:
      for (std::int64_t a = 0; a < r.modulus(); ++a) out.push_back(Elem{a});
      break;
    case RingKind::FiniteField: {
      const auto k = static_cast<std::size_t>(r.degree());
      std::int64_t count = 1;
      for (std::size_t t = 0; t < k; ++t) count *= r.prime();
      for (std::int64_t code = 0; code < count; ++code) {
        Poly a(k);
        std::int64_t c = code;
        for (auto& x : a) {
          x = c % r.prime();
          c /= r.prime();
        }
        out.push_back(Elem{a});
      }
      break;
    }
    case RingKind::Product: {
      const auto base = all_elements(r.base());
      std::vector<std::vector<Elem>> acc{{}};
      for (std::int64_t t = 0; t < r.width(); ++t) {
        std::vector<std::vector<Elem>> next;
        for (const auto& prefix : acc)
          for (const auto& b : base) {
            auto v = prefix;
            v.push_back(b);
            next.push_back(std::move(v));
          }
        acc = std::move(next);
      }
      for (auto& v : acc) out.push_back(Elem{std::move(v)});
      break;
    }
    default:
      break;
  }
  return out;
}

/// Calls `visit` on every rows x cols matrix over a finite ring.
inline void for_each_matrix(const Ring& r, std::size_t rows, std::size_t cols,
                            const std::function<void(const Mat&)>& visit) {
  const auto elems = all_elements(r);
  const std::size_t cells = rows * cols;
  std::vector<std::size_t> idx(cells, 0);
  for (;;) {
    Mat m(r, rows, cols);
    for (std::size_t t = 0; t < cells; ++t) m(t / cols, t % cols) = elems[idx[t]];
    visit(m);
    std::size_t t = 0;
    while (t < cells && ++idx[t] == elems.size()) idx[t++] = 0;
    if (t == cells) break;
  }
}

/// Does some x (over the finite ring) satisfy a * x = b?  b is a column.
inline bool brute_force_solvable(const Mat& a, const Mat& b) {
  bool found = false;
  for_each_matrix(a.ring(), a.cols(), b.cols(), [&](const Mat& x) {
    if (!found && a * x == b) found = true;
  });
  return found;
}

}  // namespace adcat::testing
