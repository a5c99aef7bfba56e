#pragma once

// Exact linear algebra over the supported rings: Smith and column Hermite
// normal forms over Euclidean rings, and solving / kernels everywhere.
//
// IntegersMod(n) is handled by lifting to the integers with n*Id adjoined;
// Product rings split into their coordinate rings.

#include <algorithm>
#include <optional>
#include <vector>

#include "adcat/matrix.hpp"

namespace adcat {

struct SmithForm {
  Mat U;      // A = U * D * V
  Mat D;
  Mat V;
  Mat U_inv;  // U_inv * A * V_inv = D
  Mat V_inv;
  std::size_t rank{0};
};

namespace detail {

// Euclidean helpers for Integers and fields.
inline bool euclid_less(const Ring& r, const Elem& a, const Elem& b) {
  if (r.kind() == RingKind::Integers) return mpz_cmpabs(Ring::z(a).get_mpz_t(), Ring::z(b).get_mpz_t()) < 0;
  return false;
}

inline Elem euclid_quot(const Ring& r, const Elem& a, const Elem& b) {
  if (r.kind() == RingKind::Integers) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), Ring::z(a).get_mpz_t(), Ring::z(b).get_mpz_t());
    return Elem{q};
  }
  return r.mul(a, *r.inverse(b));
}

inline bool euclid_divides(const Ring& r, const Elem& d, const Elem& a) {
  if (r.kind() == RingKind::Integers) {
    if (sgn(Ring::z(d)) == 0) return sgn(Ring::z(a)) == 0;
    return mpz_divisible_p(Ring::z(a).get_mpz_t(), Ring::z(d).get_mpz_t()) != 0;
  }
  return !r.is_zero(d) || r.is_zero(a);
}

inline Elem euclid_exact_div(const Ring& r, const Elem& a, const Elem& d) {
  if (r.kind() == RingKind::Integers) {
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), Ring::z(a).get_mpz_t(), Ring::z(d).get_mpz_t());
    return Elem{q};
  }
  return r.mul(a, *r.inverse(d));
}

inline bool is_negative(const Ring& r, const Elem& a) {
  return r.kind() == RingKind::Integers && sgn(Ring::z(a)) < 0;
}

// Elementary operations on a working matrix.
inline void row_addmul(Mat& a, std::size_t dst, std::size_t src, const Elem& c) {
  const Ring& r = a.ring();
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!r.is_zero(a(src, j))) a(dst, j) = r.add(a(dst, j), r.mul(c, a(src, j)));
}

inline void col_addmul(Mat& a, std::size_t dst, std::size_t src, const Elem& c) {
  const Ring& r = a.ring();
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (!r.is_zero(a(i, src))) a(i, dst) = r.add(a(i, dst), r.mul(c, a(i, src)));
}

inline void row_swap(Mat& a, std::size_t x, std::size_t y) {
  if (x == y) return;
  for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(x, j), a(y, j));
}

inline void col_swap(Mat& a, std::size_t x, std::size_t y) {
  if (x == y) return;
  for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a(i, x), a(i, y));
}

inline void row_scale(Mat& a, std::size_t x, const Elem& c) {
  for (std::size_t j = 0; j < a.cols(); ++j) a(x, j) = a.ring().mul(c, a(x, j));
}

inline void col_scale(Mat& a, std::size_t x, const Elem& c) {
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, x) = a.ring().mul(c, a(i, x));
}

inline Mat lift_mod_to_integers(const Mat& a) {
  Ring zz = Ring::integers();
  Mat l(zz, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) l(i, j) = Elem{mpz_class(static_cast<long>(Ring::i(a(i, j))))};
  return l;
}

inline Mat reduce_integers_mod(const Mat& a, const Ring& target) {
  Mat l(target, a.rows(), a.cols());
  const mpz_class n(static_cast<long>(target.modulus()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      mpz_class v;
      mpz_fdiv_r(v.get_mpz_t(), Ring::z(a(i, j)).get_mpz_t(), n.get_mpz_t());
      l(i, j) = Elem{static_cast<std::int64_t>(v.get_si())};
    }
  return l;
}

}  // namespace detail

/// Coordinate `t` of a matrix over a Product ring.
inline Mat component(const Mat& a, std::size_t t) {
  if (a.ring().kind() != RingKind::Product) throw UnsupportedRing("component of a non-product matrix");
  const Ring& base = a.ring().base();
  Mat c(base, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = Ring::prod(a(i, j))[t];
  return c;
}

/// Inverse of `component`: glue one matrix per coordinate into a product-ring matrix.
inline Mat assemble(const Ring& product, const std::vector<Mat>& parts) {
  if (product.kind() != RingKind::Product || parts.size() != static_cast<std::size_t>(product.width()))
    throw RingMismatch("assemble needs one part per coordinate of " + product.name());
  const std::size_t r = parts.front().rows(), c = parts.front().cols();
  for (const auto& p : parts) {
    if (p.rows() != r || p.cols() != c) throw DimensionMismatch("parts of differing shapes");
    if (p.ring() != product.base()) throw RingMismatch(p.ring().name() + " vs " + product.base().name());
  }
  Mat out(product, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      std::vector<Elem> xs;
      xs.reserve(parts.size());
      for (const auto& p : parts) xs.push_back(p(i, j));
      out(i, j) = Elem{std::move(xs)};
    }
  return out;
}

/// A = U * D * V with U, V invertible and D diagonal.  Over the integers
/// d_1 | d_2 | ... with d_i >= 0; over a field d_i is 0 or 1.  Pivots: the
/// entry of least absolute value (integers) or the first nonzero entry in
/// column-major order (fields).
inline SmithForm smith_normal_form(const Mat& a) {
  const Ring& r = a.ring();
  if (!r.is_euclidean()) throw UnsupportedRing("Smith normal form over " + r.name());
  const std::size_t m = a.rows(), n = a.cols();
  Mat d = a;
  Mat p = Mat::identity(r, m), p_inv = Mat::identity(r, m);
  Mat q = Mat::identity(r, n), q_inv = Mat::identity(r, n);
  const bool integral = r.kind() == RingKind::Integers;

  // Each operation is mirrored on the transforms so that p * a * q = d and
  // p_inv, q_inv stay the exact inverses.
  auto radd = [&](std::size_t dst, std::size_t src, const Elem& c) {
    detail::row_addmul(d, dst, src, c);
    detail::row_addmul(p, dst, src, c);
    detail::col_addmul(p_inv, src, dst, r.neg(c));
  };
  auto cadd = [&](std::size_t dst, std::size_t src, const Elem& c) {
    detail::col_addmul(d, dst, src, c);
    detail::col_addmul(q, dst, src, c);
    detail::row_addmul(q_inv, src, dst, r.neg(c));
  };
  auto rswap = [&](std::size_t x, std::size_t y) {
    detail::row_swap(d, x, y);
    detail::row_swap(p, x, y);
    detail::col_swap(p_inv, x, y);
  };
  auto cswap = [&](std::size_t x, std::size_t y) {
    detail::col_swap(d, x, y);
    detail::col_swap(q, x, y);
    detail::row_swap(q_inv, x, y);
  };
  auto rscale = [&](std::size_t x, const Elem& u) {
    detail::row_scale(d, x, u);
    detail::row_scale(p, x, u);
    detail::col_scale(p_inv, x, *r.inverse(u));
  };

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t j = t; j < n && !(best && !integral); ++j)
      for (std::size_t i = t; i < m; ++i) {
        if (r.is_zero(d(i, j))) continue;
        if (!best || detail::euclid_less(r, d(i, j), d(best->first, best->second))) best = {i, j};
        if (!integral) break;
      }
    if (!best) break;
    rswap(t, best->first);
    cswap(t, best->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (r.is_zero(d(i, t))) continue;
        radd(i, t, r.neg(detail::euclid_quot(r, d(i, t), d(t, t))));
        if (!r.is_zero(d(i, t))) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (r.is_zero(d(t, j))) continue;
        cadd(j, t, r.neg(detail::euclid_quot(r, d(t, j), d(t, t))));
        if (!r.is_zero(d(t, j))) clean = false;
      }
      if (!clean) {
        // A nonzero remainder is smaller than the pivot; promote the least one.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (!r.is_zero(d(i, t)) && detail::euclid_less(r, d(i, t), d(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (!r.is_zero(d(t, j)) && detail::euclid_less(r, d(t, j), d(bi, bj))) bi = t, bj = j;
        rswap(t, bi);
        cswap(t, bj);
        continue;
      }
      if (integral) {
        std::optional<std::size_t> bad;
        for (std::size_t i = t + 1; i < m && !bad; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (!detail::euclid_divides(r, d(t, t), d(i, j))) {
              bad = i;
              break;
            }
        if (bad) {
          radd(t, *bad, r.one());
          continue;
        }
      }
      break;
    }
    if (integral) {
      if (detail::is_negative(r, d(t, t))) rscale(t, r.from_int(-1));
    } else {
      rscale(t, *r.inverse(d(t, t)));
    }
  }
  return SmithForm{p_inv, d, q_inv, p, q, t};
}

/// Column Hermite normal form of the column span (integers), or reduced
/// column echelon form (fields).  Zero columns are dropped, so the result is
/// a canonical basis of the span.
inline Mat column_hermite(const Mat& k) {
  const Ring& r = k.ring();
  if (!r.is_euclidean()) throw UnsupportedRing("Hermite normal form over " + r.name());
  const bool integral = r.kind() == RingKind::Integers;
  Mat h = k;
  std::size_t piv = 0;
  for (std::size_t i = 0; i < h.rows() && piv < h.cols(); ++i) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t c = piv; c < h.cols(); ++c) {
        if (r.is_zero(h(i, c))) continue;
        if (!best || detail::euclid_less(r, h(i, c), h(i, *best))) best = c;
        if (!integral) break;
      }
      if (!best) break;
      detail::col_swap(h, piv, *best);
      bool others = false;
      for (std::size_t c = piv + 1; c < h.cols(); ++c) {
        if (r.is_zero(h(i, c))) continue;
        detail::col_addmul(h, c, piv, r.neg(detail::euclid_quot(r, h(i, c), h(i, piv))));
        if (!r.is_zero(h(i, c))) others = true;
      }
      if (others) continue;
      if (integral) {
        if (detail::is_negative(r, h(i, piv))) detail::col_scale(h, piv, r.from_int(-1));
      } else {
        detail::col_scale(h, piv, *r.inverse(h(i, piv)));
      }
      for (std::size_t c = 0; c < piv; ++c)
        if (!r.is_zero(h(i, c)))
          detail::col_addmul(h, c, piv, r.neg(detail::euclid_quot(r, h(i, c), h(i, piv))));
      ++piv;
      break;
    }
  }
  return h.block(0, 0, h.rows(), piv);
}

namespace detail {

inline std::optional<Mat> solve_euclidean(const Mat& a, const Mat& b) {
  const Ring& r = a.ring();
  const std::size_t n = a.cols(), k = b.cols();
  if (n == 0) {
    if (!b.is_zero()) return std::nullopt;
    return Mat(r, 0, k);
  }
  const SmithForm s = smith_normal_form(a);
  const Mat c = s.U_inv * b;
  Mat y(r, n, k);
  for (std::size_t col = 0; col < k; ++col) {
    for (std::size_t i = 0; i < s.rank; ++i) {
      if (!euclid_divides(r, s.D(i, i), c(i, col))) return std::nullopt;
      y(i, col) = euclid_exact_div(r, c(i, col), s.D(i, i));
    }
    for (std::size_t i = s.rank; i < c.rows(); ++i)
      if (!r.is_zero(c(i, col))) return std::nullopt;
  }
  return s.V_inv * y;
}

// [lift(a) | n * Id], the integer system whose solutions are the congruence solutions.
inline Mat congruence_system(const Mat& a) {
  Mat lifted = lift_mod_to_integers(a);
  Mat n_id = Mat::scalar(lifted.ring(), a.rows(), Elem{mpz_class(static_cast<long>(a.ring().modulus()))});
  return hstack(lifted, n_id);
}

}  // namespace detail

/// X with A * X = B exactly, or nullopt when no solution exists over the ring.
inline std::optional<Mat> solve_linear(const Mat& a, const Mat& b) {
  if (a.ring() != b.ring()) throw RingMismatch(a.ring().name() + " vs " + b.ring().name());
  if (a.rows() != b.rows())
    throw DimensionMismatch("solve with A " + detail::shape(a) + " and B " + detail::shape(b));
  const Ring& r = a.ring();
  switch (r.kind()) {
    case RingKind::IntegersMod: {
      auto x = detail::solve_euclidean(detail::congruence_system(a), detail::lift_mod_to_integers(b));
      if (!x) return std::nullopt;
      return detail::reduce_integers_mod(x->block(0, 0, a.cols(), b.cols()), r);
    }
    case RingKind::Product: {
      std::vector<Mat> parts;
      for (std::int64_t t = 0; t < r.width(); ++t) {
        auto x = solve_linear(component(a, static_cast<std::size_t>(t)), component(b, static_cast<std::size_t>(t)));
        if (!x) return std::nullopt;
        parts.push_back(std::move(*x));
      }
      return assemble(r, parts);
    }
    default:
      return detail::solve_euclidean(a, b);
  }
}

/// Columns generating {x : A x = 0}, in canonical form.  Over the integers and
/// fields they form a basis; over IntegersMod(n) a generating set (the
/// reduced Hermite basis of the lattice {x in Z^n : A x = 0 mod n}); over a
/// product ring the coordinatewise generators, padded with zero columns.
inline Mat kernel_gens(const Mat& a) {
  const Ring& r = a.ring();
  const std::size_t n = a.cols();
  switch (r.kind()) {
    case RingKind::IntegersMod: {
      Mat k = kernel_gens(detail::congruence_system(a));
      Mat lattice = column_hermite(k.block(0, 0, n, k.cols()));
      Mat reduced = detail::reduce_integers_mod(lattice, r);
      std::vector<std::size_t> keep;
      for (std::size_t c = 0; c < reduced.cols(); ++c)
        if (!reduced.column(c).is_zero()) keep.push_back(c);
      Mat out(r, n, keep.size());
      for (std::size_t c = 0; c < keep.size(); ++c) out.set_block(0, c, reduced.column(keep[c]));
      return out;
    }
    case RingKind::Product: {
      std::vector<Mat> parts;
      std::size_t width = 0;
      for (std::int64_t t = 0; t < r.width(); ++t) {
        parts.push_back(kernel_gens(component(a, static_cast<std::size_t>(t))));
        width = std::max(width, parts.back().cols());
      }
      for (auto& p : parts) {
        Mat padded(p.ring(), n, width);
        padded.set_block(0, 0, p);
        p = std::move(padded);
      }
      return assemble(r, parts);
    }
    default: {
      if (n == 0) return Mat(r, 0, 0);
      const SmithForm s = smith_normal_form(a);
      return column_hermite(s.V_inv.block(0, s.rank, n, n - s.rank));
    }
  }
}

/// Rank over the integers or a field.
inline std::size_t rank(const Mat& a) { return smith_normal_form(a).rank; }

/// Two-sided inverse, or nullopt when `a` is not invertible over its ring.
inline std::optional<Mat> inverse(const Mat& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  auto x = solve_linear(a, Mat::identity(a.ring(), a.rows()));
  if (!x || !(*x * a).is_identity()) return std::nullopt;
  return x;
}

}  // namespace adcat
