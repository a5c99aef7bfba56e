#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "adcat/errors.hpp"
#include "adcat/ring.hpp"

namespace adcat {

/// Dense row-major matrix over a `Ring`.
class Mat {
 public:
  Mat() = default;
  Mat(Ring ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, ring_.zero()) {}
  Mat(Ring ring, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw DimensionMismatch("entry count " + std::to_string(data_.size()) + " for a " +
                              std::to_string(rows_) + "x" + std::to_string(cols_) + " matrix");
    for (const auto& e : data_)
      if (!ring_.contains(e)) throw RingMismatch("entry is not an element of " + ring_.name());
  }

  /// Builds a matrix from small integer literals mapped into `ring`.
  static Mat from_ints(const Ring& ring, const std::vector<std::vector<long long>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    Mat m(ring, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw DimensionMismatch("ragged integer literal");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = ring.from_int(rows[i][j]);
    }
    return m;
  }

  static Mat identity(const Ring& ring, std::size_t n) {
    Mat m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ring.one();
    return m;
  }

  static Mat scalar(const Ring& ring, std::size_t n, const Elem& c) {
    Mat m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
    return m;
  }

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }
  const std::vector<Elem>& entries() const { return data_; }

  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Elem& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& e : data_)
      if (!ring_.is_zero(e)) return false;
    return true;
  }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        const auto& e = (*this)(i, j);
        if (i == j ? !ring_.is_one(e) : !ring_.is_zero(e)) return false;
      }
    return true;
  }

  Mat transpose() const {
    Mat t(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
    Mat b(ring_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Mat& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionMismatch("block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Mat column(std::size_t j) const { return block(0, j, rows_, 1); }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? "; " : "";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? " " : "") + ring_.to_string((*this)(i, j));
    }
    return s + "]";
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    if (a.ring_ != b.ring_ || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t t = 0; t < a.data_.size(); ++t)
      if (!a.ring_.equal(a.data_[t], b.data_[t])) return false;
    return true;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

 private:
  Ring ring_;
  std::size_t rows_{0};
  std::size_t cols_{0};
  std::vector<Elem> data_;
};

namespace detail {

inline void require_same_ring(const Mat& a, const Mat& b) {
  if (a.ring() != b.ring()) throw RingMismatch(a.ring().name() + " vs " + b.ring().name());
}

inline std::string shape(const Mat& a) { return std::to_string(a.rows()) + "x" + std::to_string(a.cols()); }

}  // namespace detail

inline Mat operator*(const Mat& a, const Mat& b) {
  detail::require_same_ring(a, b);
  if (a.cols() != b.rows()) throw DimensionMismatch(detail::shape(a) + " * " + detail::shape(b));
  const Ring& r = a.ring();
  Mat c(r, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Elem& aik = a(i, k);
      if (r.is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!r.is_zero(b(k, j))) c(i, j) = r.add(c(i, j), r.mul(aik, b(k, j)));
    }
  return c;
}

inline Mat operator+(const Mat& a, const Mat& b) {
  detail::require_same_ring(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch(detail::shape(a) + " + " + detail::shape(b));
  Mat c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.ring().add(a(i, j), b(i, j));
  return c;
}

inline Mat operator-(const Mat& a) {
  Mat c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.ring().neg(a(i, j));
  return c;
}

inline Mat operator-(const Mat& a, const Mat& b) { return a + (-b); }

inline Mat scale(const Elem& c, const Mat& a) {
  Mat r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a.ring().mul(c, a(i, j));
  return r;
}

inline Mat hstack(const Mat& a, const Mat& b) {
  detail::require_same_ring(a, b);
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack " + detail::shape(a) + " | " + detail::shape(b));
  Mat c(a.ring(), a.rows(), a.cols() + b.cols());
  c.set_block(0, 0, a);
  c.set_block(0, a.cols(), b);
  return c;
}

inline Mat vstack(const Mat& a, const Mat& b) {
  detail::require_same_ring(a, b);
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack " + detail::shape(a) + " / " + detail::shape(b));
  Mat c(a.ring(), a.rows() + b.rows(), a.cols());
  c.set_block(0, 0, a);
  c.set_block(a.rows(), 0, b);
  return c;
}

inline Mat block_diag(const Mat& a, const Mat& b) {
  detail::require_same_ring(a, b);
  Mat c(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  c.set_block(0, 0, a);
  c.set_block(a.rows(), a.cols(), b);
  return c;
}

/// Kronecker product: (a (x) b)(i*br + k, j*bc + l) = a(i,j) b(k,l).
inline Mat kron(const Mat& a, const Mat& b) {
  detail::require_same_ring(a, b);
  const Ring& r = a.ring();
  Mat c(r, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (r.is_zero(a(i, j))) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = r.mul(a(i, j), b(k, l));
    }
  return c;
}

/// Entrywise action of a ring automorphism.
inline Mat apply_aut(const RingAut& sigma, const Mat& a) {
  if (sigma.ring() != a.ring()) throw RingMismatch(sigma.ring().name() + " vs " + a.ring().name());
  if (sigma.is_trivial()) return a;
  Mat r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = sigma.apply(a(i, j));
  return r;
}

}  // namespace adcat
