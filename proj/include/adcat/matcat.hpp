#pragma once

// The additive matrix category over a ring: objects are ranks (optionally
// graded), morphisms are matrices of shape cod.rank x dom.rank.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "adcat/linalg.hpp"

namespace adcat {

struct Obj {
  std::size_t rank{0};
  /// Per-summand grades; empty means "ungraded".  Only the nested model reads them.
  std::vector<std::size_t> grades;

  Obj() = default;
  explicit Obj(std::size_t r) : rank(r) {}
  Obj(std::size_t r, std::vector<std::size_t> g) : rank(r), grades(std::move(g)) {
    if (!grades.empty() && grades.size() != rank)
      throw DimensionMismatch("object of rank " + std::to_string(rank) + " with " +
                              std::to_string(grades.size()) + " grades");
  }

  bool graded() const { return !grades.empty(); }

  friend bool operator==(const Obj& a, const Obj& b) { return a.rank == b.rank && a.grades == b.grades; }
  friend bool operator!=(const Obj& a, const Obj& b) { return !(a == b); }
};

inline Obj direct_sum(const Obj& a, const Obj& b) {
  if (a.graded() != b.graded() && a.rank != 0 && b.rank != 0)
    throw ObjectMismatch("direct sum of a graded and an ungraded object");
  Obj s(a.rank + b.rank);
  if (a.graded() || b.graded()) {
    s.grades = a.grades;
    s.grades.insert(s.grades.end(), b.grades.begin(), b.grades.end());
  }
  return s;
}

class Mor {
 public:
  Mor() = default;
  Mor(Obj dom, Obj cod, Mat mat) : dom_(std::move(dom)), cod_(std::move(cod)), mat_(std::move(mat)) {
    if (mat_.rows() != cod_.rank || mat_.cols() != dom_.rank)
      throw DimensionMismatch("matrix " + detail::shape(mat_) + " for a morphism " +
                              std::to_string(dom_.rank) + " -> " + std::to_string(cod_.rank));
  }
  /// Ungraded morphism carrying exactly the shape of `mat`.
  explicit Mor(Mat mat) : Mor(Obj(mat.cols()), Obj(mat.rows()), mat) {}

  static Mor identity(const Ring& r, const Obj& a) { return Mor(a, a, Mat::identity(r, a.rank)); }
  static Mor zero(const Ring& r, const Obj& dom, const Obj& cod) { return Mor(dom, cod, Mat(r, cod.rank, dom.rank)); }

  const Obj& dom() const { return dom_; }
  const Obj& cod() const { return cod_; }
  const Mat& mat() const { return mat_; }
  const Ring& ring() const { return mat_.ring(); }
  bool is_zero() const { return mat_.is_zero(); }

  friend bool operator==(const Mor& a, const Mor& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.mat_ == b.mat_;
  }
  friend bool operator!=(const Mor& a, const Mor& b) { return !(a == b); }

 private:
  Obj dom_;
  Obj cod_;
  Mat mat_;
};

/// g o f.
inline Mor compose(const Mor& g, const Mor& f) {
  if (f.cod() != g.dom())
    throw ObjectMismatch("compose: codomain rank " + std::to_string(f.cod().rank) + " vs domain rank " +
                         std::to_string(g.dom().rank));
  return Mor(f.dom(), g.cod(), g.mat() * f.mat());
}

inline Mor add(const Mor& f, const Mor& g) {
  if (f.dom() != g.dom() || f.cod() != g.cod()) throw ObjectMismatch("sum of morphisms between different objects");
  return Mor(f.dom(), f.cod(), f.mat() + g.mat());
}

inline Mor sub(const Mor& f, const Mor& g) {
  if (f.dom() != g.dom() || f.cod() != g.cod()) throw ObjectMismatch("difference of morphisms between different objects");
  return Mor(f.dom(), f.cod(), f.mat() - g.mat());
}

inline Mor direct_sum(const Mor& f, const Mor& g) {
  if (f.ring() != g.ring()) throw RingMismatch(f.ring().name() + " vs " + g.ring().name());
  return Mor(direct_sum(f.dom(), g.dom()), direct_sum(f.cod(), g.cod()), block_diag(f.mat(), g.mat()));
}

/// Splitting data of an idempotent p on A: u : A -> B (+) C with
/// u p u^-1 = diag(Id_B, 0).
struct IdemSplit {
  Mor p;
  Mor u;
  Mor u_inv;
  std::size_t split_rank{0};
};

/// Re-checks the four defining equations by explicit multiplication.
inline bool verify(const IdemSplit& s) {
  const Ring& r = s.p.ring();
  const std::size_t n = s.p.dom().rank;
  Mat target(r, n, n);
  for (std::size_t i = 0; i < s.split_rank; ++i) target(i, i) = r.one();
  return s.p.mat() * s.p.mat() == s.p.mat() && (s.u.mat() * s.u_inv.mat()).is_identity() &&
         (s.u_inv.mat() * s.u.mat()).is_identity() && s.u.mat() * s.p.mat() * s.u_inv.mat() == target;
}

/// Splits an idempotent over a field or the integers.  The columns of u^-1
/// are the canonical bases of im(p) and im(1 - p), in that order.
inline IdemSplit idem_split(const Mor& p) {
  const Ring& r = p.ring();
  if (p.dom() != p.cod()) throw ObjectMismatch("idempotent must be an endomorphism");
  if (!r.is_euclidean()) throw UnsupportedRing("idempotent splitting over " + r.name());
  if (p.mat() * p.mat() != p.mat()) throw NotIdempotent();
  const std::size_t n = p.dom().rank;
  const Mat image = column_hermite(p.mat());
  const Mat complement = column_hermite(Mat::identity(r, n) - p.mat());
  const Mat u_inv = hstack(image, complement);
  auto u = inverse(u_inv);
  if (!u) throw Error("image and complement bases do not form a basis");
  Obj split(n);
  return IdemSplit{p, Mor(p.dom(), split, *u), Mor(split, p.dom(), u_inv), image.cols()};
}

/// g with f = f' o g (the preorder f "is contained in" f'), or nullopt.
inline std::optional<Mor> divides(const Mor& f, const Mor& f_prime) {
  if (f.cod() != f_prime.cod()) throw ObjectMismatch("divides needs a common codomain");
  auto g = solve_linear(f_prime.mat(), f.mat());
  if (!g) return std::nullopt;
  return Mor(f.dom(), f_prime.dom(), *g);
}

inline std::size_t k0_rank(const Obj& x) { return x.rank; }

inline std::size_t k0_rank(const IdemSplit& s) {
  if (!s.p.ring().is_euclidean()) throw UnsupportedRing("K0 rank over " + s.p.ring().name());
  return s.split_rank;
}

}  // namespace adcat
