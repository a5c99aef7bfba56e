#pragma once

// The characteristic sequence of a represented module M = Hom(-, A) over the
// twisted polynomial category, evaluated at the rank-one generator B and
// truncated to polynomial degrees < D and summands Phi^m, m < D.
//
// An element of M(Phi^m B) is y = sum_k y_k t^k : B -> A with y_k in R^r,
// stored as the vector (y_0, ..., y_{D-1}) of length D r, index k r + i.
// s_{m,n} = M(Id t^{m-n}) : M(Phi^m B) -> M(Phi^n B).
//
//   source  = (+)_{m=1}^{D-1} M(Phi^m B)
//   target  = (+)_{n=0}^{D-1} M(Phi^n B)
//   alpha - beta : source -> target   column m: -s_{m,m-1} at row m-1, Id at row m
//   e            : target -> M(B)     (Id, s_{1,0}, s_{2,0}, ...)
//   tau          : target -> source   tau_{m,n} = s_{n,m} for n >= m
//   sigma        : M(B) -> target     (Id, 0, 0, ...)^T

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "adcat/sampling.hpp"
#include "adcat/twisted.hpp"

namespace adcat {

struct CharSeqMaps {
  Obj base_obj;
  RingAut aut;
  std::size_t depth{0};
  std::map<std::pair<std::size_t, std::size_t>, Mat> shift;  // (m, n) -> s_{m,n}
  Mat alpha_minus_beta;
  Mat e;
  Mat tau;
  Mat sigma;

  std::size_t piece() const { return depth * base_obj.rank; }
  const Ring& ring() const { return aut.ring(); }
};

namespace detail {

inline LaurentMor charseq_element(const CharSeqMaps& c, const Mat& v) {
  const std::size_t r = c.base_obj.rank;
  std::map<long long, Mat> coeffs;
  for (std::size_t k = 0; k < c.depth; ++k) coeffs.emplace(static_cast<long long>(k), v.block(k * r, 0, r, 1));
  return LaurentMor(Obj(1), c.base_obj, c.aut, std::move(coeffs));
}

// Truncates to degrees < depth.
inline Mat charseq_vector(const CharSeqMaps& c, const LaurentMor& y) {
  const std::size_t r = c.base_obj.rank;
  Mat v(c.ring(), c.piece(), 1);
  for (const auto& [k, yk] : y.coeffs())
    if (k >= 0 && static_cast<std::size_t>(k) < c.depth) v.set_block(static_cast<std::size_t>(k) * r, 0, yk);
  return v;
}

// M(Id t^{m-n}) applied to y, computed in the twisted polynomial category.
inline Mat charseq_apply_shift(const CharSeqMaps& c, const Mat& v, std::size_t m, std::size_t n) {
  const LaurentMor y = charseq_element(c, v);
  return charseq_vector(c, laurent_compose(y, LaurentMor::shift(Obj(1), c.aut, static_cast<long long>(m - n))));
}

}  // namespace detail

/// Rebuilds the block matrices from `shift`.
inline void assemble_blocks(CharSeqMaps& c) {
  const std::size_t d = c.depth, p = c.piece();
  const Ring& r = c.ring();
  const Mat id = Mat::identity(r, p);
  auto s = [&](std::size_t m, std::size_t n) -> const Mat& { return c.shift.at({m, n}); };

  c.alpha_minus_beta = Mat(r, d * p, (d - 1) * p);
  for (std::size_t m = 1; m < d; ++m) {
    c.alpha_minus_beta.set_block((m - 1) * p, (m - 1) * p, -s(m, m - 1));
    c.alpha_minus_beta.set_block(m * p, (m - 1) * p, id);
  }
  c.e = Mat(r, p, d * p);
  for (std::size_t n = 0; n < d; ++n) c.e.set_block(0, n * p, s(n, 0));
  c.tau = Mat(r, (d - 1) * p, d * p);
  for (std::size_t m = 1; m < d; ++m)
    for (std::size_t n = m; n < d; ++n) c.tau.set_block((m - 1) * p, n * p, s(n, m));
  c.sigma = Mat(r, d * p, p);
  c.sigma.set_block(0, 0, id);
}

inline CharSeqMaps build_char_seq(const Obj& a, const RingAut& aut, std::size_t depth) {
  if (depth < 2) throw PreconditionViolation("characteristic sequence needs depth >= 2", depth);
  CharSeqMaps c{a, aut, depth, {}, {}, {}, {}, {}};
  const std::size_t p = c.piece();
  for (std::size_t m = 0; m < depth; ++m)
    for (std::size_t n = 0; n <= m; ++n) {
      Mat s(aut.ring(), p, p);
      for (std::size_t col = 0; col < p; ++col) {
        Mat basis(aut.ring(), p, 1);
        basis(col, 0) = aut.ring().one();
        s.set_block(0, col, detail::charseq_apply_shift(c, basis, m, n));
      }
      c.shift.emplace(std::make_pair(m, n), std::move(s));
    }
  assemble_blocks(c);
  return c;
}

struct CharSeqFailure {
  std::string block;   // e.g. "s(3,1)" or "tau*(alpha-beta)[2,1]"
  std::size_t degree;  // first polynomial degree at which the block is wrong
};

struct CharSeqCheck {
  std::string family;
  std::size_t checked{0};
  std::vector<CharSeqFailure> failures;
  bool passed() const { return failures.empty(); }
};

struct CharSeqReport {
  std::vector<CharSeqCheck> checks;
  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed()) return false;
    return true;
  }
};

namespace detail {

// First degree at which two piece-sized blocks differ.
inline std::optional<std::size_t> first_bad_degree(const Mat& got, const Mat& want, std::size_t rank) {
  for (std::size_t i = 0; i < got.rows(); ++i)
    for (std::size_t j = 0; j < got.cols(); ++j)
      if (!got.ring().equal(got(i, j), want(i, j))) return rank == 0 ? 0 : i / rank;
  return std::nullopt;
}

inline void charseq_expect(CharSeqCheck& chk, const std::string& block, const Mat& got, const Mat& want,
                           std::size_t rank) {
  ++chk.checked;
  if (auto d = first_bad_degree(got, want, rank)) chk.failures.push_back({block, *d});
}

inline std::string idx(std::size_t a, std::size_t b) { return "[" + std::to_string(a) + "," + std::to_string(b) + "]"; }

// Block (i, j) of x * y, with square blocks of size p.
inline Mat block_product(const Mat& x, const Mat& y, std::size_t i, std::size_t j, std::size_t p) {
  Mat acc(x.ring(), p, p);
  for (std::size_t k = 0; k * p < x.cols(); ++k) {
    Mat a = x.block(i * p, k * p, p, p);
    if (a.is_zero()) continue;
    acc = acc + a * y.block(k * p, j * p, p, p);
  }
  return acc;
}

}  // namespace detail

/// Runs the six check families; `seed` drives the random probes of the
/// anchor and naturality families.
inline CharSeqReport verify_char_seq(const CharSeqMaps& c, std::uint64_t seed = 0, std::size_t probes = 4) {
  const std::size_t d = c.depth, p = c.piece(), r = c.base_obj.rank;
  const Ring& ring = c.ring();
  const Mat id = Mat::identity(ring, p), zero(ring, p, p);
  CharSeqReport rep;

  CharSeqCheck exact{"exactness", 0, {}};
  for (std::size_t m = 1; m < d; ++m)
    detail::charseq_expect(exact, "e*(alpha-beta)" + detail::idx(0, m),
                           detail::block_product(c.e, c.alpha_minus_beta, 0, m - 1, p), zero, r);
  rep.checks.push_back(std::move(exact));

  CharSeqCheck split{"splitting", 0, {}};
  for (std::size_t m = 1; m < d; ++m)
    for (std::size_t mm = 1; mm < d; ++mm)
      detail::charseq_expect(split, "tau*(alpha-beta)" + detail::idx(m, mm),
                             detail::block_product(c.tau, c.alpha_minus_beta, m - 1, mm - 1, p),
                             m == mm ? id : zero, r);
  detail::charseq_expect(split, "e*sigma", c.e * c.sigma, id, r);
  for (std::size_t n = 0; n < d; ++n)
    for (std::size_t nn = 0; nn < d; ++nn) {
      Mat got = detail::block_product(c.alpha_minus_beta, c.tau, n, nn, p);
      if (n == 0) got = got + c.sigma.block(0, 0, p, p) * c.e.block(0, nn * p, p, p);
      detail::charseq_expect(split, "(alpha-beta)*tau+sigma*e" + detail::idx(n, nn), got, n == nn ? id : zero, r);
    }
  rep.checks.push_back(std::move(split));

  CharSeqCheck cocycle{"cocycle", 0, {}};
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t m = 0; m <= l; ++m)
      for (std::size_t n = 0; n <= m; ++n)
        detail::charseq_expect(cocycle,
                               "s(" + std::to_string(m) + "," + std::to_string(n) + ")*s(" + std::to_string(l) +
                                   "," + std::to_string(m) + ")",
                               c.shift.at({m, n}) * c.shift.at({l, m}), c.shift.at({l, n}), r);
  rep.checks.push_back(std::move(cocycle));

  CharSeqCheck unit{"unit", 0, {}};
  for (std::size_t m = 0; m < d; ++m)
    detail::charseq_expect(unit, "s(" + std::to_string(m) + "," + std::to_string(m) + ")", c.shift.at({m, m}), id, r);
  rep.checks.push_back(std::move(unit));

  // s_{m,n} against a fresh evaluation of M(Id t^{m-n}) on random elements,
  // and naturality s_{m,n}(y o Phi^m(u)) = s_{m,n}(y) o Phi^n(u) for u : B -> B.
  CharSeqCheck anchor{"anchor", 0, {}}, natural{"naturality", 0, {}};
  Sampler rng(seed);
  for (const auto& [mn, s] : c.shift) {
    const auto [m, n] = mn;
    const std::string name = "s(" + std::to_string(m) + "," + std::to_string(n) + ")";
    for (std::size_t t = 0; t < probes; ++t) {
      Mat y = rng.matrix(ring, p, 1, 5);
      detail::charseq_expect(anchor, name, s * y, detail::charseq_apply_shift(c, y, m, n), r);

      const Mat u = Mat(ring, 1, 1, {rng.element(ring, 5)});
      auto twist = [&](std::size_t k) {
        return LaurentMor::monomial(Obj(1), Obj(1), c.aut, apply_aut(c.aut.pow(static_cast<long long>(k)), u), 0);
      };
      const Mat lhs = s * detail::charseq_vector(c, laurent_compose(detail::charseq_element(c, y), twist(m)));
      const Mat rhs = detail::charseq_vector(c, laurent_compose(detail::charseq_element(c, s * y), twist(n)));
      detail::charseq_expect(natural, name, lhs, rhs, r);
    }
  }
  rep.checks.push_back(std::move(anchor));
  rep.checks.push_back(std::move(natural));
  return rep;
}

/// Fault injection: adds a random nonzero element to one random entry of
/// s_{m,n} and rebuilds the block matrices.  Returns the corrupted (m, n).
inline std::pair<std::size_t, std::size_t> mutate(CharSeqMaps& c, Sampler& rng) {
  if (c.piece() == 0) throw PreconditionViolation("nothing to corrupt in a rank-0 truncation", 0);
  const auto m = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(c.depth) - 1));
  const auto n = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(m)));
  Mat& s = c.shift.at({m, n});
  const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(s.rows()) - 1));
  const auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(s.cols()) - 1));
  Elem delta = c.ring().zero();
  while (c.ring().is_zero(delta)) delta = rng.element(c.ring(), 3);
  s(i, j) = c.ring().add(s(i, j), delta);
  assemble_blocks(c);
  return {m, n};
}

}  // namespace adcat
