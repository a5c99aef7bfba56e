#pragma once

// The twisted Laurent category over a matrix category: morphisms are finite
// sums f = sum_i f_i t^i, composed by
//   (g o f)_k = sum_{i+j=k} g_j * sigma^j(f_i).
// Objects are ranks and the twist acts on them trivially.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "adcat/linalg.hpp"
#include "adcat/matcat.hpp"

namespace adcat {

class LaurentMor {
 public:
  LaurentMor(Obj dom, Obj cod, RingAut aut, std::map<long long, Mat> coeffs = {})
      : dom_(std::move(dom)), cod_(std::move(cod)), aut_(std::move(aut)) {
    for (auto& [deg, m] : coeffs) {
      if (m.ring() != aut_.ring()) throw RingMismatch(m.ring().name() + " vs " + aut_.ring().name());
      if (m.rows() != cod_.rank || m.cols() != dom_.rank)
        throw DimensionMismatch("coefficient of degree " + std::to_string(deg) + " is " + detail::shape(m));
      if (!m.is_zero()) coeffs_.emplace(deg, std::move(m));
    }
  }

  /// m * t^deg.
  static LaurentMor monomial(const Obj& dom, const Obj& cod, const RingAut& aut, Mat m, long long deg) {
    return LaurentMor(dom, cod, aut, {{deg, std::move(m)}});
  }

  /// Id * t^s on `a`.
  static LaurentMor shift(const Obj& a, const RingAut& aut, long long s) {
    return monomial(a, a, aut, Mat::identity(aut.ring(), a.rank), s);
  }

  static LaurentMor zero(const Obj& dom, const Obj& cod, const RingAut& aut) { return LaurentMor(dom, cod, aut); }

  const Obj& dom() const { return dom_; }
  const Obj& cod() const { return cod_; }
  const RingAut& aut() const { return aut_; }
  const Ring& ring() const { return aut_.ring(); }
  const std::map<long long, Mat>& coeffs() const { return coeffs_; }

  bool is_zero() const { return coeffs_.empty(); }

  /// Coefficient of t^deg (a zero matrix outside the support).
  Mat coeff(long long deg) const {
    auto it = coeffs_.find(deg);
    return it == coeffs_.end() ? Mat(ring(), cod_.rank, dom_.rank) : it->second;
  }

  bool is_polynomial() const { return coeffs_.empty() || coeffs_.begin()->first >= 0; }
  std::optional<long long> min_degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.begin()->first;
  }
  std::optional<long long> max_degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.rbegin()->first;
  }

  friend bool operator==(const LaurentMor& a, const LaurentMor& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.aut_ == b.aut_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const LaurentMor& a, const LaurentMor& b) { return !(a == b); }

 private:
  Obj dom_;
  Obj cod_;
  RingAut aut_;
  std::map<long long, Mat> coeffs_;
};

namespace detail {

inline void require_same_hom(const LaurentMor& f, const LaurentMor& g) {
  if (f.aut() != g.aut()) throw RingMismatch("automorphisms differ: " + f.aut().name() + " vs " + g.aut().name());
  if (f.dom() != g.dom() || f.cod() != g.cod()) throw ObjectMismatch("Laurent morphisms between different objects");
}

}  // namespace detail

inline LaurentMor laurent_compose(const LaurentMor& g, const LaurentMor& f) {
  if (f.aut() != g.aut()) throw RingMismatch("automorphisms differ: " + f.aut().name() + " vs " + g.aut().name());
  if (f.cod() != g.dom())
    throw ObjectMismatch("compose: codomain rank " + std::to_string(f.cod().rank) + " vs domain rank " +
                         std::to_string(g.dom().rank));
  std::map<long long, Mat> out;
  for (const auto& [j, gj] : g.coeffs()) {
    const RingAut twist = f.aut().pow(j);
    for (const auto& [i, fi] : f.coeffs()) {
      Mat term = gj * apply_aut(twist, fi);
      auto it = out.find(i + j);
      if (it == out.end()) out.emplace(i + j, std::move(term));
      else it->second = it->second + term;
    }
  }
  return LaurentMor(f.dom(), g.cod(), f.aut(), std::move(out));
}

inline LaurentMor laurent_add(const LaurentMor& f, const LaurentMor& g) {
  detail::require_same_hom(f, g);
  std::map<long long, Mat> out = f.coeffs();
  for (const auto& [k, gk] : g.coeffs()) {
    auto it = out.find(k);
    if (it == out.end()) out.emplace(k, gk);
    else it->second = it->second + gk;
  }
  return LaurentMor(f.dom(), f.cod(), f.aut(), std::move(out));
}

inline LaurentMor laurent_neg(const LaurentMor& f) {
  std::map<long long, Mat> out;
  for (const auto& [k, fk] : f.coeffs()) out.emplace(k, -fk);
  return LaurentMor(f.dom(), f.cod(), f.aut(), std::move(out));
}

inline LaurentMor laurent_sub(const LaurentMor& f, const LaurentMor& g) { return laurent_add(f, laurent_neg(g)); }

/// Degree and leading coefficient of a polynomial morphism; degree is
/// nullopt (minus infinity) for the zero morphism.
struct PolyDegreeData {
  std::optional<long long> degree;
  Mat leading;
};

inline PolyDegreeData degree_data(const LaurentMor& f) {
  if (!f.is_polynomial()) throw NotPolynomial(*f.min_degree());
  if (f.is_zero()) return {std::nullopt, Mat(f.ring(), f.cod().rank, f.dom().rank)};
  return {f.max_degree(), f.coeffs().rbegin()->second};
}

/// One reduction step: given phi_i with sum_i R(f_i) phi_i = R(f), returns
/// f - sum_i f_i o (sigma^{-d_i}(phi_i) t^{d - d_i}), whose degree is < d(f).
inline LaurentMor division_step(const LaurentMor& f, const std::vector<LaurentMor>& gens,
                                const std::vector<Mat>& lift_coeffs) {
  if (gens.size() != lift_coeffs.size()) throw DimensionMismatch("one lift coefficient per generator");
  const PolyDegreeData top = degree_data(f);
  if (!top.degree) throw PreconditionViolation("division step on the zero morphism", 0);
  const long long d = *top.degree;

  Mat lead_sum(f.ring(), f.cod().rank, f.dom().rank);
  std::vector<long long> gen_degrees;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const LaurentMor& fi = gens[i];
    if (fi.aut() != f.aut()) throw RingMismatch("generator " + std::to_string(i) + " has another automorphism");
    if (fi.cod() != f.cod()) throw ObjectMismatch("generator " + std::to_string(i) + " has another codomain");
    const PolyDegreeData gi = degree_data(fi);
    if (!gi.degree || *gi.degree > d)
      throw PreconditionViolation("generator degree must lie in [0, d(f)]", i);
    const Mat& phi = lift_coeffs[i];
    if (phi.ring() != f.ring() || phi.rows() != fi.dom().rank || phi.cols() != f.dom().rank)
      throw DimensionMismatch("lift coefficient " + std::to_string(i) + " is " + detail::shape(phi));
    lead_sum = lead_sum + gi.leading * phi;
    gen_degrees.push_back(*gi.degree);
  }
  if (lead_sum != top.leading) throw InvalidLift("sum of R(f_i) phi_i differs from R(f)");

  LaurentMor out = f;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const long long di = gen_degrees[i];
    LaurentMor phi_tilde = LaurentMor::monomial(f.dom(), gens[i].dom(), f.aut(),
                                                apply_aut(f.aut().pow(-di), lift_coeffs[i]), d - di);
    out = laurent_sub(out, laurent_compose(gens[i], phi_tilde));
  }
  return out;
}

/// Lift coefficients for one division step, found by a single linear solve
/// against the leading coefficients of the generators of degree <= d(f).
inline std::optional<std::vector<Mat>> find_lift_coeffs(const LaurentMor& f, const std::vector<LaurentMor>& gens) {
  const PolyDegreeData top = degree_data(f);
  if (!top.degree) return std::nullopt;
  Mat stacked(f.ring(), f.cod().rank, 0);
  std::vector<std::size_t> offsets;
  for (const auto& g : gens) {
    offsets.push_back(stacked.cols());
    const PolyDegreeData gd = degree_data(g);
    if (gd.degree && *gd.degree <= *top.degree) stacked = hstack(stacked, gd.leading);
    else stacked = hstack(stacked, Mat(f.ring(), f.cod().rank, g.dom().rank));
  }
  auto x = solve_linear(stacked, top.leading);
  if (!x) return std::nullopt;
  std::vector<Mat> out;
  for (std::size_t i = 0; i < gens.size(); ++i) out.push_back(x->block(offsets[i], 0, gens[i].dom().rank, f.dom().rank));
  return out;
}

/// Iterated division: the successive degrees and the final remainder.
struct Reduction {
  std::vector<std::optional<long long>> degrees;
  LaurentMor remainder;
  bool stuck{false};  // the leading coefficient left the leading-coefficient module
};

inline Reduction reduce(const LaurentMor& f, const std::vector<LaurentMor>& gens) {
  Reduction r{{degree_data(f).degree}, f, false};
  while (!r.remainder.is_zero()) {
    const long long d = *degree_data(r.remainder).degree;
    std::vector<LaurentMor> usable;
    for (const auto& g : gens) {
      const auto dg = degree_data(g).degree;
      if (dg && *dg <= d) usable.push_back(g);
    }
    auto lifts = find_lift_coeffs(r.remainder, usable);
    if (!lifts) {
      r.stuck = true;
      break;
    }
    r.remainder = division_step(r.remainder, usable, *lifts);
    r.degrees.push_back(degree_data(r.remainder).degree);
  }
  return r;
}

/// (A, phi) with phi : Phi(A) -> A.
struct NilObject {
  Obj obj;
  Mor phi;
  RingAut aut;
};

/// f^(n) = f o Phi(f) o ... o Phi^{n-1}(f), as a matrix.
inline Mat nil_composite(const NilObject& x, std::size_t n) {
  const Mat& f = x.phi.mat();
  Mat acc = Mat::identity(x.aut.ring(), x.obj.rank);
  for (std::size_t k = 0; k < n; ++k) acc = acc * apply_aut(x.aut.pow(static_cast<long long>(k)), f);
  return acc;
}

inline std::size_t default_nil_bound(const NilObject& x) { return std::max<std::size_t>(1, 4 * x.obj.rank); }

/// Least n <= bound with f^(n) = 0.
inline std::optional<std::size_t> nil_degree(const NilObject& x, std::size_t bound) {
  if (bound == 0) throw PreconditionViolation("nil degree bound must be positive", 0);
  if (x.phi.dom() != x.obj || x.phi.cod() != x.obj) throw ObjectMismatch("phi must be an endomorphism of the object");
  if (x.phi.ring() != x.aut.ring()) throw RingMismatch(x.phi.ring().name() + " vs " + x.aut.ring().name());
  const Mat& f = x.phi.mat();
  Mat acc = f;
  for (std::size_t n = 1; n <= bound; ++n) {
    if (acc.is_zero()) return n;
    acc = acc * apply_aut(x.aut.pow(static_cast<long long>(n)), f);
  }
  return std::nullopt;
}

/// Least s >= 0 with (Id t^s) o f polynomial, together with that composite.
inline std::pair<long long, LaurentMor> laurent_normalize(const LaurentMor& f) {
  const long long s = f.is_polynomial() ? 0 : -*f.min_degree();
  return {s, laurent_compose(LaurentMor::shift(f.cod(), f.aut(), s), f)};
}

}  // namespace adcat
