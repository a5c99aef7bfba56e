#pragma once

// Exactness at a middle object, and the certificates behind l-uniform regular
// coherence of a matrix category: von Neumann witnesses (l = 0), split-epi /
// monic factorizations (l = 1) and kernel resolutions (general l).
//
// Exactness of A2 -f0-> A1 -f1-> A0 is tested on the generator object only;
// a test morphism from a rank-k object is k columns, each handled separately.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "adcat/linalg.hpp"
#include "adcat/matcat.hpp"
#include "adcat/sampling.hpp"

namespace adcat {

enum class Verdict { Certified, Refuted, Undecided };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "certified";
    case Verdict::Refuted: return "refuted";
    case Verdict::Undecided: return "undecided";
  }
  return "?";
}

/// Worst-case fold: any refutation wins, then any undecided instance.
inline Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::Refuted || b == Verdict::Refuted) return Verdict::Refuted;
  if (a == Verdict::Undecided || b == Verdict::Undecided) return Verdict::Undecided;
  return Verdict::Certified;
}

enum class Exactness { Exact, NotExact, Undecided };

inline const char* to_string(Exactness e) {
  switch (e) {
    case Exactness::Exact: return "exact";
    case Exactness::NotExact: return "not_exact";
    case Exactness::Undecided: return "undecided";
  }
  return "?";
}

struct ExactnessVerdict {
  Exactness status{Exactness::Undecided};
  std::optional<Mat> recipe;     // X with f0 * X = kernel_gens(f1)
  std::optional<Mat> witness;    // column g with f1 g = 0, g not in im f0
  std::optional<Mat> composite;  // nonzero f1 * f0
};

inline ExactnessVerdict is_exact_at(const Mor& f0, const Mor& f1) {
  if (f0.cod() != f1.dom()) throw ObjectMismatch("exactness needs f0.cod = f1.dom");
  if (f0.ring() != f1.ring()) throw RingMismatch(f0.ring().name() + " vs " + f1.ring().name());
  ExactnessVerdict v;
  Mat comp = f1.mat() * f0.mat();
  if (!comp.is_zero()) {
    v.status = Exactness::NotExact;
    v.composite = std::move(comp);
    return v;
  }
  const Mat k = kernel_gens(f1.mat());
  if (auto x = solve_linear(f0.mat(), k)) {
    v.status = Exactness::Exact;
    v.recipe = std::move(*x);
    return v;
  }
  for (std::size_t c = 0; c < k.cols(); ++c) {
    Mat g = k.column(c);
    if (!solve_linear(f0.mat(), g)) {
      v.status = Exactness::NotExact;
      v.witness = std::move(g);
      return v;
    }
  }
  // Every column lifts separately, hence the whole block does.
  throw Error("inconsistent lifting verdicts");
}

/// Re-check a verdict by matrix arithmetic; exact verdicts are checked
/// against the canonical kernel generators.
inline bool verify(const ExactnessVerdict& v, const Mor& f0, const Mor& f1) {
  switch (v.status) {
    case Exactness::Exact:
      return v.recipe && (f1.mat() * f0.mat()).is_zero() && f0.mat() * *v.recipe == kernel_gens(f1.mat());
    case Exactness::NotExact:
      if (v.composite) return !v.composite->is_zero() && *v.composite == f1.mat() * f0.mat();
      return v.witness && (f1.mat() * *v.witness).is_zero() && !solve_linear(f0.mat(), *v.witness);
    case Exactness::Undecided: return false;
  }
  return false;
}

// ---------------------------------------------------------------- l = 0

struct VNRWitness {
  Mor f;
  Mor g;
};

inline bool verify(const VNRWitness& w) {
  return w.g.dom() == w.f.cod() && w.g.cod() == w.f.dom() && compose(w.f, compose(w.g, w.f)) == w.f;
}

namespace detail {

// Column-major vectorization.
inline Mat vec(const Mat& a) {
  Mat v(a.ring(), a.rows() * a.cols(), 1);
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) v(j * a.rows() + i, 0) = a(i, j);
  return v;
}

inline Mat unvec(const Mat& v, std::size_t rows, std::size_t cols) {
  Mat a(v.ring(), rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) a(i, j) = v(j * rows + i, 0);
  return a;
}

}  // namespace detail

/// g with f g f = f, from the linear system (f^T (x) f) vec(g) = vec(f).
inline std::optional<VNRWitness> vnr_witness(const Mor& f) {
  const Mat& m = f.mat();
  auto x = solve_linear(kron(m.transpose(), m), detail::vec(m));
  if (!x) return std::nullopt;
  return VNRWitness{f, Mor(f.cod(), f.dom(), detail::unvec(*x, m.cols(), m.rows()))};
}

/// Over a product ring: one witness per coordinate, glued together.
inline std::optional<VNRWitness> vnr_witness_componentwise(const Mor& f) {
  const Ring& r = f.ring();
  if (r.kind() != RingKind::Product) throw UnsupportedRing("componentwise witness needs a Product ring");
  std::vector<Mat> parts;
  for (std::int64_t t = 0; t < r.width(); ++t) {
    auto w = vnr_witness(Mor(f.dom(), f.cod(), component(f.mat(), static_cast<std::size_t>(t))));
    if (!w) return std::nullopt;
    parts.push_back(w->g.mat());
  }
  return VNRWitness{f, Mor(f.cod(), f.dom(), assemble(r, parts))};
}

// ---------------------------------------------------------------- l = 1

/// f = f0 o f1 through B, with f1 o s = Id_B and f0 monic.
struct FactorizationCert {
  Mor f;
  Mor f1;
  Mor f0;
  Mor s;
};

inline bool verify(const FactorizationCert& c) {
  const Obj& b = c.f1.cod();
  return c.f1.dom() == c.f.dom() && c.f0.cod() == c.f.cod() && c.f0.dom() == b && c.s.dom() == b &&
         compose(c.f0, c.f1) == c.f && compose(c.f1, c.s) == Mor::identity(c.f.ring(), b) &&
         kernel_gens(c.f0.mat()).cols() == 0;
}

/// From f = U D V: f1 = first r rows of V, f0 = first r columns of U scaled
/// by d_1..d_r, s = first r columns of V^-1.
inline std::optional<FactorizationCert> factor_monic_splitepi(const Mor& f) {
  const Ring& r = f.ring();
  if (!r.is_euclidean()) throw UnsupportedRing("monic / split-epi factorization over " + r.name());
  const SmithForm snf = smith_normal_form(f.mat());
  const std::size_t k = snf.rank, m = f.cod().rank, n = f.dom().rank;
  Mat f0 = snf.U.block(0, 0, m, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < m; ++i) f0(i, j) = r.mul(f0(i, j), snf.D(j, j));
  const Obj b(k);
  FactorizationCert cert{f, Mor(f.dom(), b, snf.V.block(0, 0, k, n)), Mor(b, f.cod(), f0),
                         Mor(b, f.dom(), snf.V_inv.block(0, 0, n, k))};
  if (!verify(cert)) return std::nullopt;
  return cert;
}

// ---------------------------------------------------------------- general l

/// stages = f_1, ..., f_n with f_{k+1} the canonical kernel inclusion of f_k
/// and f_n monic.  When the top inclusion f_n has a retraction, the top two
/// stages collapse to f_{n-1} restricted to a complement of im f_n, giving a
/// resolution of coker f_1 one step shorter; `length` counts that.
struct ResolutionCert {
  std::vector<Mor> stages;
  std::optional<Mat> retraction;  // r with r * f_n = Id
  std::optional<Mor> collapsed;   // f_{n-1} o c, c spanning ker r
  std::size_t length{0};
};

inline bool verify(const ResolutionCert& c) {
  if (c.stages.empty()) return false;
  for (std::size_t k = 0; k + 1 < c.stages.size(); ++k) {
    const Mor& lower = c.stages[k];
    const Mor& upper = c.stages[k + 1];
    if (upper.cod() != lower.dom()) return false;
    if (is_exact_at(upper, lower).status != Exactness::Exact) return false;
  }
  if (kernel_gens(c.stages.back().mat()).cols() != 0) return false;
  const std::size_t n = c.stages.size();
  if (!c.retraction) return c.length == n;
  if (n < 2 || !c.collapsed) return false;
  const Mat& top = c.stages.back().mat();
  if (!(*c.retraction * top).is_identity()) return false;
  const Mat comp = kernel_gens(*c.retraction);
  return c.length == n - 1 && c.collapsed->mat() == c.stages[n - 2].mat() * comp &&
         kernel_gens(c.collapsed->mat()).cols() == 0 && comp.cols() + top.cols() == top.rows();
}

struct ResolveResult {
  std::optional<ResolutionCert> cert;
  bool cycle_detected{false};
  std::size_t stages_explored{0};
};

/// Iterates kernel inclusions until one is monic.  Gives up (no certificate)
/// when a stage repeats or when no resolution of length <= max_len appears.
inline ResolveResult resolve(const Mor& f1, std::size_t max_len) {
  if (max_len == 0) throw PreconditionViolation("resolve needs max_len >= 1", 0);
  ResolveResult out;
  std::vector<Mor> stages{f1};
  for (;;) {
    out.stages_explored = stages.size();
    const Mat k = kernel_gens(stages.back().mat());
    if (k.cols() == 0) break;
    if (stages.size() >= max_len + 1) return out;
    Mor next(Obj(k.cols()), stages.back().dom(), k);
    for (const auto& s : stages)
      if (s == next) {
        out.cycle_detected = true;
        return out;
      }
    stages.push_back(std::move(next));
  }

  ResolutionCert cert{stages, std::nullopt, std::nullopt, stages.size()};
  const std::size_t n = stages.size();
  if (n >= 2) {
    const Mat& top = stages.back().mat();
    if (auto rt = solve_linear(top.transpose(), Mat::identity(top.ring(), top.cols()))) {
      Mat r = rt->transpose();
      Mat c = kernel_gens(r);
      Mat collapsed = stages[n - 2].mat() * c;
      if (c.cols() + top.cols() == top.rows() && kernel_gens(collapsed).cols() == 0) {
        cert.retraction = std::move(r);
        cert.collapsed = Mor(Obj(c.cols()), stages[n - 2].cod(), std::move(collapsed));
        cert.length = n - 1;
      }
    }
  }
  if (cert.length > max_len) return out;
  out.cert = std::move(cert);
  return out;
}

// ---------------------------------------------------------------- batches

struct BatchPolicy {
  Ring ring;
  std::size_t trials{0};
  std::uint64_t seed{0};
  std::size_t max_rows{3};
  std::size_t max_cols{3};
  std::int64_t bound{3};
  std::size_t max_len{0};     // resolve bound for l >= 2; 0 means l
  std::vector<Mor> fixed;     // checked before the random trials
};

using Certificate = std::variant<std::monostate, VNRWitness, FactorizationCert, ResolutionCert>;

struct TrialVerdict {
  std::size_t index{0};
  Mor f;
  Verdict verdict{Verdict::Undecided};
  Certificate certificate;
  std::string note;
};

struct UniformReport {
  std::size_t l{0};
  std::vector<TrialVerdict> verdicts;
  Verdict aggregate{Verdict::Certified};
};

inline bool verify(const Certificate& c) {
  return std::visit(
      [](const auto& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, std::monostate>) return false;
        else return verify(x);
      },
      c);
}

/// Verdict for a single morphism at level l.
inline TrialVerdict certify_morphism(const Mor& f, std::size_t l, std::size_t max_len) {
  TrialVerdict t;
  t.f = f;
  if (l == 0) {
    if (auto w = vnr_witness(f)) {
      t.verdict = Verdict::Certified;
      t.certificate = std::move(*w);
    } else {
      t.verdict = Verdict::Refuted;
      t.note = "f g f = f has no solution";
    }
    return t;
  }
  if (l == 1) {
    if (!f.ring().is_euclidean()) {
      t.note = "factorization not implemented over " + f.ring().name();
      return t;
    }
    if (auto c = factor_monic_splitepi(f)) {
      t.verdict = Verdict::Certified;
      t.certificate = std::move(*c);
    } else {
      t.note = "no section found";
    }
    return t;
  }
  ResolveResult r = resolve(f, max_len == 0 ? l : max_len);
  if (r.cert && r.cert->length <= l) {
    t.verdict = Verdict::Certified;
    t.certificate = std::move(*r.cert);
  } else {
    t.note = r.cycle_detected ? "kernel cycle detected" : "no resolution within bound";
  }
  return t;
}

/// Fixed instances first, then `trials` seeded random matrices.  Trials are
/// evaluated in index order and folded with `combine`.
inline UniformReport certify_uniform(const BatchPolicy& policy, std::size_t l) {
  UniformReport rep;
  rep.l = l;
  std::vector<Mor> batch = policy.fixed;
  Sampler rng(policy.seed);
  for (std::size_t t = 0; t < policy.trials; ++t) {
    auto rows = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(policy.max_rows)));
    auto cols = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(policy.max_cols)));
    batch.emplace_back(rng.matrix(policy.ring, rows, cols, policy.bound));
  }
  for (std::size_t i = 0; i < batch.size(); ++i) {
    TrialVerdict v = certify_morphism(batch[i], l, policy.max_len);
    v.index = i;
    if (v.verdict == Verdict::Certified && !verify(v.certificate)) {
      v.verdict = Verdict::Undecided;
      v.note = "certificate failed re-verification";
    }
    rep.aggregate = combine(rep.aggregate, v.verdict);
    rep.verdicts.push_back(std::move(v));
  }
  return rep;
}

}  // namespace adcat
