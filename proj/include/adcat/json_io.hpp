#pragma once

// JSON encoding of rings, elements, matrices, morphisms and certificates.
// Parsing is strict: unknown keys, wrong types and out-of-shape data raise
// InputError.  Output uses insertion-ordered objects so reports are stable.

#include <regex>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "adcat/charseq.hpp"
#include "adcat/coherence.hpp"
#include "adcat/nested.hpp"
#include "adcat/twisted.hpp"

namespace adcat::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "1.0";

namespace detail {

inline void require_keys(const json& j, const std::string& what, std::initializer_list<const char*> required,
                         std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) throw InputError(what + " must be an object");
  std::set<std::string> known;
  for (const char* k : required) {
    known.insert(k);
    if (!j.contains(k)) throw InputError(what + " is missing \"" + k + "\"");
  }
  for (const char* k : optional) known.insert(k);
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw InputError(what + " has unknown field \"" + k + "\"");
}

inline std::int64_t get_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw InputError(what + " must be an integer");
  return j.get<std::int64_t>();
}

inline std::size_t get_size(const json& j, const std::string& what) {
  const std::int64_t v = get_int(j, what);
  if (v < 0) throw InputError(what + " must be non-negative");
  return static_cast<std::size_t>(v);
}

inline mpz_class parse_mpz(const std::string& s, const std::string& what) {
  static const std::regex re("[-+]?[0-9]+");
  if (!std::regex_match(s, re)) throw InputError(what + ": \"" + s + "\" is not a decimal integer");
  return mpz_class(s[0] == '+' ? s.substr(1) : s, 10);
}

inline mpz_class json_mpz(const json& j, const std::string& what) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()), 10);
  if (j.is_string()) return parse_mpz(j.get<std::string>(), what);
  throw InputError(what + " must be a decimal string or an integer");
}

inline std::int64_t reduce_mod(const mpz_class& a, std::int64_t n) {
  mpz_class r = a % n;
  if (r < 0) r += n;
  return r.get_si();
}

}  // namespace detail

// ---------------------------------------------------------------- rings

json ring_to_json(const Ring& r);

inline json ring_kind_to_json(const Ring& r) {
  switch (r.kind()) {
    case RingKind::Integers: return "Integers";
    case RingKind::Rationals: return "Rationals";
    case RingKind::PrimeField: return json{{"PrimeField", r.prime()}};
    case RingKind::FiniteField: return json{{"FiniteField", json::array({r.prime(), r.degree()})}};
    case RingKind::IntegersMod: return json{{"IntegersMod", r.modulus()}};
    case RingKind::Product: return json{{"Product", json::array({ring_to_json(r.base()), r.width()})}};
  }
  return nullptr;
}

inline json ring_to_json(const Ring& r) { return json{{"kind", ring_kind_to_json(r)}}; }

/// Accepts {"kind": K} or a bare K, where K is a name or a one-key object.
inline Ring ring_from_json(const json& j) {
  if (j.is_object() && j.contains("kind")) {
    detail::require_keys(j, "ring", {"kind"});
    return ring_from_json(j.at("kind"));
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "Integers") return Ring::integers();
    if (s == "Rationals") return Ring::rationals();
    throw InputError("unknown ring \"" + s + "\"");
  }
  if (!j.is_object() || j.size() != 1) throw InputError("ring must be a name or a one-key object");
  const auto& [key, val] = *j.items().begin();
  if (key == "PrimeField") return Ring::prime_field(detail::get_int(val, "PrimeField"));
  if (key == "IntegersMod") return Ring::integers_mod(detail::get_int(val, "IntegersMod"));
  if (key == "FiniteField") {
    if (!val.is_array() || val.size() != 2) throw InputError("FiniteField needs [p, k]");
    return Ring::finite_field(detail::get_int(val[0], "FiniteField p"), detail::get_int(val[1], "FiniteField k"));
  }
  if (key == "Product") {
    if (!val.is_array() || val.size() != 2) throw InputError("Product needs [ring, w]");
    return Ring::product(ring_from_json(val[0]), detail::get_int(val[1], "Product width"));
  }
  throw InputError("unknown ring kind \"" + key + "\"");
}

/// Parses the names produced by Ring::name(), e.g. "Product(PrimeField(5),2)".
inline Ring ring_from_name(const std::string& s) {
  if (!s.empty() && (s[0] == '{' || s[0] == '"')) {
    try {
      return ring_from_json(json::parse(s));
    } catch (const json::exception& e) {
      throw InputError(std::string("ring spec: ") + e.what());
    }
  }
  if (s == "Integers") return Ring::integers();
  if (s == "Rationals") return Ring::rationals();
  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') throw InputError("unknown ring \"" + s + "\"");
  const std::string head = s.substr(0, open), args = s.substr(open + 1, s.size() - open - 2);
  const auto comma = args.rfind(',');
  auto num = [&](const std::string& t) { return detail::parse_mpz(t, "ring " + s).get_si(); };
  if (head == "PrimeField") return Ring::prime_field(num(args));
  if (head == "IntegersMod") return Ring::integers_mod(num(args));
  if (comma == std::string::npos) throw InputError("ring \"" + s + "\" needs two arguments");
  if (head == "FiniteField") return Ring::finite_field(num(args.substr(0, comma)), num(args.substr(comma + 1)));
  if (head == "Product") return Ring::product(ring_from_name(args.substr(0, comma)), num(args.substr(comma + 1)));
  throw InputError("unknown ring \"" + s + "\"");
}

// ---------------------------------------------------------------- elements

inline json elem_to_json(const Ring& r, const Elem& a) {
  switch (r.kind()) {
    case RingKind::Integers: return Ring::z(a).get_str();
    case RingKind::Rationals: return Ring::q(a).get_str();
    case RingKind::PrimeField:
    case RingKind::IntegersMod: return std::to_string(Ring::i(a));
    case RingKind::FiniteField: return Ring::poly(a);
    case RingKind::Product: {
      json out = json::array();
      for (const auto& x : Ring::prod(a)) out.push_back(elem_to_json(r.base(), x));
      return out;
    }
  }
  return nullptr;
}

inline Elem elem_from_json(const Ring& r, const json& j) {
  switch (r.kind()) {
    case RingKind::Integers: return Elem{detail::json_mpz(j, "integer entry")};
    case RingKind::Rationals: {
      if (j.is_number_integer()) return r.from_int(j.get<std::int64_t>());
      if (!j.is_string()) throw InputError("rational entry must be an \"a/b\" string");
      const std::string s = j.get<std::string>();
      const auto slash = s.find('/');
      if (slash == std::string::npos) return Elem{mpq_class(detail::parse_mpz(s, "rational entry"))};
      mpz_class num = detail::parse_mpz(s.substr(0, slash), "rational numerator");
      mpz_class den = detail::parse_mpz(s.substr(slash + 1), "rational denominator");
      if (den == 0) throw InputError("rational entry \"" + s + "\" has a zero denominator");
      mpq_class q(num, den);
      q.canonicalize();
      return Elem{q};
    }
    case RingKind::PrimeField: return Elem{detail::reduce_mod(detail::json_mpz(j, "field entry"), r.prime())};
    case RingKind::IntegersMod: return Elem{detail::reduce_mod(detail::json_mpz(j, "residue entry"), r.modulus())};
    case RingKind::FiniteField: {
      if (!j.is_array() || j.size() > static_cast<std::size_t>(r.degree()))
        throw InputError("FiniteField entry must be a coefficient array of length <= " + std::to_string(r.degree()));
      Poly a(static_cast<std::size_t>(r.degree()), 0);
      for (std::size_t t = 0; t < j.size(); ++t)
        a[t] = detail::reduce_mod(detail::json_mpz(j[t], "coefficient"), r.prime());
      return Elem{std::move(a)};
    }
    case RingKind::Product: {
      if (!j.is_array() || j.size() != static_cast<std::size_t>(r.width()))
        throw InputError("Product entry must be a tuple of length " + std::to_string(r.width()));
      std::vector<Elem> xs;
      for (const auto& x : j) xs.push_back(elem_from_json(r.base(), x));
      return Elem{std::move(xs)};
    }
  }
  throw InputError("unsupported ring");
}

// ---------------------------------------------------------------- matrices and morphisms

inline json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(elem_to_json(m.ring(), m(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

inline Mat mat_from_json(const Ring& r, const json& j) {
  detail::require_keys(j, "matrix", {"rows", "cols", "entries"});
  const std::size_t rows = detail::get_size(j.at("rows"), "rows"), cols = detail::get_size(j.at("cols"), "cols");
  const json& es = j.at("entries");
  if (!es.is_array() || es.size() != rows) throw InputError("matrix entries must have " + std::to_string(rows) + " rows");
  Mat m(r, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!es[i].is_array() || es[i].size() != cols)
      throw InputError("matrix row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = elem_from_json(r, es[i][k]);
  }
  return m;
}

inline json obj_to_json(const Obj& o) {
  json j{{"rank", o.rank}};
  if (o.graded()) j["grades"] = o.grades;
  return j;
}

inline Obj obj_from_json(const json& j) {
  detail::require_keys(j, "object", {"rank"}, {"grades"});
  const std::size_t rank = detail::get_size(j.at("rank"), "rank");
  if (!j.contains("grades")) return Obj(rank);
  std::vector<std::size_t> g;
  if (!j.at("grades").is_array()) throw InputError("grades must be an array");
  for (const auto& x : j.at("grades")) g.push_back(detail::get_size(x, "grade"));
  if (g.size() != rank) throw InputError("object of rank " + std::to_string(rank) + " has " + std::to_string(g.size()) + " grades");
  return Obj(rank, std::move(g));
}

inline json mor_to_json(const Mor& f) {
  return json{{"dom", obj_to_json(f.dom())}, {"cod", obj_to_json(f.cod())}, {"mat", mat_to_json(f.mat())}};
}

inline Mor mor_from_json(const Ring& r, const json& j) {
  detail::require_keys(j, "morphism", {"mat"}, {"dom", "cod"});
  Mat m = mat_from_json(r, j.at("mat"));
  Obj dom = j.contains("dom") ? obj_from_json(j.at("dom")) : Obj(m.cols());
  Obj cod = j.contains("cod") ? obj_from_json(j.at("cod")) : Obj(m.rows());
  return Mor(std::move(dom), std::move(cod), std::move(m));
}

// ---------------------------------------------------------------- twisted layer

inline json aut_to_json(const RingAut& a) {
  switch (a.kind()) {
    case AutKind::Identity: return json{{"kind", "Identity"}};
    case AutKind::Frobenius: return json{{"kind", "Frobenius"}, {"power", a.power()}};
    case AutKind::Rotation: return json{{"kind", "Rotation"}, {"offset", a.power()}};
  }
  return nullptr;
}

inline RingAut aut_from_json(const Ring& r, const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw InputError("automorphism needs a \"kind\" string");
  const std::string k = j.at("kind").get<std::string>();
  if (k == "Identity") {
    detail::require_keys(j, "Identity automorphism", {"kind"});
    return RingAut::identity(r);
  }
  if (k == "Frobenius") {
    detail::require_keys(j, "Frobenius automorphism", {"kind"}, {"power"});
    return RingAut::frobenius(r, j.contains("power") ? detail::get_int(j.at("power"), "power") : 1);
  }
  if (k == "Rotation") {
    detail::require_keys(j, "Rotation automorphism", {"kind"}, {"offset"});
    return RingAut::rotation(r, j.contains("offset") ? detail::get_int(j.at("offset"), "offset") : 1);
  }
  throw InputError("unknown automorphism kind \"" + k + "\"");
}

/// "identity", "frobenius[:e]" or "rotation[:r]" on the command line.
inline RingAut aut_from_name(const Ring& r, const std::string& s) {
  const auto colon = s.find(':');
  std::string head = s.substr(0, colon);
  std::transform(head.begin(), head.end(), head.begin(), [](unsigned char c) { return std::tolower(c); });
  const std::int64_t arg = colon == std::string::npos ? 1 : detail::parse_mpz(s.substr(colon + 1), "automorphism").get_si();
  if (head == "identity") return RingAut::identity(r);
  if (head == "frobenius") return RingAut::frobenius(r, arg);
  if (head == "rotation") return RingAut::rotation(r, arg);
  throw InputError("unknown automorphism \"" + s + "\"");
}

inline json laurent_to_json(const LaurentMor& f) {
  json cs = json::array();
  for (const auto& [d, m] : f.coeffs()) cs.push_back(json{{"deg", d}, {"mat", mat_to_json(m)}});
  return json{{"aut", aut_to_json(f.aut())}, {"dom", obj_to_json(f.dom())}, {"cod", obj_to_json(f.cod())},
              {"coeffs", std::move(cs)}};
}

inline LaurentMor laurent_from_json(const Ring& r, const json& j) {
  detail::require_keys(j, "Laurent morphism", {"aut", "dom", "cod", "coeffs"});
  RingAut aut = aut_from_json(r, j.at("aut"));
  if (!j.at("coeffs").is_array()) throw InputError("coeffs must be an array");
  std::map<long long, Mat> cs;
  for (const auto& c : j.at("coeffs")) {
    detail::require_keys(c, "coefficient", {"deg", "mat"});
    const long long d = detail::get_int(c.at("deg"), "deg");
    if (cs.count(d)) throw InputError("degree " + std::to_string(d) + " listed twice");
    cs.emplace(d, mat_from_json(r, c.at("mat")));
  }
  return LaurentMor(obj_from_json(j.at("dom")), obj_from_json(j.at("cod")), aut, std::move(cs));
}

inline NilObject nil_from_json(const Ring& r, const json& j) {
  detail::require_keys(j, "nil object", {"phi"}, {"obj", "aut"});
  Mor phi = mor_from_json(r, j.at("phi"));
  Obj obj = j.contains("obj") ? obj_from_json(j.at("obj")) : phi.dom();
  RingAut aut = j.contains("aut") ? aut_from_json(r, j.at("aut")) : RingAut::identity(r);
  return NilObject{std::move(obj), std::move(phi), std::move(aut)};
}

// ---------------------------------------------------------------- sequences

inline json seqobj_to_json(const SeqObj& x) {
  json es = json::array();
  for (const auto& o : x.entries()) es.push_back(obj_to_json(o));
  json tail = x.tail_rank() == 0 ? json{{"kind", "Zero"}} : json{{"kind", "Canonical"}, {"rank", x.tail_rank()}};
  return json{{"horizon", x.horizon()}, {"entries", std::move(es)}, {"tail", std::move(tail)}};
}

inline SeqObj seqobj_from_json(const json& j) {
  detail::require_keys(j, "sequence object", {"entries", "tail"}, {"horizon"});
  if (!j.at("entries").is_array()) throw InputError("entries must be an array");
  std::vector<Obj> es;
  for (const auto& o : j.at("entries")) es.push_back(obj_from_json(o));
  if (j.contains("horizon") && detail::get_size(j.at("horizon"), "horizon") != es.size())
    throw InputError("horizon does not match the number of entries");
  const json& t = j.at("tail");
  if (!t.is_object() || !t.contains("kind") || !t.at("kind").is_string()) throw InputError("tail needs a kind");
  const std::string kind = t.at("kind").get<std::string>();
  if (kind == "Zero") {
    detail::require_keys(t, "tail", {"kind"});
    return SeqObj(std::move(es), 0);
  }
  if (kind != "Canonical") throw InputError("object tail must be Zero or Canonical");
  detail::require_keys(t, "tail", {"kind", "rank"});
  const std::size_t rank = detail::get_size(t.at("rank"), "tail rank");
  if (rank == 0) throw InputError("a canonical tail needs positive rank");
  return SeqObj(std::move(es), rank);
}

inline json seqmor_to_json(const SeqMor& f) {
  json es = json::array();
  for (const auto& m : f.entries()) es.push_back(mat_to_json(m));
  json tail = f.tail() ? json{{"kind", "Scalar"}, {"value", elem_to_json(f.ring(), *f.tail())}} : json{{"kind", "Zero"}};
  return json{{"dom", seqobj_to_json(f.dom())}, {"cod", seqobj_to_json(f.cod())}, {"horizon", f.horizon()},
              {"entries", std::move(es)}, {"tail", std::move(tail)}};
}

inline SeqMor seqmor_from_json(const Ring& r, const json& j) {
  detail::require_keys(j, "sequence morphism", {"dom", "cod", "entries", "tail"}, {"horizon"});
  if (!j.at("entries").is_array()) throw InputError("entries must be an array");
  std::vector<Mat> es;
  for (const auto& m : j.at("entries")) es.push_back(mat_from_json(r, m));
  if (j.contains("horizon") && detail::get_size(j.at("horizon"), "horizon") != es.size())
    throw InputError("horizon does not match the number of entries");
  const json& t = j.at("tail");
  if (!t.is_object() || !t.contains("kind") || !t.at("kind").is_string()) throw InputError("tail needs a kind");
  const std::string kind = t.at("kind").get<std::string>();
  std::optional<Elem> tail;
  if (kind == "Scalar") {
    detail::require_keys(t, "tail", {"kind", "value"});
    tail = elem_from_json(r, t.at("value"));
  } else if (kind == "Zero") {
    detail::require_keys(t, "tail", {"kind"});
  } else {
    throw InputError("morphism tail must be Zero or Scalar");
  }
  return SeqMor(r, seqobj_from_json(j.at("dom")), seqobj_from_json(j.at("cod")), std::move(es), std::move(tail));
}

inline json admissible_to_json(const AdmissibleFn& f) {
  return json{{"values", f.values}, {"offset", f.offset}};
}

// ---------------------------------------------------------------- certificates

inline json certificate_to_json(const Certificate& c) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, VNRWitness>) {
          return json{{"kind", "vnr"}, {"f", mor_to_json(x.f)}, {"g", mor_to_json(x.g)}};
        } else if constexpr (std::is_same_v<T, FactorizationCert>) {
          return json{{"kind", "factorization"}, {"f", mor_to_json(x.f)}, {"f1", mor_to_json(x.f1)},
                      {"f0", mor_to_json(x.f0)}, {"s", mor_to_json(x.s)}};
        } else {
          json stages = json::array();
          for (const auto& s : x.stages) stages.push_back(mor_to_json(s));
          json j{{"kind", "resolution"}, {"length", x.length}, {"stages", std::move(stages)}};
          j["retraction"] = x.retraction ? mat_to_json(*x.retraction) : json(nullptr);
          j["collapsed"] = x.collapsed ? mor_to_json(*x.collapsed) : json(nullptr);
          return j;
        }
      },
      c);
}

inline json trial_to_json(const TrialVerdict& t) {
  json j{{"index", t.index}, {"f", mor_to_json(t.f)}, {"verdict", to_string(t.verdict)},
         {"certificate", certificate_to_json(t.certificate)}};
  if (!t.note.empty()) j["note"] = t.note;
  return j;
}

inline json policy_to_json(const BatchPolicy& p) {
  json fixed = json::array();
  for (const auto& f : p.fixed) fixed.push_back(mor_to_json(f));
  return json{{"ring", ring_to_json(p.ring)}, {"trials", p.trials},     {"seed", p.seed},
              {"max_rows", p.max_rows},     {"max_cols", p.max_cols}, {"bound", p.bound},
              {"max_len", p.max_len},       {"fixed", std::move(fixed)}};
}

inline BatchPolicy policy_from_json(const Ring& r, const json& j) {
  detail::require_keys(j, "batch policy", {}, {"trials", "seed", "max_rows", "max_cols", "bound", "max_len", "fixed"});
  BatchPolicy p{r, 0, 0, 3, 3, 3, 0, {}};
  if (j.contains("trials")) p.trials = detail::get_size(j.at("trials"), "trials");
  if (j.contains("seed")) p.seed = detail::get_size(j.at("seed"), "seed");
  if (j.contains("max_rows")) p.max_rows = detail::get_size(j.at("max_rows"), "max_rows");
  if (j.contains("max_cols")) p.max_cols = detail::get_size(j.at("max_cols"), "max_cols");
  if (j.contains("bound")) p.bound = detail::get_int(j.at("bound"), "bound");
  if (j.contains("max_len")) p.max_len = detail::get_size(j.at("max_len"), "max_len");
  if (p.max_rows == 0 || p.max_cols == 0) throw InputError("max_rows and max_cols must be positive");
  if (p.bound < 0) throw InputError("bound must be non-negative");
  if (j.contains("fixed")) {
    if (!j.at("fixed").is_array()) throw InputError("fixed must be an array");
    for (const auto& f : j.at("fixed")) p.fixed.push_back(mor_from_json(r, f));
  }
  return p;
}

inline json seq_certificate_to_json(const SeqCertificate& c) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, SeqVnr>) {
          return json{{"kind", "vnr"}, {"g", seqmor_to_json(x.g)}};
        } else if constexpr (std::is_same_v<T, SeqFactorization>) {
          return json{{"kind", "factorization"},      {"middle", seqobj_to_json(x.middle)},
                      {"f1", seqmor_to_json(x.f1)},    {"f0", seqmor_to_json(x.f0)},
                      {"s", seqmor_to_json(x.s)},      {"lift_bound", admissible_to_json(x.f1_as_lift.bound)}};
        } else {
          return json{{"kind", "resolution"}, {"lengths", x.lengths}, {"tail_length", x.tail_length}};
        }
      },
      c);
}

inline json nested_trial_to_json(const NestedTrial& t) {
  json j{{"index", t.index},
         {"f", seqmor_to_json(t.f)},
         {"in_S", to_string(t.in_S)},
         {"in_L", to_string(t.in_L)},
         {"certificate", seq_certificate_to_json(t.certificate)}};
  if (t.counterexample_index)
    j["counterexample"] = json{{"index", *t.counterexample_index}, {"component", mat_to_json(*t.counterexample)}};
  if (!t.note.empty()) j["note"] = t.note;
  return j;
}

inline json charseq_report_to_json(const CharSeqReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks) {
    json fails = json::array();
    for (const auto& f : c.failures) fails.push_back(json{{"block", f.block}, {"degree", f.degree}});
    checks.push_back(json{{"family", c.family}, {"checked", c.checked}, {"passed", c.passed()}, {"failures", std::move(fails)}});
  }
  return checks;
}

// ---------------------------------------------------------------- instance documents

inline const std::vector<std::string>& payload_kinds() {
  static const std::vector<std::string> kinds{"morphism",          "laurent_morphism", "nil_object",
                                              "sequence_instance", "charseq_params",   "batch_policy"};
  return kinds;
}

struct InstanceDoc {
  std::string version;
  Ring ring;
  std::string payload_kind;
  json payload;
};

inline bool version_supported(const std::string& v) {
  static const std::regex re("1(\\.[0-9]+){0,2}");
  return std::regex_match(v, re);
}

inline InstanceDoc instance_from_json(const json& j) {
  if (!j.is_object()) throw InputError("instance document must be an object");
  std::vector<const char*> optional;
  for (const auto& k : payload_kinds()) optional.push_back(k.c_str());
  if (!j.contains("version") || !j.at("version").is_string()) throw InputError("instance needs a version string");
  if (!j.contains("ring")) throw InputError("instance needs a ring");
  std::string kind;
  for (const auto& [k, v] : j.items()) {
    if (k == "version" || k == "ring") continue;
    if (std::find(payload_kinds().begin(), payload_kinds().end(), k) == payload_kinds().end())
      throw InputError("instance has unknown field \"" + k + "\"");
    if (!kind.empty()) throw InputError("instance carries two payloads: " + kind + " and " + k);
    kind = k;
  }
  InstanceDoc doc{j.at("version").get<std::string>(), ring_from_json(j.at("ring")), kind, kind.empty() ? json() : j.at(kind)};
  if (!version_supported(doc.version))
    throw InputError("unsupported format version \"" + doc.version + "\" (this build reads 1.x)");
  return doc;
}

inline InstanceDoc parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return instance_from_json(j);
}

inline json instance_to_json(const Ring& r, const std::string& kind, json payload) {
  return json{{"version", kFormatVersion}, {"ring", ring_to_json(r)}, {kind, std::move(payload)}};
}

}  // namespace adcat::io
