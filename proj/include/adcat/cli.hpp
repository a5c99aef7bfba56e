#pragma once

// Command-line front end.  Every command writes one report document
//   {"command", "verdict", "certificate", "counterexample", "bounds"}
// to `out`; diagnostics go to `err`.  Exit codes: 0 certified, 1 refuted,
// 2 undecided, 3 input error, 4 unsupported ring or feature.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adcat/json_io.hpp"

namespace adcat::cli {

using io::json;

enum ExitCode : int { kCertified = 0, kRefuted = 1, kUndecided = 2, kInputError = 3, kUnsupported = 4 };

struct Outcome {
  Verdict verdict{Verdict::Undecided};
  json certificate;
  json counterexample;
  json bounds = json::object();
};

inline int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Certified: return kCertified;
    case Verdict::Refuted: return kRefuted;
    case Verdict::Undecided: return kUndecided;
  }
  return kUndecided;
}

inline json report(const std::string& command, const Outcome& o) {
  return json{{"command", command},
              {"verdict", to_string(o.verdict)},
              {"certificate", o.certificate},
              {"counterexample", o.counterexample},
              {"bounds", o.bounds}};
}

namespace detail {

struct Source {
  std::string path;
  std::string inline_json;
};

inline void add_source(CLI::App* cmd, Source& src) {
  cmd->add_option("input", src.path, "instance document (JSON)");
  cmd->add_option("--json", src.inline_json, "instance document given inline");
}

inline io::InstanceDoc load(const Source& src) {
  if (!src.inline_json.empty()) {
    if (!src.path.empty()) throw InputError("give either an input file or --json, not both");
    return io::parse_instance(src.inline_json);
  }
  if (src.path.empty()) throw InputError("no instance document given");
  std::ifstream in(src.path);
  if (!in) throw InputError("cannot read " + src.path);
  std::ostringstream text;
  text << in.rdbuf();
  return io::parse_instance(text.str());
}

inline const json& expect_payload(const io::InstanceDoc& doc, const std::string& kind) {
  if (doc.payload_kind != kind)
    throw InputError("this command reads a \"" + kind + "\" payload, got \"" +
                     (doc.payload_kind.empty() ? std::string("none") : doc.payload_kind) + "\"");
  return doc.payload;
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("payload is missing \"") + key + "\"");
  return j.at(key);
}

// ---------------------------------------------------------------- commands

inline Outcome check_exact(const io::InstanceDoc& doc) {
  const json& p = expect_payload(doc, "morphism");
  io::detail::require_keys(p, "composable pair", {"f0", "f1"});
  const Mor f0 = io::mor_from_json(doc.ring, p.at("f0")), f1 = io::mor_from_json(doc.ring, p.at("f1"));
  const ExactnessVerdict v = is_exact_at(f0, f1);
  Outcome o;
  o.certificate = json{{"f0", io::mor_to_json(f0)}, {"f1", io::mor_to_json(f1)}, {"status", to_string(v.status)}};
  if (v.recipe) o.certificate["lift"] = io::mat_to_json(*v.recipe);
  if (v.status == Exactness::NotExact) {
    o.verdict = Verdict::Refuted;
    if (v.composite) o.counterexample = json{{"kind", "nonzero_composite"}, {"composite", io::mat_to_json(*v.composite)}};
    if (v.witness) o.counterexample = json{{"kind", "unliftable_kernel_element"}, {"element", io::mat_to_json(*v.witness)}};
  } else if (v.status == Exactness::Exact) {
    o.verdict = Verdict::Certified;
  }
  return o;
}

struct CertifyFlags {
  std::size_t l{0};
  std::optional<std::size_t> trials, seed, max_len;
};

inline Outcome certify(const io::InstanceDoc& doc, const CertifyFlags& fl) {
  BatchPolicy policy{doc.ring, 0, 0, 3, 3, 3, 0, {}};
  if (doc.payload_kind == "batch_policy") policy = io::policy_from_json(doc.ring, doc.payload);
  else policy.fixed.push_back(io::mor_from_json(doc.ring, expect_payload(doc, "morphism")));
  if (fl.trials) policy.trials = *fl.trials;
  if (fl.seed) policy.seed = *fl.seed;
  if (fl.max_len) policy.max_len = *fl.max_len;
  if (fl.l >= 2 && policy.max_len != 0 && policy.max_len < fl.l)
    throw InputError("--max-len must be at least --l");

  const UniformReport rep = certify_uniform(policy, fl.l);
  Outcome o;
  o.verdict = rep.aggregate;
  json verdicts = json::array();
  for (const auto& t : rep.verdicts) {
    verdicts.push_back(io::trial_to_json(t));
    if (t.verdict == Verdict::Refuted && o.counterexample.is_null()) o.counterexample = verdicts.back();
  }
  o.certificate = json{{"instance", io::policy_to_json(policy)}, {"l", fl.l}, {"verdicts", std::move(verdicts)},
                       {"aggregate", to_string(rep.aggregate)}};
  o.bounds = json{{"l", fl.l}, {"max_len", policy.max_len == 0 ? fl.l : policy.max_len},
                  {"instances", rep.verdicts.size()}};
  return o;
}

inline Outcome nil_degree_cmd(const io::InstanceDoc& doc, std::optional<std::size_t> bound_flag) {
  const NilObject x = io::nil_from_json(doc.ring, expect_payload(doc, "nil_object"));
  const std::size_t bound = bound_flag ? *bound_flag : default_nil_bound(x);
  Outcome o;
  o.bounds = json{{"bound", bound}};
  const auto n = nil_degree(x, bound);
  if (!n) {
    o.certificate = json{{"composite_at_bound", io::mat_to_json(nil_composite(x, bound))}};
    return o;
  }
  o.verdict = Verdict::Certified;
  o.certificate = json{{"degree", *n},
                       {"aut", io::aut_to_json(x.aut)},
                       {"composite", io::mat_to_json(nil_composite(x, *n))},
                       {"previous", io::mat_to_json(nil_composite(x, *n - 1))}};
  return o;
}

inline LaurentMor laurent_named(const Ring& r, const json& p, const char* key) {
  return io::laurent_from_json(r, field(p, key));
}

inline Outcome laurent_cmd(const io::InstanceDoc& doc, const std::string& op) {
  const json& p = expect_payload(doc, "laurent_morphism");
  Outcome o;
  o.verdict = Verdict::Certified;
  if (op == "compose") {
    io::detail::require_keys(p, "compose payload", {"f", "g"});
    const LaurentMor f = laurent_named(doc.ring, p, "f"), g = laurent_named(doc.ring, p, "g");
    o.certificate = json{{"result", io::laurent_to_json(laurent_compose(g, f))}};
    return o;
  }
  if (op == "normalize") {
    if (!p.contains("aut")) io::detail::require_keys(p, "normalize payload", {"f"});
    const LaurentMor f = p.contains("aut") ? io::laurent_from_json(doc.ring, p) : laurent_named(doc.ring, p, "f");
    const auto [s, g] = laurent_normalize(f);
    o.certificate = json{{"shift", s}, {"result", io::laurent_to_json(g)}};
    return o;
  }
  io::detail::require_keys(p, "divide payload", {"f", "gens"});
  const LaurentMor f = laurent_named(doc.ring, p, "f");
  if (!p.at("gens").is_array()) throw InputError("gens must be an array");
  std::vector<LaurentMor> gens;
  for (const auto& g : p.at("gens")) gens.push_back(io::laurent_from_json(doc.ring, g));
  const Reduction red = reduce(f, gens);
  json degrees = json::array();
  for (const auto& d : red.degrees) degrees.push_back(d ? json(*d) : json(nullptr));
  o.certificate = json{{"degrees", std::move(degrees)}, {"remainder", io::laurent_to_json(red.remainder)},
                       {"stuck", red.stuck}};
  if (!red.remainder.is_zero()) o.verdict = Verdict::Undecided;
  return o;
}

inline Outcome charseq_outcome(const Obj& a, const RingAut& aut, std::size_t depth, std::uint64_t seed) {
  const CharSeqMaps c = build_char_seq(a, aut, depth);
  const CharSeqReport rep = verify_char_seq(c, seed);
  Outcome o;
  o.verdict = rep.passed() ? Verdict::Certified : Verdict::Refuted;
  o.certificate = json{{"rank", a.rank}, {"aut", io::aut_to_json(aut)}, {"depth", depth}, {"seed", seed},
                       {"checks", io::charseq_report_to_json(rep)}};
  for (const auto& chk : rep.checks)
    if (!chk.passed() && o.counterexample.is_null())
      o.counterexample = json{{"family", chk.family}, {"block", chk.failures[0].block}, {"degree", chk.failures[0].degree}};
  o.bounds = json{{"depth", depth}};
  return o;
}

inline Outcome charseq_from_doc(const io::InstanceDoc& doc, std::optional<std::size_t> depth_flag) {
  const json& p = expect_payload(doc, "charseq_params");
  io::detail::require_keys(p, "charseq parameters", {"rank", "aut"}, {"depth", "seed"});
  const std::size_t rank = io::detail::get_size(p.at("rank"), "rank");
  std::size_t depth = p.contains("depth") ? io::detail::get_size(p.at("depth"), "depth") : 4;
  if (depth_flag) depth = *depth_flag;
  const std::uint64_t seed = p.contains("seed") ? io::detail::get_size(p.at("seed"), "seed") : 0;
  return charseq_outcome(Obj(rank), io::aut_from_json(doc.ring, p.at("aut")), depth, seed);
}

struct NestedFlags {
  std::string model{"graded"};
  std::string ring;
  std::size_t l{0};
  std::size_t horizon{8};
  std::size_t trials{20};
  std::uint64_t seed{0};
  std::string category{"S"};
};

inline Outcome nested_certify(const NestedFlags& fl, const std::optional<io::InstanceDoc>& doc) {
  if (fl.model != "graded") throw UnsupportedRing("nested model \"" + fl.model + "\" (only \"graded\" exists)");
  Ring ring = !fl.ring.empty() ? io::ring_from_name(fl.ring) : doc ? doc->ring : throw InputError("nested certify needs --ring");
  const NestedReport rep = certify_S_L(NestedModel{ring}, fl.l, fl.trials, fl.horizon, fl.seed);
  Outcome o;
  o.verdict = rep.aggregate();
  json trials = json::array();
  for (const auto& t : rep.trials) {
    trials.push_back(io::nested_trial_to_json(t));
    if (t.counterexample_index && o.counterexample.is_null() && (t.in_S == Verdict::Refuted || t.in_L == Verdict::Refuted))
      o.counterexample = json{{"trial", t.index}, {"index", *t.counterexample_index},
                              {"component", io::mat_to_json(*t.counterexample)}};
  }
  o.certificate = json{{"model", fl.model}, {"ring", io::ring_to_json(ring)}, {"l", fl.l},
                       {"in_S", to_string(rep.s_aggregate)}, {"in_L", to_string(rep.l_aggregate)},
                       {"trials", std::move(trials)}};
  o.bounds = json{{"horizon", fl.horizon}, {"trials", fl.trials}, {"seed", fl.seed}};
  return o;
}

inline Outcome nested_lift(const io::InstanceDoc& doc, const std::string& category) {
  const json& p = expect_payload(doc, "sequence_instance");
  io::detail::require_keys(p, "lift instance", {"mu", "f_next", "f_cur"});
  const SeqMor mu = io::seqmor_from_json(doc.ring, p.at("mu"));
  const SeqMor next = io::seqmor_from_json(doc.ring, p.at("f_next"));
  const SeqMor cur = io::seqmor_from_json(doc.ring, p.at("f_cur"));
  Outcome o;
  if (category == "S") {
    const LiftResult r = lift_in_S(mu, next, cur);
    o.bounds = json{{"horizon", std::max(mu.horizon(), next.horizon())}};
    if (r.nu) {
      o.verdict = Verdict::Certified;
      o.certificate = json{{"nu", io::seqmor_to_json(*r.nu)}, {"bound", io::admissible_to_json(r.bound)}, {"in_S", r.in_S}};
    } else {
      o.verdict = Verdict::Refuted;
      o.counterexample = json{{"index", *r.failed_index}, {"tail", r.tail_failure}};
    }
    return o;
  }
  if (category != "L") throw InputError("--in must be S or L");
  const LLiftResult r = lift_in_L(mu, next, cur);
  o.bounds = json{{"threshold", r.threshold}};
  if (r.nu) {
    o.verdict = Verdict::Certified;
    o.certificate = json{{"nu", io::seqmor_to_json(*r.nu)}, {"representative", io::seqmor_to_json(*r.representative)}};
  } else {
    o.verdict = Verdict::Refuted;
    o.counterexample = json{{"tail", r.tail_failure}, {"representative", io::seqmor_to_json(*r.representative)}};
  }
  return o;
}

inline Outcome nested_limit_eq(const io::InstanceDoc& doc) {
  const json& p = expect_payload(doc, "sequence_instance");
  io::detail::require_keys(p, "limit comparison", {"f", "g"});
  const SeqMor f = io::seqmor_from_json(doc.ring, p.at("f")), g = io::seqmor_from_json(doc.ring, p.at("g"));
  const LimitComparison c = limit_eq(f, g);
  Outcome o;
  o.verdict = c.equal ? Verdict::Certified : Verdict::Refuted;
  o.certificate = json{{"differing", c.differing}};
  if (!c.equal)
    o.counterexample = json{{"tail_f", io::elem_to_json(f.ring(), f.tail_scalar())},
                            {"tail_g", io::elem_to_json(g.ring(), g.tail_scalar())}};
  return o;
}

inline Outcome idem_split_cmd(const io::InstanceDoc& doc) {
  const Mor p = io::mor_from_json(doc.ring, expect_payload(doc, "morphism"));
  Outcome o;
  if (p.dom() == p.cod() && p.mat() * p.mat() != p.mat()) {
    o.verdict = Verdict::Refuted;
    o.counterexample = json{{"p_squared", io::mat_to_json(p.mat() * p.mat())}};
    return o;
  }
  const IdemSplit s = idem_split(p);
  o.verdict = verify(s) ? Verdict::Certified : Verdict::Undecided;
  o.certificate = json{{"p", io::mor_to_json(s.p)}, {"u", io::mor_to_json(s.u)}, {"u_inv", io::mor_to_json(s.u_inv)},
                       {"split_rank", s.split_rank}, {"k0_rank", k0_rank(s)}};
  return o;
}

inline Outcome divides_cmd(const io::InstanceDoc& doc) {
  const json& p = expect_payload(doc, "morphism");
  io::detail::require_keys(p, "divides payload", {"f", "f_prime"});
  const Mor f = io::mor_from_json(doc.ring, p.at("f")), fp = io::mor_from_json(doc.ring, p.at("f_prime"));
  Outcome o;
  if (auto g = divides(f, fp)) {
    o.verdict = Verdict::Certified;
    o.certificate = json{{"g", io::mor_to_json(*g)}};
    return o;
  }
  o.verdict = Verdict::Refuted;
  for (std::size_t j = 0; j < f.mat().cols(); ++j)
    if (!solve_linear(fp.mat(), f.mat().column(j))) {
      o.counterexample = json{{"column", j}, {"vector", io::mat_to_json(f.mat().column(j))}};
      break;
    }
  return o;
}

}  // namespace detail

/// Parses `args` (without the program name), runs one command and returns its exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certificates for regularity and coherence of matrix categories", "adcat"};
  app.require_subcommand(1);
  std::string command;
  std::function<Outcome()> action;

  detail::Source src;
  auto doc = [&] { return detail::load(src); };

  auto* check = app.add_subcommand("check-exact", "exactness of f0 then f1 at the middle object");
  detail::add_source(check, src);
  check->callback([&] { command = "check-exact"; action = [&] { return detail::check_exact(doc()); }; });

  detail::CertifyFlags cf;
  std::size_t trials = 0, seed = 0, max_len = 0;
  auto* cert = app.add_subcommand("certify", "l-uniform regular coherence on a batch");
  detail::add_source(cert, src);
  cert->add_option("--l", cf.l, "resolution length bound")->required();
  auto* o_trials = cert->add_option("--trials", trials, "random instances");
  auto* o_seed = cert->add_option("--seed", seed, "sampler seed");
  auto* o_len = cert->add_option("--max-len", max_len, "resolve bound for l >= 2");
  cert->callback([&] {
    command = "certify";
    if (o_trials->count()) cf.trials = trials;
    if (o_seed->count()) cf.seed = seed;
    if (o_len->count()) cf.max_len = max_len;
    action = [&] { return detail::certify(doc(), cf); };
  });

  std::size_t bound = 0;
  auto* nil = app.add_subcommand("nil-degree", "least n with f^(n) = 0");
  detail::add_source(nil, src);
  auto* o_bound = nil->add_option("--bound", bound, "largest degree to try")->check(CLI::PositiveNumber);
  nil->callback([&] {
    command = "nil-degree";
    std::optional<std::size_t> b;
    if (o_bound->count()) b = bound;
    action = [&, b] { return detail::nil_degree_cmd(doc(), b); };
  });

  auto* laurent = app.add_subcommand("laurent", "twisted Laurent morphisms");
  laurent->require_subcommand(1);
  for (const char* op : {"compose", "normalize", "divide"}) {
    auto* sub = laurent->add_subcommand(op);
    detail::add_source(sub, src);
    sub->callback([&, op] {
      command = std::string("laurent ") + op;
      action = [&, op] { return detail::laurent_cmd(doc(), op); };
    });
  }

  std::size_t depth = 0;
  auto* csv = app.add_subcommand("charseq-verify", "characteristic sequence checks from an instance");
  detail::add_source(csv, src);
  auto* o_depth = csv->add_option("--depth", depth, "truncation depth");
  csv->callback([&] {
    command = "charseq-verify";
    std::optional<std::size_t> d;
    if (o_depth->count()) d = depth;
    action = [&, d] { return detail::charseq_from_doc(doc(), d); };
  });

  std::size_t cs_rank = 1, cs_depth = 4;
  std::uint64_t cs_seed = 0;
  std::string cs_aut = "identity", cs_ring = "Integers";
  auto* charseq = app.add_subcommand("charseq", "characteristic sequence checks from flags");
  charseq->require_subcommand(1);
  auto* csverify = charseq->add_subcommand("verify");
  csverify->add_option("--rank", cs_rank, "rank of A")->required();
  csverify->add_option("--aut", cs_aut, "identity | frobenius[:e] | rotation[:r]");
  csverify->add_option("--depth", cs_depth, "truncation depth");
  csverify->add_option("--ring", cs_ring, "ring, e.g. Integers or Product(Integers,2)");
  csverify->add_option("--seed", cs_seed, "probe seed");
  csverify->callback([&] {
    command = "charseq verify";
    action = [&] {
      const Ring r = io::ring_from_name(cs_ring);
      return detail::charseq_outcome(Obj(cs_rank), io::aut_from_name(r, cs_aut), cs_depth, cs_seed);
    };
  });

  detail::NestedFlags nf;
  auto* nested = app.add_subcommand("nested", "sequence categories of a nested filtration");
  nested->require_subcommand(1);
  auto* ncert = nested->add_subcommand("certify");
  ncert->add_option("--model", nf.model, "filtration model")->check(CLI::IsMember({"graded"}));
  ncert->add_option("--ring", nf.ring, "coefficient ring");
  ncert->add_option("--l", nf.l, "resolution length bound");
  ncert->add_option("--horizon", nf.horizon, "explicit entries per sequence");
  ncert->add_option("--trials", nf.trials, "instances, the first being the doubling probe");
  ncert->add_option("--seed", nf.seed, "sampler seed");
  detail::add_source(ncert, src);
  ncert->callback([&] {
    command = "nested certify";
    action = [&] {
      std::optional<io::InstanceDoc> d;
      if (!src.path.empty() || !src.inline_json.empty()) d = doc();
      return detail::nested_certify(nf, d);
    };
  });
  auto* nlift = nested->add_subcommand("lift");
  detail::add_source(nlift, src);
  nlift->add_option("--in", nf.category, "S or L")->check(CLI::IsMember({"S", "L"}));
  nlift->callback([&] {
    command = "nested lift";
    action = [&] { return detail::nested_lift(doc(), nf.category); };
  });
  auto* nlim = nested->add_subcommand("limit-eq");
  detail::add_source(nlim, src);
  nlim->callback([&] {
    command = "nested limit-eq";
    action = [&] { return detail::nested_limit_eq(doc()); };
  });

  auto* idem = app.add_subcommand("idem-split", "split an idempotent");
  detail::add_source(idem, src);
  idem->callback([&] { command = "idem-split"; action = [&] { return detail::idem_split_cmd(doc()); }; });

  auto* div = app.add_subcommand("divides", "f = f' o g");
  detail::add_source(div, src);
  div->callback([&] { command = "divides"; action = [&] { return detail::divides_cmd(doc()); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kCertified;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kCertified;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    const Outcome o = action();
    out << report(command, o).dump(2) << "\n";
    return exit_code(o.verdict);
  } catch (const UnsupportedRing& e) {
    err << "error: " << e.what() << "\n";
    return kUnsupported;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace adcat::cli
