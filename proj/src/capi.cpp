#include "gctuf.h"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include "generate.hpp"
#include "instance.hpp"
#include "lattice.hpp"
#include "linalg.hpp"
#include "netflow.hpp"
#include "oracle.hpp"
#include "reduction.hpp"
#include "solver.hpp"

using namespace gctuf;

struct gctuf_instance {
  ParsedInstance inst;
};

struct gctuf_result {
  Report report;
  int verdict = 2;
  std::map<std::string, long long> stats;
  double call_bound = 0.0;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

gctuf_status status_of(const error& e) {
  switch (e.kind()) {
    case errc::parse:
      return GCTUF_ERR_PARSE;
    case errc::invalid:
      return GCTUF_ERR_INVALID;
    case errc::budget:
      return GCTUF_ERR_BUDGET;
    case errc::unsupported:
      return GCTUF_ERR_UNSUPPORTED;
    case errc::internal:
      return GCTUF_ERR_INTERNAL;
  }
  return GCTUF_ERR_INTERNAL;
}

gctuf_status guard(char** errmsg, const std::function<void()>& body) {
  try {
    body();
    return GCTUF_OK;
  } catch (const error& e) {
    if (errmsg) *errmsg = dup_string(e.what());
    return status_of(e);
  } catch (const std::exception& e) {
    if (errmsg) *errmsg = dup_string(e.what());
    return GCTUF_ERR_INTERNAL;
  }
}

std::string join_ints(const std::vector<Int>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << v[i].str();
  }
  return os.str();
}

SolveOptions to_solve_options(const gctuf_options* opts) {
  SolveOptions out;
  if (opts) {
    out.force_oracle = opts->use_oracle != 0;
    out.paper_shape = opts->paper_shape != 0;
    out.seed = opts->seed;
  }
  return out;
}

std::map<std::string, std::string> parse_params(const char* params) {
  std::map<std::string, std::string> out;
  if (!params) return out;
  std::string s(params);
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, ',')) {
    size_t eq = item.find('=');
    require(eq != std::string::npos, errc::parse, "generator params are key=value pairs");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

int64_t param_int(const std::map<std::string, std::string>& p, const std::string& key,
                  int64_t fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  return std::stoll(it->second);
}

void fill_solver_result(gctuf_result* res, const GctufInstance& inst, const SolverResult& sr,
                        const gctuf_options* opts) {
  res->verdict = sr.feasible ? 0 : 1;
  res->report.add("verdict", sr.feasible ? "feasible" : "infeasible");
  if (sr.feasible) {
    res->report.add("witness", join_ints(sr.witness));
    res->report.add("verification", inst.satisfied_by(sr.witness) ? "ok" : "FAILED");
  }
  res->report.add("dispatch", sr.dispatch);
  res->report.add("base-block-calls", std::to_string(sr.stats.base_block_calls));
  {
    std::ostringstream os;
    for (const auto& [d, c] : sr.stats.base_calls_by_depth) os << d << ':' << c << ' ';
    res->report.add("calls-by-depth", os.str());
  }
  {
    std::ostringstream os;
    os << sr.stats.call_bound;
    res->report.add("call-bound", os.str());
  }
  res->report.add("recursive-solves", std::to_string(sr.stats.recursive_solves));
  res->report.add("coset-reductions", std::to_string(sr.stats.coset_reductions));
  res->report.add("pattern-probes", std::to_string(sr.stats.pattern_probes));
  res->report.add("variable-reductions", std::to_string(sr.stats.variable_reductions));
  res->report.add("shape-shrinks", std::to_string(sr.stats.shape_shrinks));
  res->report.add("pivot-steps", std::to_string(sr.stats.pivot_steps));
  res->report.add("fallback", sr.stats.used_fallback ? "yes" : "no");
  res->report.add("shape-mode", (opts && opts->paper_shape) ? "paper" : "safe");
  res->report.add("root-seed", std::to_string(opts ? opts->seed : 0));
  for (const auto& n : sr.stats.notes) res->report.add("note", n);

  res->report.add("columns", std::to_string(inst.t.cols()));
  res->report.add("depth", std::to_string(inst.depth()));
  res->stats["columns"] = inst.t.cols();
  res->stats["depth"] = inst.depth();
  res->stats["base_block_calls"] = sr.stats.base_block_calls;
  res->stats["recursive_solves"] = sr.stats.recursive_solves;
  res->stats["coset_reductions"] = sr.stats.coset_reductions;
  res->stats["pattern_probes"] = sr.stats.pattern_probes;
  res->stats["variable_reductions"] = sr.stats.variable_reductions;
  res->stats["shape_shrinks"] = sr.stats.shape_shrinks;
  res->stats["pivot_steps"] = sr.stats.pivot_steps;
  res->stats["fallback"] = sr.stats.used_fallback ? 1 : 0;
  res->call_bound = sr.stats.call_bound;
}

void run_command(const std::string& command, const ParsedInstance& pi, const gctuf_options* opts,
                 gctuf_result* res) {
  if (command == "solve") {
    require(pi.kind == ParsedInstance::Kind::gctuf, errc::invalid,
            "solve expects a gctuf instance");
    SolverResult sr = solve(pi.gctuf, to_solve_options(opts));
    fill_solver_result(res, pi.gctuf, sr, opts);
    return;
  }
  if (command == "check-tu") {
    const IntMatrix* m = nullptr;
    if (pi.kind == ParsedInstance::Kind::gctuf) m = &pi.gctuf.t;
    if (pi.kind == ParsedInstance::Kind::ip) m = &pi.ip.a;
    if (pi.kind == ParsedInstance::Kind::mcctu) m = &pi.mcctu.t;
    require(m != nullptr, errc::invalid, "check-tu expects a matrix-bearing instance");
    TuVerdict v = check_totally_unimodular(*m);
    res->report.add("tu", v.tu ? "true" : "false");
    res->report.add("mode", v.exhaustive ? "exhaustive" : "probabilistic");
    return;
  }
  if (command == "check-delta") {
    require(pi.kind == ParsedInstance::Kind::ip, errc::invalid, "check-delta expects an ip");
    DeltaVerdict v = delta_modularity(pi.ip.a);
    res->report.add("delta", v.delta.str());
    res->report.add("strict", v.strict ? "true" : "false");
    return;
  }
  if (command == "reduce") {
    require(pi.kind == ParsedInstance::Kind::ip, errc::invalid, "reduce expects an ip");
    Reduction red = reduce_ip(pi.ip);
    red.mcctu.bijection = red.h;
    res->report.add("delta", red.delta.str());
    res->report.add("congruencies", std::to_string(red.mcctu.congruencies.size()));
    res->report.add("instance", "\n" + serialize(red.mcctu));
    return;
  }
  if (command == "decompose") {
    require(pi.kind == ParsedInstance::Kind::gctuf, errc::invalid,
            "decompose expects a gctuf instance");
    DecompPtr tree = decompose(pi.gctuf.t, SearchCaps{}, pi.gctuf.decomposition_hint);
    res->report.add("decomposition", serialize_decomposition(*tree));
    return;
  }
  if (command == "pattern") {
    require(pi.kind == ParsedInstance::Kind::gctuf, errc::invalid,
            "pattern expects a gctuf instance");
    const GctufInstance& inst = pi.gctuf;
    std::optional<ThreeSumSplit> split;
    if (inst.decomposition_hint &&
        inst.decomposition_hint->kind == DecompNode::Kind::three_sum &&
        recompose(*inst.decomposition_hint) == inst.t)
      split = inst.decomposition_hint->split;
    if (!split) split = find_three_sum(inst.t);
    require(split.has_value(), errc::invalid, "no three-sum split found for the pattern command");
    if (opts && opts->use_oracle) {
      ExactPatterns ex = brute_pattern(inst, *split);
      for (const auto& pr : ex.pairs) {
        std::ostringstream os;
        os << "A={";
        for (const auto& e : ex.pi_a[pr]) os << ' ' << e.to_text();
        os << " } B={";
        for (const auto& e : ex.pi_b[pr]) os << ' ' << e.to_text();
        os << " }";
        res->report.add("pair (" + pr.first.str() + ", " + pr.second.str() + ")", os.str());
      }
      return;
    }
    ShapeAnalysis an = analyze_patterns(inst, *split, to_solve_options(opts));
    for (const auto& pr : an.shape) {
      std::ostringstream os;
      os << "A={";
      for (const auto& [e, w] : an.pi_bar_a.at[pr]) os << ' ' << e.to_text();
      os << " } B={";
      for (const auto& [e, w] : an.pi_bar_b.at[pr]) os << ' ' << e.to_text();
      os << " }";
      res->report.add("pair (" + pr.first.str() + ", " + pr.second.str() + ")", os.str());
    }
    return;
  }
  if (command == "gclf") {
    require(pi.kind == ParsedInstance::Kind::gclf, errc::invalid, "gclf expects a gclf instance");
    if (opts && opts->use_oracle) {
      OracleOutcome o = brute_gclf_members(pi.gclf);
      res->verdict = o.feasible ? 0 : 1;
      res->report.add("verdict", o.feasible ? "feasible" : "infeasible");
      if (o.feasible) res->report.add("member-indicator", join_ints(o.witness));
      return;
    }
    GclfOutcome o = solve_gclf(pi.gclf);
    res->verdict = o.feasible ? 0 : 1;
    res->report.add("verdict", o.feasible ? "feasible" : "infeasible");
    if (o.feasible) {
      std::ostringstream os;
      for (size_t i = 0; i < o.member.size(); ++i) {
        if (i) os << ' ';
        os << o.member[i];
      }
      res->report.add("member", os.str());
    }
    res->report.add("codes-tried", std::to_string(o.codes_tried));
    res->stats["codes_tried"] = o.codes_tried;
    return;
  }
  if (command == "gcc") {
    require(pi.kind == ParsedInstance::Kind::gcc, errc::invalid, "gcc expects a gcc instance");
    std::vector<Int> lengths;
    for (const auto& a : pi.gcc.arcs) lengths.push_back(a.len);
    if (opts && opts->use_oracle) {
      GccOutcome o = brute_gcc(pi.gcc);
      res->verdict = o.feasible ? 0 : 1;
      res->report.add("verdict", o.feasible ? "feasible" : "infeasible");
      if (o.feasible) {
        res->report.add("flow", join_ints(o.flow));
        res->report.add("length", o.length.str());
      }
      return;
    }
    auto o = solve_gcc(pi.gcc, true);
    res->verdict = o.has_value() ? 0 : 1;
    res->report.add("verdict", o ? "feasible" : "infeasible");
    if (o) {
      res->report.add("flow", join_ints(*o));
      res->report.add("length", length_of(lengths, *o).str());
    }
    return;
  }
  fail(errc::invalid, "unknown command: " + command);
}

std::string generate_text(const std::string& kind, uint64_t seed,
                          const std::map<std::string, std::string>& params) {
  if (kind == "strict-ip") {
    IpGenParams p;
    p.n = int(param_int(params, "n", 2));
    p.delta = int(param_int(params, "delta", 2));
    return serialize(gen_strict_ip(p, seed));
  }
  if (kind == "gclf") {
    return serialize(
        gen_gclf(seed, int(param_int(params, "n", 8)), param_int(params, "order", 6)));
  }
  if (kind == "gcc") {
    return serialize(gen_gcc(seed, int(param_int(params, "nv", 4)),
                             int(param_int(params, "cap", 3)), param_int(params, "order", 4)));
  }
  GctufGenParams p;
  p.kind = matrix_kind_from_name(kind);
  p.size_hint = int(param_int(params, "size", 4));
  p.group_order_max = param_int(params, "order", 4);
  p.depth = int(param_int(params, "depth", 1));
  p.plant = param_int(params, "plant", 1) != 0;
  p.box_radius = int(param_int(params, "box", 2));
  p.attach_structure = param_int(params, "structure", 0) != 0;
  return serialize(gen_gctuf(p, seed));
}

}  // namespace

extern "C" {

void gctuf_options_init(gctuf_options* opts) {
  if (!opts) return;
  opts->use_oracle = 0;
  opts->paper_shape = 0;
  opts->seed = 0;
}

gctuf_status gctuf_parse(const char* text, gctuf_instance** out, char** errmsg) {
  if (!text || !out) return GCTUF_ERR_INVALID;
  return guard(errmsg, [&] {
    auto* handle = new gctuf_instance{parse_instance(text)};
    *out = handle;
  });
}

gctuf_status gctuf_instance_text(const gctuf_instance* inst, char** out) {
  if (!inst || !out) return GCTUF_ERR_INVALID;
  return guard(nullptr, [&] { *out = dup_string(serialize(inst->inst)); });
}

void gctuf_instance_free(gctuf_instance* inst) { delete inst; }

gctuf_status gctuf_run(const char* command, const gctuf_instance* inst,
                       const gctuf_options* opts, gctuf_result** out, char** errmsg) {
  if (!command || !inst || !out) return GCTUF_ERR_INVALID;
  return guard(errmsg, [&] {
    auto res = std::make_unique<gctuf_result>();
    run_command(command, inst->inst, opts, res.get());
    *out = res.release();
  });
}

gctuf_status gctuf_generate(const char* kind, unsigned long long seed, const char* params,
                            char** out_text, char** errmsg) {
  if (!kind || !out_text) return GCTUF_ERR_INVALID;
  return guard(errmsg, [&] {
    auto p = parse_params(params);
    *out_text = dup_string(generate_text(kind, seed, p));
  });
}

int gctuf_result_verdict(const gctuf_result* res) { return res ? res->verdict : 2; }

gctuf_status gctuf_result_text(const gctuf_result* res, int json, char** out) {
  if (!res || !out) return GCTUF_ERR_INVALID;
  return guard(nullptr,
               [&] { *out = dup_string(json ? res->report.to_json() : res->report.to_text()); });
}

long long gctuf_result_stat(const gctuf_result* res, const char* key) {
  if (!res || !key) return -1;
  auto it = res->stats.find(key);
  return it == res->stats.end() ? -1 : it->second;
}

double gctuf_result_call_bound(const gctuf_result* res) { return res ? res->call_bound : 0.0; }

void gctuf_result_free(gctuf_result* res) { delete res; }

void gctuf_string_free(char* s) { std::free(s); }

const char* gctuf_version(void) { return "gctuf 1.0.0"; }

}  // extern "C"
