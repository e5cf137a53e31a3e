// Command-line front end. Talks to the solver library exclusively through the
// C interface in gctuf.h.

#include <CLI11.hpp>

#include <fstream>
#include <atomic>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gctuf.h"

namespace {

struct StringGuard {
  char* s = nullptr;
  ~StringGuard() { gctuf_string_free(s); }
};

struct InstanceGuard {
  gctuf_instance* h = nullptr;
  ~InstanceGuard() { gctuf_instance_free(h); }
};

struct ResultGuard {
  gctuf_result* h = nullptr;
  ~ResultGuard() { gctuf_result_free(h); }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    std::exit(2);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

[[noreturn]] void die(const char* what, gctuf_status st, char* msg) {
  std::cerr << "error (" << what << ", status " << int(st) << ")";
  if (msg) {
    std::cerr << ": " << msg;
    gctuf_string_free(msg);
  }
  std::cerr << "\n";
  std::exit(2);
}

// Runs one command on one file and prints the result; returns the exit code.
int run_on_file(const std::string& command, const std::string& path, const gctuf_options& opts,
                bool json) {
  std::string text = read_file(path);
  InstanceGuard inst;
  char* errmsg = nullptr;
  gctuf_status st = gctuf_parse(text.c_str(), &inst.h, &errmsg);
  if (st != GCTUF_OK) die("parse", st, errmsg);

  ResultGuard res;
  st = gctuf_run(command.c_str(), inst.h, &opts, &res.h, &errmsg);
  if (st != GCTUF_OK) die(command.c_str(), st, errmsg);

  StringGuard out;
  st = gctuf_result_text(res.h, json ? 1 : 0, &out.s);
  if (st != GCTUF_OK) die("render", st, nullptr);
  std::cout << out.s;

  int verdict = gctuf_result_verdict(res.h);
  if (verdict == 0 || verdict == 1) return verdict;
  return 0;
}

struct BenchRow {
  unsigned long long seed = 0;
  std::string kind;
  long long cols = 0, depth = 0, calls = 0;
  double bound = 0.0;
  int verdict = 2;
  bool ok = false;
  std::string error;
};

BenchRow bench_one(const std::string& kind, unsigned long long seed, const std::string& params,
                   const gctuf_options& base_opts) {
  BenchRow row;
  row.seed = seed;
  row.kind = kind;
  char* errmsg = nullptr;
  StringGuard text;
  gctuf_status st = gctuf_generate(kind.c_str(), seed, params.c_str(), &text.s, &errmsg);
  if (st != GCTUF_OK) {
    row.error = errmsg ? errmsg : "generate failed";
    gctuf_string_free(errmsg);
    return row;
  }
  InstanceGuard inst;
  st = gctuf_parse(text.s, &inst.h, &errmsg);
  if (st != GCTUF_OK) {
    row.error = errmsg ? errmsg : "parse failed";
    gctuf_string_free(errmsg);
    return row;
  }
  gctuf_options opts = base_opts;
  opts.seed = seed;
  ResultGuard res;
  st = gctuf_run("solve", inst.h, &opts, &res.h, &errmsg);
  if (st != GCTUF_OK) {
    row.error = errmsg ? errmsg : "solve failed";
    gctuf_string_free(errmsg);
    return row;
  }
  row.verdict = gctuf_result_verdict(res.h);
  row.cols = gctuf_result_stat(res.h, "columns");
  row.depth = gctuf_result_stat(res.h, "depth");
  row.calls = gctuf_result_stat(res.h, "base_block_calls");
  row.bound = gctuf_result_call_bound(res.h);
  row.ok = row.depth == 0 ? row.calls == 0 : double(row.calls) <= row.bound;
  return row;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver for group-constrained TU feasibility and strictly "
               "delta-modular integer programs"};
  app.require_subcommand(1);

  std::string path;
  bool json = false;
  bool oracle = false;
  bool paper = false;
  unsigned long long seed = 0;

  auto add_common = [&](CLI::App* sub, bool takes_file = true) {
    if (takes_file) sub->add_option("file", path, "instance file")->required();
    sub->add_flag("--json-like", json, "structured JSON output");
    sub->add_flag("--oracle", oracle, "route through the brute-force oracle");
    sub->add_flag("--paper-shape", paper, "width-clamped pattern shapes");
    sub->add_option("--seed", seed, "root seed recorded in reports");
  };

  auto* c_solve = app.add_subcommand("solve", "decide feasibility and print a witness");
  add_common(c_solve);
  auto* c_tu = app.add_subcommand("check-tu", "total unimodularity check");
  add_common(c_tu);
  auto* c_delta = app.add_subcommand("check-delta", "delta-modularity of an ip matrix");
  add_common(c_delta);
  auto* c_reduce = app.add_subcommand("reduce", "strictly delta-modular ip -> mcctu");
  add_common(c_reduce);
  auto* c_dec = app.add_subcommand("decompose", "structural decomposition tree");
  add_common(c_dec);
  auto* c_pat = app.add_subcommand("pattern", "pattern tables of a three-sum split");
  add_common(c_pat);
  auto* c_gclf = app.add_subcommand("gclf", "group-constrained lattice feasibility");
  add_common(c_gclf);
  auto* c_gcc = app.add_subcommand("gcc", "group-constrained circulation");
  add_common(c_gcc);

  auto* c_gen = app.add_subcommand("gen", "seeded instance generator");
  std::string kind = "network";
  std::string params;
  std::string out_path;
  c_gen->add_option("--kind", kind,
                    "network | transposed-network | core | three-sum | pivot | strict-ip | "
                    "gclf | gcc");
  c_gen->add_option("--seed", seed, "generator seed")->required();
  c_gen->add_option("--params", params, "key=value list, e.g. size=5,depth=2,order=4");
  c_gen->add_option("-o,--output", out_path, "write to file instead of stdout");

  auto* c_bench = app.add_subcommand("bench", "solve a seeded corpus and tabulate call counts");
  int count = 20;
  int jobs = 4;
  std::string kinds = "network,transposed-network,core,three-sum,pivot";
  std::string bench_params = "size=5,depth=2,order=4";
  unsigned long long seed0 = 1;
  c_bench->add_option("--count", count, "number of instances");
  c_bench->add_option("--kinds", kinds, "comma-separated matrix kinds to cycle");
  c_bench->add_option("--params", bench_params, "generator params");
  c_bench->add_option("--seed", seed0, "first seed");
  c_bench->add_option("--jobs", jobs, "parallel workers");
  c_bench->add_flag("--json-like", json, "structured JSON output");

  CLI11_PARSE(app, argc, argv);

  gctuf_options opts;
  gctuf_options_init(&opts);
  opts.use_oracle = oracle ? 1 : 0;
  opts.paper_shape = paper ? 1 : 0;
  opts.seed = seed;

  if (c_gen->parsed()) {
    char* errmsg = nullptr;
    StringGuard text;
    gctuf_status st = gctuf_generate(kind.c_str(), seed, params.c_str(), &text.s, &errmsg);
    if (st != GCTUF_OK) die("generate", st, errmsg);
    if (out_path.empty()) {
      std::cout << text.s;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      out << text.s;
    }
    return 0;
  }

  if (c_bench->parsed()) {
    std::vector<std::string> kind_list;
    {
      std::istringstream is(kinds);
      std::string item;
      while (std::getline(is, item, ',')) kind_list.push_back(item);
    }
    if (kind_list.empty()) {
      std::cerr << "error: no kinds\n";
      return 2;
    }
    // instances run in parallel; rows are aggregated in seed order
    std::vector<BenchRow> rows(size_t(count), BenchRow{});
    std::atomic<int> next{0};
    int workers = std::max(1, jobs);
    std::vector<std::future<void>> futs;
    for (int w = 0; w < workers; ++w) {
      futs.push_back(std::async(std::launch::async, [&] {
        while (true) {
          int i = next.fetch_add(1);
          if (i >= count) break;
          unsigned long long s = seed0 + (unsigned long long)(i);
          rows[size_t(i)] = bench_one(kind_list[size_t(i) % kind_list.size()], s, bench_params,
                                      opts);
        }
      }));
    }
    for (auto& f : futs) f.get();

    long long max_calls = 0;
    int feasible = 0, failures = 0;
    bool all_ok = true;
    std::cout << "seed kind cols depth verdict base-calls bound ok\n";
    for (const BenchRow& r : rows) {
      if (!r.error.empty()) {
        std::cout << r.seed << ' ' << r.kind << " - - error - - -  # " << r.error << '\n';
        ++failures;
        all_ok = false;
        continue;
      }
      std::cout << r.seed << ' ' << r.kind << ' ' << r.cols << ' ' << r.depth << ' '
                << (r.verdict == 0 ? "feasible" : "infeasible") << ' ' << r.calls << ' '
                << r.bound << ' ' << (r.ok ? "yes" : "NO") << '\n';
      if (r.verdict == 0) ++feasible;
      max_calls = std::max(max_calls, r.calls);
      all_ok = all_ok && r.ok;
    }
    std::cout << "summary: count=" << count << " feasible=" << feasible
              << " failures=" << failures << " max-base-calls=" << max_calls
              << " within-bound=" << (all_ok ? "yes" : "NO") << '\n';
    return all_ok ? 0 : 2;
  }

  std::string command;
  if (c_solve->parsed()) command = "solve";
  if (c_tu->parsed()) command = "check-tu";
  if (c_delta->parsed()) command = "check-delta";
  if (c_reduce->parsed()) command = "reduce";
  if (c_dec->parsed()) command = "decompose";
  if (c_pat->parsed()) command = "pattern";
  if (c_gclf->parsed()) command = "gclf";
  if (c_gcc->parsed()) command = "gcc";
  return run_on_file(command, path, opts, json);
}
