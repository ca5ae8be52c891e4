/**
 * @file qab_cli.cpp
 * @brief Command-line front end: monomial bases, Gram matrices and
 *        canonical-basis transition matrices for quantum affine algebras.
 *
 * Exit codes: 0 success, 1 a verification reported a failure, 2 bad
 * configuration, 3 internal invariant violation.
 */
#include "qab/run.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

struct CommonOpts {
  std::string type = "A";
  int rank = 2;
  std::string weight;
  int order = 10;
  std::string engine = "dp";
  std::string format = "json";
  std::string out;
  unsigned jobs = 0;
  long long bound = 20;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_weight) {
  cmd->add_option("--type", o.type, "Cartan type: A, D or E")->capture_default_str();
  cmd->add_option("--rank", o.rank, "rank of the finite subdiagram")->capture_default_str();
  auto* w = cmd->add_option("--weight", o.weight,
                            "weight in Q+, comma-separated over vertices 0..n (e.g. 1,1,1)");
  if (needs_weight) w->required();
  cmd->add_option("--order", o.order, "series expansion order")->capture_default_str();
  cmd->add_option("--engine", o.engine, "inner product engine: dp or brute")
      ->capture_default_str();
  cmd->add_option("--format", o.format, "output format: json or csv")->capture_default_str();
  cmd->add_option("--out", o.out, "write the document to PATH instead of stdout");
  cmd->add_option("--jobs", o.jobs, "worker threads for Gram assembly (0 = cores)")
      ->capture_default_str();
  cmd->add_option("--bound", o.bound, "half-width of the beta_k table (roots command)")
      ->capture_default_str();
}

std::vector<long long> parse_weight_list(const std::string& s) {
  std::vector<long long> out;
  if (s.empty()) return out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(std::stoll(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::stoll(cur));
  return out;
}

qab::JobConfig make_config(qab::Command cmd, const CommonOpts& o) {
  qab::JobConfig cfg;
  cfg.command = cmd;
  cfg.type = qab::cartan_type_from_string(o.type);
  cfg.rank = o.rank;
  try {
    cfg.weight = parse_weight_list(o.weight);
  } catch (const std::exception&) {
    throw qab::ConfigError("cannot parse --weight '" + o.weight + "'");
  }
  cfg.series_order = o.order;
  cfg.engine = qab::engine_from_string(o.engine);
  if (o.format == "json")
    cfg.format = qab::OutputFormat::json;
  else if (o.format == "csv")
    cfg.format = qab::OutputFormat::csv;
  else
    throw qab::ConfigError("unknown format '" + o.format + "'");
  cfg.jobs = o.jobs;
  cfg.beta_bound = o.bound;
  return cfg;
}

int emit(const qab::JobResult& res, const CommonOpts& o) {
  if (o.out.empty()) {
    std::cout << res.text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open output file " << o.out << "\n";
      return 2;
    }
    f << res.text;
  }
  if (!res.ok) {
    std::cerr << "verification failed: " << res.error << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qab: exact monomial / PBW / canonical basis computations for "
      "simply-laced quantum affine algebras"};
  app.require_subcommand(1);

  struct Sub {
    qab::Command cmd;
    CLI::App* app;
    CommonOpts opts;
  };
  std::vector<Sub> subs;
  auto add = [&](qab::Command c, const char* name, const char* help, bool needs_weight) {
    CLI::App* sc = app.add_subcommand(name, help);
    subs.push_back({c, sc, {}});
    add_common(sc, subs.back().opts, needs_weight);
  };
  add(qab::Command::roots, "roots",
      "the reduced word, tau, vertex order and the beta_k table", false);
  add(qab::Command::index, "index", "the ordered index fiber of a weight with its classes",
      true);
  add(qab::Command::gram, "gram", "the Gram matrix of the monomial basis at a weight", true);
  add(qab::Command::canon, "canon",
      "the transition matrices H, D, P, Q, Q^-1 with verification", true);
  add(qab::Command::strata, "strata", "stratum data and defect classification per index",
      true);
  add(qab::Command::verify, "verify", "run the invariant suite at a weight", true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    for (auto& sub : subs)
      if (sub.app->parsed()) return emit(qab::run(make_config(sub.cmd, sub.opts)), sub.opts);
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const qab::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const qab::InternalError& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return 3;
  }
}
