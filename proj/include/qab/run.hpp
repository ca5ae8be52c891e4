/**
 * @file run.hpp
 * @brief Job configuration and the command pipelines behind the CLI.
 *
 * Every run produces one self-describing JSON document with a meta block
 * recording the datum, the conventions in force (vertex order, the
 * left-to-right lexicographic reading of the coarse order, identity
 * diagonal blocks) and the engine, so results are reproducible.  Output is
 * byte-deterministic for a fixed configuration.
 */
#ifndef QAB_RUN_HH
#define QAB_RUN_HH

#include "qab/json_io.hpp"

#include <sstream>

namespace qab {

enum class Command { roots, index, gram, canon, strata, verify };

inline Command command_from_string(const std::string& s) {
  if (s == "roots") return Command::roots;
  if (s == "index") return Command::index;
  if (s == "gram") return Command::gram;
  if (s == "canon") return Command::canon;
  if (s == "strata") return Command::strata;
  if (s == "verify") return Command::verify;
  throw ConfigError("unknown command '" + s + "'");
}

enum class OutputFormat { json, csv };

struct JobConfig {
  Command command = Command::roots;
  CartanType type = CartanType::A;
  int rank = 2;
  std::vector<long long> weight;  // over I, vertex order 0..n; may be empty for roots
  int series_order = 10;
  Engine engine = Engine::dp;
  OutputFormat format = OutputFormat::json;
  unsigned jobs = 0;       // 0 = hardware concurrency
  long long beta_bound = 20;  // |k| range of the roots table
};

struct JobResult {
  std::string text;   // rendered document (JSON or CSV)
  bool ok = true;     // false when a verification failed
  std::string error;  // first violated invariant, when !ok
};

namespace detail {

inline Root parse_weight(const JobConfig& cfg, const CartanDatum& d) {
  if (cfg.weight.size() != static_cast<size_t>(d.vertex_count()))
    throw ConfigError("--weight needs " + std::to_string(d.vertex_count()) +
                      " comma-separated entries for " + d.type_string() + "_" +
                      std::to_string(d.rank()) + "^(1)");
  Root nu(static_cast<size_t>(d.vertex_count()));
  for (size_t i = 0; i < cfg.weight.size(); ++i) {
    if (cfg.weight[i] < 0) throw ConfigError("--weight entries must be nonnegative");
    nu[i] = cfg.weight[i];
  }
  return nu;
}

inline Json meta_block(const JobConfig& cfg, const CartanDatum& d, const BetaSequence& seq) {
  Json order = Json::array();
  for (int v : seq.total_order_I()) order.push_back(v);
  Json tau = Json::array();
  for (int v : seq.tau()) tau.push_back(v);
  Json word = Json::array();
  for (int v : seq.word()) word.push_back(v);
  return Json{
      {"type", d.type_string()},
      {"rank", d.rank()},
      {"affine", true},
      {"delta", to_json(d.delta())},
      {"word", word},
      {"tau", tau},
      {"engine", cfg.engine == Engine::dp ? "dp" : "brute"},
      {"series_order", cfg.series_order},
      {"conventions",
       Json{{"vertex_order", order},
            {"coarse_order", "lexicographic left-to-right on (c_0,c_-1,...) and (c_1,c_2,...)"},
            {"diagonal_blocks", "identity; within-class Kostka factor emitted separately"}}},
  };
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void csv_matrix(std::ostringstream& os, const std::string& name,
                       const Matrix<RatFn>& m, int order) {
  os << name << "\n";
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ",";
      TruncSeries s = expand(m.at(i, j), order);
      std::ostringstream cell;
      if (s.is_zero()) {
        cell << "0";
      } else {
        bool first = true;
        for (int k = s.valuation; k <= s.order; ++k) {
          if (s.coeff(k) == 0) continue;
          if (!first) cell << "+";
          cell << s.coeff(k).str() << "q^" << k;
          first = false;
        }
        cell << "+O(q^" << s.order + 1 << ")";
      }
      os << csv_escape(cell.str());
    }
    os << "\n";
  }
}

}  // namespace detail

/// Execute one job; throws ConfigError for bad configurations and
/// InternalError when a structural invariant fails.
inline JobResult run(const JobConfig& cfg) {
  auto datum = std::make_shared<const CartanDatum>(CartanDatum::make(cfg.type, cfg.rank));
  std::shared_ptr<BetaSequence> seq = BetaSequence::build_h(datum);
  PBWRealization ctx(seq);
  const CartanDatum& d = *datum;

  JobResult result;
  Json doc;
  doc["meta"] = detail::meta_block(cfg, d, *seq);

  switch (cfg.command) {
    case Command::roots: {
      Json table = Json::array();
      for (long long k = -cfg.beta_bound; k <= cfg.beta_bound; ++k) {
        Root b = seq->beta(k);
        table.push_back(Json{{"k", k},
                             {"vertex", seq->letter(k)},
                             {"beta", to_json(b)},
                             {"defect", seq->defect(b)}});
      }
      doc["beta"] = std::move(table);
      break;
    }
    case Command::index: {
      Root nu = detail::parse_weight(cfg, d);
      doc["meta"]["weight"] = to_json(nu);
      IndexFiber fiber = total_order(nu, *seq);
      doc["fiber"] = to_json(fiber);
      std::vector<MonomialWord> words = basis_words(fiber, ctx).words;
      Json rows = Json::array();
      for (size_t i = 0; i < fiber.size(); ++i)
        rows.push_back(Json{{"word", to_json(words[i])}, {"text", words[i].str()}});
      doc["monomials"] = std::move(rows);
      break;
    }
    case Command::gram: {
      Root nu = detail::parse_weight(cfg, d);
      doc["meta"]["weight"] = to_json(nu);
      GramMatrix g = gram_matrix(nu, ctx, cfg.engine, cfg.jobs);
      doc["fiber"] = to_json(g.fiber);
      doc["gram"] = to_json(g.entries);
      if (cfg.format == OutputFormat::csv) {
        std::ostringstream os;
        detail::csv_matrix(os, "gram", g.entries, cfg.series_order);
        result.text = os.str();
        return result;
      }
      break;
    }
    case Command::canon: {
      Root nu = detail::parse_weight(cfg, d);
      doc["meta"]["weight"] = to_json(nu);
      CanonicalDecomposition dec = canonical_decomposition(nu, ctx, cfg.engine, cfg.jobs);
      doc["fiber"] = to_json(dec.gram.fiber);
      doc["lambda"] = to_json(dec.gram.entries);
      doc["H"] = to_json(dec.H);
      doc["D"] = to_json(dec.D);
      doc["P"] = to_json(dec.P);
      doc["Q"] = to_json(dec.Q);
      doc["Qinv"] = to_json(dec.Qinv);
      doc["within_class_transition"] = to_json(dec.U);
      doc["kostka_correction"] = to_json(kostka_correction(dec.gram.fiber));
      VerifyReport recon = verify_reconstruction(dec);
      VerifyReport structure = verify_structure(dec);
      VerifyReport ortho = verify_almost_orthonormal(dec, cfg.series_order);
      VerifyReport diag = verify_prop32_diagonal(dec);
      doc["verification"] = Json{
          {"reconstruction", recon.ok},
          {"structure", structure.ok},
          {"almost_orthonormal", ortho.ok},
          {"diagonal_product_form", diag.ok},
      };
      for (const VerifyReport* r : {&recon, &structure, &ortho, &diag})
        if (!r->ok) {
          result.ok = false;
          result.error = r->detail;
          doc["verification"]["first_failure"] = r->detail;
          break;
        }
      if (cfg.format == OutputFormat::csv) {
        std::ostringstream os;
        detail::csv_matrix(os, "lambda", dec.gram.entries, cfg.series_order);
        detail::csv_matrix(os, "H", detail::to_rat(dec.H), cfg.series_order);
        detail::csv_matrix(os, "D", dec.D, cfg.series_order);
        detail::csv_matrix(os, "P", detail::to_rat(dec.P), cfg.series_order);
        detail::csv_matrix(os, "Q", detail::to_rat(dec.Q), cfg.series_order);
        detail::csv_matrix(os, "Qinv", detail::to_rat(dec.Qinv), cfg.series_order);
        result.text = os.str();
        return result;
      }
      break;
    }
    case Command::strata: {
      Root nu = detail::parse_weight(cfg, d);
      doc["meta"]["weight"] = to_json(nu);
      IndexFiber fiber = total_order(nu, *seq);
      Quiver quiv = orientation_from_order(seq->total_order_I(), d);
      Json arrows = Json::array();
      for (const auto& [a, b] : quiv.arrows) arrows.push_back(Json::array({a, b}));
      doc["quiver"] = Json{{"arrows", arrows}};
      Json rows = Json::array();
      for (const auto& c : fiber.indices) {
        StratumData s = stratum_data_of_index(c, *seq);
        Json row = Json{{"index", to_json(c)}, {"stratum", to_json(s, d)}};
        rows.push_back(std::move(row));
      }
      doc["strata"] = std::move(rows);
      break;
    }
    case Command::verify: {
      Root nu = detail::parse_weight(cfg, d);
      doc["meta"]["weight"] = to_json(nu);
      Json checks = Json::array();
      auto record = [&](const std::string& name, bool ok, const std::string& why) {
        checks.push_back(Json{{"check", name}, {"ok", ok}});
        if (!ok && result.ok) {
          result.ok = false;
          result.error = name + ": " + why;
        }
      };
      // root sequence sanity
      record("beta_partition", seq->partition_holds(std::max<long long>(2 * seq->period(), 40)),
             "the beta_k do not realize the positive-root partition");
      // engine agreement on the fiber's words
      IndexFiber fiber = total_order(nu, *seq);
      bool oracle_ok = true;
      std::string oracle_why;
      std::vector<MonomialWord> words = basis_words(fiber, ctx).words;
      for (size_t i = 0; i < words.size() && oracle_ok; ++i)
        for (size_t j = i; j < words.size() && oracle_ok; ++j) {
          RatFn a = inner_product(words[i], words[j], d, Engine::dp);
          RatFn b = inner_product_bruteforce(words[i], words[j], d);
          RatFn c2 = inner_product_coproduct(words[i], words[j], d);
          if (a != b || a != c2) {
            oracle_ok = false;
            oracle_why = "engines disagree on (" + words[i].str() + ", " + words[j].str() + ")";
          }
        }
      record("inner_product_oracles", oracle_ok, oracle_why);
      // decomposition invariants
      CanonicalDecomposition dec = canonical_decomposition(nu, ctx, cfg.engine, cfg.jobs);
      VerifyReport recon = verify_reconstruction(dec);
      record("reconstruction", recon.ok, recon.detail);
      VerifyReport structure = verify_structure(dec);
      record("structure", structure.ok, structure.detail);
      VerifyReport ortho = verify_almost_orthonormal(dec, cfg.series_order);
      record("almost_orthonormal", ortho.ok, ortho.detail);
      VerifyReport diag = verify_prop32_diagonal(dec);
      record("diagonal_product_form", diag.ok, diag.detail);
      // strata dimension bookkeeping
      bool strata_ok = true;
      std::string strata_why;
      try {
        for (const auto& c : fiber.indices) stratum_data_of_index(c, *seq);
        orientation_from_order(seq->total_order_I(), d);
      } catch (const InternalError& e) {
        strata_ok = false;
        strata_why = e.what();
      }
      record("strata_dimensions", strata_ok, strata_why);
      doc["checks"] = std::move(checks);
      doc["ok"] = result.ok;
      break;
    }
  }

  result.text = doc.dump(2) + "\n";
  return result;
}

}  // namespace qab

#endif  // QAB_RUN_HH
