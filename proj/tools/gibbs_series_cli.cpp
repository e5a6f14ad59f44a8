// gibbs-series: command-line front end.
//
// Exit codes: 0 success, 1 usage, 2 domain or infeasibility, 3 numeric failure.

#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "gibbs/conjugate.hpp"
#include "gibbs/entropy.hpp"
#include "gibbs/errors.hpp"
#include "gibbs/scenarios.hpp"
#include "gibbs/serialize.hpp"
#include "gibbs/series.hpp"
#include "gibbs/verify.hpp"

using namespace gibbs;

namespace {

enum Exit { kOk = 0, kUsage = 1, kDomain = 2, kNumeric = 3 };

struct RunConfig {
  double tol = 1e-12;
  Index max_terms = default_max_terms();
  std::string format = "json";
  std::uint64_t seed = 20240601;
  unsigned jobs = 1;
};

void emit(const RunConfig& cfg, const Json& doc) {
  std::cout << (cfg.format == "pretty" ? doc.dump(2) : dump(doc)) << '\n';
}

int error_exit(const RunConfig& cfg, const std::string& command, const std::string& kind, const std::string& message,
               int code, Json extra = Json::object()) {
  Json body;
  body["error"] = kind;
  body["message"] = message;
  for (auto it = extra.begin(); it != extra.end(); ++it) body[it.key()] = it.value();
  emit(cfg, document(command, body));
  std::cerr << "gibbs-series " << command << ": " << message << '\n';
  return code;
}

FitOptions fit_options(const RunConfig& cfg, Index max_weights) {
  FitOptions o;
  o.max_terms = cfg.max_terms;
  o.max_weights = max_weights;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Certified exponential series, conjugates and maximum-entropy laws", "gibbs-series"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tol", cfg.tol, "Absolute tolerance")->check(CLI::PositiveNumber);
  app.add_option("--max-terms", cfg.max_terms, "Term budget (env GIBBS_SERIES_MAX_TERMS)")
      ->check(CLI::Range(Index{1000}, std::numeric_limits<Index>::max()));
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
  app.add_option("--seed", cfg.seed, "Seed for randomized sweeps");
  app.add_option("--jobs", cfg.jobs, "Concurrent work items for verify")->check(CLI::Range(1u, 1024u));

  std::string seq_spec, claim, table_name, varsigma = "power:2";
  double y = 0.0, u = 0.0, eps = 1e-3, kappa = 1.0;
  std::optional<double> v;
  int p = 0, grid = 0;
  Index max_weights = 100000;

  auto* domain_cmd = app.add_subcommand("domain", "Domain of f and its boundary behaviour");
  domain_cmd->add_option("seq", seq_spec, "Sequence spec")->required();

  auto* eval_cmd = app.add_subcommand("eval", "Certified f^(p)(y)");
  eval_cmd->add_option("seq", seq_spec)->required();
  eval_cmd->add_option("--y", y)->required();
  eval_cmd->add_option("--p", p)->check(CLI::Range(0, 1));

  auto* conj_cmd = app.add_subcommand("conjugate", "f*(u)");
  conj_cmd->add_option("seq", seq_spec)->required();
  conj_cmd->add_option("--u", u)->required();

  auto* logconj_cmd = app.add_subcommand("logconj", "(ln f)*(v)");
  seq_spec = "quadratic";
  logconj_cmd->add_option("seq", seq_spec, "Sequence spec (default quadratic)");
  logconj_cmd->add_option("--v", v)->required();

  auto* boxconj_cmd = app.add_subcommand("boxconj", "h*(u, v) of the box model");
  boxconj_cmd->add_option("--u", u)->required();
  boxconj_cmd->add_option("--v", v)->required();
  boxconj_cmd->add_option("--kappa", kappa)->check(CLI::PositiveNumber);

  auto* fit_cmd = app.add_subcommand("fit", "Minimum-entropy law for one or two moments");
  fit_cmd->add_option("seq", seq_spec)->required();
  fit_cmd->add_option("--u", u)->required();
  fit_cmd->add_option("--v", v);
  fit_cmd->add_option("--max-weights", max_weights)->check(CLI::NonNegativeNumber);

  auto* witness_cmd = app.add_subcommand("witness", "Finite-support eps-optimal weights");
  witness_cmd->add_option("seq", seq_spec)->required();
  witness_cmd->add_option("--u", u)->required();
  witness_cmd->add_option("--v", v, "Alternating moment (requires seq linear)");
  witness_cmd->add_option("--eps", eps)->check(CLI::PositiveNumber);
  witness_cmd->add_option("--varsigma", varsigma);
  witness_cmd->add_option("--max-weights", max_weights)->check(CLI::NonNegativeNumber);

  auto* verify_cmd = app.add_subcommand("verify", "Run acceptance checks");
  verify_cmd->add_option("claim", claim, "ac1..ac10 or all")->required();
  verify_cmd->add_option("--grid", grid, "Sample count for randomized sweeps")->check(CLI::NonNegativeNumber);

  auto* table_cmd = app.add_subcommand("table", "Canned tables");
  table_cmd->add_option("name", table_name)->required()->check(CLI::IsMember({"example1", "example2", "box"}));
  table_cmd->add_option("--kappa", kappa)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const EvalOptions eopts{cfg.max_terms};

  try {
    if (domain_cmd->parsed()) {
      const auto seq = SigmaSequence::parse(seq_spec);
      Json body = to_json(domain_info(seq, eopts));
      body["sequence"] = seq.spec();
      emit(cfg, document(command, body));
    } else if (eval_cmd->parsed()) {
      const auto seq = SigmaSequence::parse(seq_spec);
      Json body = to_json(eval(seq, y, p, cfg.tol, eopts));
      body["sequence"] = seq.spec();
      body["y"] = number(y);
      emit(cfg, document(command, body));
    } else if (conj_cmd->parsed()) {
      const auto seq = SigmaSequence::parse(seq_spec);
      Json body = to_json(conjugate(seq, u, cfg.tol, eopts));
      body["sequence"] = seq.spec();
      body["u"] = number(u);
      emit(cfg, document(command, body));
    } else if (logconj_cmd->parsed()) {
      const auto seq = SigmaSequence::parse(seq_spec);
      Json body = to_json(log_f_conjugate(seq, *v, cfg.tol, eopts));
      body["sequence"] = seq.spec();
      body["v"] = number(*v);
      emit(cfg, document(command, body));
    } else if (boxconj_cmd->parsed()) {
      Json body = to_json(box_conjugate(u, *v, cfg.tol, kappa, eopts));
      body["u"] = number(u);
      body["v"] = number(*v);
      body["kappa"] = number(kappa);
      emit(cfg, document(command, body));
    } else if (fit_cmd->parsed()) {
      const auto seq = SigmaSequence::parse(seq_spec);
      const auto opts = fit_options(cfg, max_weights);
      const auto fit = v ? fit_gibbs(seq, u, *v, cfg.tol, opts) : min_entropy_moment(seq, u, cfg.tol, opts);
      Json body = to_json(fit);
      body["sequence"] = seq.spec();
      emit(cfg, document(command, body));
      if (fit.status == FitStatus::Infeasible) return kDomain;
    } else if (witness_cmd->parsed()) {
      const auto seq = SigmaSequence::parse(seq_spec);
      Json body;
      if (v) {
        if (seq.family() != Family::Linear) {
          return error_exit(cfg, command, "UsageError", "--v witnesses are defined for sigma_n = n (linear)", kUsage);
        }
        const auto vs = VarsigmaSequence::parse(varsigma);
        body = to_json(alternating_witness(u, *v, eps, vs, cfg.max_terms));
        body["varsigma"] = vs.spec();
        body["v"] = number(*v);
      } else {
        const auto opts = fit_options(cfg, max_weights);
        const auto info = domain_info(seq, opts);
        if (info.gamma.is_finite() && u >= info.gamma.value()) {
          body = to_json(plateau_witness(seq, u, eps, opts));
        } else {
          // Below gamma the Gibbs law attains the infimum; its prefix is the witness.
          const auto fit = min_entropy_moment(seq, u, cfg.tol, opts);
          body = to_json(fit);
          body["kind"] = "gibbs";
          if (fit.status == FitStatus::Infeasible) {
            body["sequence"] = seq.spec();
            emit(cfg, document(command, body));
            return kDomain;
          }
        }
        body["u"] = number(u);
      }
      body["sequence"] = seq.spec();
      body["eps"] = number(eps);
      emit(cfg, document(command, body));
    } else if (verify_cmd->parsed()) {
      VerifyConfig vc;
      vc.seed = cfg.seed;
      vc.jobs = cfg.jobs;
      vc.max_terms = cfg.max_terms;
      vc.grid = grid;
      const auto ids = claim == "all" ? claim_ids() : std::vector<std::string>{claim};
      const auto results = run_claims(ids, vc);
      bool all = true;
      for (const auto& r : results) all = all && r.passed;
      if (cfg.format == "csv") {
        std::cout << "claim,check,passed,abs_gap,rel_gap,tolerance\n";
        for (const auto& r : results) {
          for (const auto& rep : r.reports) {
            std::cout << r.id << ',' << rep.claim << ',' << (rep.passed ? "true" : "false") << ','
                      << format_number(rep.abs_gap) << ',' << format_number(rep.rel_gap) << ','
                      << format_number(rep.tolerance) << '\n';
          }
        }
      } else {
        Json claims = Json::array();
        for (const auto& r : results) {
          Json reps = Json::array();
          for (const auto& rep : r.reports) reps.push_back(to_json(rep));
          claims.push_back(Json{{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"reports", reps}});
        }
        Json body;
        body["seed"] = cfg.seed;
        body["passed"] = all;
        body["claims"] = claims;
        emit(cfg, document(command, body));
      }
      for (const auto& r : results) {
        std::cerr << (r.passed ? "PASS " : "FAIL ") << r.id << "  " << r.title << '\n';
      }
      return all ? kOk : kNumeric;
    } else if (table_cmd->parsed()) {
      if (table_name == "example1") {
        const auto rows = example1_table(eopts);
        if (cfg.format == "csv") {
          std::cout << to_csv(rows);
        } else {
          Json arr = Json::array();
          for (const auto& r : rows) arr.push_back(to_json(r));
          emit(cfg, document("table example1", Json{{"rows", arr}}));
        }
      } else if (table_name == "example2") {
        const auto rows = example2_table();
        if (cfg.format == "csv") {
          std::cout << to_csv(rows);
        } else {
          Json arr = Json::array();
          for (const auto& r : rows) arr.push_back(to_json(r));
          emit(cfg, document("table example2", Json{{"rows", arr}}));
        }
      } else {
        const auto rows = box_table(kappa);
        if (cfg.format == "csv") {
          std::cout << to_csv(rows);
        } else {
          Json arr = Json::array();
          for (const auto& r : rows) arr.push_back(to_json(r));
          emit(cfg, document("table box", Json{{"kappa", number(kappa)}, {"rows", arr}}));
        }
      }
    }
  } catch (const DomainError& e) {
    const bool empty = e.info() && e.info()->boundary_class == BoundaryClass::EmptyDomain;
    Json extra = Json::object();
    if (e.info()) extra["domain"] = to_json(*e.info());
    return error_exit(cfg, command, empty ? "EmptyDomain" : "DomainError", e.what(), kDomain, extra);
  } catch (const Infeasible& e) {
    return error_exit(cfg, command, "Infeasible", e.what(), kDomain);
  } catch (const WitnessNotReached& e) {
    return error_exit(cfg, command, "WitnessNotReached", e.what(), kNumeric, Json{{"best_gap", number(e.best_gap())}});
  } catch (const BudgetExceeded& e) {
    return error_exit(cfg, command, "BudgetExceeded", e.what(), kNumeric, Json{{"best", to_json(e.best())}});
  } catch (const NumericError& e) {
    return error_exit(cfg, command, "NumericError", e.what(), kNumeric);
  } catch (const std::invalid_argument& e) {
    return error_exit(cfg, command, "UsageError", e.what(), kUsage);
  } catch (const std::exception& e) {
    return error_exit(cfg, command, "NumericError", e.what(), kNumeric);
  }
  return kOk;
}
