#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stopwise/bounds.hpp"
#include "stopwise/order_monotonicity.hpp"
#include "stopwise/quality_model.hpp"
#include "stopwise/simulate.hpp"
#include "stopwise/summation.hpp"
#include "stopwise/text_format.hpp"
#include "stopwise/value_curve.hpp"

namespace {

using namespace stopwise;

int g_precision = 12;

std::string num(double v) { return format_double(v, g_precision); }

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        out += ch;
    }
  }
  return out;
}

std::string jstr(const std::string& s) { return "\"" + json_escape(s) + "\""; }

std::string jbool(bool b) { return b ? "true" : "false"; }

void emit(const std::string& s) { std::fwrite(s.data(), 1, s.size(), stdout); }

long resolve_n(const QualityModel& model, long n_flag) {
  if (n_flag > 0) {
    if (model.intrinsic_n() > 0 && n_flag > model.intrinsic_n()) {
      throw std::invalid_argument("--n exceeds the model's pool size");
    }
    return n_flag;
  }
  if (model.intrinsic_n() > 0) return model.intrinsic_n();
  throw std::invalid_argument("this model needs an explicit --n");
}

std::string threshold_json(const ThresholdResult& r) {
  std::string s = "{\"n\":" + std::to_string(r.n);
  s += ",\"c_star\":" + std::to_string(r.c_star);
  s += ",\"v_star\":" + num(r.v_star);
  s += ",\"harmonic_tail\":" + num(r.harmonic_tail);
  s += ",\"satisfies_theorem_bound\":" + jbool(r.satisfies_theorem_bound);
  s += "}\n";
  return s;
}

int run_threshold(const std::string& model_spec, long n_flag, double tol) {
  QualityModel model = parse_model_spec(model_spec);
  long n = resolve_n(model, n_flag);
  ThresholdResult r = optimal_threshold(model.mu_sequence(n), n, tol);
  if (r.degenerate) {
    std::fprintf(stderr,
                 "warning: no non-positive forward difference found; "
                 "reporting c* = n\n");
  }
  emit(threshold_json(r));
  return 0;
}

int run_curve(const std::string& model_spec, long n_flag, bool as_json) {
  QualityModel model = parse_model_spec(model_spec);
  long n = resolve_n(model, n_flag);
  std::vector<double> mu_seq = model.mu_sequence(n);
  ValueCurve curve = full_curve(mu_seq, mu_seq[0], n, model.label());
  std::string out;
  if (as_json) {
    out = "{\"model\":" + jstr(curve.model_label) +
          ",\"n\":" + std::to_string(n) + ",\"values\":[";
    for (long c = 1; c <= n; ++c) {
      if (c > 1) out += ",";
      out += num(curve.values[c - 1]);
    }
    out += "],\"diffs\":[";
    for (long c = 1; c <= n - 1; ++c) {
      if (c > 1) out += ",";
      out += num(curve.diffs[c - 1]);
    }
    out += "]}\n";
  } else {
    out = "c,V\n";
    for (long c = 1; c <= n; ++c) {
      out += std::to_string(c) + "," + num(curve.values[c - 1]) + "\n";
    }
  }
  emit(out);
  return 0;
}

int run_simulate(const std::string& model_spec, long n_flag, long c,
                 bool sweep, long trials, uint64_t seed, int workers,
                 bool as_csv) {
  QualityModel model = parse_model_spec(model_spec);
  long n = resolve_n(model, n_flag);
  if (sweep) {
    SweepReport rep = sweep_simulate(model, n, trials, seed, workers);
    ArgmaxReport am = empirical_argmax_from(rep, model);
    if (as_csv) {
      std::string out = "c,estimate,std_error\n";
      for (const auto& pt : rep.per_c) {
        out += std::to_string(pt.c) + "," + num(pt.estimate) + "," +
               num(pt.std_error) + "\n";
      }
      emit(out);
      std::fprintf(stderr, "argmax_c=%ld analytic_c_star=%ld separated=%s\n",
                   am.c_hat, am.analytic_c_star,
                   am.separated ? "true" : "false");
    } else {
      std::string out = "{\"model\":" + jstr(model.label());
      out += ",\"n\":" + std::to_string(n);
      out += ",\"trials\":" + std::to_string(trials);
      out += ",\"seed\":" + std::to_string(seed);
      out += ",\"workers\":" + std::to_string(workers);
      out += ",\"argmax_c\":" + std::to_string(am.c_hat);
      out += ",\"estimate\":" + num(am.estimate);
      out += ",\"std_error\":" + num(am.std_error);
      out += ",\"analytic_c_star\":" + std::to_string(am.analytic_c_star);
      out += ",\"analytic_v_star\":" + num(am.analytic_v_star);
      out += ",\"separated\":" + jbool(am.separated);
      out += ",\"per_c\":[";
      for (const auto& pt : rep.per_c) {
        if (pt.c > 1) out += ",";
        out += "{\"c\":" + std::to_string(pt.c) +
               ",\"estimate\":" + num(pt.estimate) +
               ",\"std_error\":" + num(pt.std_error) + "}";
      }
      out += "]}\n";
      emit(out);
    }
    return 0;
  }
  if (c < 1) throw std::invalid_argument("simulate needs --c or --sweep");
  SimConfig cfg;
  cfg.n = n;
  cfg.c = c;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.workers = workers;
  SimReport rep = simulate(model, cfg);
  if (as_csv) {
    std::string out = "estimate,std_error,trials,best_pick_rate\n";
    out += num(rep.estimate) + "," + num(rep.std_error) + "," +
           std::to_string(rep.trials) + "," + num(rep.best_pick_rate) + "\n";
    emit(out);
  } else {
    std::string out = "{\"model\":" + jstr(model.label());
    out += ",\"n\":" + std::to_string(n);
    out += ",\"c\":" + std::to_string(c);
    out += ",\"trials\":" + std::to_string(rep.trials);
    out += ",\"seed\":" + std::to_string(seed);
    out += ",\"workers\":" + std::to_string(workers);
    out += ",\"estimate\":" + num(rep.estimate);
    out += ",\"std_error\":" + num(rep.std_error);
    out += ",\"best_pick_rate\":" + num(rep.best_pick_rate);
    out += "}\n";
    emit(out);
  }
  return 0;
}

int run_bounds(const std::string& model_spec, long n_flag) {
  QualityModel model = parse_model_spec(model_spec);
  long n = resolve_n(model, n_flag);
  std::vector<double> mu_seq = model.mu_sequence(n);
  ThresholdResult r = optimal_threshold(mu_seq, n);
  std::string out = "{\"model\":" + jstr(model.label());
  out += ",\"n\":" + std::to_string(n);
  out += ",\"c_star\":" + std::to_string(r.c_star);
  auto entry = [&](const std::string& name, const std::string& value,
                   bool ok) {
    out += "," + jstr(name) + ":{\"value\":" + value +
           ",\"satisfied\":" + jbool(ok) + "}";
  };
  entry("theorem1_harmonic", num(r.harmonic_tail), r.satisfies_theorem_bound);
  switch (model.kind()) {
    case ModelKind::Exponential: {
      if (n >= 3) {
        Bracket b = exponential_bracket(n);
        bool ok = r.c_star >= b.lower - 1 && r.c_star <= b.upper + 1;
        entry("exponential_bracket",
              "[" + std::to_string(b.lower) + "," + std::to_string(b.upper) +
                  "]",
              ok);
        double est = static_cast<double>(n) /
                     (std::log(static_cast<double>(n)) + 0.57721566490153286);
        entry("asymptotic_estimate", num(est),
              std::fabs(static_cast<double>(r.c_star) - est) <= 1.0);
      }
      break;
    }
    case ModelKind::Normal: {
      if (n >= 16) {
        double ub = normal_upper_bound(n);
        entry("normal_upper_bound", num(ub),
              static_cast<double>(r.c_star) <= ub);
      }
      break;
    }
    case ModelKind::Pareto: {
      double ratio = pareto_ratio_bound(model.alpha());
      double observed = static_cast<double>(n + 1) /
                        static_cast<double>(r.c_star + 1);
      entry("pareto_ratio", num(ratio), observed <= 1.05 * ratio);
      break;
    }
    case ModelKind::Bernoulli: {
      double alpha = (1.0 - model.p()) * static_cast<double>(n);
      BernoulliBeta bb = bernoulli_beta(alpha);
      double frac = static_cast<double>(r.c_star) / static_cast<double>(n);
      entry("bernoulli_beta", num(bb.beta), frac >= bb.beta - 0.02);
      break;
    }
    case ModelKind::ClassicalIndicator: {
      long ct = classical_threshold(n);
      entry("classical_threshold", std::to_string(ct), ct == r.c_star);
      break;
    }
    case ModelKind::Permutation: {
      long pt = permutation_threshold(n);
      entry("permutation_threshold", std::to_string(pt), pt == r.c_star);
      break;
    }
    default:
      break;
  }
  out += "}\n";
  emit(out);
  return 0;
}

struct VerifyStats {
  long checks = 0;
  long violations = 0;
};

void verify_model(const QualityModel& model, long n, VerifyStats& stats) {
  std::vector<double> mu_seq = model.mu_sequence(n);
  ThresholdResult r = optimal_threshold(mu_seq, n);
  ValueCurve curve = full_curve(mu_seq, mu_seq[0], n, model.label());
  auto fail = [&](const std::string& what) {
    ++stats.violations;
    std::fprintf(stderr, "violation: %s n=%ld: %s\n", model.label().c_str(), n,
                 what.c_str());
  };

  ++stats.checks;
  if (!r.satisfies_theorem_bound) {
    fail("harmonic tail does not exceed 1 at c* = " +
         std::to_string(r.c_star));
  }

  ++stats.checks;
  double scale = std::fmax(1.0, std::fabs(curve.values[n - 1]));
  for (long c = 1; c + 1 <= n - 1; ++c) {
    if (curve.diffs[c] - curve.diffs[c - 1] > 1e-9 * scale) {
      fail("curve differences increase at c = " + std::to_string(c));
      break;
    }
  }

  ++stats.checks;
  if (argmax_first(curve.values) != r.c_star) {
    fail("curve argmax disagrees with the threshold scan");
  }

  ++stats.checks;
  for (long k = 1; k + 2 <= n; ++k) {
    double d1 = mu_seq[k] - mu_seq[k - 1];
    double d2 = mu_seq[k + 1] - mu_seq[k];
    if (d2 - d1 > 1e-9 * scale) {
      fail("running-max increments increase at k = " + std::to_string(k));
      break;
    }
  }

  if (model.iid() || model.kind() == ModelKind::FiniteMultiset) {
    ++stats.checks;
    long n_alt = std::min<long>(n, 40);
    std::vector<double> head(mu_seq.begin(), mu_seq.begin() + n_alt);
    auto bad = sign_alternation_check(head, 6);
    if (!bad.empty()) {
      fail("sign alternation broken at j = " + std::to_string(bad[0].j) +
           ", k = " + std::to_string(bad[0].k));
    }
  }
}

int run_verify(long nmax) {
  std::vector<std::string> specs = {
      "exponential",       "uniform",          "normal",
      "pareto:alpha=1.5",  "pareto:alpha=3",   "bernoulli:p=0.5",
      "bernoulli:p=0.05",
  };
  std::vector<long> grid;
  for (long n = 10; n <= nmax; n *= 10) grid.push_back(n);
  VerifyStats stats;
  for (const auto& spec : specs) {
    QualityModel model = parse_model_spec(spec);
    for (long n : grid) verify_model(model, n, stats);
  }
  for (long n : grid) {
    verify_model(QualityModel::classical_indicator(n), n, stats);
    verify_model(QualityModel::permutation(n), n, stats);
  }
  std::printf("checks=%ld violations=%ld\n", stats.checks, stats.violations);
  return stats.violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threshold-rule payoff engine for quality-based hiring"};
  app.require_subcommand(1);

  if (const char* env = std::getenv("STOPWISE_PRECISION")) {
    int p = std::atoi(env);
    if (p >= 1 && p <= 17) g_precision = p;
  }
  app.add_option("--precision", g_precision,
                 "significant digits in numeric output")
      ->check(CLI::Range(1, 17));

  std::string model_spec;
  long n_flag = 0;
  double tol = 0.0;
  long c_flag = 0;
  bool sweep = false;
  long trials = 100000;
  uint64_t seed = 0;
  int workers = 1;
  bool as_json = false;
  bool as_csv = false;
  long nmax = 1000;

  auto add_model = [&](CLI::App* cmd, bool with_n = true) {
    cmd->fallthrough();  // lets --precision appear after the subcommand
    cmd->add_option("--model", model_spec, "model specification")->required();
    if (with_n) cmd->add_option("--n", n_flag, "number of candidates");
  };

  CLI::App* cmd_threshold =
      app.add_subcommand("threshold", "optimal threshold and value");
  add_model(cmd_threshold);
  cmd_threshold->add_option("--tol", tol, "slack for the difference scan");

  CLI::App* cmd_curve = app.add_subcommand("curve", "payoff of every threshold");
  add_model(cmd_curve);
  cmd_curve->add_flag("--json", as_json, "JSON instead of CSV");

  CLI::App* cmd_sim = app.add_subcommand("simulate", "Monte Carlo estimate");
  add_model(cmd_sim);
  cmd_sim->add_option("--c", c_flag, "threshold to play");
  cmd_sim->add_flag("--sweep", sweep, "estimate every threshold at once");
  cmd_sim->add_option("--trials", trials, "number of trials")->required();
  cmd_sim->add_option("--seed", seed, "RNG seed");
  cmd_sim->add_option("--workers", workers, "worker threads")
      ->check(CLI::Range(1, 1024));
  cmd_sim->add_flag("--csv", as_csv, "CSV instead of JSON");

  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "simulate every threshold and locate the max");
  add_model(cmd_sweep);
  cmd_sweep->add_option("--trials", trials, "number of trials")->required();
  cmd_sweep->add_option("--seed", seed, "RNG seed");
  cmd_sweep->add_option("--workers", workers, "worker threads")
      ->check(CLI::Range(1, 1024));
  cmd_sweep->add_flag("--csv", as_csv, "CSV instead of JSON");

  CLI::App* cmd_bounds =
      app.add_subcommand("bounds", "structural bounds at the optimum");
  add_model(cmd_bounds);

  CLI::App* cmd_verify =
      app.add_subcommand("verify", "structural checks over built-in models");
  cmd_verify->fallthrough();
  cmd_verify->add_option("--nmax", nmax,
                         "largest horizon in the verification grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_threshold->parsed()) return run_threshold(model_spec, n_flag, tol);
    if (cmd_curve->parsed()) return run_curve(model_spec, n_flag, as_json);
    if (cmd_sim->parsed()) {
      return run_simulate(model_spec, n_flag, c_flag, sweep, trials, seed,
                          workers, as_csv);
    }
    if (cmd_sweep->parsed()) {
      return run_simulate(model_spec, n_flag, 0, true, trials, seed, workers,
                          as_csv);
    }
    if (cmd_bounds->parsed()) return run_bounds(model_spec, n_flag);
    if (cmd_verify->parsed()) return run_verify(nmax);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
