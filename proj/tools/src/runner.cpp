#include "levyreflect_cli/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "levyreflect/asymptotics.hpp"
#include "levyreflect/error.hpp"
#include "levyreflect/format.hpp"
#include "levyreflect/montecarlo.hpp"

namespace levyreflect::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  return format_double(v);
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.5g", v);
  return buf;
}

struct Writer {
  std::ostringstream samples;
  std::ostringstream summary;
  std::ostringstream report;

  explicit Writer(const RunConfig& cfg) {
    for (auto* s : {&samples, &summary}) {
      *s << "# levyreflect " << to_string(cfg.subcommand) << '\n';
      for (const auto& [k, v] : cfg.echo()) *s << "# " << k << " = " << v << '\n';
    }
  }

  void note(const std::string& line) { summary << "# " << line << '\n'; }

  void begin_rows() {
    samples << "replication_index,tau,overshoot,censored,weight\n";
    summary << "u,c,n,estimate,ci95,theory,ratio\n";
  }

  void sample_block(double u, std::span<const FirstPassageSample> draws) {
    samples << "# u = " << num(u) << '\n';
    for (std::size_t i = 0; i < draws.size(); ++i) {
      const auto& s = draws[i];
      samples << i << ',' << num(s.tau) << ',' << (s.censored ? "nan" : num(s.overshoot)) << ','
              << (s.censored ? 1 : 0) << ',' << num(s.weight) << '\n';
    }
  }

  void row(double u, double c, std::size_t n, double estimate, double ci95, double theory) {
    const double ratio = std::isnan(theory) || theory == 0.0 ? kNaN : estimate / theory;
    summary << num(u) << ',' << num(c) << ',' << n << ',' << num(estimate) << ',' << num(ci95) << ',' << num(theory)
            << ',' << num(ratio) << '\n';
  }

  RunOutput finish() { return RunOutput{samples.str(), summary.str(), report.str()}; }
};

// Notes must precede the column header, so rows are buffered per run.
struct Row {
  double u, c;
  std::size_t n;
  double estimate, ci95, theory;
};

ExperimentSpec make_spec(const RunConfig& cfg, double u) {
  ExperimentSpec spec{.model = parse_model(cfg.model)};
  if (cfg.barrier_model.empty()) {
    spec.barrier = parse_barrier(cfg.barrier);
  } else {
    spec.barrier_model = parse_model(cfg.barrier_model);
  }
  spec.level = u;
  spec.c = cfg.c;
  spec.replications = cfg.replications;
  spec.seed = cfg.seed;
  spec.workers = cfg.workers;
  spec.grid_step = cfg.grid_step;
  spec.horizon.fixed = cfg.horizon;
  spec.tilt = cfg.tilt;
  return spec;
}

const Barrier& deterministic_barrier(const ExperimentSpec& spec, const char* what) {
  if (!spec.barrier) fail(ErrorKind::WrongBarrier, std::string(what) + " needs a deterministic barrier");
  return *spec.barrier;
}

const CompoundPoissonPart& jump_part(const ExperimentSpec& spec) {
  if (!spec.model.is_compound_poisson_only()) fail(ErrorKind::UnsupportedModel, "needs a compound Poisson model");
  const auto& cp = *spec.model.cp();
  if (!cp.jump.tail()) fail(ErrorKind::UnsupportedModel, "jump law has no exponential tail");
  return cp;
}

// Plain or tilted draws censored at `until`.
std::vector<FirstPassageSample> draws(const ExperimentSpec& spec, double until, std::optional<double> theta) {
  if (theta) return tilted_passage_samples(spec, *theta, until);
  return passage_samples(spec, until);
}

void flush_rows(Writer& w, const std::vector<Row>& rows) {
  w.begin_rows();
  for (const auto& r : rows) w.row(r.u, r.c, r.n, r.estimate, r.ci95, r.theory);
}

RunOutput run_clt(const RunConfig& cfg) {
  Writer w(cfg);
  std::vector<Row> rows;
  std::vector<std::pair<double, std::vector<FirstPassageSample>>> blocks;
  w.note("estimate = KS distance to N(0,1), theory = 1.63/sqrt(n)");
  for (double u : cfg.levels) {
    const ExperimentSpec spec = make_spec(cfg, u);
    TauExperiment exp = run_tau_experiment(spec);
    std::vector<FirstPassageSample> hit;
    for (const auto& s : exp.samples) {
      if (!s.censored) hit.push_back(s);
    }
    const auto z = zscores_tau(hit, passage_rate(spec), passage_variance(spec), u);
    const KsResult ks = ks_statistic(z);
    w.note("u = " + num(u) + ": ks_pass = " + (ks.pass ? "true" : "false") +
           ", censored_fraction = " + num(exp.censored_fraction) + ", horizon = " + num(exp.horizon));
    w.report << "u=" << short_num(u) << " ks=" << short_num(ks.statistic) << " critical=" << short_num(ks.critical)
             << (ks.pass ? " pass" : " fail") << '\n';
    rows.push_back(Row{u, cfg.c, z.size(), ks.statistic, kNaN, ks.critical});
    blocks.emplace_back(u, std::move(exp.samples));
  }
  flush_rows(w, rows);
  for (const auto& [u, s] : blocks) w.sample_block(u, s);
  return w.finish();
}

double passage_time(const RunConfig& cfg, const ExperimentSpec& spec, double u) {
  const std::string& g = cfg.g;
  if (g == "cinv") return deterministic_barrier(spec, "g = cinv").inverse(cfg.c * u);
  if (g == "median" || g.rfind("z:", 0) == 0) {
    const double m = passage_rate(spec);
    double t = u / m;
    if (g != "median") {
      const auto x = parse_double(std::string_view(g).substr(2));
      if (!x) fail(ErrorKind::InvalidArgument, "g = z:X needs a number");
      t += *x * std::sqrt(u * passage_variance(spec) / (m * m * m));
    }
    return t;
  }
  const auto t = parse_double(g);
  if (!t) fail(ErrorKind::InvalidArgument, "g must be median, z:X, cinv or a time");
  return *t;
}

RunOutput run_passage(const RunConfig& cfg) {
  Writer w(cfg);
  std::vector<Row> rows;
  std::vector<std::pair<double, std::vector<FirstPassageSample>>> blocks;
  for (double u : cfg.levels) {
    const ExperimentSpec spec = make_spec(cfg, u);
    const double t = passage_time(cfg, spec, u);
    auto s = draws(spec, t, cfg.tilt);
    const McEstimate est = summarize(passage_contributions(s, t));
    double theory = kNaN;
    std::string label = "none";
    bool linear = true;
    try {
      passage_rate(spec);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::WrongRegime) throw;
      linear = false;
    }
    if (linear) {
      const double m = passage_rate(spec);
      const double var = passage_variance(spec);
      theory = spec.barrier ? normal_approx_passage(u, t, m, var, *spec.barrier) : normal_approx_passage(u, t, m, var);
      label = "normal approximation";
    } else if (cfg.g == "cinv") {
      const auto& cp = jump_part(spec);
      theory = exact_underline_prob(cp.intensity, *cp.jump.tail(), *spec.barrier, u, cfg.c);
      label = "exact underline probability (lower bound)";
    }
    w.note("u = " + num(u) + ": g = " + num(t) + ", theory = " + label + ", ess = " + num(est.ess));
    w.report << "u=" << short_num(u) << " g=" << short_num(t) << " estimate=" << short_num(est.mean)
             << " ci95=" << short_num(est.ci95) << " theory=" << short_num(theory) << '\n';
    rows.push_back(Row{u, cfg.c, est.n, est.mean, est.ci95, theory});
    blocks.emplace_back(u, std::move(s));
  }
  flush_rows(w, rows);
  for (const auto& [u, s] : blocks) w.sample_block(u, s);
  return w.finish();
}

RunOutput run_rate(const RunConfig& cfg) {
  Writer w(cfg);
  std::vector<Row> rows;
  std::vector<std::pair<double, std::vector<FirstPassageSample>>> blocks;
  w.note("estimate = (1/u) log P(tau(u) <= f^{-1}(c u)) from tilted Monte Carlo, theory = -alpha (1 - c)");
  for (double u : cfg.levels) {
    const ExperimentSpec spec = make_spec(cfg, u);
    const double t = deterministic_barrier(spec, "rate").inverse(cfg.c * u);
    const auto& cp = jump_part(spec);
    const double theta = cfg.tilt ? *cfg.tilt : default_tilt(spec);
    auto s = tilted_passage_samples(spec, theta, t);
    const McEstimate est = summarize(passage_contributions(s, t));
    const double rate = log_rate(u, est.mean);
    const double theory = theoretical_rate(*cp.jump.tail(), cfg.c);
    // delta method: d log p = dp / p
    const double ci = est.ci95 / (u * est.mean);
    w.note("u = " + num(u) + ": theta = " + num(theta) + ", probability = " + num(est.mean) +
           ", probability_ci95 = " + num(est.ci95) + ", ess = " + num(est.ess));
    w.report << "u=" << short_num(u) << " rate=" << short_num(rate) << " theory=" << short_num(theory)
             << " p=" << short_num(est.mean) << " ess=" << short_num(est.ess) << '\n';
    rows.push_back(Row{u, cfg.c, est.n, rate, ci, theory});
    blocks.emplace_back(u, std::move(s));
  }
  flush_rows(w, rows);
  for (const auto& [u, s] : blocks) w.sample_block(u, s);
  return w.finish();
}

RunOutput run_asym(const RunConfig& cfg) {
  Writer w(cfg);
  std::vector<Row> rows;
  w.note("estimate = exact underline probability, theory = asymptotic lower bound");
  for (double u : cfg.levels) {
    const ExperimentSpec spec = make_spec(cfg, u);
    const Barrier& f = deterministic_barrier(spec, "asym");
    const auto& cp = jump_part(spec);
    const TailSpec& tail = *cp.jump.tail();
    const double exact = exact_underline_prob(cp.intensity, tail, f, u, cfg.c);
    const double asym = lower_bound_asym(cp.intensity, tail, f, u, cfg.c);
    const IjRatio ij = ij_ratio(tail, f, u, cfg.c);
    w.note("u = " + num(u) + ": ij_ratio = " + num(ij.ratio) + (ij.degenerate ? " (degenerate)" : ""));
    w.report << "u=" << short_num(u) << " exact=" << short_num(exact) << " asym=" << short_num(asym)
             << " ratio=" << short_num(exact / asym) << '\n';
    rows.push_back(Row{u, cfg.c, 0, exact, kNaN, asym});
  }
  flush_rows(w, rows);
  return w.finish();
}

RunOutput run_bounds(const RunConfig& cfg) {
  Writer w(cfg);
  std::vector<Row> rows;
  std::vector<std::pair<double, std::vector<FirstPassageSample>>> blocks;
  w.note("estimate = Monte Carlo P(tau(u) <= f^{-1}(c u)), theory = Cramer upper bound");
  for (double u : cfg.levels) {
    const ExperimentSpec spec = make_spec(cfg, u);
    const Barrier& f = deterministic_barrier(spec, "bounds");
    const auto& cp = jump_part(spec);
    const double t = f.inverse(cfg.c * u);
    auto s = draws(spec, t, cfg.tilt);
    const McEstimate est = summarize(passage_contributions(s, t));
    const double lower = exact_underline_prob(cp.intensity, *cp.jump.tail(), f, u, cfg.c);
    double upper = 1.0;
    std::string upper_note;
    try {
      upper = cramer_upper_bound(spec.model, f, u, cfg.c);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonpositiveGap) throw;
      upper_note = " (NonpositiveGap, trivial bound)";
    }
    const bool ok = lower <= est.mean + 3.0 * est.ci95 && est.mean <= upper + 3.0 * est.ci95;
    w.note("u = " + num(u) + ": lower = " + num(lower) + ", upper = " + num(upper) + upper_note +
           ", sandwich = " + (ok ? "ok" : "violated"));
    w.report << "u=" << short_num(u) << " lower=" << short_num(lower) << " estimate=" << short_num(est.mean)
             << " ci95=" << short_num(est.ci95) << " upper=" << short_num(upper) << (ok ? " ok" : " violated")
             << '\n';
    rows.push_back(Row{u, cfg.c, est.n, est.mean, est.ci95, upper});
    blocks.emplace_back(u, std::move(s));
  }
  flush_rows(w, rows);
  for (const auto& [u, s] : blocks) w.sample_block(u, s);
  return w.finish();
}

}  // namespace

RunOutput emit_overshoot_experiment(const RunConfig& cfg) {
  Writer w(cfg);
  std::vector<Row> rows;
  std::vector<std::pair<double, std::vector<FirstPassageSample>>> blocks;
  w.note("u = k^2 + 1/2: estimate = P(xi = 0), theory = exp(-lambda); u = k^2 - 1/2: estimate = "
         "P(|xi - 1/2| < 1e-9), theory = 1");
  for (double u : cfg.levels) {
    const ExperimentSpec spec = make_spec(cfg, u);
    if (!spec.barrier || spec.barrier->family() != BarrierFamily::FloorSquare) {
      fail(ErrorKind::WrongBarrier, "the overshoot experiment needs the floorsq barrier");
    }
    if (!spec.model.is_compound_poisson_only() || spec.model.cp()->jump.family() != JumpFamily::Unit) {
      fail(ErrorKind::PreconditionViolated, "the overshoot experiment needs unit jumps (cp:LAMBDA,unit,DRIFT)");
    }
    const double lambda = spec.model.cp()->intensity;
    TauExperiment exp = run_tau_experiment(spec);
    std::vector<double> xi;
    for (const auto& s : exp.samples) {
      if (!s.censored) xi.push_back(s.overshoot);
    }
    const double k = std::round(std::sqrt(u));
    const bool plus = std::abs(u - (k * k + 0.5)) < 1e-9;
    const bool minus = std::abs(u - (k * k - 0.5)) < 1e-9;
    const double target = minus ? 0.5 : 0.0;
    std::vector<double> indicator(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) indicator[i] = std::abs(xi[i] - target) < 1e-9 ? 1.0 : 0.0;
    const McEstimate est = summarize(indicator);
    const double theory = plus ? std::exp(-lambda) : (minus ? 1.0 : kNaN);
    // Atoms of the empirical overshoot law.
    std::vector<double> sorted = xi;
    std::sort(sorted.begin(), sorted.end());
    std::string atoms;
    int listed = 0;
    for (std::size_t i = 0; i < sorted.size() && listed < 8;) {
      std::size_t j = i;
      while (j < sorted.size() && sorted[j] - sorted[i] < 1e-9) ++j;
      atoms += (listed ? ", " : "") + num(sorted[i]) + ":" + num(static_cast<double>(j - i) / sorted.size());
      ++listed;
      i = j;
    }
    w.note("u = " + num(u) + ": xi atoms (value:mass) " + atoms);
    w.note("u = " + num(u) + ": exp(-lambda) = " + num(std::exp(-lambda)) +
           ", censored_fraction = " + num(exp.censored_fraction));
    w.report << "u=" << short_num(u) << " estimate=" << short_num(est.mean) << " ci95=" << short_num(est.ci95)
             << " theory=" << short_num(theory) << " atoms " << atoms << '\n';
    rows.push_back(Row{u, cfg.c, est.n, est.mean, est.ci95, theory});
    blocks.emplace_back(u, std::move(exp.samples));
  }
  flush_rows(w, rows);
  for (const auto& [u, s] : blocks) w.sample_block(u, s);
  return w.finish();
}

RunOutput execute(const RunConfig& cfg) {
  switch (cfg.subcommand) {
    case Subcommand::Clt:
      return run_clt(cfg);
    case Subcommand::Passage:
      return run_passage(cfg);
    case Subcommand::Rate:
      return run_rate(cfg);
    case Subcommand::Overshoot:
      return emit_overshoot_experiment(cfg);
    case Subcommand::Asym:
      return run_asym(cfg);
    case Subcommand::Bounds:
      return run_bounds(cfg);
  }
  fail(ErrorKind::InvalidArgument, "unknown subcommand");
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  RunOutput result;
  try {
    result = execute(cfg);
  } catch (const Error& e) {
    err << "levyreflect: numerical error: " << e.what() << '\n';
    return 3;
  }
  out << result.report;
  if (cfg.out.empty()) return 0;
  for (const auto& [suffix, text] : {std::pair{"_samples.csv", &result.samples_csv},
                                     std::pair{"_summary.csv", &result.summary_csv}}) {
    const std::string path = cfg.out + suffix;
    std::ofstream file(path, std::ios::binary);
    file << *text;
    if (!file) throw ConfigError("--out: cannot write " + path);
  }
  return 0;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = parse_command_line(argc, argv);
    if (!cfg) return 0;
    return run(*cfg, out, err);
  } catch (const ConfigError& e) {
    err << "levyreflect: config error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace levyreflect::cli
