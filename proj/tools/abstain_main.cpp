// Command-line front end for the abstention game engine: exact solutions of
// the one-dimensional case study, seeded Monte Carlo studies, and the
// exhaustive discrete verifier.
//
// Exit codes: 0 success, 1 verification failure (a theorem check failed),
// 2 usage or input errors.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "abstain/closed_form.hpp"
#include "abstain/game.hpp"
#include "abstain/instance_io.hpp"
#include "abstain/mc.hpp"
#include "abstain/oracle.hpp"
#include "abstain/rng.hpp"

namespace {

using nlohmann::json;
using namespace abstain;

constexpr const char* kVersion = "0.1.0";
constexpr double kDefaultGamma = 0.4444;
constexpr double kDefaultC = 0.3;
constexpr double kDefaultSigma = 0.5;
constexpr std::size_t kDefaultSamples = 100000;

struct GlobalOpts {
  std::uint64_t seed = 42;
  bool as_json = false;
  std::string out;  // empty: stdout
};

// Lossless form for machine-readable output: CSV columns round-trip to the
// exact double.
std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Short form for prose reports, where 0.15 should not read as
// 0.14999999999999999.
std::string fmt_human(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string timestamp_utc() {
  const std::time_t tt =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json metadata(const GlobalOpts& g, const char* command, json params) {
  return json{{"version", kVersion},
              {"command", command},
              {"seed", g.seed},
              {"timestamp", timestamp_utc()},
              {"params", std::move(params)}};
}

void emit(const GlobalOpts& g, const std::string& payload) {
  if (g.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + g.out);
  f << payload;
}

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- solve ---

int cmd_solve(const GlobalOpts& g, double gamma, double c,
              std::optional<double> t_choice) {
  const GameConfig cfg(gamma, c, 0.0);
  const auto opt = closed_form::optimal_threshold(cfg);
  const double bare = closed_form::no_abstention_loss(cfg);
  const auto m_no = closed_form::expected_manipulation_no_abstention(cfg);

  std::optional<closed_form::ManipulationReport> m_with;
  std::optional<closed_form::ManipulationOrdering> ordering;
  if (cfg.k() <= 4.0 || t_choice.has_value()) {
    m_with = closed_form::expected_manipulation_with_abstention(cfg, t_choice);
    ordering = closed_form::manipulation_comparison(cfg, t_choice);
  }

  if (g.as_json) {
    json j;
    j["metadata"] = metadata(g, "solve",
                             json{{"gamma", gamma},
                                  {"c", c},
                                  {"t_choice", t_choice.has_value()
                                                   ? json(*t_choice)
                                                   : json(nullptr)}});
    j["k"] = cfg.k();
    j["t_opt"] = json{{"lo", opt.lo},
                      {"hi", opt.hi},
                      {"canonical", opt.canonical},
                      {"unique", opt.unique()}};
    j["loss_opt"] = opt.loss;
    j["no_abstention_loss"] = bare;
    j["manipulation_no_abstention"] =
        json{{"expected_distance", m_no.expected_distance},
             {"regime", closed_form::to_string(m_no.regime)}};
    j["manipulation_with_abstention"] =
        m_with.has_value()
            ? json{{"expected_distance", m_with->expected_distance},
                   {"regime", closed_form::to_string(m_with->regime)}}
            : json(nullptr);
    j["comparison"] =
        ordering.has_value() ? json(closed_form::to_string(*ordering))
                             : json(nullptr);
    emit(g, j.dump(2) + "\n");
    return 0;
  }

  std::ostringstream out;
  out << "K = " << fmt_human(cfg.k()) << " (gamma = " << fmt_human(gamma)
      << "), c = " << fmt_human(c) << "\n";
  if (opt.unique()) {
    out << "optimal band half-width: " << fmt_human(opt.canonical) << "\n";
  } else {
    out << "optimal band half-width: any T in [" << fmt_human(opt.lo) << ", "
        << fmt_human(opt.hi) << "], canonical " << fmt_human(opt.canonical) << "\n";
  }
  out << "minimum loss:            " << fmt_human(opt.loss) << "\n";
  out << "no-abstention loss:      " << fmt_human(bare) << "\n";
  out << "expected manipulation (no abstention):   "
      << fmt_human(m_no.expected_distance) << "  ["
      << closed_form::to_string(m_no.regime) << "]\n";
  if (m_with.has_value()) {
    out << "expected manipulation (with abstention): "
        << fmt_human(m_with->expected_distance) << "  ["
        << closed_form::to_string(m_with->regime) << "]\n";
    out << "comparison: " << closed_form::to_string(*ordering) << "\n";
  } else {
    out << "expected manipulation (with abstention): n/a -- every band in "
           "[0, 2] is optimal when K > 4; rerun with --t-choice\n";
  }
  emit(g, out.str());
  return 0;
}

// ---------------------------------------------------------------- curve ---

constexpr const char* kCurveHeader =
    "t,loss_strategic,loss_nonstrategic,manip_fraction,manip_mass_unqualified";

std::vector<mc::CurveRow> analytic_curve(const GameConfig& cfg,
                                         const mc::GridSpec& grid) {
  std::vector<mc::CurveRow> rows;
  for (double t : mc::make_grid(grid)) {
    rows.push_back(mc::CurveRow{
        t, closed_form::analytic_loss(t, cfg),
        closed_form::analytic_nonstrategic_loss(t, cfg),
        closed_form::analytic_manip_fraction(t, cfg),
        closed_form::analytic_manip_mass_unqualified(t, cfg)});
  }
  return rows;
}

int cmd_curve(const GlobalOpts& g, double gamma, double c, bool analytic,
              bool simulate, double sigma, bool sigma_given,
              std::size_t samples, const mc::GridSpec& grid) {
  if (analytic == simulate)
    throw Usage("curve: pick exactly one of --analytic or --simulate");
  if (analytic && sigma_given)
    throw Usage("curve: --sigma applies to --simulate only");

  std::vector<mc::CurveRow> rows;
  if (analytic) {
    rows = analytic_curve(GameConfig(gamma, c, 0.0), grid);
  } else {
    const GameConfig cfg(gamma, c, sigma);
    const mc::Population pop =
        mc::sample_population(samples, sigma, g.seed);
    rows = mc::compute_curve(pop, cfg, grid).rows;
  }

  if (g.as_json) {
    json j;
    j["metadata"] = metadata(
        g, "curve",
        json{{"gamma", gamma},
             {"c", c},
             {"mode", analytic ? "analytic" : "simulate"},
             {"sigma", analytic ? json(nullptr) : json(sigma)},
             {"samples", analytic ? json(nullptr) : json(samples)},
             {"grid", {{"lo", grid.lo}, {"hi", grid.hi}, {"step", grid.step}}}});
    json out_rows = json::array();
    for (const auto& r : rows)
      out_rows.push_back(json{{"t", r.t},
                              {"loss_strategic", r.loss_strategic},
                              {"loss_nonstrategic", r.loss_nonstrategic},
                              {"manip_fraction", r.manip_fraction},
                              {"manip_mass_unqualified",
                               r.manip_mass_unqualified}});
    j["rows"] = std::move(out_rows);
    emit(g, j.dump(2) + "\n");
    return 0;
  }

  std::ostringstream out;
  out << kCurveHeader << "\n";
  for (const auto& r : rows)
    out << fmt(r.t) << ',' << fmt(r.loss_strategic) << ','
        << fmt(r.loss_nonstrategic) << ',' << fmt(r.manip_fraction) << ','
        << fmt(r.manip_mass_unqualified) << "\n";
  emit(g, out.str());
  return 0;
}

// ------------------------------------------------------------ sweep/harm ---

std::vector<double> sweep_values(double from, double to, std::size_t steps) {
  if (steps < 1) throw Usage("sweep: --steps must be at least 1");
  if (!(from <= to)) throw Usage("sweep: --from must not exceed --to");
  std::vector<double> values;
  if (steps == 1) {
    values.push_back(from);
    return values;
  }
  for (std::size_t i = 0; i < steps; ++i)
    values.push_back(from + (to - from) * static_cast<double>(i) /
                                static_cast<double>(steps - 1));
  return values;
}

mc::SweepParam parse_param(const std::string& name) {
  if (name == "gamma") return mc::SweepParam::gamma;
  if (name == "c") return mc::SweepParam::c;
  if (name == "sigma") return mc::SweepParam::sigma;
  throw Usage("unknown sweep parameter: " + name);
}

int cmd_sweep(const GlobalOpts& g, const std::string& param_name, double from,
              double to, std::size_t steps, double gamma, double c,
              double sigma, std::size_t samples, const mc::GridSpec& grid) {
  const mc::SweepParam param = parse_param(param_name);
  const std::vector<double> values = sweep_values(from, to, steps);
  const GameConfig defaults(gamma, c, sigma);
  const std::vector<mc::SweepRow> rows =
      mc::sweep(param, values, defaults, samples, g.seed, grid);

  if (g.as_json) {
    json j;
    j["metadata"] = metadata(
        g, "sweep",
        json{{"param", param_name},
             {"from", from},
             {"to", to},
             {"steps", steps},
             {"gamma", gamma},
             {"c", c},
             {"sigma", sigma},
             {"samples", samples},
             {"grid", {{"lo", grid.lo}, {"hi", grid.hi}, {"step", grid.step}}}});
    json out_rows = json::array();
    for (const auto& r : rows)
      out_rows.push_back(json{{"value", r.value},
                              {"t_star", r.t_star},
                              {"t_bar", r.t_bar},
                              {"loss_star", r.loss_star},
                              {"loss_bar", r.loss_bar}});
    j["rows"] = std::move(out_rows);
    emit(g, j.dump(2) + "\n");
    return 0;
  }

  std::ostringstream out;
  out << "value,t_star,t_bar,loss_star,loss_bar\n";
  for (const auto& r : rows)
    out << fmt(r.value) << ',' << fmt(r.t_star) << ',' << fmt(r.t_bar) << ','
        << fmt(r.loss_star) << ',' << fmt(r.loss_bar) << "\n";
  emit(g, out.str());
  return 0;
}

int cmd_harm(const GlobalOpts& g, const std::string& param_name, double from,
             double to, std::size_t steps, double gamma, double c,
             double sigma, std::size_t samples, const mc::GridSpec& grid) {
  const mc::SweepParam param = parse_param(param_name);
  const std::vector<double> values = sweep_values(from, to, steps);
  const GameConfig defaults(gamma, c, sigma);

  std::vector<mc::HarmReport> reports;
  reports.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    GameConfig cfg = defaults;
    switch (param) {
      case mc::SweepParam::gamma: cfg = defaults.with_gamma(values[i]); break;
      case mc::SweepParam::c: cfg = defaults.with_c(values[i]); break;
      case mc::SweepParam::sigma: cfg = defaults.with_sigma(values[i]); break;
    }
    reports.push_back(
        mc::harm(cfg, samples, rng::substream_seed(g.seed, i), grid));
  }

  if (g.as_json) {
    json j;
    j["metadata"] = metadata(
        g, "harm",
        json{{"param", param_name},
             {"from", from},
             {"to", to},
             {"steps", steps},
             {"gamma", gamma},
             {"c", c},
             {"sigma", sigma},
             {"samples", samples},
             {"grid", {{"lo", grid.lo}, {"hi", grid.hi}, {"step", grid.step}}}});
    json out_rows = json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      out_rows.push_back(json{{"value", values[i]},
                              {"h_no_abstention", r.h_no_abstention},
                              {"h_abstention", r.h_abstention},
                              {"delta_h", r.delta_h},
                              {"t_bar", r.t_bar},
                              {"t_star", r.t_star}});
    }
    j["rows"] = std::move(out_rows);
    emit(g, j.dump(2) + "\n");
    return 0;
  }

  std::ostringstream out;
  out << "value,h_no_abstention,h_abstention,delta_h\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    out << fmt(values[i]) << ',' << fmt(r.h_no_abstention) << ','
        << fmt(r.h_abstention) << ',' << fmt(r.delta_h) << "\n";
  }
  emit(g, out.str());
  return 0;
}

// --------------------------------------------------------------- oracle ---

const char* outcome_label(oracle::TheoremOutcome o) {
  switch (o) {
    case oracle::TheoremOutcome::pass: return "PASS";
    case oracle::TheoremOutcome::fail: return "FAIL";
    case oracle::TheoremOutcome::precondition_unmet: return "SKIP";
  }
  return "?";
}

int cmd_oracle(const GlobalOpts& g, const std::string& file, bool random,
               std::size_t count, std::size_t min_n, std::size_t max_n,
               bool informative) {
  if (file.empty() == !random)
    throw Usage("oracle: pass an instance file or --random, not both");

  std::vector<oracle::DiscreteInstance> instances;
  if (random) {
    if (min_n < 1 || min_n > max_n || max_n > 16)
      throw Usage("oracle: need 1 <= --min-n <= --max-n <= 16");
    instances.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      rng::SplitMix64 gen(rng::substream_seed(g.seed, i));
      instances.push_back(
          oracle::random_instance(gen, min_n, max_n, informative));
    }
  } else {
    instances = instance_io::load_instances(file);
  }

  const bool detailed = !random;  // file instances get the full report
  std::size_t pass1 = 0, pass2 = 0, pass3 = 0, skip3 = 0, failures = 0;
  std::ostringstream out;
  json j_instances = json::array();

  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    if (inst.size() > 16)
      throw Usage("oracle: exhaustive verification requires n <= 16");

    const bool th1 = oracle::verify_theorem1(inst);
    const bool th2 = oracle::verify_theorem2(inst);
    const oracle::TheoremOutcome th3 = oracle::verify_theorem3(inst);
    pass1 += th1;
    pass2 += th2;
    pass3 += th3 == oracle::TheoremOutcome::pass;
    skip3 += th3 == oracle::TheoremOutcome::precondition_unmet;
    const bool failed =
        !th1 || !th2 || th3 == oracle::TheoremOutcome::fail;
    failures += failed;

    if (g.as_json) {
      json row{{"index", i},
               {"n", inst.size()},
               {"theorem1", th1 ? "PASS" : "FAIL"},
               {"theorem2", th2 ? "PASS" : "FAIL"},
               {"theorem3", outcome_label(th3)}};
      if (detailed) {
        const auto opt = oracle::optimal_constrained_abstention(inst);
        const auto rstar = oracle::unconstrained_abstention(inst);
        row["r_star"] = oracle::to_string(rstar);
        row["r_star_loss"] =
            oracle::post_response_loss(inst, inst.labels_f, rstar);
        row["optimal_loss"] = opt.loss;
        json mins = json::array();
        for (const auto& m : opt.minimizers)
          mins.push_back(oracle::to_string(m));
        row["minimizers"] = std::move(mins);
        row["informative"] = oracle::is_informative(inst);
      }
      j_instances.push_back(std::move(row));
    } else {
      out << "instance " << i << " (n=" << inst.size() << "): theorem1 "
          << (th1 ? "PASS" : "FAIL") << "  theorem2 "
          << (th2 ? "PASS" : "FAIL") << "  theorem3 " << outcome_label(th3);
      if (th3 == oracle::TheoremOutcome::precondition_unmet)
        out << " (classifier not informative)";
      out << "\n";
      if (detailed) {
        const auto opt = oracle::optimal_constrained_abstention(inst);
        const auto rstar = oracle::unconstrained_abstention(inst);
        out << "  r* = " << oracle::to_string(rstar)
            << "  (loss " << fmt_human(oracle::post_response_loss(
                                 inst, inst.labels_f, rstar))
            << ")\n";
        out << "  optimal loss = " << fmt_human(opt.loss) << "\n";
        out << "  minimizers:";
        for (const auto& m : opt.minimizers)
          out << ' ' << oracle::to_string(m);
        out << "\n";
      }
    }
  }

  if (g.as_json) {
    json j;
    j["metadata"] = metadata(
        g, "oracle",
        json{{"file", file.empty() ? json(nullptr) : json(file)},
             {"random", random},
             {"count", random ? json(count) : json(nullptr)},
             {"min_n", random ? json(min_n) : json(nullptr)},
             {"max_n", random ? json(max_n) : json(nullptr)},
             {"informative", random ? json(informative) : json(nullptr)}});
    j["instances"] = std::move(j_instances);
    j["summary"] = json{{"instances", instances.size()},
                        {"theorem1_pass", pass1},
                        {"theorem2_pass", pass2},
                        {"theorem3_pass", pass3},
                        {"theorem3_skipped", skip3},
                        {"failures", failures}};
    emit(g, j.dump(2) + "\n");
  } else {
    out << "summary: " << instances.size() << " instances, theorem1 " << pass1
        << "/" << instances.size() << ", theorem2 " << pass2 << "/"
        << instances.size() << ", theorem3 " << pass3 << "/"
        << (instances.size() - skip3) << " (" << skip3 << " skipped)\n";
    emit(g, out.str());
  }
  return failures == 0 ? 0 : 1;
}

// -------------------------------------------------------- best-response ---

int cmd_best_response(const GlobalOpts& g, double x, std::optional<double> t,
                      double gamma, double c, bool no_abstention) {
  if (no_abstention == t.has_value())
    throw Usage("best-response: pass --t or --no-abstention (exactly one)");
  const GameConfig cfg(gamma, c, 0.0);
  const closed_form::BestResponse br =
      no_abstention ? closed_form::best_response_no_abstention(x, cfg)
                    : closed_form::best_response(x, *t, cfg);

  if (g.as_json) {
    json j;
    j["metadata"] = metadata(
        g, "best-response",
        json{{"x", x},
             {"t", t.has_value() ? json(*t) : json(nullptr)},
             {"gamma", gamma},
             {"c", c},
             {"no_abstention", no_abstention}});
    j["x_hat"] = br.x_hat;
    j["manipulated"] = br.manipulated;
    j["utility"] = br.utility;
    emit(g, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "x_hat = " << fmt_human(br.x_hat) << "\n"
        << "manipulated = " << (br.manipulated ? "true" : "false") << "\n"
        << "utility = " << fmt_human(br.utility) << "\n";
    emit(g, out.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"abstain: strategic-classification abstention game engine"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "master seed for all randomness")
      ->capture_default_str();
  app.add_flag("--json", g.as_json, "emit JSON (with run metadata) instead of"
                                    " text/CSV");
  app.add_option("--out", g.out, "write output to this file instead of stdout");

  int rc = 0;

  // solve
  double s_gamma = kDefaultGamma, s_c = kDefaultC;
  double s_tchoice = 0.0;
  auto* solve = app.add_subcommand(
      "solve", "closed-form optimum of the one-dimensional game");
  solve->add_option("--gamma", s_gamma, "manipulation cost scale (> 0)")
      ->capture_default_str();
  solve->add_option("--c", s_c, "abstention cost in [0, 1]")
      ->capture_default_str();
  auto* s_topt = solve->add_option(
      "--t-choice", s_tchoice,
      "band to report manipulation for when K > 4 (any T in [0, 2] is optimal)");
  solve->callback([&] {
    rc = cmd_solve(g, s_gamma, s_c,
                   s_topt->count() ? std::optional<double>(s_tchoice)
                                   : std::nullopt);
  });

  // curve
  double cv_gamma = kDefaultGamma, cv_c = kDefaultC, cv_sigma = kDefaultSigma;
  bool cv_analytic = false, cv_simulate = false;
  std::size_t cv_samples = kDefaultSamples;
  mc::GridSpec cv_grid;
  auto* curve = app.add_subcommand(
      "curve", "loss as a function of the band half-width");
  curve->add_option("--gamma", cv_gamma, "manipulation cost scale (> 0)")
      ->capture_default_str();
  curve->add_option("--c", cv_c, "abstention cost in [0, 1]")
      ->capture_default_str();
  curve->add_flag("--analytic", cv_analytic, "closed forms (noiseless labels)");
  curve->add_flag("--simulate", cv_simulate, "seeded Monte Carlo");
  auto* cv_sigma_opt =
      curve->add_option("--sigma", cv_sigma, "label noise (simulate only)")
          ->capture_default_str();
  curve->add_option("--n,--samples", cv_samples, "population size")
      ->capture_default_str();
  curve->add_option("--grid-lo", cv_grid.lo, "first grid threshold")
      ->capture_default_str();
  curve->add_option("--grid-hi", cv_grid.hi, "last grid threshold")
      ->capture_default_str();
  curve->add_option("--grid-step", cv_grid.step, "grid spacing")
      ->capture_default_str();
  curve->callback([&] {
    rc = cmd_curve(g, cv_gamma, cv_c, cv_analytic, cv_simulate, cv_sigma,
                   cv_sigma_opt->count() > 0, cv_samples, cv_grid);
  });

  // sweep
  std::string sw_param = "gamma";
  double sw_from = 0.05, sw_to = 2.0;
  std::size_t sw_steps = 20;
  double sw_gamma = kDefaultGamma, sw_c = kDefaultC, sw_sigma = kDefaultSigma;
  std::size_t sw_samples = kDefaultSamples;
  mc::GridSpec sw_grid;
  auto* sweep = app.add_subcommand(
      "sweep", "empirical optima t*, t-bar across a parameter range");
  sweep->add_option("--param", sw_param, "gamma | c | sigma")
      ->capture_default_str();
  sweep->add_option("--from", sw_from, "first value")->capture_default_str();
  sweep->add_option("--to", sw_to, "last value")->capture_default_str();
  sweep->add_option("--steps", sw_steps, "number of rows")
      ->capture_default_str();
  sweep->add_option("--gamma", sw_gamma, "fixed gamma when not swept")
      ->capture_default_str();
  sweep->add_option("--c", sw_c, "fixed c when not swept")
      ->capture_default_str();
  sweep->add_option("--sigma", sw_sigma, "fixed sigma when not swept")
      ->capture_default_str();
  sweep->add_option("--n,--samples", sw_samples, "population size per row")
      ->capture_default_str();
  sweep->add_option("--grid-lo", sw_grid.lo, "first grid threshold")
      ->capture_default_str();
  sweep->add_option("--grid-hi", sw_grid.hi, "last grid threshold")
      ->capture_default_str();
  sweep->add_option("--grid-step", sw_grid.step, "grid spacing")
      ->capture_default_str();
  sweep->callback([&] {
    rc = cmd_sweep(g, sw_param, sw_from, sw_to, sw_steps, sw_gamma, sw_c,
                   sw_sigma, sw_samples, sw_grid);
  });

  // harm
  std::string h_param = "gamma";
  double h_from = 0.05, h_to = 2.0;
  std::size_t h_steps = 20;
  double h_gamma = kDefaultGamma, h_c = kDefaultC, h_sigma = kDefaultSigma;
  std::size_t h_samples = kDefaultSamples;
  mc::GridSpec h_grid;
  auto* harm = app.add_subcommand(
      "harm", "harm of strategic behavior with/without the abstention option");
  harm->add_option("--param", h_param, "gamma | c | sigma")
      ->capture_default_str();
  harm->add_option("--from", h_from, "first value")->capture_default_str();
  harm->add_option("--to", h_to, "last value")->capture_default_str();
  harm->add_option("--steps", h_steps, "number of rows")
      ->capture_default_str();
  harm->add_option("--gamma", h_gamma, "fixed gamma when not swept")
      ->capture_default_str();
  harm->add_option("--c", h_c, "fixed c when not swept")
      ->capture_default_str();
  harm->add_option("--sigma", h_sigma, "fixed sigma when not swept")
      ->capture_default_str();
  harm->add_option("--n,--samples", h_samples, "population size per row")
      ->capture_default_str();
  harm->add_option("--grid-lo", h_grid.lo, "first grid threshold")
      ->capture_default_str();
  harm->add_option("--grid-hi", h_grid.hi, "last grid threshold")
      ->capture_default_str();
  harm->add_option("--grid-step", h_grid.step, "grid spacing")
      ->capture_default_str();
  harm->callback([&] {
    rc = cmd_harm(g, h_param, h_from, h_to, h_steps, h_gamma, h_c, h_sigma,
                  h_samples, h_grid);
  });

  // oracle
  std::string o_file;
  bool o_random = false, o_informative = false;
  std::size_t o_count = 100, o_min_n = 3, o_max_n = 8;
  auto* orc = app.add_subcommand(
      "oracle", "exhaustively verify the abstention theorems on finite games");
  orc->add_option("file", o_file, "JSON instance file (object or array)");
  orc->add_flag("--random", o_random, "generate seeded random instances");
  orc->add_option("--count", o_count, "number of random instances")
      ->capture_default_str();
  orc->add_option("--min-n", o_min_n, "smallest instance size")
      ->capture_default_str();
  orc->add_option("--max-n", o_max_n, "largest instance size (<= 16)")
      ->capture_default_str();
  orc->add_flag("--informative", o_informative,
                "draw classifiers as posterior thresholds");
  orc->callback([&] {
    rc = cmd_oracle(g, o_file, o_random, o_count, o_min_n, o_max_n,
                    o_informative);
  });

  // best-response
  double b_x = 0.0, b_t = 0.0, b_gamma = kDefaultGamma, b_c = kDefaultC;
  bool b_noabs = false;
  auto* br = app.add_subcommand(
      "best-response", "an agent's optimal report against a committed band");
  br->add_option("--x", b_x, "true feature in [-2, 2]")->required();
  auto* b_topt = br->add_option("--t", b_t, "band half-width");
  br->add_option("--gamma", b_gamma, "manipulation cost scale (> 0)")
      ->capture_default_str();
  br->add_option("--c", b_c, "abstention cost (does not affect the response)")
      ->capture_default_str();
  br->add_flag("--no-abstention", b_noabs, "respond to the bare classifier");
  br->callback([&] {
    rc = cmd_best_response(g, b_x,
                           b_topt->count() ? std::optional<double>(b_t)
                                           : std::nullopt,
                           b_gamma, b_c, b_noabs);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const instance_io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
