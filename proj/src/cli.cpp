#include "pqw/cli.hpp"

#include "pqw/config.hpp"
#include "pqw/io.hpp"
#include "pqw/lattice.hpp"
#include "pqw/limits.hpp"
#include "pqw/plastic.hpp"
#include "pqw/verify.hpp"

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

namespace pqw {

namespace {

struct Options {
  std::string config;
  std::string output;
  std::string format;
  std::optional<std::uint64_t> seed;
  int threads = 0;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Writes to the configured path, or to `out` when no path is set.
class Sink {
public:
  Sink(const std::string &path, std::ostream &fallback) : path_(path), out_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) {
        throw UsageError("cannot open output '" + path + "'");
      }
      out_ = &file_;
    }
  }
  std::ostream &stream() { return *out_; }
  bool to_file() const { return !path_.empty(); }

private:
  std::string path_;
  std::ofstream file_;
  std::ostream *out_;
};

ExperimentConfig load(const Options &opt) {
  ExperimentConfig cfg;
  if (!opt.config.empty()) {
    cfg = load_config(opt.config);
  } else {
    finalize(cfg);
  }
  if (!opt.output.empty()) {
    cfg.path = opt.output;
  }
  if (!opt.format.empty()) {
    cfg.format = opt.format;
  }
  if (opt.seed) {
    cfg.seed = *opt.seed;
  }
  return cfg;
}

void print_json(std::ostream &os, const json &j) { os << j.dump(2) << '\n'; }

int cmd_check(const ExperimentConfig &cfg, std::ostream &out) {
  json doc;
  bool passed = false;
  ConstraintReport rep;
  if (cfg.family == Family::time) {
    rep = check_time_limit(cfg.walk);
    doc = to_json(rep);
    doc["family"] = "time";
  } else {
    rep = check_spacetime_limit(cfg.walk);
    doc = to_json(rep);
    doc["family"] = "plastic";
    json groups = json::array();
    for (const auto &g : divergence_report(cfg.walk, cfg.walk.a_exp, cfg.b_exp).groups) {
      groups.push_back(to_json(g));
    }
    doc["divergent_groups"] = groups;
  }
  passed = rep.passed;
  Sink sink(cfg.path, out);
  if (cfg.format == "csv") {
    sink.stream() << "name,satisfied,residual\n" << std::setprecision(17);
    for (const auto &c : rep.conditions) {
      sink.stream() << c.name << ',' << (c.satisfied ? "true" : "false") << ',' << c.residual << '\n';
    }
  } else {
    print_json(sink.stream(), doc);
  }
  return passed ? kExitOk : kExitDomain;
}

int cmd_hamiltonian(const ExperimentConfig &cfg, std::ostream &out) {
  if (cfg.family != Family::time) {
    throw UsageError("hamiltonian needs walk.family = time (use pde for plastic)");
  }
  const TimeHamiltonian h = time_hamiltonian(cfg.walk);
  json doc = {{"schema_version", kSchemaVersion}, {"nu", h.nu}, {"terms", hamiltonian_to_json(h.terms)}};
  Sink sink(cfg.path, out);
  if (cfg.format == "csv") {
    sink.stream() << "px,py,re11,im11,re12,im12,re21,im21,re22,im22\n" << std::setprecision(17);
    for (const auto &t : h.terms) {
      sink.stream() << t.px << ',' << t.py;
      for (const auto &v : matrix_to_json(t.coeff)) {
        sink.stream() << ',' << v.get<double>();
      }
      sink.stream() << '\n';
    }
  } else {
    print_json(sink.stream(), doc);
  }
  return kExitOk;
}

int cmd_pde(const ExperimentConfig &cfg, std::ostream &out) {
  if (cfg.family != Family::plastic) {
    throw UsageError("pde needs walk.family = plastic");
  }
  const SpacetimeHamiltonian h = spacetime_hamiltonian(cfg.walk);
  json doc = {{"schema_version", kSchemaVersion},
              {"prefactor", json::array({h.calibration.value.real(), h.calibration.value.imag()})},
              {"calibration_spread", h.calibration.spread},
              {"terms", pde_to_json(h.terms)},
              {"rendered", render_pde(h.terms)}};
  if (cfg.walk.a_exp == RationalExp{1, 2} && cfg.b_exp == RationalExp{1, 2}) {
    const HalfHalfPde p = half_half_pde_corrected(cfg.walk);
    doc["closed_form"] = {{"px", matrix_to_json(p.px)}, {"py", matrix_to_json(p.py)}};
  }
  Sink sink(cfg.path, out);
  if (cfg.format == "csv") {
    sink.stream() << "dx_power,dy_power,thx_power,thy_power,re11,im11,re12,im12,re21,im21,re22,im22\n"
                  << std::setprecision(17);
    for (const auto &t : h.terms) {
      sink.stream() << t.dx_power << ',' << t.dy_power << ',' << t.thx_power << ',' << t.thy_power;
      for (const auto &v : matrix_to_json(t.coeff)) {
        sink.stream() << ',' << v.get<double>();
      }
      sink.stream() << '\n';
    }
  } else {
    print_json(sink.stream(), doc);
  }
  return kExitOk;
}

SpinorField initial_state(const ExperimentConfig &cfg) {
  SpinorField f(cfg.nx, cfg.ny);
  if (cfg.initial == "delta") {
    f.at(cfg.nx / 2, cfg.ny / 2) = {1.0, 0.0};
  } else if (cfg.initial == "random") {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> g;
    for (std::size_t i = 0; i < f.sites(); ++i) {
      f[i] = {cplx(g(rng), g(rng)), cplx(g(rng), g(rng))};
    }
  } else {
    const double w = std::max(1.0, cfg.nx / 8.0);
    for (int m = 0; m < cfg.ny; ++m) {
      for (int l = 0; l < cfg.nx; ++l) {
        const double dx = l - cfg.nx / 2.0;
        const double dy = m - cfg.ny / 2.0;
        const double amp = std::exp(-(dx * dx + dy * dy) / (2.0 * w * w));
        f.at(l, m) = {amp, kI * amp};
      }
    }
  }
  f.normalize();
  return f;
}

int cmd_simulate(const ExperimentConfig &cfg, std::ostream &out) {
  SpinorField f = initial_state(cfg);
  const double n0 = f.norm_squared();
  double drift = 0.0;
  for (long long s = 0; s < cfg.steps; ++s) {
    f = step(f, cfg.walk, cfg.eps);
    drift = std::max(drift, std::abs(f.norm_squared() - n0));
  }
  if (!cfg.path.empty()) {
    std::ofstream file(cfg.path, std::ios::binary);
    if (!file) {
      throw UsageError("cannot open output '" + cfg.path + "'");
    }
    const bool binary = cfg.path.size() >= 4 && cfg.path.substr(cfg.path.size() - 4) == ".bin";
    if (binary) {
      write_binary(f, file);
    } else {
      write_csv(f, file);
    }
  }
  print_json(out, {{"schema_version", kSchemaVersion},
                   {"steps", cfg.steps},
                   {"eps", cfg.eps},
                   {"nx", cfg.nx},
                   {"ny", cfg.ny},
                   {"norm_initial", n0},
                   {"norm_final", f.norm_squared()},
                   {"norm_drift", drift}});
  return kExitOk;
}

int cmd_converge(const ExperimentConfig &cfg, std::ostream &out, std::ostream &err) {
  const std::vector<double> eps = cfg.eps_list.empty() ? default_eps_list() : cfg.eps_list;
  ConvergenceResult res;
  if (cfg.family == Family::time) {
    res = time_convergence(cfg.walk, cfg.T, KGrid{cfg.grid, cfg.grid}, eps);
  } else {
    std::vector<std::array<double, 2>> momenta = cfg.momenta;
    if (momenta.empty()) {
      momenta = {{0.5, -0.3}, {1.0, 0.7}, {-0.8, 1.2}};
    }
    res = spacetime_convergence(cfg.walk, cfg.T, momenta, eps);
  }
  json doc = to_json(res);
  doc["family"] = cfg.family == Family::time ? "time" : "plastic";
  if (cfg.format == "json") {
    Sink sink(cfg.path, out);
    print_json(sink.stream(), doc);
    return kExitOk;
  }
  Sink sink(cfg.path, out);
  write_convergence_csv(res, sink.stream());
  if (sink.to_file()) {
    std::ofstream side(cfg.path + ".json");
    print_json(side, doc);
  } else {
    err << "slope " << std::setprecision(6) << res.fit.slope << " r2 " << res.fit.r_squared << '\n';
  }
  return kExitOk;
}

int cmd_dispersion(const ExperimentConfig &cfg, std::ostream &out) {
  const auto pts = dispersion(cfg.walk, cfg.eps, KGrid{cfg.grid, cfg.grid}, cfg.dispersion_power);
  Sink sink(cfg.path, out);
  if (cfg.format == "csv") {
    write_dispersion_csv(pts, sink.stream());
  } else {
    print_json(sink.stream(), to_json(pts));
  }
  return kExitOk;
}

std::string term_label(const TermIndex &t) {
  int nonzero = 0;
  for (int v : t.as_array()) {
    nonzero += v != 0;
  }
  if (nonzero == 1) {
    return "single";
  }
  return "L" + std::to_string(t.sum_l()) + "N" + std::to_string(t.sum_n());
}

int cmd_terms(const ExperimentConfig &cfg, std::ostream &out) {
  const RationalExp a = cfg.walk.a_exp.is_zero() ? RationalExp{1, 2} : cfg.walk.a_exp;
  const RationalExp b = cfg.family == Family::plastic ? cfg.b_exp : RationalExp{1, 2};
  const auto terms = enumerate_terms(a, b);
  Sink sink(cfg.path, out);
  if (cfg.format == "csv") {
    sink.stream() << "l1x,l1y,l2x,l2y,n1x,n1y,n2x,n2y,label,dx_power,dy_power,thx_power,thy_power\n";
    for (const auto &t : terms) {
      for (int v : t.as_array()) {
        sink.stream() << v << ',';
      }
      sink.stream() << term_label(t) << ',' << t.l1x + t.l2x << ',' << t.l1y + t.l2y << ','
                    << t.n1x + t.n2x << ',' << t.n1y + t.n2y << '\n';
    }
    return kExitOk;
  }
  json rows = json::array();
  for (const auto &t : terms) {
    rows.push_back({{"index", t.as_array()},
                    {"label", term_label(t)},
                    {"dx_power", t.l1x + t.l2x},
                    {"dy_power", t.l1y + t.l2y},
                    {"thx_power", t.n1x + t.n2x},
                    {"thy_power", t.n1y + t.n2y}});
  }
  print_json(sink.stream(), {{"schema_version", kSchemaVersion},
                             {"a", a.str()},
                             {"b", b.str()},
                             {"count", terms.size()},
                             {"terms", rows}});
  return kExitOk;
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"pqw: quantum walk continuum-limit toolkit"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--config", opt.config, "INI experiment file");
  app.add_option("--output", opt.output, "output path (default stdout)");
  app.add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", opt.seed, "seed for randomized inputs");
  app.add_option("--threads", opt.threads, "OpenMP threads (0 keeps the default)")->check(CLI::NonNegativeNumber);

  const char *names[] = {"check", "hamiltonian", "pde", "simulate", "converge", "dispersion", "terms"};
  const char *help[] = {"check limit constraints",
                        "emit the lattice Hamiltonian of the time limit",
                        "emit the continuum generator of the spacetime limit",
                        "run the real-space walk",
                        "measure convergence to the limit",
                        "eigenphases of W(k) on a grid",
                        "list order-one expansion terms"};
  std::vector<CLI::App *> subs;
  for (std::size_t i = 0; i < std::size(names); ++i) {
    subs.push_back(app.add_subcommand(names[i], help[i]));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

#ifdef _OPENMP
  if (opt.threads > 0) {
    omp_set_num_threads(opt.threads);
  }
#endif

  try {
    const ExperimentConfig cfg = load(opt);
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "check") {
      return cmd_check(cfg, out);
    }
    if (cmd == "hamiltonian") {
      return cmd_hamiltonian(cfg, out);
    }
    if (cmd == "pde") {
      return cmd_pde(cfg, out);
    }
    if (cmd == "simulate") {
      return cmd_simulate(cfg, out);
    }
    if (cmd == "converge") {
      return cmd_converge(cfg, out, err);
    }
    if (cmd == "dispersion") {
      return cmd_dispersion(cfg, out);
    }
    return cmd_terms(cfg, out);
  } catch (const ConstraintViolation &e) {
    err << "constraint failed: " << e.condition() << ": " << e.what() << '\n';
    return kExitDomain;
  } catch (const UsageError &e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument &e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

} // namespace pqw
