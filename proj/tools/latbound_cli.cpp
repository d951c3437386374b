// Command-line front end. Talks to the library only through latbound.h.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "latbound/latbound.h"

namespace {

constexpr int kExitErrorRows = 1;
constexpr int kExitFailure = 2;
constexpr int kExitUsage = 64;

struct Failure {
  lb_status status;
  std::string message;
};

void check(lb_status s) {
  if (s != LB_OK) throw Failure{s, lb_last_error()};
}

[[noreturn]] void usage(const std::string& message) {
  throw Failure{LB_ERR_INVALID_ARGUMENT, message};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Lattice = std::unique_ptr<lb_lattice, Deleter<lb_lattice, lb_lattice_free>>;
using Spectrum = std::unique_ptr<lb_spectrum, Deleter<lb_spectrum, lb_spectrum_free>>;
using Profile = std::unique_ptr<lb_profile, Deleter<lb_profile, lb_profile_free>>;
using Sweep = std::unique_ptr<lb_sweep, Deleter<lb_sweep, lb_sweep_free>>;

std::string take(char* s) {
  std::string out(s);
  lb_string_free(s);
  return out;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> grid(const std::string& text) {
  double* values = nullptr;
  std::size_t count = 0;
  check(lb_parse_grid(text.c_str(), &values, &count));
  std::vector<double> out(values, values + count);
  lb_grid_free(values);
  return out;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct Common {
  std::string out;
  std::string format = "csv";
  int threads = 1;
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty() || c.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  f << text;
  if (!f) throw Failure{LB_ERR_IO, "cannot write " + c.out};
}

struct Source {
  std::string lattice;
  std::string generator;
  std::string spectrum;
  std::string catalog;
  double radius = 0.0;
  std::size_t shells = 0;
  std::uint64_t max_vectors = 0;
};

void add_source(CLI::App* cmd, Source& s, bool files_only_lattice = false) {
  auto* g = cmd->add_option_group("source");
  g->add_option("--lattice", s.lattice, "builtin lattice (Z1..Z24, D4, E8, BW16, Leech)");
  g->add_option("--generator", s.generator, "JSON basis file");
  if (!files_only_lattice) {
    g->add_option("--spectrum", s.spectrum, "spectrum JSON file");
    g->add_option("--catalog", s.catalog, "tabulated spectrum (D4, E8, BW16, Leech)");
  }
  g->require_option(1);
  cmd->add_option("--radius", s.radius, "enumeration radius for --lattice/--generator");
  if (!files_only_lattice) cmd->add_option("--shells", s.shells, "keep only the first K shells");
  cmd->add_option("--max-vectors", s.max_vectors, "enumeration cap (0 for the default)");
}

Lattice open_lattice(const Source& s) {
  lb_lattice* l = nullptr;
  if (!s.lattice.empty()) {
    check(lb_lattice_builtin(s.lattice.c_str(), &l));
  } else {
    check(lb_lattice_load(s.generator.c_str(), &l));
  }
  return Lattice(l);
}

Spectrum open_spectrum(const Source& s, int threads) {
  lb_spectrum* sp = nullptr;
  if (!s.spectrum.empty()) {
    check(lb_spectrum_load(s.spectrum.c_str(), &sp));
  } else if (!s.catalog.empty()) {
    check(lb_spectrum_catalog(s.catalog.c_str(), 0, &sp));
  } else {
    const auto l = open_lattice(s);
    check(lb_spectrum_enumerate(l.get(), s.radius, s.max_vectors, threads, &sp));
  }
  Spectrum owned(sp);
  if (s.shells > 0) {
    lb_spectrum* cut = nullptr;
    check(lb_spectrum_truncate(owned.get(), s.shells, &cut));
    owned.reset(cut);
  }
  return owned;
}

struct NoiseGrid {
  std::string sigma;
  std::string vnr_db;
};

void add_noise(CLI::App* cmd, NoiseGrid& g) {
  auto* s = cmd->add_option("--sigma", g.sigma, "noise std grid a:b:k");
  auto* v = cmd->add_option("--vnr-db", g.vnr_db, "VNR grid a:b:k in dB");
  s->excludes(v);
}

std::vector<double> sigmas_for(const NoiseGrid& g, double log_density) {
  if (g.sigma.empty() && g.vnr_db.empty()) usage("one of --sigma or --vnr-db is required");
  if (!g.sigma.empty()) return grid(g.sigma);
  std::vector<double> out;
  for (double db : grid(g.vnr_db)) {
    double sigma = 0.0;
    check(lb_vnr_db_to_sigma(db, log_density, &sigma));
    out.push_back(sigma);
  }
  return out;
}

int cmd_spectrum(const Common& c, const Source& s) {
  const auto sp = open_spectrum(s, c.threads);
  char* text = nullptr;
  if (c.format == "json") {
    check(lb_spectrum_to_json(sp.get(), &text));
  } else {
    check(lb_spectrum_to_csv(sp.get(), &text));
  }
  emit(c, take(text));
  return 0;
}

struct AlphaArgs {
  std::string mode = "both";
  std::size_t m = 0;
  double lambda_max = 0.0;
};

int cmd_alpha(const Common& c, const Source& s, const AlphaArgs& a) {
  const auto sp = open_spectrum(s, c.threads);
  const std::size_t size = lb_spectrum_size(sp.get());
  std::vector<std::pair<std::string, Profile>> profiles;
  if (a.mode == "rng" || a.mode == "both") {
    lb_profile* p = nullptr;
    check(lb_alpha_rng(sp.get(), a.m > 0 ? a.m : size, &p));
    profiles.emplace_back("rng", Profile(p));
  }
  if (a.mode == "opt" || a.mode == "both") {
    double lambda_max = a.lambda_max;
    if (lambda_max <= 0.0 && size > 0) {
      double norm_sq = 0.0;
      std::uint64_t count = 0;
      check(lb_spectrum_entry(sp.get(), size - 1, &norm_sq, &count));
      lambda_max = std::sqrt(norm_sq);
    }
    lb_profile* p = nullptr;
    check(lb_alpha_opt(sp.get(), lambda_max, &p));
    profiles.emplace_back("opt", Profile(p));
  }

  nlohmann::ordered_json json = nlohmann::ordered_json::array();
  std::string csv = "mode,shell_index,lambda_lo,lambda_hi,alpha_value\n";
  for (const auto& [mode, profile] : profiles) {
    int ok = 0;
    check(lb_profile_cumulative_check(sp.get(), profile.get(), &ok));
    nlohmann::ordered_json levels = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < lb_profile_size(profile.get()); ++j) {
      double lo = 0, hi = 0, value = 0;
      check(lb_profile_shell(profile.get(), j, &lo, &hi, &value));
      csv += mode + ',' + std::to_string(j + 1) + ',' + num(lo) + ',' + num(hi) + ',' + num(value) + '\n';
      levels.push_back({{"lambda_lo", lo}, {"lambda_hi", hi}, {"alpha_value", value}});
    }
    json.push_back({{"mode", mode},
                    {"max", lb_profile_max(profile.get())},
                    {"cumulative_check", ok == 1},
                    {"shells", levels}});
  }
  emit(c, c.format == "json" ? json.dump(2) + "\n" : csv);
  return 0;
}

std::vector<lb_method> methods_from(const std::string& text) {
  std::vector<lb_method> out;
  for (const auto& name : split(text)) {
    lb_method m;
    check(lb_parse_method(name.c_str(), &m));
    out.push_back(m);
  }
  if (out.empty()) usage("--methods is empty");
  return out;
}

int cmd_bound(const Common& c, const Source& s, const NoiseGrid& g, const std::string& methods) {
  const auto sp = open_spectrum(s, c.threads);
  const auto list = methods_from(methods);
  const auto sigmas = sigmas_for(g, lb_spectrum_log_density(sp.get()));
  lb_sweep* raw = nullptr;
  check(lb_sweep_run(sp.get(), list.data(), list.size(), sigmas.data(), sigmas.size(), c.threads, &raw));
  const Sweep sw(raw);
  char* text = nullptr;
  check(c.format == "json" ? lb_sweep_to_json(sw.get(), &text) : lb_sweep_to_csv(sw.get(), &text));
  emit(c, take(text));
  const std::size_t errors = lb_sweep_error_count(sw.get());
  if (errors > 0) {
    std::cerr << "latbound-cli: " << errors << " of " << lb_sweep_size(sw.get()) << " rows failed\n";
    return kExitErrorRows;
  }
  return 0;
}

struct ExponentArgs {
  std::vector<std::string> spectra;
  std::string catalog;
  std::string policy = "dmhs";
  double lambda_max = 0.0;
  std::string delta;
  bool literal_line = false;
};

int cmd_exponent(const Common& c, const ExponentArgs& a, const NoiseGrid& g) {
  std::vector<Spectrum> specs;
  for (const auto& path : a.spectra) {
    lb_spectrum* sp = nullptr;
    check(lb_spectrum_load(path.c_str(), &sp));
    specs.emplace_back(sp);
  }
  for (const auto& name : split(a.catalog)) {
    lb_spectrum* sp = nullptr;
    check(lb_spectrum_catalog(name.c_str(), 0, &sp));
    specs.emplace_back(sp);
  }
  nlohmann::ordered_json json = nlohmann::ordered_json::array();

  if (!a.delta.empty()) {
    // Exponent curve of the channel itself over a delta grid.
    if (g.sigma.empty()) usage("--delta needs --sigma");
    std::string csv = "sigma,delta,exponent\n";
    for (double sigma : grid(g.sigma)) {
      for (double d : grid(a.delta)) {
        double e = 0.0;
        check(lb_poltyrev_exponent(d, sigma, a.literal_line ? 1 : 0, &e));
        csv += num(sigma) + ',' + num(d) + ',' + num(e) + '\n';
        json.push_back({{"sigma", sigma}, {"delta", d}, {"exponent", e}});
      }
    }
    emit(c, c.format == "json" ? json.dump(2) + "\n" : csv);
    return 0;
  }

  if (specs.empty()) usage("give --spectrum files, --catalog names or --delta");
  lb_policy policy;
  if (a.policy == "dmhs") {
    policy = LB_POLICY_DMHS;
  } else if (a.policy == "fixed") {
    policy = LB_POLICY_FIXED_LAMBDA_MAX;
  } else if (a.policy == "first-shell") {
    policy = LB_POLICY_FIRST_SHELL;
  } else {
    usage("unknown policy '" + a.policy + "' (dmhs, fixed, first-shell)");
  }
  // Each lattice gets the same noise point: sigma directly, or a VNR
  // relative to its own density. Default is 3 dB.
  std::vector<double> points = !g.sigma.empty()    ? grid(g.sigma)
                               : !g.vnr_db.empty() ? grid(g.vnr_db)
                                                   : std::vector<double>{3.0};
  const bool by_sigma = !g.sigma.empty();
  std::string csv = "lattice,n,sigma,vnr_db,delta,alpha_n,nu,exponent,gap_firstshell\n";
  for (double point : points) {
    for (const auto& sp : specs) {
      const double delta = lb_spectrum_log_density(sp.get());
      double sigma = point;
      if (!by_sigma) check(lb_vnr_db_to_sigma(point, delta, &sigma));
      double vnr = 0.0;
      check(lb_vnr_db(sigma, delta, &vnr));
      lb_exponent_point p{};
      check(lb_nu_point(sp.get(), policy, a.lambda_max, sigma, NAN, a.literal_line ? 1 : 0, &p));
      double gap = 0.0;
      int monotone = 0;
      check(lb_gap_firstshell(sp.get(), &gap, &monotone));
      const std::string name = lb_spectrum_name(sp.get());
      csv += name + ',' + std::to_string(p.n) + ',' + num(sigma) + ',' + num(vnr) + ',' + num(p.delta) + ',' +
             num(p.alpha_n) + ',' + num(p.nu) + ',' + num(p.exponent) + ',' + num(gap) + '\n';
      json.push_back({{"lattice", name},
                      {"n", p.n},
                      {"sigma", sigma},
                      {"vnr_db", vnr},
                      {"delta", p.delta},
                      {"alpha_n", p.alpha_n},
                      {"nu", p.nu},
                      {"exponent", p.exponent},
                      {"gap_firstshell", gap},
                      {"rng_monotone", monotone == 1}});
    }
  }
  emit(c, c.format == "json" ? json.dump(2) + "\n" : csv);
  return 0;
}

struct SimArgs {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
};

int cmd_simulate(const Common& c, const Source& s, const NoiseGrid& g, const SimArgs& a) {
  const auto l = open_lattice(s);
  const std::string name = !s.lattice.empty() ? s.lattice : s.generator;
  std::string csv = "lattice,sigma,trials,errors,p_hat,ci95,seed\n";
  nlohmann::ordered_json json = nlohmann::ordered_json::array();
  for (double sigma : sigmas_for(g, lb_lattice_log_density(l.get()))) {
    lb_sim_result r{};
    check(lb_simulate(l.get(), sigma, a.trials, a.seed, c.threads, &r));
    csv += name + ',' + num(r.sigma) + ',' + std::to_string(r.trials) + ',' + std::to_string(r.errors) + ',' +
           num(r.p_hat) + ',' + num(r.ci95_halfwidth) + ',' + std::to_string(r.seed) + '\n';
    json.push_back({{"lattice", name},
                    {"sigma", r.sigma},
                    {"trials", r.trials},
                    {"errors", r.errors},
                    {"p_hat", r.p_hat},
                    {"ci95", r.ci95_halfwidth},
                    {"seed", r.seed}});
  }
  emit(c, c.format == "json" ? json.dump(2) + "\n" : csv);
  return 0;
}

void add_common(CLI::App* cmd, Common& c, const std::string& default_format) {
  c.format = default_format;
  cmd->add_option("--out", c.out, "output file (stdout when absent)");
  cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice decoding error bounds from distance spectra"};
  app.set_version_flag("--version", std::string(lb_version()));
  app.require_subcommand(1);

  Common spectrum_common, alpha_common, bound_common, exponent_common, sim_common;
  Source spectrum_source, alpha_source, bound_source, sim_source;
  NoiseGrid bound_noise, exponent_noise, sim_noise;
  AlphaArgs alpha_args;
  ExponentArgs exponent_args;
  SimArgs sim_args;
  std::string methods = "ub,mhs,dmhs,edmhs,sub,slb";
  std::uint64_t unused_seed = 0;

  auto* spectrum = app.add_subcommand("spectrum", "enumerate a lattice's distance spectrum");
  add_common(spectrum, spectrum_common, "json");
  add_source(spectrum, spectrum_source, true);
  spectrum->get_option("--radius")->required();
  spectrum->add_option("--seed", unused_seed, "accepted for uniformity; unused");

  auto* alpha = app.add_subcommand("alpha", "alpha profiles of a spectrum");
  add_common(alpha, alpha_common, "csv");
  add_source(alpha, alpha_source);
  alpha->add_option("--mode", alpha_args.mode, "rng, opt or both")->check(CLI::IsMember({"rng", "opt", "both"}));
  alpha->add_option("--m", alpha_args.m, "shells in the rng profile (default all)");
  alpha->add_option("--lambda-max", alpha_args.lambda_max, "opt scope in spectrum units (default last norm)");
  alpha->add_option("--seed", unused_seed, "accepted for uniformity; unused");

  auto* bound = app.add_subcommand("bound", "sweep bounds over a noise grid");
  add_common(bound, bound_common, "csv");
  add_source(bound, bound_source);
  add_noise(bound, bound_noise);
  bound->add_option("--methods", methods, "comma list of ub,mhs,dmhs,edmhs,sub,slb");
  bound->add_option("--seed", unused_seed, "accepted for uniformity; unused");

  auto* exponent = app.add_subcommand("exponent", "nu and exponent series, or the exponent curve");
  add_common(exponent, exponent_common, "csv");
  exponent->add_option("--spectrum", exponent_args.spectra, "spectrum JSON files")->expected(0, -1);
  exponent->add_option("--catalog", exponent_args.catalog, "comma list of tabulated spectra");
  exponent->add_option("--policy", exponent_args.policy, "dmhs, fixed or first-shell");
  exponent->add_option("--lambda-max", exponent_args.lambda_max, "normalized radius for the fixed policy");
  exponent->add_option("--delta", exponent_args.delta, "NLD grid a:b:k; prints the exponent curve");
  exponent->add_flag("--paper-literal-line", exponent_args.literal_line,
                     "use ln(e/4) for the straight-line branch");
  add_noise(exponent, exponent_noise);
  exponent->add_option("--seed", unused_seed, "accepted for uniformity; unused");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo error rate with exact decoding");
  add_common(simulate, sim_common, "csv");
  add_source(simulate, sim_source, true);
  add_noise(simulate, sim_noise);
  simulate->add_option("--trials", sim_args.trials, "trials per noise point")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim_args.seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*spectrum) return cmd_spectrum(spectrum_common, spectrum_source);
    if (*alpha) return cmd_alpha(alpha_common, alpha_source, alpha_args);
    if (*bound) return cmd_bound(bound_common, bound_source, bound_noise, methods);
    if (*exponent) return cmd_exponent(exponent_common, exponent_args, exponent_noise);
    if (*simulate) return cmd_simulate(sim_common, sim_source, sim_noise, sim_args);
  } catch (const Failure& f) {
    std::cerr << "latbound-cli: " << f.message << '\n';
    const bool is_usage = f.status == LB_ERR_INVALID_ARGUMENT || f.status == LB_ERR_UNKNOWN_LATTICE;
    return is_usage ? kExitUsage : kExitFailure;
  }
  return kExitFailure;
}
