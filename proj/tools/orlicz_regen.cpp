#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "orlicz/bound_verifier.hpp"
#include "orlicz/golden.hpp"
#include "orlicz/io.hpp"
#include "orlicz/limit_experiments.hpp"
#include "orlicz/split_chain.hpp"
#include "orlicz/tower_chain.hpp"
#include "orlicz/young.hpp"

namespace {

using orlicz::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Ctx {
  json cfg = json::object();  // raw config as loaded
  json resolved;            // config with defaults and overrides applied
  std::string out_dir = ".";
  bool has_seed = false;
  std::uint64_t seed = 0;
  int workers = 0;
};

std::string timestamp_utc() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void write_report(const Ctx& ctx, const std::string& command, json body) {
  body["command"] = command;
  body["config"] = ctx.resolved;
  body["timestamp"] = timestamp_utc();
  orlicz::write_text(ctx.out_dir + "/report.json", body.dump(2) + "\n");
}

// Config readers that record the effective value in ctx.resolved.
double cfg_num(Ctx& ctx, const std::string& key, double def) {
  double v = ctx.cfg.value(key, def);
  ctx.resolved[key] = v;
  return v;
}

std::int64_t cfg_int(Ctx& ctx, const std::string& key, std::int64_t def) {
  std::int64_t v = ctx.cfg.value(key, def);
  ctx.resolved[key] = v;
  return v;
}

std::string cfg_str(Ctx& ctx, const std::string& key, const std::string& def) {
  std::string v = ctx.cfg.value(key, def);
  ctx.resolved[key] = v;
  return v;
}

orlicz::YoungFn cfg_young(Ctx& ctx, const std::string& key) {
  if (!ctx.cfg.contains(key))
    throw ConfigError("config is missing the function descriptor '" + key + "'");
  orlicz::YoungFn f = orlicz::young_from_json(ctx.cfg.at(key));
  ctx.resolved[key] = orlicz::young_to_json(f);
  return f;
}

orlicz::TowerChainSpec cfg_spec(Ctx& ctx) {
  if (!ctx.cfg.contains("spec"))
    throw ConfigError("config is missing the chain 'spec'");
  orlicz::TowerChainSpec spec = orlicz::spec_from_json(ctx.cfg.at("spec"));
  ctx.resolved["spec"] = orlicz::spec_to_json(spec);
  return spec;
}

// Toy periodic towers (no height-1 atom) are accepted by default; the exact
// laws do not need aperiodicity.
orlicz::TowerChain cfg_tower(Ctx& ctx) {
  bool strict = ctx.cfg.value("require_aperiodic", false);
  ctx.resolved["require_aperiodic"] = strict;
  return orlicz::build_tower(cfg_spec(ctx), strict);
}

std::uint64_t require_seed(const Ctx& ctx, const std::string& command) {
  if (!ctx.has_seed)
    throw ConfigError("command '" + command + "' is stochastic and needs a seed "
                      "(config key \"seed\" or --seed)");
  return ctx.seed;
}

std::vector<std::size_t> cfg_sizes(Ctx& ctx, const std::string& key,
                                   std::vector<std::size_t> def) {
  std::vector<std::size_t> v = def;
  if (ctx.cfg.contains(key)) v = ctx.cfg.at(key).get<std::vector<std::size_t>>();
  ctx.resolved[key] = v;
  return v;
}

// psi must satisfy psi(x)/x -> 0 near 0 and psi(1) >= 1; rescale when it
// does not, and record that in the report.
orlicz::YoungFn admissible_psi(Ctx& ctx, const orlicz::YoungFn& psi) {
  auto norm = orlicz::normalize_assumption_A(psi);
  ctx.resolved["psi_normalized"] = norm.changed;
  return norm.fn;
}

void write_rows_csv(const std::string& path, const std::string& header,
                    const std::vector<std::string>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << header << "\n";
  for (const auto& r : rows) out << r << "\n";
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

int cmd_compute_curve(Ctx& ctx, const std::string& command) {
  auto phi = cfg_young(ctx, "phi");
  auto psi = admissible_psi(ctx, cfg_young(ctx, "psi"));
  bool is_rho = command == "compute-rho";
  orlicz::GenYoungFn g = is_rho ? orlicz::rho_of(phi, psi)
                                : orlicz::zeta_of(phi, psi);
  double lo = cfg_num(ctx, "grid_lo", 0.1);
  double hi = cfg_num(ctx, "grid_hi", 1e4);
  int n = int(cfg_int(ctx, "grid_n", 200));
  orlicz::write_curve_csv(ctx.out_dir + "/curve.csv", g, lo, hi, n);

  json samples = json::array();
  for (double x : {0.5, 1.0, 2.0, 10.0, 100.0}) {
    orlicz::ExtReal v = g(x);
    samples.push_back({{"x", x},
                       {"value", v.is_inf ? json("inf") : json(v.value)}});
  }
  json body{{"function", is_rho ? "rho" : "zeta"},
            {"samples", samples},
            {"fitted_exponent", orlicz::fitted_exponent(g, 10.0, 1e3)}};
  write_report(ctx, command, body);
  return 0;
}

int cmd_verify_bounds(Ctx& ctx) {
  auto phi = cfg_young(ctx, "phi");
  auto psi = admissible_psi(ctx, cfg_young(ctx, "psi"));

  std::vector<orlicz::TowerChainSpec> specs;
  std::vector<std::string> ids;
  bool strict = ctx.cfg.value("require_aperiodic", false);
  ctx.resolved["require_aperiodic"] = strict;
  if (ctx.cfg.contains("suite")) {
    std::int64_t count = ctx.cfg.at("suite").value("count", 20);
    std::uint64_t base = ctx.cfg.at("suite").value("seed", std::uint64_t(1));
    ctx.resolved["suite"] = {{"count", count}, {"seed", base}};
    for (std::int64_t i = 0; i < count; ++i) {
      specs.push_back(orlicz::random_tower_spec(base + std::uint64_t(i)));
      ids.push_back("suite-" + std::to_string(i));
    }
  } else {
    specs.push_back(cfg_spec(ctx));
    ids.push_back("spec");
  }

  std::vector<std::string> theorems{"thm_nu", "thm_pi"};
  bool has_rho = ctx.cfg.contains("rho");
  bool has_zeta = ctx.cfg.contains("zeta");
  if (has_rho) theorems.push_back("cor_nu");
  if (has_zeta) theorems.push_back("cor_pi");
  if (ctx.cfg.contains("theorems"))
    theorems = ctx.cfg.at("theorems").get<std::vector<std::string>>();
  ctx.resolved["theorems"] = theorems;
  bool improved = ctx.cfg.value("improved_factor", false);
  ctx.resolved["improved_factor"] = improved;

  orlicz::YoungFn rho = has_rho ? cfg_young(ctx, "rho") : orlicz::YoungFn::linear();
  orlicz::YoungFn zeta = has_zeta ? cfg_young(ctx, "zeta") : orlicz::YoungFn::linear();
  double K = 0.0;
  for (const auto& th : theorems) {
    if (th == "cor_nu" && !has_rho)
      throw ConfigError("theorem cor_nu needs a 'rho' descriptor");
    if (th == "cor_pi") {
      if (!has_zeta) throw ConfigError("theorem cor_pi needs a 'zeta' descriptor");
      K = ctx.cfg.value("K", 0.0);
      if (K <= 0.0) K = orlicz::fit_cor_pi_constant(specs, psi, zeta, phi);
      ctx.resolved["K"] = K;
    }
  }

  json reports = json::array();
  std::vector<std::string> rows;
  std::size_t violations = 0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    auto tc = orlicz::build_tower(specs[i], strict);
    for (const auto& th : theorems) {
      orlicz::BoundReport r;
      if (th == "thm_nu")
        r = orlicz::verify_thm_nu(tc, phi, psi);
      else if (th == "thm_pi")
        r = orlicz::verify_thm_pi(tc, phi, psi, improved);
      else if (th == "cor_nu")
        r = orlicz::verify_cor_nu(tc, psi, rho);
      else if (th == "cor_pi")
        r = orlicz::verify_cor_pi(tc, psi, zeta, phi, K);
      else
        throw ConfigError("unknown theorem id '" + th + "'");
      json jr = orlicz::report_to_json(r);
      jr["instance"] = ids[i];
      reports.push_back(jr);
      if (r.ratio_defined && r.ratio > 1.0) ++violations;
      rows.push_back(ids[i] + "," + r.theorem_id + "," +
                     (r.lhs.is_inf ? "inf" : fmt(r.lhs.value)) + "," +
                     (r.rhs.is_inf ? "inf" : fmt(r.rhs.value)) + "," +
                     (r.ratio_defined ? fmt(r.ratio) : ""));
    }
  }
  write_rows_csv(ctx.out_dir + "/suite.csv", "instance,theorem,lhs,rhs,ratio",
                 rows);
  write_report(ctx, "verify-bounds",
               {{"reports", reports}, {"violations", violations}});
  return violations ? 2 : 0;
}

int cmd_certify(Ctx& ctx) {
  std::string side = cfg_str(ctx, "side", "nu");
  if (side != "nu" && side != "pi")
    throw ConfigError("side must be 'nu' or 'pi'");
  auto phi = cfg_young(ctx, "phi");
  auto psi = admissible_psi(ctx, cfg_young(ctx, "psi"));
  int n_max = int(cfg_int(ctx, "n_max", 40));
  double theta = cfg_num(ctx, "theta", 1.0);
  double budget = cfg_num(ctx, "budget", 1e6);
  std::size_t term_budget = std::size_t(cfg_int(ctx, "term_budget", 10000));

  orlicz::GenYoungFn cand =
      side == "nu" ? orlicz::rho_of(phi, psi) : orlicz::zeta_of(phi, psi);
  std::string cand_desc = "derived";
  if (ctx.cfg.contains("candidate")) {
    orlicz::YoungFn c = cfg_young(ctx, "candidate");
    cand = orlicz::GenYoungFn::from_young(c);
    cand_desc = "config";
  }
  ctx.resolved["candidate_source"] = cand_desc;

  orlicz::WeakOptResult res =
      side == "nu" ? orlicz::weak_opt_nu_spec(phi, psi, cand, n_max)
                   : orlicz::weak_opt_pi_spec(phi, psi, cand, n_max);
  json body{{"result", orlicz::report_to_json(res)}};
  int rc = 0;
  if (res.refuted) {
    auto cert = orlicz::divergence_certificate(res.series_term, theta, budget,
                                               term_budget);
    body["certificate"] = orlicz::report_to_json(cert);
    if (!cert.exceeded) rc = 2;

    std::vector<std::string> atom_rows;
    for (const auto& a : res.spec.atoms)
      atom_rows.push_back(a.label + "," + fmt(a.alpha) + "," + fmt(a.f_tilde) +
                          "," + std::to_string(a.h));
    write_rows_csv(ctx.out_dir + "/atoms.csv", "label,alpha,f,h", atom_rows);

    std::vector<std::vector<double>> series_rows;
    double partial = 0.0;
    for (std::size_t n = 1; n <= cert.n_terms; ++n) {
      double term = res.series_term(n, theta);
      partial += term;
      series_rows.push_back({double(n), term, partial});
    }
    orlicz::write_csv(ctx.out_dir + "/series.csv", {"n", "term", "partial_sum"},
                      series_rows);
  }
  write_report(ctx, "certify-counterexample", body);
  return rc;
}

int cmd_pitman(Ctx& ctx) {
  std::uint64_t seed = require_seed(ctx, "pitman-check");
  auto tc = cfg_tower(ctx);
  std::size_t n_blocks = std::size_t(cfg_int(ctx, "n_blocks", 10000));
  double z_threshold = cfg_num(ctx, "z_threshold", 4.0);

  auto pit = orlicz::pitman_check(
      tc.chain, [](const orlicz::ChainState&, bool) { return 1.0; }, n_blocks,
      seed, ctx.workers);
  auto blk = orlicz::block_mean_check(
      tc.chain, [&tc](const orlicz::ChainState& s) { return tc.f(s); },
      n_blocks, seed + 1, ctx.workers);

  bool ok = std::abs(pit.z) <= z_threshold && std::abs(blk.z) <= z_threshold;
  write_rows_csv(
      ctx.out_dir + "/checks.csv", "check,estimate,exact,std_error,z",
      {"occupation," + fmt(pit.estimate) + "," + fmt(pit.exact) + "," +
           fmt(pit.std_error) + "," + fmt(pit.z),
       "block_mean," + fmt(blk.estimate) + "," + fmt(blk.exact) + "," +
           fmt(blk.std_error) + "," + fmt(blk.z)});
  write_report(ctx, "pitman-check",
               {{"occupation", orlicz::report_to_json(pit)},
                {"block_mean", orlicz::report_to_json(blk)},
                {"pass", ok}});
  return ok ? 0 : 2;
}

int cmd_clt(Ctx& ctx) {
  std::uint64_t seed = require_seed(ctx, "clt");
  auto tc = cfg_tower(ctx);
  auto n_values = cfg_sizes(ctx, "n_values", {1000, 10000, 100000});
  std::size_t replicas = std::size_t(cfg_int(ctx, "replicas", 2000));
  double ks_threshold = cfg_num(ctx, "ks_threshold", 0.05);

  auto rep = orlicz::clt_experiment(tc, n_values, replicas, seed, ctx.workers);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < rep.n_values.size(); ++i)
    rows.push_back({double(rep.n_values[i]), rep.ks_distance[i]});
  orlicz::write_csv(ctx.out_dir + "/clt.csv", {"n", "ks_distance"}, rows);

  bool ok = !rep.degenerate;
  for (double d : rep.ks_distance) ok = ok && d < ks_threshold;
  json body = orlicz::report_to_json(rep);
  body["pass"] = ok;
  write_report(ctx, "clt", body);
  return ok ? 0 : 2;
}

int cmd_lil(Ctx& ctx) {
  std::uint64_t seed = require_seed(ctx, "lil");
  auto tc = cfg_tower(ctx);
  std::size_t n_max = std::size_t(cfg_int(ctx, "n_max", 100000));
  std::size_t replicas = std::size_t(cfg_int(ctx, "replicas", 200));
  double band_lo = cfg_num(ctx, "band_lo", 0.3);
  double band_hi = cfg_num(ctx, "band_hi", 3.0);

  auto rep = orlicz::lil_statistic(tc, n_max, replicas, seed, ctx.workers);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < rep.replica_max.size(); ++i)
    rows.push_back({double(i), rep.replica_max[i]});
  orlicz::write_csv(ctx.out_dir + "/lil.csv", {"replica", "max_statistic"},
                    rows);

  double target = rep.sigma_f * std::sqrt(2.0);
  bool ok = !rep.degenerate && rep.q95 >= band_lo * target &&
            rep.q95 <= band_hi * target;
  json body = orlicz::report_to_json(rep);
  body["target"] = target;
  body["pass"] = ok;
  write_report(ctx, "lil", body);
  return ok ? 0 : 2;
}

int cmd_berry_esseen(Ctx& ctx) {
  std::uint64_t seed = require_seed(ctx, "berry-esseen");
  auto tc = cfg_tower(ctx);
  auto psi = admissible_psi(ctx, cfg_young(ctx, "psi"));
  auto n_values = cfg_sizes(ctx, "n_values", {1000, 4000, 16000});
  std::size_t replicas = std::size_t(cfg_int(ctx, "replicas", 10000));
  double slope_threshold = cfg_num(ctx, "slope_threshold", -0.35);

  auto rep = orlicz::berry_esseen_experiment(tc, psi, n_values, replicas, seed,
                                             ctx.workers);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < rep.n_values.size(); ++i)
    rows.push_back({double(rep.n_values[i]), rep.delta_n[i]});
  orlicz::write_csv(ctx.out_dir + "/rate.csv", {"n", "delta_n"}, rows);

  bool ok = !rep.degenerate && rep.slope <= slope_threshold;
  json body = orlicz::report_to_json(rep);
  body["pass"] = ok;
  write_report(ctx, "berry-esseen", body);
  return ok ? 0 : 2;
}

int cmd_tail_bound(Ctx& ctx) {
  std::uint64_t seed = require_seed(ctx, "tail-bound");
  auto tc = cfg_tower(ctx);
  double alpha = cfg_num(ctx, "alpha", 1.0);
  double beta = cfg_num(ctx, "beta", 1.0);
  std::size_t n = std::size_t(cfg_int(ctx, "n", 2000));
  std::size_t replicas = std::size_t(cfg_int(ctx, "replicas", 100000));
  double K = cfg_num(ctx, "K", 0.0);

  std::vector<double> t_grid;
  if (ctx.cfg.contains("t_grid")) {
    t_grid = ctx.cfg.at("t_grid").get<std::vector<double>>();
  } else {
    double t_max = ctx.cfg.value("t_max", 400.0);
    double t_step = ctx.cfg.value("t_step", 25.0);
    for (double t = 0.0; t <= t_max + 1e-9; t += t_step) t_grid.push_back(t);
  }
  ctx.resolved["t_grid"] = t_grid;

  auto rep = orlicz::tail_bound_experiment(tc, alpha, beta, n, t_grid, replicas,
                                           seed, K, ctx.workers);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < rep.t_grid.size(); ++i)
    rows.push_back({rep.t_grid[i], rep.tail_nu[i], rep.tail_pi[i],
                    rep.bound_nu[i], rep.bound_pi[i], rep.tail_head[i],
                    rep.tail_blocks[i], rep.tail_tail_segment[i]});
  orlicz::write_csv(ctx.out_dir + "/tail.csv",
                    {"t", "tail_nu", "tail_pi", "bound_nu", "bound_pi",
                     "head", "blocks", "tail_segment"},
                    rows);

  bool ok = rep.decomposition_ok;
  for (std::size_t i = 0; i < rep.t_grid.size(); ++i)
    ok = ok && rep.tail_nu[i] <= rep.bound_nu[i] + 1e-12 &&
         rep.tail_pi[i] <= rep.bound_pi[i] + 1e-12;
  json body = orlicz::report_to_json(rep);
  body["pass"] = ok;
  write_report(ctx, "tail-bound", body);
  return ok ? 0 : 2;
}

int cmd_golden(Ctx& ctx) {
  auto table = orlicz::run_golden_examples();
  json results = json::array();
  std::vector<std::string> rows;
  bool all_pass = true;
  for (const auto& r : table) {
    results.push_back(orlicz::report_to_json(r));
    all_pass = all_pass && r.pass;
    rows.push_back(r.id + "," + fmt(r.expected_exponent) + "," +
                   fmt(r.fitted_exponent) + "," +
                   (r.has_log_power ? fmt(r.expected_log_power) : "") + "," +
                   (r.has_log_power ? fmt(r.fitted_log_power) : "") + "," +
                   (r.pass ? "1" : "0"));
  }
  write_rows_csv(ctx.out_dir + "/golden.csv",
                 "id,expected_exponent,fitted_exponent,expected_log_power,"
                 "fitted_log_power,pass",
                 rows);
  write_report(ctx, "golden-examples",
               {{"results", results}, {"pass", all_pass}});
  return all_pass ? 0 : 2;
}

int fail_json(const std::string& type, const std::string& message) {
  json err{{"error", {{"type", type}, {"message", message}}}};
  std::cout << err.dump() << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orlicz-norm bounds for regenerative additive functionals"};
  std::string command, config_path, out_dir = ".";
  std::uint64_t seed = 0;
  int workers = 0;
  bool seed_set = false, workers_set = false;
  app.add_option("command", command,
                 "compute-rho | compute-zeta | verify-bounds | "
                 "certify-counterexample | pitman-check | clt | lil | "
                 "berry-esseen | tail-bound | golden-examples")
      ->required();
  app.add_option("--config", config_path, "experiment config (JSON)");
  app.add_option("--seed", seed, "seed override")->trigger_on_parse()
      ->each([&seed_set](const std::string&) { seed_set = true; });
  app.add_option("--workers", workers, "worker cap")->trigger_on_parse()
      ->each([&workers_set](const std::string&) { workers_set = true; });
  app.add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    return fail_json("usage", e.what());
  }

  static const std::vector<std::string> kCommands{
      "compute-rho",    "compute-zeta", "verify-bounds",
      "certify-counterexample",         "pitman-check",
      "clt",            "lil",          "berry-esseen",
      "tail-bound",     "golden-examples"};
  if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end())
    return fail_json("usage", "unknown command '" + command + "'");

  Ctx ctx;
  ctx.out_dir = out_dir;
  try {
    std::filesystem::create_directories(out_dir);
    if (!config_path.empty()) {
      ctx.cfg = json::parse(orlicz::read_text(config_path));
      if (!ctx.cfg.is_object())
        throw ConfigError("config root must be an object");
    } else if (command != "golden-examples") {
      throw ConfigError("command '" + command + "' needs --config");
    }
    if (ctx.cfg.contains("command") &&
        ctx.cfg.at("command").get<std::string>() != command)
      throw ConfigError("config command '" +
                        ctx.cfg.at("command").get<std::string>() +
                        "' does not match '" + command + "'");

    if (seed_set) {
      ctx.has_seed = true;
      ctx.seed = seed;
    } else if (ctx.cfg.contains("seed")) {
      ctx.has_seed = true;
      ctx.seed = ctx.cfg.at("seed").get<std::uint64_t>();
    }
    if (workers_set) {
      ctx.workers = workers;
    } else if (const char* env = std::getenv("ORLICZ_REGEN_WORKERS")) {
      ctx.workers = std::atoi(env);
    } else {
      ctx.workers = int(ctx.cfg.value("workers", 0));
    }
    ctx.resolved["command"] = command;
    if (ctx.has_seed) ctx.resolved["seed"] = ctx.seed;
    ctx.resolved["workers"] = ctx.workers;

    if (command == "compute-rho" || command == "compute-zeta")
      return cmd_compute_curve(ctx, command);
    if (command == "verify-bounds") return cmd_verify_bounds(ctx);
    if (command == "certify-counterexample") return cmd_certify(ctx);
    if (command == "pitman-check") return cmd_pitman(ctx);
    if (command == "clt") return cmd_clt(ctx);
    if (command == "lil") return cmd_lil(ctx);
    if (command == "berry-esseen") return cmd_berry_esseen(ctx);
    if (command == "tail-bound") return cmd_tail_bound(ctx);
    return cmd_golden(ctx);
  } catch (const ConfigError& e) {
    return fail_json("config", e.what());
  } catch (const json::exception& e) {
    return fail_json("config", e.what());
  } catch (const std::invalid_argument& e) {
    return fail_json("config", e.what());
  } catch (const std::exception& e) {
    return fail_json("runtime", e.what());
  }
}
