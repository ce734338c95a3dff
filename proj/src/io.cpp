#include "orlicz/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace orlicz {

namespace {

json extreal_to_json(const ExtReal& v) {
  if (v.is_inf) return "inf";
  return v.value;
}

}  // namespace

json young_to_json(const YoungFn& f) {
  json j;
  switch (f.family()) {
    case YoungFn::Family::Power:
      j["family"] = "power";
      j["p"] = f.param_p();
      break;
    case YoungFn::Family::ExpPower:
      j["family"] = "exp_power";
      j["alpha"] = f.param_alpha();
      break;
    case YoungFn::Family::PowerLog:
      j["family"] = "power_log";
      j["p"] = f.param_p();
      j["c"] = f.param_c();
      break;
    case YoungFn::Family::Linear:
      j["family"] = "linear";
      break;
    default:
      throw std::invalid_argument("only closed-family functions serialize: " +
                                  f.describe());
  }
  if (f.scale_a() != 1.0) j["scale_a"] = f.scale_a();
  if (f.scale_b() != 1.0) j["scale_b"] = f.scale_b();
  return j;
}

YoungFn young_from_json(const json& j) {
  std::string family = j.at("family").get<std::string>();
  YoungFn f = YoungFn::linear();
  if (family == "power")
    f = YoungFn::power(j.at("p").get<double>());
  else if (family == "exp_power")
    f = YoungFn::exp_power(j.at("alpha").get<double>());
  else if (family == "power_log")
    f = YoungFn::power_log(j.at("p").get<double>(), j.at("c").get<double>());
  else if (family != "linear")
    throw std::invalid_argument("unknown function family: " + family);
  double a = j.value("scale_a", 1.0), b = j.value("scale_b", 1.0);
  if (a != 1.0 || b != 1.0) f = f.scaled(a, b);
  return f;
}

json spec_to_json(const TowerChainSpec& spec) {
  json atoms = json::array();
  for (const auto& a : spec.atoms)
    atoms.push_back({{"label", a.label},
                     {"alpha", a.alpha},
                     {"f", a.f_tilde},
                     {"h", a.h}});
  return {{"atoms", atoms}};
}

TowerChainSpec spec_from_json(const json& j) {
  TowerChainSpec spec;
  if (j.contains("geometric")) {
    const auto& g = j.at("geometric");
    double r = g.at("ratio").get<double>();
    int hmax = g.at("hmax").get<int>();
    std::string fkind = g.value("f", "alternating");
    double z = 0.0;
    for (int n = 1; n <= hmax; ++n) z += std::pow(r, n);
    for (int n = 1; n <= hmax; ++n) {
      double f;
      if (fkind == "alternating")
        f = n % 2 ? 1.0 : -1.0;
      else if (fkind == "height")
        f = double(n);
      else if (fkind == "height_squared")
        f = double(n) * n;
      else if (fkind == "zero")
        f = 0.0;
      else
        throw std::invalid_argument("unknown f kind: " + fkind);
      spec.atoms.push_back({"g" + std::to_string(n), std::pow(r, n) / z, f,
                            n});
    }
    return spec;
  }
  for (const auto& a : j.at("atoms"))
    spec.atoms.push_back({a.at("label").get<std::string>(),
                          a.at("alpha").get<double>(),
                          a.at("f").get<double>(),
                          a.at("h").get<std::int64_t>()});
  return spec;
}

json report_to_json(const BoundReport& r) {
  json j{{"theorem", r.theorem_id},
         {"lhs", extreal_to_json(r.lhs)},
         {"rhs", extreal_to_json(r.rhs)},
         {"tau_norm", extreal_to_json(r.tau_norm)},
         {"f_norm", extreal_to_json(r.f_norm)},
         {"m", r.m},
         {"delta", r.delta},
         {"pi_C", r.pi_C},
         {"method", r.method}};
  if (r.ratio_defined) j["ratio"] = r.ratio;
  if (r.method == "monte_carlo") {
    j["mc_n"] = r.mc_n;
    j["mc_stderr"] = r.mc_stderr;
  }
  return j;
}

json report_to_json(const MomentCheck& r) {
  return {{"estimate", r.estimate},
          {"exact", r.exact},
          {"std_error", r.std_error},
          {"z", r.z},
          {"n", r.n}};
}

json report_to_json(const CltReport& r) {
  return {{"n_values", r.n_values},
          {"ks_distance", r.ks_distance},
          {"sigma_f_sq", r.sigma_f_sq},
          {"sigma_estimate_sq", r.sigma_estimate_sq},
          {"cross_term", r.cross_term},
          {"cross_term_se", r.cross_term_se},
          {"degenerate", r.degenerate}};
}

json report_to_json(const LilReport& r) {
  return {{"sigma_f", r.sigma_f},
          {"q95", r.q95},
          {"replicas", r.replica_max.size()},
          {"degenerate", r.degenerate}};
}

json report_to_json(const BerryEsseenReport& r) {
  return {{"n_values", r.n_values},
          {"delta_n", r.delta_n},
          {"slope", r.slope},
          {"sigma_f", r.sigma_f},
          {"f_norm", r.f_norm},
          {"degenerate", r.degenerate}};
}

json report_to_json(const TailReport& r) {
  return {{"alpha", r.alpha},
          {"beta", r.beta},
          {"gamma", r.gamma},
          {"tau_norm", r.tau_norm},
          {"f_norm", r.f_norm},
          {"es2", r.es2},
          {"K", r.K},
          {"t_grid", r.t_grid},
          {"tail_nu", r.tail_nu},
          {"tail_pi", r.tail_pi},
          {"bound_nu", r.bound_nu},
          {"bound_pi", r.bound_pi},
          {"truncation_level", r.truncation_level},
          {"decomposition_ok", r.decomposition_ok}};
}

json report_to_json(const WeakOptResult& r) {
  json j{{"refuted", r.refuted}, {"note", r.note}};
  if (r.refuted) {
    j["x"] = r.x;
    j["t"] = r.t;
    j["p"] = r.p;
    j["C"] = r.C;
    j["R"] = r.R;
    j["spec"] = spec_to_json(r.spec);
  }
  return j;
}

json report_to_json(const GoldenFitResult& r) {
  json j{{"id", r.id},
         {"formula", r.formula},
         {"stretched", r.stretched},
         {"expected_exponent", r.expected_exponent},
         {"fitted_exponent", r.fitted_exponent},
         {"pass", r.pass}};
  if (r.has_log_power) {
    j["expected_log_power"] = r.expected_log_power;
    j["fitted_log_power"] = r.fitted_log_power;
  }
  return j;
}

json report_to_json(const DivergenceCertificate& r) {
  return {{"n_terms", r.n_terms},
          {"partial_sum", r.partial_sum},
          {"exceeded", r.exceeded}};
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << "\n";
  out.precision(17);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << row[i];
    out << "\n";
  }
}

void write_trace_csv(const std::string& path, const RegenTrace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "step,label,level,mark,block\n";
  std::size_t block = 0;
  for (std::size_t k = 0; k < trace.states.size(); ++k) {
    long b = block < trace.tau.size() ? long(block) : -1;
    out << k << "," << trace.states[k].label << "," << trace.states[k].level
        << "," << int(trace.marks[k]) << "," << b << "\n";
    if (trace.marks[k]) ++block;
  }
}

void write_curve_csv(const std::string& path, const GenYoungFn& f, double lo,
                     double hi, int n) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "x,value\n";
  out.precision(17);
  double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i) {
    double x = std::exp(llo + (lhi - llo) * i / (n - 1));
    ExtReal v = f(x);
    out << x << ",";
    if (v.is_inf)
      out << "inf";
    else
      out << v.value;
    out << "\n";
  }
}

}  // namespace orlicz
