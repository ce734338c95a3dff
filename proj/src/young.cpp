#include "orlicz/young.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace orlicz {

namespace {

constexpr double kInfThreshold = 1e300;

double safe_log(double x) { return std::log(x); }

// Monotone bisection for inf{x : eval(x) >= y} with eval nondecreasing.
double invert_increasing(const std::function<double(double)>& eval, double y,
                         double hi_cap = 1e306) {
  if (y <= 0.0) return 0.0;
  double hi = 1.0;
  while (eval(hi) < y) {
    hi *= 4.0;
    if (hi > hi_cap) throw std::range_error("inverse: value out of range");
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-14 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    if (eval(mid) >= y) hi = mid; else lo = mid;
  }
  return hi;
}

struct SupOut {
  ExtReal value;
  double argmax = 0.0;
};

// Supremum of obj over [lo, inf) scanned on a log grid, expanded to the right
// while the objective keeps growing, then refined by golden section around
// the grid argmax. NaN is treated as -inf. Values past 1e300 (or an
// unbounded right tail) give the infinity marker.
SupOut sup_scan(const std::function<double(double)>& obj, double lo = 1e-8,
                double hi = 1e8, int n = 400) {
  auto val = [&](double y) {
    double v = obj(y);
    return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
  };

  double best_y = lo;
  double best_v = -std::numeric_limits<double>::infinity();
  double cur_lo = lo, cur_hi = hi;
  int cur_n = n;
  double prev_y = lo, next_y = hi;  // neighbors of the argmax
  for (int round = 0; round < 40; ++round) {
    double llo = safe_log(cur_lo), lhi = safe_log(cur_hi);
    int best_i = -1;
    for (int i = 0; i < cur_n; ++i) {
      double y = std::exp(llo + (lhi - llo) * i / (cur_n - 1));
      double v = val(y);
      if (std::isinf(v) && v > 0) return {ExtReal::infinity(), y};
      if (v > best_v) {
        best_v = v;
        best_y = y;
        best_i = i;
      }
    }
    bool at_edge = best_i == cur_n - 1;
    if (!at_edge) {
      if (best_i >= 0) {
        double step = (lhi - llo) / (cur_n - 1);
        prev_y = std::exp(safe_log(best_y) - step);
        next_y = std::exp(safe_log(best_y) + step);
      }
      break;
    }
    // objective still growing at the right edge: expand
    if (cur_hi > 1e303) return {ExtReal::infinity(), cur_hi};
    double step = (lhi - llo) / (cur_n - 1);
    prev_y = std::exp(lhi - step);
    cur_lo = cur_hi;
    cur_hi = cur_hi * 1e4;
    cur_n = std::max(64, n / 4);
    next_y = cur_hi;
  }

  // golden section on log scale
  const double gr = 0.6180339887498949;
  double a = safe_log(std::max(prev_y, 1e-300));
  double b = safe_log(next_y);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = val(std::exp(x1)), f2 = val(std::exp(x2));
  for (int it = 0; it < 90 && (b - a) > 1e-10; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = val(std::exp(x2));
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = val(std::exp(x1));
    }
  }
  double y = std::exp(0.5 * (a + b));
  double v = std::max(val(y), best_v);
  if (v > kInfThreshold || (std::isinf(v) && v > 0)) return {ExtReal::infinity(), y};
  if (v < 0.0) v = 0.0;  // sup over y includes the y->0 limit, which is 0
  return {ExtReal(v), y};
}

// Smallest chord-through-origin slope of a convex-beyond function: finds
// x_t minimizing raw(x)/x. Returns (x_t, slope).
std::pair<double, double> origin_tangent(const std::function<double(double)>& raw) {
  auto s = sup_scan([&](double x) { return -(raw(x) / x); }, 1e-8, 1e8, 600);
  if (s.value.is_inf)
    throw std::invalid_argument("function has no linear minorant through 0");
  return {s.argmax, raw(s.argmax) / s.argmax};
}

double norm_q(double x) { return x <= 1.0 ? x * x : 2.0 * x - 1.0; }

}  // namespace

// ---------------------------------------------------------------------------
// YoungFn

struct YoungFn::Impl {
  Family family = Family::Linear;
  double p = 1.0;      // Power / PowerLog exponent
  double alpha = 1.0;  // ExpPower exponent
  double c = 0.0;      // PowerLog log power
  double scale_a = 1.0, scale_b = 1.0;
  std::optional<std::pair<double, double>> patch;  // (x_t, slope) on raw scale
  std::vector<std::pair<double, double>> knots;
  std::shared_ptr<const Impl> inner;  // NormShift
  double inner_at_1 = 1.0;

  double raw(double x) const {
    switch (family) {
      case Family::Power:
        return std::pow(x, p);
      case Family::ExpPower: {
        if (patch && x < patch->first) return patch->second * x;
        return std::expm1(std::pow(x, alpha));
      }
      case Family::PowerLog: {
        if (patch && x < patch->first) return patch->second * x;
        return std::pow(x, p) * std::pow(std::log(std::exp(1.0) + x), c);
      }
      case Family::Linear:
        return x;
      case Family::Tabulated:
        return eval_tab(x);
      case Family::NormShift:
        return std::max(norm_q(x),
                        inner_eval(x <= 1.0 ? 0.0 : x - 1.0) / inner_at_1);
    }
    return 0.0;
  }

  double inner_eval(double x) const {
    return inner->scale_a * inner->raw(inner->scale_b * x);
  }

  double eval_tab(double x) const {
    if (x <= 0.0) return 0.0;
    const auto& k = knots;
    auto interp = [&](const std::pair<double, double>& a,
                      const std::pair<double, double>& b, double xx) {
      if (a.first > 0 && a.second > 0 && b.second > 0) {
        double t = (std::log(xx) - std::log(a.first)) /
                   (std::log(b.first) - std::log(a.first));
        return std::exp(std::log(a.second) +
                        t * (std::log(b.second) - std::log(a.second)));
      }
      double t = (xx - a.first) / (b.first - a.first);
      return a.second + t * (b.second - a.second);
    };
    if (x <= k.front().first) {
      if (k.size() >= 2 && k[0].first > 0 && k[0].second > 0 && k[1].second > 0)
        return interp(k[0], k[1], x);  // log-log extrapolation keeps f(0)=0
      return k.front().second * x / k.front().first;
    }
    if (x >= k.back().first) {
      if (k.size() >= 2) return interp(k[k.size() - 2], k.back(), x);
      return k.back().second * x / k.back().first;
    }
    auto it = std::lower_bound(k.begin(), k.end(), x,
                               [](const auto& kn, double xx) { return kn.first < xx; });
    return interp(*(it - 1), *it, x);
  }

  double eval(double x) const {
    if (x < 0.0) throw std::domain_error("Young function: negative argument");
    if (x == 0.0) return 0.0;
    return scale_a * raw(scale_b * x);
  }

  // Closed-form inverse where available, nullopt otherwise.
  std::optional<double> inverse_closed(double y) const {
    if (scale_a != 1.0 || scale_b != 1.0) return std::nullopt;
    switch (family) {
      case Family::Power:
        return std::pow(y, 1.0 / p);
      case Family::ExpPower:
        if (patch && y < patch->second * patch->first) return y / patch->second;
        return std::pow(std::log1p(y), 1.0 / alpha);
      case Family::Linear:
        return y;
      default:
        return std::nullopt;
    }
  }
};

YoungFn YoungFn::power(double p) {
  if (p < 1.0) throw std::invalid_argument("power: p must be >= 1");
  auto impl = std::make_shared<Impl>();
  impl->family = Family::Power;
  impl->p = p;
  return YoungFn(impl);
}

YoungFn YoungFn::exp_power(double alpha) {
  if (alpha <= 0.0) throw std::invalid_argument("exp_power: alpha must be > 0");
  auto impl = std::make_shared<Impl>();
  impl->family = Family::ExpPower;
  impl->alpha = alpha;
  if (alpha < 1.0) {
    auto raw = [alpha](double x) { return std::expm1(std::pow(x, alpha)); };
    impl->patch = origin_tangent(raw);
  }
  return YoungFn(impl);
}

YoungFn YoungFn::power_log(double p, double c) {
  if (p < 1.0) throw std::invalid_argument("power_log: p must be >= 1");
  auto impl = std::make_shared<Impl>();
  impl->family = Family::PowerLog;
  impl->p = p;
  impl->c = c;
  if (c < 0.0) {
    if (p <= 1.0)
      throw std::invalid_argument("power_log: p must exceed 1 when c < 0");
    auto raw = [p, c](double x) {
      return std::pow(x, p) * std::pow(std::log(std::exp(1.0) + x), c);
    };
    impl->patch = origin_tangent(raw);
  }
  return YoungFn(impl);
}

YoungFn YoungFn::linear() {
  auto impl = std::make_shared<Impl>();
  impl->family = Family::Linear;
  return YoungFn(impl);
}

YoungFn YoungFn::tabulated(std::vector<std::pair<double, double>> knots) {
  if (knots.empty()) throw std::invalid_argument("tabulated: no knots");
  std::sort(knots.begin(), knots.end());
  for (size_t i = 0; i + 1 < knots.size(); ++i)
    if (knots[i].first == knots[i + 1].first)
      throw std::invalid_argument("tabulated: duplicate knot");
  auto impl = std::make_shared<Impl>();
  impl->family = Family::Tabulated;
  impl->knots = std::move(knots);
  return YoungFn(impl);
}

double YoungFn::operator()(double x) const { return impl_->eval(x); }

double YoungFn::inverse(double y) const {
  if (y < 0.0) throw std::domain_error("inverse: negative argument");
  if (y == 0.0) return 0.0;
  if (auto cf = impl_->inverse_closed(y)) return *cf;
  return invert_increasing([this](double x) { return impl_->eval(x); }, y);
}

YoungFn YoungFn::scaled(double a, double b) const {
  if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("scaled: factors must be > 0");
  auto impl = std::make_shared<Impl>(*impl_);
  impl->scale_a *= a;
  impl->scale_b *= b;
  return YoungFn(impl);
}

YoungFn::Family YoungFn::family() const { return impl_->family; }

std::optional<std::pair<double, double>> YoungFn::low_x_patch() const {
  return impl_->patch;
}

double YoungFn::param_p() const { return impl_->p; }
double YoungFn::param_alpha() const { return impl_->alpha; }
double YoungFn::param_c() const { return impl_->c; }
double YoungFn::scale_a() const { return impl_->scale_a; }
double YoungFn::scale_b() const { return impl_->scale_b; }

std::string YoungFn::describe() const {
  std::ostringstream os;
  switch (impl_->family) {
    case Family::Power: os << "power(" << impl_->p << ")"; break;
    case Family::ExpPower: os << "exp_power(" << impl_->alpha << ")"; break;
    case Family::PowerLog:
      os << "power_log(" << impl_->p << "," << impl_->c << ")";
      break;
    case Family::Linear: os << "linear"; break;
    case Family::Tabulated: os << "tabulated[" << impl_->knots.size() << "]"; break;
    case Family::NormShift: os << "normalized(...)"; break;
  }
  if (impl_->scale_a != 1.0 || impl_->scale_b != 1.0)
    os << "*scaled(" << impl_->scale_a << "," << impl_->scale_b << ")";
  if (impl_->patch) os << "+patch(x<" << impl_->patch->first << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// GenYoungFn

struct GenYoungFn::Impl {
  std::function<ExtReal(double)> eval;
  std::optional<double> ceiling;
  std::string desc;
  std::function<double(double)> inv;  // optional closed-form inverse
};

GenYoungFn GenYoungFn::from_young(const YoungFn& f) {
  auto impl = std::make_shared<Impl>();
  impl->eval = [f](double x) {
    double v = f(x);
    return std::isinf(v) || v > kInfThreshold ? ExtReal::infinity() : ExtReal(v);
  };
  impl->inv = [f](double y) { return f.inverse(y); };
  impl->desc = f.describe();
  return GenYoungFn(impl);
}

GenYoungFn GenYoungFn::from_eval(std::function<ExtReal(double)> eval,
                                 std::optional<double> finite_ceiling,
                                 std::string description) {
  auto impl = std::make_shared<Impl>();
  impl->eval = std::move(eval);
  impl->ceiling = finite_ceiling;
  impl->desc = std::move(description);
  return GenYoungFn(impl);
}

GenYoungFn GenYoungFn::tabulated(std::vector<std::pair<double, double>> knots,
                                 std::optional<double> finite_ceiling) {
  YoungFn tab = YoungFn::tabulated(std::move(knots));
  auto impl = std::make_shared<Impl>();
  double cap = finite_ceiling.value_or(std::numeric_limits<double>::infinity());
  impl->eval = [tab, cap](double x) {
    if (x > cap) return ExtReal::infinity();
    double v = tab(x);
    return v > kInfThreshold ? ExtReal::infinity() : ExtReal(v);
  };
  impl->ceiling = finite_ceiling;
  impl->desc = "tabulated";
  return GenYoungFn(impl);
}

ExtReal GenYoungFn::operator()(double x) const {
  if (x < 0.0) throw std::domain_error("GenYoungFn: negative argument");
  if (x == 0.0) return ExtReal(0.0);
  if (impl_->ceiling && x > *impl_->ceiling) return ExtReal::infinity();
  return impl_->eval(x);
}

double GenYoungFn::inverse(double y) const {
  if (y < 0.0) throw std::domain_error("inverse: negative argument");
  if (y == 0.0) return 0.0;
  if (impl_->inv) return impl_->inv(y);
  const auto& eval = impl_->eval;
  auto ge = [&](double x) {
    ExtReal v = eval(x);
    return v.is_inf || v.value >= y;
  };
  double hi = impl_->ceiling ? *impl_->ceiling * (1 + 1e-12) : 1.0;
  if (!impl_->ceiling) {
    while (!ge(hi)) {
      hi *= 4.0;
      if (hi > 1e306) throw std::range_error("inverse: value out of range");
    }
  } else if (!ge(hi)) {
    throw std::range_error("inverse: value exceeds sup of finite-ceiling function");
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-14 * std::max(hi, 1.0); ++it) {
    double mid = 0.5 * (lo + hi);
    if (ge(mid)) hi = mid; else lo = mid;
  }
  return hi;
}

std::optional<double> GenYoungFn::finite_ceiling() const { return impl_->ceiling; }
std::string GenYoungFn::describe() const { return impl_->desc; }

std::vector<std::pair<double, double>> GenYoungFn::tabulate(double lo, double hi,
                                                            int n) const {
  std::vector<std::pair<double, double>> out;
  out.reserve(n);
  double llo = safe_log(lo), lhi = safe_log(hi);
  for (int i = 0; i < n; ++i) {
    double x = std::exp(llo + (lhi - llo) * i / (n - 1));
    ExtReal v = (*this)(x);
    if (!v.finite()) break;
    out.emplace_back(x, v.value);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conjugation and the derived functions

namespace {

// Asymptotic slope if the function grows linearly; nullopt when superlinear.
std::optional<double> linear_growth_slope(const std::function<ExtReal(double)>& f) {
  double x1 = 1e10, x2 = 4e10;
  ExtReal v1 = f(x1), v2 = f(x2);
  if (!v1.finite() || !v2.finite()) return std::nullopt;
  double r1 = v1.value / x1, r2 = v2.value / x2;
  if (r2 <= r1 * (1.0 + 1e-7)) return r2;
  return std::nullopt;
}

GenYoungFn conjugate_numeric(const std::function<ExtReal(double)>& f,
                             const std::string& desc) {
  std::optional<double> ceiling = linear_growth_slope(f);
  auto eval = [f, ceiling](double y) -> ExtReal {
    if (ceiling && y > *ceiling * (1.0 + 1e-9)) return ExtReal::infinity();
    auto s = sup_scan([&, y](double x) {
      ExtReal v = f(x);
      if (!v.finite()) return -std::numeric_limits<double>::infinity();
      return x * y - v.value;
    });
    return s.value;
  };
  return GenYoungFn::from_eval(eval, ceiling, "conjugate(" + desc + ")");
}

}  // namespace

GenYoungFn conjugate(const YoungFn& f) {
  // closed forms for the exactly-solvable families
  if (f.family() == YoungFn::Family::Power && f.scale_a() == 1.0 &&
      f.scale_b() == 1.0) {
    double p = f.param_p();
    if (p == 1.0) {
      return GenYoungFn::from_eval(
          [](double y) { return y <= 1.0 ? ExtReal(0.0) : ExtReal::infinity(); },
          1.0, "conjugate(power(1))");
    }
    double q = p / (p - 1.0);
    double coef = (p - 1.0) * std::pow(p, -q);
    return GenYoungFn::from_eval(
        [coef, q](double y) {
          double v = coef * std::pow(y, q);
          return v > kInfThreshold ? ExtReal::infinity() : ExtReal(v);
        },
        std::nullopt, "conjugate(" + f.describe() + ")");
  }
  if (f.family() == YoungFn::Family::Linear && f.scale_a() == 1.0 &&
      f.scale_b() == 1.0) {
    return GenYoungFn::from_eval(
        [](double y) { return y <= 1.0 ? ExtReal(0.0) : ExtReal::infinity(); },
        1.0, "conjugate(linear)");
  }
  if (f.family() == YoungFn::Family::ExpPower && f.param_alpha() == 1.0 &&
      f.scale_a() == 1.0 && f.scale_b() == 1.0) {
    // conjugate of e^x - 1: y log y - y + 1 for y >= 1, else 0
    return GenYoungFn::from_eval(
        [](double y) {
          if (y <= 1.0) return ExtReal(0.0);
          double v = y * std::log(y) - y + 1.0;
          return v > kInfThreshold ? ExtReal::infinity() : ExtReal(v);
        },
        std::nullopt, "conjugate(exp_power(1))");
  }
  auto ev = [f](double x) {
    double v = f(x);
    return std::isinf(v) || v > kInfThreshold ? ExtReal::infinity() : ExtReal(v);
  };
  return conjugate_numeric(ev, f.describe());
}

GenYoungFn conjugate(const GenYoungFn& f) {
  return conjugate_numeric([f](double x) { return f(x); }, f.describe());
}

namespace {

void check_assumption_A(const YoungFn& psi) {
  double x = 1e-6;
  if (psi(x) / x > 0.5)
    throw std::invalid_argument(
        "psi violates Assumption (A): psi(x)/x does not vanish at 0 "
        "(normalize_assumption_A first)");
  if (psi(1.0) < 1.0 - 1e-12)
    throw std::invalid_argument("psi violates Assumption (A): psi(1) < 1");
}

void check_small_slope(const YoungFn& psi) {
  double x = 1e-6;
  if (psi(x) / x > 0.5)
    throw std::invalid_argument("precondition failed: lim_{x->0} psi(x)/x != 0");
}

}  // namespace

GenYoungFn rho_of(const YoungFn& phi, const YoungFn& psi) {
  check_assumption_A(psi);
  auto eval = [phi, psi](double x) -> ExtReal {
    if (x == 0.0) return ExtReal(0.0);
    auto s = sup_scan([&](double y) { return (phi(x * y) - psi(y)) / y; });
    return s.value;
  };
  return GenYoungFn::from_eval(eval, std::nullopt,
                               "rho(" + phi.describe() + "," + psi.describe() + ")");
}

GenYoungFn zeta_of(const YoungFn& phi, const YoungFn& psi) {
  check_small_slope(psi);
  auto eval = [phi, psi](double x) -> ExtReal {
    if (x == 0.0) return ExtReal(0.0);
    auto s = sup_scan([&](double y) { return phi(x * y) - psi(y) / y; });
    return s.value;
  };
  return GenYoungFn::from_eval(eval, std::nullopt,
                               "zeta(" + phi.describe() + "," + psi.describe() + ")");
}

GenYoungFn eta_nu(const YoungFn& phi, const YoungFn& psi) {
  GenYoungFn phi_star = conjugate(phi);
  GenYoungFn psi_star = conjugate(psi);
  auto eval = [phi_star, psi_star](double z) -> ExtReal {
    ExtReal v = phi_star(z);
    if (!v.finite()) return ExtReal::infinity();
    return ExtReal(psi_star.inverse(v.value));
  };
  return GenYoungFn::from_eval(eval, phi_star.finite_ceiling(),
                               "eta(" + phi.describe() + "," + psi.describe() + ")");
}

KappaResult kappa_of(const YoungFn& zeta, const YoungFn& psi) {
  auto psitilde = [psi](double x) { return x == 0.0 ? 0.0 : psi(x) / x; };
  // psi(x)/x must be increasing from 0 to infinity
  check_small_slope(psi);
  double prev = psitilde(1e-4);
  for (double x = 1e-3; x <= 1e6; x *= 10.0) {
    double cur = psitilde(x);
    if (std::isinf(cur) || cur > kInfThreshold) break;  // escaped to infinity, fine
    if (cur <= prev)
      throw std::invalid_argument("kappa_of: psi(x)/x is not strictly increasing");
    prev = cur;
  }
  auto psitilde_inv = [psitilde](double t) {
    return invert_increasing(psitilde, t);
  };
  auto kinv = [zeta, psitilde_inv](double t) {
    if (t == 0.0) return 0.0;
    return zeta.inverse(t) * psitilde_inv(t);
  };
  auto kappa_eval = [kinv](double x) -> ExtReal {
    if (x == 0.0) return ExtReal(0.0);
    return ExtReal(invert_increasing(kinv, x));
  };
  auto kinv_eval = [kinv](double x) -> ExtReal {
    if (x == 0.0) return ExtReal(0.0);
    return ExtReal(kinv(x));
  };
  auto vartheta_eval = [kinv, psitilde](double x) -> ExtReal {
    if (x == 0.0) return ExtReal(0.0);
    return ExtReal(kinv(psitilde(x)));
  };
  std::string tag = "(" + zeta.describe() + "," + psi.describe() + ")";
  return KappaResult{
      GenYoungFn::from_eval(kappa_eval, std::nullopt, "kappa" + tag),
      GenYoungFn::from_eval(kinv_eval, std::nullopt, "kappa_inv" + tag),
      GenYoungFn::from_eval(vartheta_eval, std::nullopt, "vartheta" + tag)};
}

GenYoungFn tilde_phi(const YoungFn& psi, const YoungFn& rho) {
  GenYoungFn psi_star = conjugate(psi);
  GenYoungFn rho_star = conjugate(rho);
  auto composed = [psi_star, rho_star](double x) -> ExtReal {
    ExtReal inner = rho_star(x);
    if (!inner.finite()) return ExtReal::infinity();
    return psi_star(inner.value);
  };
  GenYoungFn result = conjugate_numeric(
      composed, "compose(" + psi_star.describe() + "," + rho_star.describe() + ")");
  return result;
}

SupPoint rho_sup_at(const YoungFn& phi, const YoungFn& psi, double x) {
  if (x == 0.0) return {ExtReal(0.0), 0.0};
  auto s = sup_scan([&](double y) { return (phi(x * y) - psi(y)) / y; });
  return {s.value, s.argmax};
}

SupPoint zeta_sup_at(const YoungFn& phi, const YoungFn& psi, double x) {
  if (x == 0.0) return {ExtReal(0.0), 0.0};
  auto s = sup_scan([&](double y) { return phi(x * y) - psi(y) / y; });
  return {s.value, s.argmax};
}

// ---------------------------------------------------------------------------
// Domination

DominationWitness dominates(const GenYoungFn& rho1, const GenYoungFn& rho2,
                            const GridSpec& grid) {
  std::vector<int> ks;
  for (int k = -10; k <= 20; ++k) ks.push_back(k);
  std::sort(ks.begin(), ks.end(), [](int a, int b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
  });

  std::vector<double> xs(grid.n);
  double llo = safe_log(grid.lo), lhi = safe_log(grid.hi);
  for (int i = 0; i < grid.n; ++i)
    xs[i] = std::exp(llo + (lhi - llo) * i / (grid.n - 1));

  std::vector<ExtReal> lhs(grid.n);
  for (int i = 0; i < grid.n; ++i) lhs[i] = rho1(xs[i]);

  // log-log slope over the top quarter of the grid; the pointwise check on a
  // bounded grid is otherwise satisfiable by huge constants even when the
  // ratio diverges. nullopt when the tail has infinities or too few points.
  auto tail_slope = [&](const std::vector<ExtReal>& vals) -> std::optional<double> {
    std::vector<double> lx, lv;
    for (int i = 3 * grid.n / 4; i < grid.n; ++i) {
      if (!vals[i].finite()) return std::nullopt;
      if (vals[i].value <= 0.0) continue;
      lx.push_back(safe_log(xs[i]));
      lv.push_back(safe_log(vals[i].value));
    }
    if (lx.size() < 2) return std::nullopt;
    return fit_slope(lx, lv);
  };
  std::optional<double> slope1 = tail_slope(lhs);

  DominationWitness w;
  w.search_budget = "C1,C2 in 2^[-10..20], x0 doubling over grid [" +
                    std::to_string(grid.lo) + "," + std::to_string(grid.hi) + "]";
  double best_violation = std::numeric_limits<double>::infinity();
  double largest_x0 = grid.lo;

  for (int k2 : ks) {
    double C2 = std::ldexp(1.0, k2);
    std::vector<ExtReal> rhs_base(grid.n);
    for (int i = 0; i < grid.n; ++i) rhs_base[i] = rho2(C2 * xs[i]);
    std::optional<double> slope2 = tail_slope(rhs_base);
    // a finite lhs growing strictly faster than a finite rhs cannot be
    // dominated, whatever the constants
    if (slope1 && slope2 && *slope1 > *slope2 + 0.05) {
      double v = std::pow(xs.back(), *slope1 - *slope2);
      if (v < best_violation) best_violation = v;
      continue;
    }
    for (int k1 : ks) {
      double C1 = std::ldexp(1.0, k1);
      for (double x0 = grid.lo; x0 <= grid.hi; x0 *= 2.0) {
        bool ok = true;
        double max_ratio = 0.0;
        for (int i = 0; i < grid.n; ++i) {
          if (xs[i] < x0) continue;
          const ExtReal& l = lhs[i];
          ExtReal r = C1 * rhs_base[i];
          if (r.is_inf) continue;
          if (l.is_inf) {
            ok = false;
            max_ratio = std::numeric_limits<double>::infinity();
            break;
          }
          double ratio = r.value > 0 ? l.value / r.value
                                     : (l.value > 0 ? 1e308 : 0.0);
          if (ratio > max_ratio) max_ratio = ratio;
          if (ratio > 1.0) ok = false;
        }
        if (ok) {
          w.holds = true;
          w.C1 = C1;
          w.C2 = C2;
          w.x0 = x0;
          return w;
        }
        if (max_ratio < best_violation) best_violation = max_ratio;
        largest_x0 = std::max(largest_x0, x0);
      }
    }
  }
  w.holds = false;
  w.max_violation = best_violation;
  w.x0 = largest_x0;
  return w;
}

DominationWitness dominates(const YoungFn& rho1, const YoungFn& rho2,
                            const GridSpec& grid) {
  return dominates(GenYoungFn::from_young(rho1), GenYoungFn::from_young(rho2), grid);
}

// ---------------------------------------------------------------------------
// Assumption (A) normalization

NormalizeResult normalize_assumption_A(const YoungFn& psi) {
  double ratio0 = psi(1e-6) / 1e-6;
  double at1 = psi(1.0);
  if (ratio0 <= 0.5 && at1 >= 1.0) return NormalizeResult{psi, false, false, false};
  if (ratio0 <= 0.5) {
    // superlinear at the origin, just rescale so psi(1) >= 1
    NormalizeResult r{psi.scaled(1.0 / at1), true, true, false, {}, {}};
    return r;
  }
  // shift patch: max of a fixed superlinear floor and psi((x-1)+)/psi(1)
  auto impl = std::make_shared<YoungFn::Impl>();
  impl->family = YoungFn::Family::NormShift;
  impl->inner = psi.impl_;
  impl->inner_at_1 = psi(1.0);
  YoungFn patched{impl};
  NormalizeResult r{patched, true, false, true, {}, {}};
  GridSpec g;
  r.witness_fwd = dominates(psi, patched, g);
  r.witness_rev = dominates(patched, psi, g);
  return r;
}

// ---------------------------------------------------------------------------
// Closed-form example lookup

ClosedFormCase closed_form_lookup(const std::string& case_id, double a, double b) {
  ClosedFormCase cf;
  cf.id = case_id;
  if (case_id == "nu-1") {
    if (!(b > a && a >= 1.0)) throw std::invalid_argument("nu-1 needs r > p >= 1");
    cf.exponent = a * (b - 1.0) / (b - a);
    cf.formula = "rho ~ x^{p(r-1)/(r-p)}";
  } else if (case_id == "nu-2") {
    if (!(b > a)) throw std::invalid_argument("nu-2 needs beta > alpha");
    cf.stretched = true;
    cf.exponent = a * b / (b - a);
    cf.formula = "rho ~ exp(x^{ab/(b-a)})-1";
  } else if (case_id == "nu-3") {
    cf.exponent = a;
    cf.log_power = (a - 1.0) / b;
    cf.formula = "rho ~ x^p log^{(p-1)/beta} x";
  } else if (case_id == "nu-4") {  // a = r (psi), b = p (rho)
    cf.exponent = a * b / (a + b - 1.0);
    cf.formula = "phi~ ~ x^{rp/(r+p-1)}";
  } else if (case_id == "nu-5") {  // a = beta, b = alpha
    cf.stretched = true;
    cf.exponent = a * b / (a + b);
    cf.formula = "phi~ ~ exp(x^{ab/(a+b)})-1";
  } else if (case_id == "nu-6") {  // a = beta, b = p
    cf.exponent = b;
    cf.log_power = -(b - 1.0) / a;
    cf.formula = "phi~ ~ x^p / log^{(p-1)/beta} x";
  } else if (case_id == "pi-1") {
    if (!(b > a + 1.0)) throw std::invalid_argument("pi-1 needs r > p+1");
    cf.exponent = a * (b - 1.0) / (b - a - 1.0);
    cf.formula = "zeta ~ x^{p(r-1)/(r-p-1)}";
  } else if (case_id == "pi-2") {
    if (!(b > a)) throw std::invalid_argument("pi-2 needs beta > alpha");
    cf.stretched = true;
    cf.exponent = a * b / (b - a);
    cf.formula = "zeta ~ exp(x^{ab/(b-a)})-1";
  } else if (case_id == "pi-3") {
    cf.exponent = a;
    cf.log_power = a / b;
    cf.formula = "zeta ~ x^p log^{p/beta} x";
  } else if (case_id == "pi-4") {  // a = r (psi), b = p (zeta)
    cf.exponent = (a - 1.0) * b / (a + b - 1.0);
    cf.formula = "kappa ~ x^{(r-1)p/(r+p-1)}";
  } else if (case_id == "pi-5") {  // a = beta, b = alpha
    cf.stretched = true;
    cf.exponent = a * b / (a + b);
    cf.formula = "kappa ~ exp(x^{ab/(a+b)})-1";
  } else if (case_id == "pi-6") {  // a = beta, b = p
    cf.exponent = b;
    cf.log_power = -b / a;
    cf.formula = "kappa ~ x^p / log^{p/beta} x";
  } else {
    throw std::invalid_argument("unknown closed-form case: " + case_id);
  }
  return cf;
}

// ---------------------------------------------------------------------------
// Slope fitting

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("fit_slope: need matching vectors, size >= 2");
  double n = xs.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

std::pair<std::vector<double>, std::vector<double>> sample_log(
    const GenYoungFn& f, double lo, double hi, int n) {
  std::vector<double> lx, lv;
  double llo = safe_log(lo), lhi = safe_log(hi);
  for (int i = 0; i < n; ++i) {
    double x = std::exp(llo + (lhi - llo) * i / (n - 1));
    ExtReal v = f(x);
    if (!v.finite() || v.value <= 0.0) continue;
    lx.push_back(std::log(x));
    lv.push_back(std::log(v.value));
  }
  return {lx, lv};
}

}  // namespace

double fitted_exponent(const GenYoungFn& f, double lo, double hi, int n) {
  auto [lx, lv] = sample_log(f, lo, hi, n);
  return fit_slope(lx, lv);
}

namespace {

// Least squares y ~ X beta for a small fixed number of regressors, via the
// normal equations with Gaussian elimination.
std::vector<double> lsq(const std::vector<std::vector<double>>& cols,
                        const std::vector<double>& y, double* sse = nullptr) {
  size_t k = cols.size(), m = y.size();
  std::vector<std::vector<double>> A(k, std::vector<double>(k + 1, 0.0));
  for (size_t a = 0; a < k; ++a) {
    for (size_t b = 0; b < k; ++b)
      for (size_t i = 0; i < m; ++i) A[a][b] += cols[a][i] * cols[b][i];
    for (size_t i = 0; i < m; ++i) A[a][k] += cols[a][i] * y[i];
  }
  for (size_t c = 0; c < k; ++c) {
    size_t piv = c;
    for (size_t r = c + 1; r < k; ++r)
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
    std::swap(A[c], A[piv]);
    for (size_t r = 0; r < k; ++r) {
      if (r == c || A[c][c] == 0.0) continue;
      double fac = A[r][c] / A[c][c];
      for (size_t cc = c; cc <= k; ++cc) A[r][cc] -= fac * A[c][cc];
    }
  }
  std::vector<double> beta(k, 0.0);
  for (size_t c = 0; c < k; ++c)
    if (A[c][c] != 0.0) beta[c] = A[c][k] / A[c][c];
  if (sse) {
    *sse = 0.0;
    for (size_t i = 0; i < m; ++i) {
      double pred = 0.0;
      for (size_t c = 0; c < k; ++c) pred += beta[c] * cols[c][i];
      double r = y[i] - pred;
      *sse += r * r;
    }
  }
  return beta;
}

}  // namespace

double fitted_log_power(const GenYoungFn& f, double p, double lo, double hi, int n) {
  auto [lx, lv] = sample_log(f, lo, hi, n);
  if (lx.size() < 3) throw std::invalid_argument("fitted_log_power: too few points");
  std::vector<double> resid(lx.size()), ones(lx.size(), 1.0);
  for (size_t i = 0; i < lx.size(); ++i) resid[i] = lv[i] - p * lx[i];
  // profile over the shift B in s * log(log x + B); a plain log-log fit is
  // badly biased by constants hiding inside the logarithm
  double best_sse = std::numeric_limits<double>::infinity(), best_s = 0.0;
  double bmin = -lx.front() + 0.15;
  for (int j = 0; j <= 600; ++j) {
    double B = bmin + (20.0 - bmin) * j / 600.0;
    std::vector<double> shifted(lx.size());
    for (size_t i = 0; i < lx.size(); ++i) shifted[i] = std::log(lx[i] + B);
    double sse;
    auto beta = lsq({ones, shifted}, resid, &sse);
    if (sse < best_sse) {
      best_sse = sse;
      best_s = beta[1];
    }
  }
  return best_s;
}

PowerLogFit fit_power_log(const GenYoungFn& f, double lo, double hi, int n) {
  auto [lx, lv] = sample_log(f, lo, hi, n);
  if (lx.size() < 4) throw std::invalid_argument("fit_power_log: too few points");
  std::vector<double> ones(lx.size(), 1.0);
  PowerLogFit out{0.0, 0.0, 0.0};
  double best_sse = std::numeric_limits<double>::infinity();
  double bmin = -lx.front() + 0.15;
  for (int j = 0; j <= 600; ++j) {
    double B = bmin + (20.0 - bmin) * j / 600.0;
    std::vector<double> shifted(lx.size());
    for (size_t i = 0; i < lx.size(); ++i) shifted[i] = std::log(lx[i] + B);
    double sse;
    auto beta = lsq({ones, lx, shifted}, lv, &sse);
    if (sse < best_sse) {
      best_sse = sse;
      out.exponent = beta[1];
      out.log_power = beta[2];
      out.shift = B;
    }
  }
  return out;
}

double fitted_exp_exponent(const GenYoungFn& f, double lo, double hi, int n) {
  std::vector<double> xs, lx, llv;
  double llo = safe_log(lo), lhi = safe_log(hi);
  for (int i = 0; i < n; ++i) {
    double x = std::exp(llo + (lhi - llo) * i / (n - 1));
    ExtReal v = f(x);
    if (!v.finite() || v.value <= 0.0) continue;
    double lv = std::log1p(v.value);
    if (lv <= 0.0) continue;
    xs.push_back(x);
    lx.push_back(std::log(x));
    llv.push_back(lv);  // on the log1p scale, model c x^gamma + a + b log x
  }
  if (xs.size() < 4)
    throw std::invalid_argument("fitted_exp_exponent: too few finite points");
  std::vector<double> ones(xs.size(), 1.0);
  // profile over gamma; the log x regressor absorbs polynomial prefactors
  // that otherwise bias a straight log-log-log slope
  auto sse_at = [&](double g) {
    std::vector<double> pw(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) pw[i] = std::pow(xs[i], g);
    double sse;
    lsq({ones, lx, pw}, llv, &sse);
    return sse;
  };
  double best_g = 0.05, best_sse = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= 400; ++j) {
    double g = 0.05 * std::pow(4.0 / 0.05, j / 400.0);  // log grid to 4
    double s = sse_at(g);
    if (s < best_sse) {
      best_sse = s;
      best_g = g;
    }
  }
  // golden refinement
  double a = best_g / 1.02, b = best_g * 1.02;
  for (int it = 0; it < 40; ++it) {
    double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
    if (sse_at(m1) < sse_at(m2)) b = m2; else a = m1;
  }
  return 0.5 * (a + b);
}

}  // namespace orlicz
