#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/extreal.hpp"

namespace orlicz {

class GenYoungFn;
struct NormalizeResult;

// A Young function: strictly increasing, convex, value 0 at 0. Families that
// are only nominally convex (ExpPower with alpha < 1, PowerLog with negative
// log power) are stored with an explicit linear patch below a tangent point,
// so the stored function is a genuine Young function equivalent to the
// nominal formula.
class YoungFn {
 public:
  enum class Family { Power, ExpPower, PowerLog, Linear, Tabulated, NormShift };

  static YoungFn power(double p);
  static YoungFn exp_power(double alpha);
  static YoungFn power_log(double p, double c);
  static YoungFn linear();
  static YoungFn tabulated(std::vector<std::pair<double, double>> knots);

  double operator()(double x) const;
  // Generalized inverse inf{x : f(x) >= y}.
  double inverse(double y) const;
  // x -> a * f(b x)
  YoungFn scaled(double a, double b = 1.0) const;

  Family family() const;
  // Linear patch applied on [0, x_patch], if any: (x_patch, slope).
  std::optional<std::pair<double, double>> low_x_patch() const;
  std::string describe() const;

  // Family parameters for serialization; meaning depends on family().
  double param_p() const;
  double param_alpha() const;
  double param_c() const;
  double scale_a() const;
  double scale_b() const;

 private:
  struct Impl;
  explicit YoungFn(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
  friend class GenYoungFn;
  friend GenYoungFn conjugate(const YoungFn&);
  friend struct NormalizeResult;
  friend NormalizeResult normalize_assumption_A(const YoungFn&);
};

// Generalized Young function: nondecreasing, convex, 0 at 0, may take the
// value +infinity past a finite ceiling.
class GenYoungFn {
 public:
  static GenYoungFn from_young(const YoungFn& f);
  static GenYoungFn from_eval(std::function<ExtReal(double)> eval,
                              std::optional<double> finite_ceiling,
                              std::string description);
  static GenYoungFn tabulated(std::vector<std::pair<double, double>> knots,
                              std::optional<double> finite_ceiling = {});

  ExtReal operator()(double x) const;
  // Generalized inverse inf{x : f(x) >= y}. Throws std::range_error when y
  // exceeds the supremum of a finite-ceiling function.
  double inverse(double y) const;
  std::optional<double> finite_ceiling() const;
  std::string describe() const;

  // Log-spaced sampling of the finite part, for CSV export and fits.
  std::vector<std::pair<double, double>> tabulate(double lo, double hi,
                                                  int n = 2048) const;

 private:
  struct Impl;
  explicit GenYoungFn(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

struct GridSpec {
  double lo = 1.0;
  double hi = 1048576.0;  // 2^20
  int n = 200;
};

struct DominationWitness {
  bool holds = false;
  double C1 = 1.0;
  double C2 = 1.0;
  double x0 = 0.0;
  double max_violation = 0.0;  // smallest max ratio seen when holds == false
  std::string search_budget;
};

struct NormalizeResult {
  YoungFn fn;
  bool changed = false;
  bool rescaled = false;
  bool patched = false;
  // Equivalence witnesses (original vs normalized), filled when patched.
  std::optional<DominationWitness> witness_fwd;
  std::optional<DominationWitness> witness_rev;
};

struct KappaResult {
  GenYoungFn kappa;
  GenYoungFn kappa_inv;
  GenYoungFn vartheta;  // kappa^{-1} composed with psi(x)/x
};

// Closed-form asymptotics of the derived functions for the classical
// families, used as golden targets for slope fits.
struct ClosedFormCase {
  std::string id;
  std::string formula;
  bool stretched = false;   // exponent lives inside exp(x^gamma) - 1
  double exponent = 0.0;    // power-law or stretched exponent
  double log_power = 0.0;   // multiplicative log power (signed), 0 if none
};

// Legendre conjugate f*(y) = sup_{x>=0} (x y - f(x)).
GenYoungFn conjugate(const YoungFn& f);
GenYoungFn conjugate(const GenYoungFn& f);

// rho_{phi,psi}(x) = sup_y (phi(x y) - psi(y)) / y. Requires psi to satisfy
// Assumption (A); normalize first with normalize_assumption_A.
GenYoungFn rho_of(const YoungFn& phi, const YoungFn& psi);

// zeta_{phi,psi}(x) = sup_y (phi(x y) - psi(y)/y). Requires psi(x)/x -> 0.
GenYoungFn zeta_of(const YoungFn& phi, const YoungFn& psi);

// eta = (psi*)^{-1} o phi*, the Young-equivalent kernel whose conjugate
// sandwiches rho_{phi,psi}.
GenYoungFn eta_nu(const YoungFn& phi, const YoungFn& psi);

// kappa defined through kappa^{-1}(x) = zeta^{-1}(x) * psitilde^{-1}(x),
// psitilde(x) = psi(x)/x. Also returns vartheta = kappa^{-1} o psitilde.
KappaResult kappa_of(const YoungFn& zeta, const YoungFn& psi);

// tilde_phi = (psi* o rho*)*.
GenYoungFn tilde_phi(const YoungFn& psi, const YoungFn& rho);

// Asymptotic domination rho1 <= C1 rho2(C2 x) for x >= x0, searched over
// dyadic constants and doubling x0.
DominationWitness dominates(const GenYoungFn& rho1, const GenYoungFn& rho2,
                            const GridSpec& grid = {});
DominationWitness dominates(const YoungFn& rho1, const YoungFn& rho2,
                            const GridSpec& grid = {});

NormalizeResult normalize_assumption_A(const YoungFn& psi);

// Value and maximizer of the suprema behind rho/zeta at a single x; the
// maximizer drives the counterexample constructions.
struct SupPoint {
  ExtReal value;
  double argmax = 0.0;
};
SupPoint rho_sup_at(const YoungFn& phi, const YoungFn& psi, double x);
SupPoint zeta_sup_at(const YoungFn& phi, const YoungFn& psi, double x);

// case_id in {nu-1..nu-6, pi-1..pi-6}; a, b are the two family parameters in
// the order the case lists them.
ClosedFormCase closed_form_lookup(const std::string& case_id, double a, double b);

// Least-squares slope fits on log grids.
double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys);
double fitted_exponent(const GenYoungFn& f, double lo, double hi, int n = 60);
// s in f ~ C x^p (log x + B)^s with p known, profiled over the shift B
double fitted_log_power(const GenYoungFn& f, double p, double lo, double hi,
                        int n = 60);
// gamma in log(1+f) ~ a + b log x + c x^gamma, profiled over gamma
double fitted_exp_exponent(const GenYoungFn& f, double lo, double hi, int n = 60);

// Joint fit of log f ~ a + p log x + s log(log x + B), profiled over B. Exact
// for the model class, so a power-log law pulled through Legendre conjugation
// can be read off from the pre-conjugate side.
struct PowerLogFit {
  double exponent;
  double log_power;
  double shift;
};
PowerLogFit fit_power_log(const GenYoungFn& f, double lo, double hi, int n = 60);

}  // namespace orlicz
