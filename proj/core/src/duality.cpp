// Apache License, Version 2.0, refer to LICENSE.txt
#include "cvkit/duality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace cvkit {

namespace {

constexpr double kLogitBound = 40.0;   // |w| cap inside the share map
constexpr double kBoundaryEdge = 39.0; // |w| beyond this means a corner, not an interior optimum
constexpr double kInvPhi = 0.6180339887498949;

double clamp_logit(double w) { return std::clamp(w, -kLogitBound, kLogitBound); }

/// x_i = s_i m / p_i with s = logistic normalization of (w, 0): the budget
/// holds with equality for every w.
void bundle_from_logits(std::span<const double> w, std::span<const double> prices, double income,
                        std::vector<double>& out) {
  const std::size_t n = prices.size();
  double denom = 1.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double e = std::exp(clamp_logit(w[i]));
    out[i] = e;
    denom += e;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) out[i] = out[i] * income / (denom * prices[i]);
  out[n - 1] = income / (denom * prices[n - 1]);
}

/// Objective wrapper: counts evaluations against the budget, tracks the best
/// bundle seen for error reporting, rejects NaN.
class CountedObjective {
 public:
  CountedObjective(const std::function<double(std::span<const double>)>& f, int budget)
      : f_(f), budget_(budget) {}

  double operator()(std::span<const double> x) {
    if (used_ >= budget_)
      throw SolverError("objective evaluation budget exhausted", best_bundle_, best_value_);
    ++used_;
    const double v = f_(x);
    if (std::isnan(v)) throw DomainError("objective returned NaN");
    if (!have_best_ || v > best_value_) {
      best_value_ = v;
      best_bundle_.assign(x.begin(), x.end());
      have_best_ = true;
    }
    return v;
  }

  int used() const noexcept { return used_; }
  const std::vector<double>& best_bundle() const noexcept { return best_bundle_; }
  double best_value() const noexcept { return best_value_; }

 private:
  const std::function<double(std::span<const double>)>& f_;
  int budget_;
  int used_ = 0;
  bool have_best_ = false;
  double best_value_ = 0.0;
  std::vector<double> best_bundle_;
};

/// Golden-section maximization of a single-peaked g on [a, b].
template <typename G>
std::pair<double, double> golden_max(G&& g, double a, double b, double tol) {
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = g(c);
  double fd = g(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = g(d);
    }
  }
  return fc >= fd ? std::pair<double, double>{c, fc} : std::pair<double, double>{d, fd};
}

/// Classical Nelder-Mead (reflection 1, expansion 2, contraction 0.5,
/// shrink 0.5) maximizing F, stopping when the simplex inf-norm diameter
/// drops below tol. Deterministic: fixed start and steps, no randomness.
template <typename F>
void nelder_mead_max(F&& f, std::vector<double>& w, double step, double tol) {
  const std::size_t d = w.size();
  std::vector<std::vector<double>> verts(d + 1, w);
  std::vector<double> vals(d + 1);
  for (std::size_t i = 0; i < d; ++i) verts[i + 1][i] += step;
  for (std::size_t i = 0; i <= d; ++i) vals[i] = f(verts[i]);

  std::vector<std::size_t> order(d + 1);
  std::vector<double> centroid(d), xr(d), xe(d), xc(d);
  while (true) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
    const std::size_t best = order[0];
    const std::size_t worst = order[d];
    const std::size_t second = order[d - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= d; ++i)
      for (std::size_t k = 0; k < d; ++k)
        diameter = std::max(diameter, std::fabs(verts[i][k] - verts[best][k]));
    if (diameter < tol) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < d; ++k) centroid[k] += verts[i][k];
    }
    for (std::size_t k = 0; k < d; ++k) centroid[k] /= static_cast<double>(d);

    for (std::size_t k = 0; k < d; ++k) xr[k] = centroid[k] + (centroid[k] - verts[worst][k]);
    const double fr = f(xr);
    if (fr > vals[best]) {
      for (std::size_t k = 0; k < d; ++k) xe[k] = centroid[k] + 2.0 * (centroid[k] - verts[worst][k]);
      const double fe = f(xe);
      if (fe > fr) {
        verts[worst] = xe;
        vals[worst] = fe;
      } else {
        verts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr > vals[second]) {
      verts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    if (fr > vals[worst]) {
      for (std::size_t k = 0; k < d; ++k) xc[k] = centroid[k] + 0.5 * (centroid[k] - verts[worst][k]);
      const double fco = f(xc);
      if (fco >= fr) {
        verts[worst] = xc;
        vals[worst] = fco;
        continue;
      }
    } else {
      for (std::size_t k = 0; k < d; ++k) xc[k] = centroid[k] - 0.5 * (centroid[k] - verts[worst][k]);
      const double fci = f(xc);
      if (fci > vals[worst]) {
        verts[worst] = xc;
        vals[worst] = fci;
        continue;
      }
    }
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < d; ++k)
        verts[i][k] = verts[best][k] + 0.5 * (verts[i][k] - verts[best][k]);
      vals[i] = f(verts[i]);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= d; ++i)
    if (vals[i] > vals[best]) best = i;
  w = verts[best];
}

void require_positive_prices(std::span<const double> prices) {
  if (prices.empty()) throw DimensionError("price vector needs at least one entry");
  for (double p : prices) {
    if (!std::isfinite(p) || p <= 0.0) throw DomainError("prices must be > 0");
  }
}

}  // namespace

BudgetMaxResult maximize_on_budget(const std::function<double(std::span<const double>)>& objective,
                                   std::span<const double> prices, double income,
                                   const SolverConfig& config) {
  require_positive_prices(prices);
  if (!std::isfinite(income) || income <= 0.0) throw DomainError("income must be > 0");

  const std::size_t n = prices.size();
  CountedObjective counted(objective, config.max_evaluations);

  if (n == 1) {
    // Monotone utility: spend everything on the only good.
    std::vector<double> bundle{income / prices[0]};
    const double value = counted(bundle);
    return {std::move(bundle), value, counted.used()};
  }

  const std::size_t dim = n - 1;
  std::vector<double> scratch(n);
  auto value_at = [&](std::span<const double> w) {
    bundle_from_logits(w, prices, income, scratch);
    return counted(scratch);
  };

  std::vector<double> w(dim, 0.0);  // equal expenditure shares
  double best_value;

  if (dim == 1) {
    auto g = [&](double wi) {
      const double arr[1] = {wi};
      return value_at(arr);
    };
    auto [w0, v0] = golden_max(g, -kLogitBound, kLogitBound, config.share_tol);
    w[0] = w0;
    best_value = v0;
  } else {
    auto f = [&](const std::vector<double>& ww) { return value_at(ww); };
    nelder_mead_max(f, w, 0.25, std::max(config.share_tol, 1e-8));
    best_value = value_at(w);

    // Coordinate-wise polish: golden-section refinement per coordinate until
    // a whole sweep stays put. Handles simplex stalls near the optimum.
    for (int sweep = 0; sweep < 12; ++sweep) {
      double moved = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        double h = 1e-3;
        while (true) {
          const double lo = std::max(w[i] - h, -kLogitBound);
          const double hi = std::min(w[i] + h, kLogitBound);
          auto g = [&](double wi) {
            const double saved = w[i];
            w[i] = wi;
            const double v = value_at(w);
            w[i] = saved;
            return v;
          };
          auto [wi_new, v_new] = golden_max(g, lo, hi, config.share_tol);
          const bool at_edge = (wi_new - lo < 4.0 * config.share_tol + 1e-12) ||
                               (hi - wi_new < 4.0 * config.share_tol + 1e-12);
          if (at_edge && (lo > -kLogitBound || hi < kLogitBound)) {
            h *= 4.0;
            continue;
          }
          if (v_new > best_value) {
            moved = std::max(moved, std::fabs(wi_new - w[i]));
            w[i] = wi_new;
            best_value = v_new;
          }
          break;
        }
      }
      if (moved < 10.0 * config.share_tol) break;
    }
  }

  for (double wi : w) {
    if (std::fabs(wi) > kBoundaryEdge) {
      bundle_from_logits(w, prices, income, scratch);
      throw SolverError(
          "optimum pinned at a share boundary; no interior solution (corner solutions are "
          "unsupported)",
          scratch, best_value);
    }
  }

  std::vector<double> bundle(n);
  bundle_from_logits(w, prices, income, bundle);
  const double value = counted(bundle);
  return {std::move(bundle), value, counted.used()};
}

ExpenditureMinResult minimize_expenditure(
    const std::function<double(std::span<const double>)>& objective, double target,
    std::span<const double> prices, std::optional<double> zero_bundle_value,
    const SolverConfig& config) {
  require_positive_prices(prices);
  if (!std::isfinite(target)) throw DomainError("target utility must be finite");

  if (zero_bundle_value && *zero_bundle_value >= target) {
    return {std::vector<double>(prices.size(), 0.0), 0.0, *zero_bundle_value, 0};
  }

  int evaluations = 0;
  auto solve_at = [&](double m) {
    BudgetMaxResult r = maximize_on_budget(objective, prices, m, config);
    evaluations += r.evaluations;
    return r;
  };

  constexpr double kCapHi = 1152921504606846976.0;  // 2^60
  constexpr double kCapLo = 1.0 / 1152921504606846976.0;

  double lo;
  double hi;
  BudgetMaxResult at_hi = solve_at(1.0);
  if (at_hi.value >= target) {
    hi = 1.0;
    lo = 0.5;
    BudgetMaxResult probe = solve_at(lo);
    while (probe.value >= target) {
      hi = lo;
      at_hi = std::move(probe);
      lo *= 0.5;
      if (lo < kCapLo)
        throw BracketError("bracket failure: target utility met at every income above 2^-60",
                           at_hi.bundle, at_hi.value);
      probe = solve_at(lo);
    }
  } else {
    lo = 1.0;
    hi = 2.0;
    at_hi = solve_at(hi);
    while (at_hi.value < target) {
      lo = hi;
      hi *= 2.0;
      if (hi > kCapHi)
        throw BracketError("bracket failure: target utility unattainable below the 2^60 income cap",
                           at_hi.bundle, at_hi.value);
      at_hi = solve_at(hi);
    }
  }

  // Invariant: v(lo) < target <= v(hi). Bisect to relative width.
  while (hi - lo > config.income_rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    BudgetMaxResult at_mid = solve_at(mid);
    if (at_mid.value >= target) {
      hi = mid;
      at_hi = std::move(at_mid);
    } else {
      lo = mid;
    }
  }

  return {std::move(at_hi.bundle), hi, at_hi.value, evaluations};
}

UmpResult solve_ump(const UtilitySpec& spec, const PriceIncome& pi, const PublicBundle& z,
                    const SolverConfig& config) {
  if (pi.size() != spec.num_goods())
    throw DimensionError("price vector has " + std::to_string(pi.size()) +
                         " entries, spec expects " + std::to_string(spec.num_goods()));
  auto objective = [&](std::span<const double> x) { return evaluate_utility(spec, x, z); };
  BudgetMaxResult r = maximize_on_budget(objective, pi.prices(), pi.income(), config);

  double spent = 0.0;
  for (std::size_t i = 0; i < r.bundle.size(); ++i) spent += pi.prices()[i] * r.bundle[i];
  const double residual = std::fabs(spent - pi.income()) / pi.income();
  return {PrivateBundle(std::move(r.bundle)), r.value, r.evaluations, residual};
}

EmpResult solve_emp(const UtilitySpec& spec, double target_utility, std::span<const double> prices,
                    const PublicBundle& z, const SolverConfig& config) {
  if (prices.size() != spec.num_goods())
    throw DimensionError("price vector has " + std::to_string(prices.size()) +
                         " entries, spec expects " + std::to_string(spec.num_goods()));

  std::optional<double> floor;
  try {
    const std::vector<double> zeros(spec.num_goods(), 0.0);
    floor = evaluate_utility(spec, zeros, z);
  } catch (const DomainError&) {
    floor.reset();  // utility undefined at the zero bundle (e.g. log transform)
  }

  auto objective = [&](std::span<const double> x) { return evaluate_utility(spec, x, z); };
  ExpenditureMinResult r = minimize_expenditure(objective, target_utility, prices, floor, config);
  return {PrivateBundle(std::move(r.bundle)), r.expenditure, r.achieved, r.evaluations};
}

double PowerWeightedSolution::expenditure_at(double underlying_target) const {
  if (!(underlying_target > 0.0)) throw DomainError("expenditure target must be > 0");
  return unit_cost * std::pow(underlying_target / weight, 1.0 / alpha);
}

std::array<double, 2> PowerWeightedSolution::hicksian_at(double underlying_target) const {
  if (!(underlying_target > 0.0)) throw DomainError("expenditure target must be > 0");
  const double b = std::pow(underlying_target / weight, 1.0 / alpha);
  return {k * b, b};
}

PowerWeightedSolution power_weighted_closed_form(double alpha, const std::array<double, 2>& prices,
                                                 double income, const std::array<double, 2>& z1) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError("closed form covers the interior regime 0 < alpha < 1");
  for (double p : prices)
    if (!(p > 0.0)) throw DomainError("prices must be > 0");
  for (double z : z1)
    if (!(z > 0.0)) throw DomainError("z1 components must be > 0");
  if (!(income > 0.0)) throw DomainError("income must be > 0");

  PowerWeightedSolution s;
  s.alpha = alpha;
  s.k = std::pow(prices[0] * z1[1] / (prices[1] * z1[0]), 1.0 / (alpha - 1.0));
  s.unit_cost = prices[0] * s.k + prices[1];
  s.weight = std::pow(s.k, alpha) * z1[0] + z1[1];
  s.demand = {income * s.k / s.unit_cost, income / s.unit_cost};
  s.indirect_underlying = s.weight * std::pow(income / s.unit_cost, alpha);
  return s;
}

PowerWeightedEmpSolution log_power_weighted_emp_closed_form(double alpha,
                                                            const std::array<double, 2>& prices,
                                                            const std::array<double, 2>& z1,
                                                            double target_utility, double offset) {
  const PowerWeightedSolution s = power_weighted_closed_form(alpha, prices, 1.0, z1);
  const double underlying = std::exp(target_utility - offset);
  return {s.expenditure_at(underlying), s.hicksian_at(underlying)};
}

double additive_separable_expenditure_closed_form(double delta, const std::array<double, 2>& prices,
                                                  const std::array<double, 2>& z1,
                                                  double target_utility) {
  if (!(delta > 0.0)) throw DomainError("delta must be > 0");
  for (double p : prices)
    if (!(p > 0.0)) throw DomainError("prices must be > 0");
  for (double z : z1)
    if (!(z > 0.0)) throw DomainError("z1 components must be > 0");
  const double shifted = target_utility - std::pow(z1[0] * z1[1], 1.0 / delta);
  if (shifted <= 0.0) return 0.0;  // public goods alone already deliver the target
  return 2.0 * std::pow(shifted, delta / 2.0) * std::sqrt(prices[0] * prices[1]);
}

}  // namespace cvkit
