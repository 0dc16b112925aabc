// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cvkit/numerics.hpp"

namespace testutil {

inline double rel_diff(double a, double b) {
  const double scale = std::max({std::fabs(a), std::fabs(b), 1e-12});
  return std::fabs(a - b) / scale;
}

inline bool approx_rel(double a, double b, double tol) { return rel_diff(a, b) <= tol; }

inline bool approx_abs(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

/// Deterministic low-discrepancy parameter grids: row j is halton_point(j+1,
/// dim) mapped coordinate-wise into [lo_i, hi_i].
inline std::vector<std::vector<double>> halton_grid(std::size_t rows,
                                                    std::span<const double> lo,
                                                    std::span<const double> hi) {
  std::vector<std::vector<double>> grid;
  grid.reserve(rows);
  for (std::size_t j = 0; j < rows; ++j) {
    const std::vector<double> h = cvkit::halton_point(j + 1, lo.size());
    std::vector<double> row(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i)
      row[i] = cvkit::map_to_range(h[i], lo[i], hi[i]);
    grid.push_back(std::move(row));
  }
  return grid;
}

/// Interior solution of max sum_n x_n^a w_n s.t. p.x = m for 0 < a < 1,
/// any N: x_n = m y_n / (p.y) with y_n = (w_n / p_n)^(1/(1-a)). Derived from
/// the first-order conditions; independent of the code under test.
struct PowerFocSolution {
  std::vector<double> demand;
  double value;  // underlying utility at the optimum
};
inline PowerFocSolution power_foc_oracle(double alpha, std::span<const double> prices,
                                         double income, std::span<const double> weights) {
  const std::size_t n = prices.size();
  std::vector<double> y(n);
  double cost = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = std::pow(weights[i] / prices[i], 1.0 / (1.0 - alpha));
    cost += prices[i] * y[i];
  }
  PowerFocSolution sol;
  sol.demand.resize(n);
  sol.value = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sol.demand[i] = income * y[i] / cost;
    sol.value += std::pow(sol.demand[i], alpha) * weights[i];
  }
  return sol;
}

/// Expenditure oracle for the same family by degree-a homogeneity in x:
/// e(u) = m_ref (u / v(m_ref))^(1/a), Hicksian = demand(m_ref) scaled the
/// same way.
struct PowerFocEmp {
  std::vector<double> hicksian;
  double expenditure;
};
inline PowerFocEmp power_foc_emp_oracle(double alpha, std::span<const double> prices,
                                        std::span<const double> weights, double target) {
  const PowerFocSolution ref = power_foc_oracle(alpha, prices, 1.0, weights);
  const double blow = std::pow(target / ref.value, 1.0 / alpha);
  PowerFocEmp emp;
  emp.hicksian.resize(prices.size());
  emp.expenditure = 0.0;
  for (std::size_t i = 0; i < prices.size(); ++i) {
    emp.hicksian[i] = ref.demand[i] * blow;
    emp.expenditure += prices[i] * emp.hicksian[i];
  }
  return emp;
}

/// Brute-force OLS oracle: minimizes the sum of squared residuals of
/// y = b0 + b1 x by repeated grid refinement over (b0, b1). Slow and simple
/// on purpose — an independent check of the closed form.
struct GridOlsFit {
  double beta0;
  double beta1;
};
inline GridOlsFit grid_refine_ols(std::span<const double> y, std::span<const double> x) {
  auto ssr = [&](double b0, double b1) {
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double r = y[i] - b0 - b1 * x[i];
      s += r * r;
    }
    return s;
  };
  double c0 = 0.0, c1 = 0.0, half = 16.0;
  for (int pass = 0; pass < 60; ++pass) {
    double best = ssr(c0, c1);
    double b0 = c0, b1 = c1;
    for (int i = -10; i <= 10; ++i) {
      for (int j = -10; j <= 10; ++j) {
        const double t0 = c0 + half * i / 10.0;
        const double t1 = c1 + half * j / 10.0;
        const double s = ssr(t0, t1);
        if (s < best) {
          best = s;
          b0 = t0;
          b1 = t1;
        }
      }
    }
    c0 = b0;
    c1 = b1;
    half *= 0.35;
  }
  return {c0, c1};
}

/// Minimal JSON-schema walker covering the subset the shipped schemas use:
/// type (string or array of strings), properties, required,
/// additionalProperties:false, items, enum. Returns an empty string when the
/// document conforms, else a diagnostic path.
inline std::string schema_mismatch(const nlohmann::json& schema, const nlohmann::json& doc,
                                   const std::string& path = "$") {
  if (schema.contains("enum")) {
    for (const auto& v : schema["enum"])
      if (v == doc) return "";
    return path + ": value not in enum";
  }
  if (schema.contains("type")) {
    auto matches = [&](const std::string& t) {
      if (t == "object") return doc.is_object();
      if (t == "array") return doc.is_array();
      if (t == "string") return doc.is_string();
      if (t == "number") return doc.is_number();
      if (t == "integer") return doc.is_number_integer();
      if (t == "boolean") return doc.is_boolean();
      if (t == "null") return doc.is_null();
      return false;
    };
    const nlohmann::json& ty = schema["type"];
    bool ok = false;
    if (ty.is_string()) {
      ok = matches(ty.get<std::string>());
    } else {
      for (const auto& t : ty) ok = ok || matches(t.get<std::string>());
    }
    if (!ok) return path + ": type mismatch";
  }
  if (doc.is_object()) {
    if (schema.contains("required"))
      for (const auto& k : schema["required"])
        if (!doc.contains(k.get<std::string>()))
          return path + ": missing required key " + k.get<std::string>();
    const bool closed =
        schema.contains("additionalProperties") && schema["additionalProperties"] == false;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      const bool declared = schema.contains("properties") && schema["properties"].contains(it.key());
      if (!declared) {
        if (closed) return path + ": unexpected key " + it.key();
        continue;
      }
      const std::string msg =
          schema_mismatch(schema["properties"][it.key()], it.value(), path + "." + it.key());
      if (!msg.empty()) return msg;
    }
  }
  if (doc.is_array() && schema.contains("items")) {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const std::string msg =
          schema_mismatch(schema["items"], doc[i], path + "[" + std::to_string(i) + "]");
      if (!msg.empty()) return msg;
    }
  }
  return "";
}

}  // namespace testutil
