// Apache License, Version 2.0, refer to LICENSE.txt
//
// cv-kit: batch front end for the consumer-theory toolkit. Subcommands:
//   eval      solve the UMP (and optionally the EMP) at a point, with
//             closed-form comparisons for the built-in families
//   verify    run the applicable scaling-law checks for a spec
//   cv        compensating variation of a provision change
//   estimate  recover phi by OLS from a synthetic panel
//   panel     emit the synthetic panel itself as CSV
//
// Exit codes: 0 success, 1 numerical failure (solver/bracketing), 2 usage or
// configuration error. Outputs are written atomically (temp file + rename).
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cvkit/duality.hpp"
#include "cvkit/estimate.hpp"
#include "cvkit/homogeneity.hpp"
#include "cvkit/utility.hpp"
#include "cvkit/welfare.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

std::vector<double> parse_number_list(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string field;
  while (std::getline(stream, field, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(field, &used);
    } catch (const std::exception&) {
      throw cvkit::SpecError(flag + ": not a number: \"" + field + "\"");
    }
    while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used]))) ++used;
    if (used != field.size())
      throw cvkit::SpecError(flag + ": not a number: \"" + field + "\"");
    values.push_back(v);
  }
  if (values.empty()) throw cvkit::SpecError(flag + ": needs at least one value");
  return values;
}

std::string format_sig12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

/// Flattens a report object to two-column CSV: scalars as key,value; arrays
/// of scalars as key_1..key_N; nested objects with a dotted prefix. Arrays of
/// objects (verify reports) become one row group per element.
void flatten_csv(const json& node, const std::string& prefix, std::ostream& out) {
  if (node.is_object()) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
      flatten_csv(it.value(), key, out);
    }
    return;
  }
  if (node.is_array()) {
    std::size_t index = 1;
    for (const json& item : node) {
      flatten_csv(item, prefix + "_" + std::to_string(index), out);
      ++index;
    }
    return;
  }
  out << prefix << ',';
  if (node.is_number()) {
    out << format_sig12(node.get<double>());
  } else if (node.is_boolean()) {
    out << (node.get<bool>() ? "true" : "false");
  } else if (node.is_null()) {
    out << "";
  } else {
    out << node.get<std::string>();
  }
  out << '\n';
}

/// Atomic file write: the content lands under a temporary name first so a
/// crash never leaves a half-written report, and re-runs overwrite cleanly.
void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw cvkit::IoError("cannot open for writing: " + tmp);
    out << content;
    if (!out) throw cvkit::IoError("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw cvkit::IoError("cannot move " + tmp + " into place");
}

void emit(const json& report, const std::string& format, const std::string& out_path) {
  if (format == "json") {
    write_output(out_path, report.dump(2) + "\n");
    return;
  }
  std::ostringstream csv;
  csv << "key,value\n";
  flatten_csv(report, "", csv);
  write_output(out_path, csv.str());
}

/// Shared point flags: spec file plus the economy (p, m, z1, z2).
struct PointArgs {
  std::string spec_path;
  std::string p_text;
  double income = 0.0;
  std::string z1_text;
  std::string z2_text;

  void attach(CLI::App* cmd, bool need_income = true) {
    cmd->add_option("--spec", spec_path, "utility spec JSON file")->required();
    cmd->add_option("--p", p_text, "prices, comma separated")->required();
    if (need_income) cmd->add_option("--m", income, "income (> 0)")->required();
    cmd->add_option("--z1", z1_text, "scalable public goods, comma separated")->required();
    cmd->add_option("--z2", z2_text, "fixed public goods, comma separated");
  }

  cvkit::UtilitySpec spec() const { return cvkit::UtilitySpec::load(spec_path); }
  std::vector<double> prices() const { return parse_number_list(p_text, "--p"); }
  cvkit::PublicBundle bundle() const {
    return cvkit::PublicBundle(parse_number_list(z1_text, "--z1"),
                               z2_text.empty() ? std::vector<double>{}
                                               : parse_number_list(z2_text, "--z2"));
  }
  cvkit::PriceIncome price_income() const { return cvkit::PriceIncome(prices(), income); }
};

json demand_json(std::span<const double> values) {
  return json(std::vector<double>(values.begin(), values.end()));
}

// ---------------------------------------------------------------------------
// eval

int run_eval(const PointArgs& point, std::optional<double> emp_target, const std::string& format,
             const std::string& out_path) {
  const cvkit::UtilitySpec spec = point.spec();
  const cvkit::PriceIncome pi = point.price_income();
  const cvkit::PublicBundle z = point.bundle();

  json report;
  report["command"] = "eval";
  report["spec"] = spec.to_json();
  report["prices"] = point.prices();
  report["income"] = pi.income();
  report["z1"] = demand_json(z.z1());
  report["z2"] = demand_json(z.z2());

  const cvkit::UmpResult ump = cvkit::solve_ump(spec, pi, z);
  report["ump"] = {{"demand", demand_json(ump.demand.quantities())},
                   {"indirect_utility", ump.indirect_utility},
                   {"iterations", ump.iterations},
                   {"budget_residual", ump.budget_residual}};

  const bool two_good_power = (spec.family() == cvkit::Family::PowerWeighted ||
                               spec.family() == cvkit::Family::LogTransformedPowerWeighted) &&
                              spec.num_goods() == 2 && !spec.unrestricted_alpha();
  if (two_good_power) {
    const std::vector<double> p = point.prices();
    const auto z1 = z.z1();
    const cvkit::PowerWeightedSolution cf = cvkit::power_weighted_closed_form(
        spec.alpha(), {p[0], p[1]}, pi.income(), {z1[0], z1[1]});
    report["ump_closed_form"] = {
        {"demand", json({cf.demand[0], cf.demand[1]})},
        {"indirect_utility", spec.transform().apply(cf.indirect_underlying)}};
  }

  if (emp_target) {
    const cvkit::EmpResult emp = cvkit::solve_emp(spec, *emp_target, pi.prices(), z);
    report["emp"] = {{"target_utility", *emp_target},
                     {"hicksian_demand", demand_json(emp.hicksian_demand.quantities())},
                     {"expenditure", emp.expenditure},
                     {"achieved_utility", emp.achieved_utility},
                     {"iterations", emp.iterations}};
    if (two_good_power) {
      const std::vector<double> p = point.prices();
      const auto z1 = z.z1();
      if (spec.transform().is_identity()) {
        const cvkit::PowerWeightedSolution cf = cvkit::power_weighted_closed_form(
            spec.alpha(), {p[0], p[1]}, pi.income(), {z1[0], z1[1]});
        report["emp_closed_form"] = {
            {"hicksian_demand",
             json({cf.hicksian_at(*emp_target)[0], cf.hicksian_at(*emp_target)[1]})},
            {"expenditure", cf.expenditure_at(*emp_target)}};
      } else {
        const cvkit::PowerWeightedEmpSolution cf = cvkit::log_power_weighted_emp_closed_form(
            spec.alpha(), {p[0], p[1]}, {z1[0], z1[1]}, *emp_target, spec.transform().offset());
        report["emp_closed_form"] = {{"hicksian_demand", json({cf.hicksian[0], cf.hicksian[1]})},
                                     {"expenditure", cf.expenditure}};
      }
    }
  }

  emit(report, format, out_path);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct PlannedCheck {
  cvkit::PropertyId id;
  bool expect_pass;
  double target;  // utility level for expenditure/Hicksian checks
};

int run_verify(const PointArgs& point, const std::string& checks_text, std::string t_grid_text,
               double tol, std::optional<double> target_opt, const std::string& format,
               const std::string& out_path, bool checks_given) {
  const cvkit::UtilitySpec spec = point.spec();
  const cvkit::PriceIncome pi = point.price_income();
  const cvkit::PublicBundle z = point.bundle();

  const bool has_degrees = spec.independent_degrees().has_value();
  const bool identity = spec.transform().is_identity();
  const std::optional<double> joint = spec.joint_degree();

  if (tol <= 0.0) throw cvkit::SpecError("--tol must be > 0");
  if (t_grid_text.empty()) t_grid_text = has_degrees ? "0.25,0.5,2,4" : "0.25,0.5,2";
  const std::vector<double> t_grid = parse_number_list(t_grid_text, "--t-grid");

  const double u0 =
      target_opt ? *target_opt : cvkit::solve_ump(spec, pi, z).indirect_utility;

  // The applicable set and the expectation for each law. Checks that compare
  // cardinal levels need the identity transform; degree-based expectations
  // need declared degrees. T1 and C3 run for every spec: families without
  // independent degrees are negative controls expected to FAIL them.
  std::vector<PlannedCheck> plan;
  auto applicable = [&](cvkit::PropertyId id) {
    switch (id) {
      case cvkit::PropertyId::P2a:
        return identity && joint.has_value();
      case cvkit::PropertyId::P2b:
      case cvkit::PropertyId::P2c:
      case cvkit::PropertyId::P2d:
        return identity && has_degrees;
      case cvkit::PropertyId::P3:
        return identity && joint.has_value();
      case cvkit::PropertyId::C2:
        return identity && joint.has_value() && std::fabs(*joint - 1.0) <= 1e-9;
      case cvkit::PropertyId::C1:
      case cvkit::PropertyId::T1:
      case cvkit::PropertyId::C3:
      case cvkit::PropertyId::P4:
        return true;
    }
    return false;
  };
  auto add = [&](cvkit::PropertyId id) {
    const bool negative_control =
        !has_degrees && (id == cvkit::PropertyId::T1 || id == cvkit::PropertyId::C3);
    plan.push_back({id, !negative_control, u0});
    if (negative_control && id == cvkit::PropertyId::T1)
      plan.push_back({id, false, 1.5 * u0});  // a second utility level separates the slopes
  };

  if (checks_given) {
    if (checks_text.empty()) throw cvkit::SpecError("--checks: empty check list");
    std::stringstream stream(checks_text);
    std::string name;
    while (std::getline(stream, name, ',')) {
      const cvkit::PropertyId id = cvkit::property_id_from_name(name);
      if (!applicable(id))
        throw cvkit::SpecError("--checks: " + name + " is not applicable to this spec" +
                               (identity ? "" : " (non-identity transform)"));
      add(id);
    }
  } else {
    for (const cvkit::PropertyId id :
         {cvkit::PropertyId::P2a, cvkit::PropertyId::P2b, cvkit::PropertyId::P2c,
          cvkit::PropertyId::P2d, cvkit::PropertyId::C1, cvkit::PropertyId::P3,
          cvkit::PropertyId::C2, cvkit::PropertyId::T1, cvkit::PropertyId::C3,
          cvkit::PropertyId::P4}) {
      if (applicable(id)) add(id);
    }
  }
  if (plan.empty()) throw cvkit::SpecError("no applicable checks for this spec");

  json entries = json::array();
  bool all_ok = true;
  for (const PlannedCheck& planned : plan) {
    cvkit::PropertyReport report = [&] {
      switch (planned.id) {
        case cvkit::PropertyId::P2a:
          return cvkit::check_indirect_utility_scaling(
              spec, pi, z, cvkit::IndirectScalingMode::Joint2a, t_grid, tol);
        case cvkit::PropertyId::P2b:
          return cvkit::check_indirect_utility_scaling(
              spec, pi, z, cvkit::IndirectScalingMode::Independent2b, t_grid, tol);
        case cvkit::PropertyId::P2c:
          return cvkit::check_indirect_utility_scaling(
              spec, pi, z, cvkit::IndirectScalingMode::Private2c, t_grid, tol);
        case cvkit::PropertyId::P2d:
          return cvkit::check_indirect_utility_scaling(
              spec, pi, z, cvkit::IndirectScalingMode::Public2d, t_grid, tol);
        case cvkit::PropertyId::C1:
          return cvkit::check_marshallian_invariance(spec, pi, z, t_grid, tol);
        case cvkit::PropertyId::P3:
          return cvkit::check_expenditure_scaling(spec, planned.target, pi.prices(), z,
                                                  cvkit::ExpenditureScalingMode::JointP3, t_grid,
                                                  tol);
        case cvkit::PropertyId::C2:
          return cvkit::check_expenditure_scaling(spec, planned.target, pi.prices(), z,
                                                  cvkit::ExpenditureScalingMode::Degree1C2,
                                                  t_grid, tol);
        case cvkit::PropertyId::T1:
          return cvkit::check_expenditure_scaling(spec, planned.target, pi.prices(), z,
                                                  cvkit::ExpenditureScalingMode::HomotheticT1,
                                                  t_grid, tol);
        case cvkit::PropertyId::C3:
          return cvkit::check_hicksian_scaling(spec, planned.target, pi.prices(), z, t_grid, tol);
        case cvkit::PropertyId::P4:
        default: {
          const cvkit::UmpResult base = cvkit::solve_ump(spec, pi, z);
          return cvkit::check_mrs_ray_invariance(spec, base.demand, z, t_grid, t_grid, tol);
        }
      }
    }();

    json entry = report.to_json();
    entry["expected_to_pass"] = planned.expect_pass;
    entry["target_utility"] = planned.target;
    const bool ok = report.passed == planned.expect_pass;
    entry["ok"] = ok;
    all_ok = all_ok && ok;
    entries.push_back(std::move(entry));
  }

  json report;
  report["command"] = "verify";
  report["spec"] = spec.to_json();
  report["t_grid"] = t_grid;
  report["tolerance"] = tol;
  report["checks"] = std::move(entries);
  report["all_ok"] = all_ok;
  emit(report, format, out_path);
  return all_ok ? kExitOk : kExitNumerical;
}

// ---------------------------------------------------------------------------
// cv

int run_cv_phi(double phi, double t, double income, const std::string& format,
               const std::string& out_path) {
  json report;
  report["command"] = "cv";
  report["mode"] = "phi";
  report["phi"] = phi;
  report["t"] = t;
  report["income"] = income;
  report["cv"] = cvkit::cv_from_phi(phi, t, income);
  emit(report, format, out_path);
  return kExitOk;
}

int run_cv_spec(const PointArgs& point, double t, const std::string& format,
                const std::string& out_path) {
  const cvkit::CvQuery query{point.spec(), point.price_income(), point.bundle(), t};
  const cvkit::CvResult result = cvkit::compute_cv(query);

  if (result.cv_closed_form) {
    const double gap = std::fabs(*result.cv_closed_form - result.cv_brute_force);
    if (gap > std::max(1e-3, 1e-4 * query.pi.income()))
      std::cerr << "warning: closed-form and definition-based CV disagree by " << gap << "\n";
  }

  json report = result.to_json();
  report["command"] = "cv";
  report["mode"] = "spec";
  report["income"] = query.pi.income();
  emit(report, format, out_path);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// estimate / panel

struct PanelArgs {
  double t_min = 0.25;
  double t_max = 4.0;
  std::size_t count = 25;
  double noise_sd = 0.0;
  std::uint64_t seed = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--t-min", t_min, "smallest provision scale (default 0.25)");
    cmd->add_option("--t-max", t_max, "largest provision scale (default 4)");
    cmd->add_option("--n", count, "number of observations (default 25)");
    cmd->add_option("--noise", noise_sd, "log-normal noise scale (default 0)");
    cmd->add_option("--seed", seed, "noise seed (default 1)");
  }

  std::vector<double> t_values() const {
    if (!(t_min > 0.0) || !(t_max > 0.0)) throw cvkit::SpecError("--t-min/--t-max must be > 0");
    if (t_min > t_max) throw cvkit::SpecError("--t-min must not exceed --t-max");
    if (count < 3)
      throw cvkit::SpecError("--n: need at least 3 observations for a degenerate-free fit");
    if (t_min == t_max)
      throw cvkit::SpecError("--t-min equals --t-max: the regressor would be constant");
    std::vector<double> ts(count);
    for (std::size_t i = 0; i < count; ++i)
      ts[i] = t_min + (t_max - t_min) * static_cast<double>(i) /
                          static_cast<double>(count - 1);
    return ts;
  }
};

cvkit::SampleMode parse_mode(const std::string& text) {
  if (text == "income") return cvkit::SampleMode::income();
  if (text.rfind("good:", 0) == 0) {
    const std::string index = text.substr(5);
    try {
      const long n = std::stol(index);
      if (n >= 1) return cvkit::SampleMode::good(static_cast<std::size_t>(n - 1));
    } catch (const std::exception&) {
    }
  }
  throw cvkit::SpecError("--mode must be income or good:<1-based index>");
}

int run_estimate(const PointArgs& point, const PanelArgs& panel, const std::string& mode_text,
                 const std::string& format, const std::string& out_path) {
  const cvkit::PhiRecovery recovery =
      cvkit::recover_phi(point.spec(), point.price_income(), point.bundle(), panel.t_values(),
                         panel.noise_sd, panel.seed, parse_mode(mode_text));
  json report = recovery.to_json();
  report["command"] = "estimate";
  report["mode"] = mode_text;
  report["n"] = panel.count;
  report["noise_sd"] = panel.noise_sd;
  report["seed"] = panel.seed;
  report["t_min"] = panel.t_min;
  report["t_max"] = panel.t_max;
  emit(report, format, out_path);
  return kExitOk;
}

int run_panel(const PointArgs& point, const PanelArgs& panel, const std::string& format,
              const std::string& out_path) {
  if (format != "csv")
    throw cvkit::SpecError("panel output is CSV only; pass --format csv or omit --format");
  const std::vector<cvkit::ProvisionObservation> rows =
      cvkit::generate_panel(point.spec(), point.price_income(), point.bundle(), panel.t_values(),
                            panel.noise_sd, panel.seed);
  std::ostringstream out;
  cvkit::write_panel_csv(out, rows);
  write_output(out_path, out.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"consumer-theory toolkit: duality solves, scaling-law checks, welfare, "
               "and phi estimation"};
  app.require_subcommand(1);

  std::string format = "json";
  std::string out_path;
  // Registered per subcommand below so each --help shows them.

  // eval
  CLI::App* eval_cmd = app.add_subcommand("eval", "solve the UMP (and EMP with --u) at a point");
  PointArgs eval_point;
  eval_point.attach(eval_cmd);
  double eval_target = 0.0;
  CLI::Option* eval_u = eval_cmd->add_option("--u", eval_target, "EMP target utility");
  eval_cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  eval_cmd->add_option("--out", out_path, "output file (atomic write); default stdout");

  // verify
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the applicable scaling-law checks for a spec");
  PointArgs verify_point;
  verify_point.attach(verify_cmd);
  std::string checks_text;
  std::string t_grid_text;
  double verify_tol = 1e-6;
  double verify_target = 0.0;
  CLI::Option* checks_opt = verify_cmd->add_option(
      "--checks", checks_text, "comma-separated property ids (default: all applicable)");
  verify_cmd->add_option("--t-grid", t_grid_text,
                         "probe scales (default 0.25,0.5,2,4; 0.25,0.5,2 without degrees)");
  verify_cmd->add_option("--tol", verify_tol, "violation tolerance (default 1e-6)");
  CLI::Option* verify_u =
      verify_cmd->add_option("--u", verify_target, "utility level (default: v at the point)");
  verify_cmd->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  verify_cmd->add_option("--out", out_path, "output file (atomic write); default stdout");

  // cv
  CLI::App* cv_cmd = app.add_subcommand("cv", "compensating variation of scaling z1 by t");
  PointArgs cv_point;
  double cv_phi = 0.0;
  double cv_t = 0.0;
  double cv_income = 0.0;
  CLI::Option* cv_phi_opt =
      cv_cmd->add_option("--phi", cv_phi, "expenditure homogeneity degree in provision");
  CLI::Option* cv_spec_opt = cv_cmd->add_option("--spec", cv_point.spec_path, "utility spec JSON");
  cv_cmd->add_option("--t", cv_t, "provision scale factor (> 0)")->required();
  CLI::Option* cv_m = cv_cmd->add_option("--m", cv_income, "income (> 0)");
  CLI::Option* cv_p = cv_cmd->add_option("--p", cv_point.p_text, "prices (spec route)");
  CLI::Option* cv_z1 = cv_cmd->add_option("--z1", cv_point.z1_text, "provision (spec route)");
  cv_cmd->add_option("--z2", cv_point.z2_text, "fixed public goods (spec route)");
  cv_phi_opt->excludes(cv_spec_opt);
  cv_cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cv_cmd->add_option("--out", out_path, "output file (atomic write); default stdout");

  // estimate
  CLI::App* est_cmd =
      app.add_subcommand("estimate", "recover phi by OLS from a synthetic panel");
  PointArgs est_point;
  est_point.attach(est_cmd);
  PanelArgs est_panel;
  est_panel.attach(est_cmd);
  std::string est_mode = "income";
  est_cmd->add_option("--mode", est_mode, "income or good:<1-based index> (default income)");
  est_cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  est_cmd->add_option("--out", out_path, "output file (atomic write); default stdout");

  // panel
  CLI::App* panel_cmd = app.add_subcommand("panel", "emit the synthetic panel as CSV");
  PointArgs panel_point;
  panel_point.attach(panel_cmd);
  PanelArgs panel_args;
  panel_args.attach(panel_cmd);
  std::string panel_format = "csv";
  panel_cmd->add_option("--format", panel_format, "csv (the only panel format)");
  panel_cmd->add_option("--out", out_path, "output file (atomic write); default stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval_cmd)
      return run_eval(eval_point,
                      *eval_u ? std::optional<double>(eval_target) : std::nullopt, format,
                      out_path);
    if (*verify_cmd)
      return run_verify(verify_point, checks_text, t_grid_text, verify_tol,
                        *verify_u ? std::optional<double>(verify_target) : std::nullopt, format,
                        out_path, static_cast<bool>(*checks_opt));
    if (*cv_cmd) {
      if (!(cv_t > 0.0)) throw cvkit::DomainError("--t must be > 0");
      if (*cv_phi_opt) {
        if (!*cv_m) throw cvkit::SpecError("cv --phi needs --m");
        return run_cv_phi(cv_phi, cv_t, cv_income, format, out_path);
      }
      if (!*cv_spec_opt) throw cvkit::SpecError("cv needs either --phi or --spec");
      if (!*cv_m || !*cv_p || !*cv_z1)
        throw cvkit::SpecError("cv --spec needs --p, --m, and --z1");
      cv_point.income = cv_income;
      return run_cv_spec(cv_point, cv_t, format, out_path);
    }
    if (*est_cmd) return run_estimate(est_point, est_panel, est_mode, format, out_path);
    if (*panel_cmd) return run_panel(panel_point, panel_args, panel_format, out_path);
  } catch (const cvkit::SolverError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const cvkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "unexpected failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
