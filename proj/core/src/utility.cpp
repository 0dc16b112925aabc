// Apache License, Version 2.0, refer to LICENSE.txt
#include "cvkit/utility.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cvkit/numerics.hpp"

namespace cvkit {

namespace {

constexpr double kDegreeMatchTol = 1e-12;
constexpr double kGenericVerifyTol = 1e-8;

void require_finite_param(double v, const char* label) {
  if (!std::isfinite(v)) throw SpecError(std::string(label) + " must be finite");
}

/// The transform must be strictly increasing; checked by sampling the
/// reachable range rather than trusted.
void check_transform_increasing(const Transform& g, std::span<const double> samples) {
  double prev_in = 0.0;
  double prev_out = 0.0;
  bool have_prev = false;
  for (double u : samples) {
    const double out = g.apply(u);
    if (!std::isfinite(out)) throw SpecError("transform produced a non-finite value");
    if (have_prev && u > prev_in && out <= prev_out)
      throw SpecError("transform is not strictly increasing on the sampled range");
    prev_in = u;
    prev_out = out;
    have_prev = true;
  }
}

double checked_pow(double base, double exponent) {
  if (base == 0.0 && exponent < 0.0)
    throw DomainError("x_n = 0 with a negative exponent is outside the domain");
  return std::pow(base, exponent);
}

}  // namespace

std::string family_name(Family family) {
  switch (family) {
    case Family::PowerWeighted:
      return "PowerWeighted";
    case Family::LogTransformedPowerWeighted:
      return "LogTransformedPowerWeighted";
    case Family::AdditiveSeparablePower:
      return "AdditiveSeparablePower";
    case Family::GenericHomothetic:
      return "GenericHomothetic";
  }
  throw SpecError("unknown family");
}

Transform Transform::identity() { return Transform(Kind::Identity, 0.0); }

Transform Transform::log_plus(double offset) {
  if (!std::isfinite(offset)) throw SpecError("transform offset must be finite");
  return Transform(Kind::LogPlus, offset);
}

double Transform::apply(double u) const {
  if (kind_ == Kind::Identity) return u;
  if (u <= 0.0) throw DomainError("log transform needs underlying utility > 0");
  return std::log(u) + offset_;
}

double Transform::invert(double value) const {
  if (kind_ == Kind::Identity) return value;
  return std::exp(value - offset_);
}

UtilitySpec UtilitySpec::power_weighted(double alpha, std::size_t num_goods,
                                        bool allow_unrestricted_alpha) {
  require_finite_param(alpha, "alpha");
  if (num_goods < 1) throw SpecError("num_goods must be >= 1");
  if (alpha == 0.0) throw SpecError("alpha must be nonzero");
  if (!allow_unrestricted_alpha && (alpha <= 0.0 || alpha >= 1.0))
    throw SpecError("alpha outside (0,1) requires allow_unrestricted_alpha");
  UtilitySpec s;
  s.family_ = Family::PowerWeighted;
  s.num_goods_ = num_goods;
  s.num_z1_ = num_goods;
  s.alpha_ = alpha;
  s.unrestricted_alpha_ = allow_unrestricted_alpha;
  s.transform_ = Transform::identity();
  s.independent_ = HomogeneityDegrees(alpha, 1.0);
  s.joint_ = alpha + 1.0;
  const double samples[] = {1e-6, 1e-3, 1.0, 10.0, 1e6};
  check_transform_increasing(s.transform_, samples);
  return s;
}

UtilitySpec UtilitySpec::log_power_weighted(double alpha, std::size_t num_goods, double offset,
                                            bool allow_unrestricted_alpha) {
  UtilitySpec s = power_weighted(alpha, num_goods, allow_unrestricted_alpha);
  s.family_ = Family::LogTransformedPowerWeighted;
  s.transform_ = Transform::log_plus(offset);
  const double samples[] = {1e-6, 1e-3, 1.0, 10.0, 1e6};
  check_transform_increasing(s.transform_, samples);
  return s;
}

UtilitySpec UtilitySpec::additive_separable_power(double alpha, double beta) {
  require_finite_param(alpha, "alpha");
  require_finite_param(beta, "beta");
  if (alpha <= 0.0 || beta <= 0.0) throw SpecError("alpha and beta must be > 0");
  UtilitySpec s;
  s.family_ = Family::AdditiveSeparablePower;
  s.num_goods_ = 2;
  s.num_z1_ = 2;
  s.alpha_ = alpha;
  s.beta_ = beta;
  s.transform_ = Transform::identity();
  s.independent_.reset();
  if (alpha == beta) s.joint_ = 2.0 / alpha;
  return s;
}

UtilitySpec UtilitySpec::generic_homothetic(GenericDefinition definition) {
  if (!definition.evaluator) throw SpecError("generic spec needs an evaluator");
  if (definition.num_goods < 1 || definition.num_z1 < 1)
    throw SpecError("generic spec needs at least one private and one z1 good");
  const std::size_t dims = definition.num_goods + definition.num_z1 + definition.num_z2;
  if (dims > 16) throw DimensionError("generic specs support at most 16 total coordinates");

  HomogeneityDegrees degrees(definition.eta, definition.theta);

  UtilitySpec s;
  s.family_ = Family::GenericHomothetic;
  s.num_goods_ = definition.num_goods;
  s.num_z1_ = definition.num_z1;
  s.num_z2_ = definition.num_z2;
  s.transform_ = definition.transform;
  s.independent_ = degrees;
  s.joint_ = degrees.gamma();
  s.generic_ = std::move(definition.evaluator);

  // Declared degrees are verified, not trusted: probe deterministic base
  // points and scale factors, reject on any residual above tolerance.
  const double t_probes[] = {0.5, 2.0, 10.0};
  std::vector<double> reachable;
  for (std::size_t i = 0; i < 6; ++i) {
    const std::vector<double> p = halton_point(i, dims);
    std::vector<double> x(p.begin(), p.begin() + s.num_goods_);
    std::vector<double> z1(p.begin() + s.num_goods_, p.begin() + s.num_goods_ + s.num_z1_);
    std::vector<double> z2(p.begin() + s.num_goods_ + s.num_z1_, p.end());
    for (double& v : x) v = map_to_range(v, 0.5, 2.0);
    for (double& v : z1) v = map_to_range(v, 0.5, 2.0);
    for (double& v : z2) v = map_to_range(v, 0.5, 2.0);

    const double u0 = s.generic_(x, z1, z2);
    if (!std::isfinite(u0) || u0 <= 0.0)
      throw SpecError("generic evaluator must be positive and finite at verification probes");
    reachable.push_back(u0);

    for (double t : t_probes) {
      std::vector<double> xs(x);
      for (double& v : xs) v *= t;
      const double ux = s.generic_(xs, z1, z2);
      if (!std::isfinite(ux) || ux <= 0.0)
        throw SpecError("generic evaluator must be positive and finite at verification probes");
      const double x_residual = std::fabs(std::log(ux) - std::log(u0) - degrees.eta() * std::log(t));
      if (x_residual > kGenericVerifyTol) {
        std::ostringstream msg;
        msg << "declared eta=" << degrees.eta() << " fails verification: residual " << x_residual
            << " at t=" << t;
        throw SpecError(msg.str());
      }

      std::vector<double> zs(z1);
      for (double& v : zs) v *= t;
      const double uz = s.generic_(x, zs, z2);
      if (!std::isfinite(uz) || uz <= 0.0)
        throw SpecError("generic evaluator must be positive and finite at verification probes");
      const double z_residual =
          std::fabs(std::log(uz) - std::log(u0) - degrees.theta() * std::log(t));
      if (z_residual > kGenericVerifyTol) {
        std::ostringstream msg;
        msg << "declared theta=" << degrees.theta() << " fails verification: residual "
            << z_residual << " at t=" << t;
        throw SpecError(msg.str());
      }
      reachable.push_back(ux);
      reachable.push_back(uz);
    }
  }
  std::sort(reachable.begin(), reachable.end());
  check_transform_increasing(s.transform_, reachable);
  return s;
}

double UtilitySpec::alpha() const {
  if (family_ == Family::GenericHomothetic) throw SpecError("generic specs have no alpha");
  return alpha_;
}

double UtilitySpec::beta() const {
  if (family_ != Family::AdditiveSeparablePower)
    throw SpecError("only AdditiveSeparablePower has beta");
  return beta_;
}

double evaluate_underlying(const UtilitySpec& spec, std::span<const double> x,
                           const PublicBundle& z) {
  if (x.size() != spec.num_goods())
    throw DimensionError("bundle has " + std::to_string(x.size()) + " goods, spec expects " +
                         std::to_string(spec.num_goods()));
  if (z.z1_size() != spec.num_z1())
    throw DimensionError("z1 has " + std::to_string(z.z1_size()) + " components, spec expects " +
                         std::to_string(spec.num_z1()));

  switch (spec.family()) {
    case Family::PowerWeighted:
    case Family::LogTransformedPowerWeighted: {
      double total = 0.0;
      const auto z1 = z.z1();
      for (std::size_t n = 0; n < x.size(); ++n) total += checked_pow(x[n], spec.alpha_) * z1[n];
      return total;
    }
    case Family::AdditiveSeparablePower: {
      const auto z1 = z.z1();
      return std::pow(x[0] * x[1], 1.0 / spec.alpha_) + std::pow(z1[0] * z1[1], 1.0 / spec.beta_);
    }
    case Family::GenericHomothetic: {
      if (z.z2_size() != spec.num_z2())
        throw DimensionError("z2 has " + std::to_string(z.z2_size()) +
                             " components, spec expects " + std::to_string(spec.num_z2()));
      const double u = spec.generic_(x, z.z1(), z.z2());
      if (!std::isfinite(u)) throw DomainError("generic evaluator returned a non-finite value");
      return u;
    }
  }
  throw SpecError("unknown family");
}

double evaluate_underlying(const UtilitySpec& spec, const PrivateBundle& x,
                           const PublicBundle& z) {
  return evaluate_underlying(spec, x.quantities(), z);
}

double evaluate_utility(const UtilitySpec& spec, std::span<const double> x, const PublicBundle& z) {
  return spec.transform().apply(evaluate_underlying(spec, x, z));
}

double evaluate_utility(const UtilitySpec& spec, const PrivateBundle& x, const PublicBundle& z) {
  return spec.transform().apply(evaluate_underlying(spec, x, z));
}

namespace {

const nlohmann::json* find_key(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double require_number(const nlohmann::json& j, const char* key) {
  const nlohmann::json* v = find_key(j, key);
  if (v == nullptr) throw SpecError(std::string("spec is missing \"") + key + "\"");
  if (!v->is_number()) throw SpecError(std::string("\"") + key + "\" must be a number");
  return v->get<double>();
}

void check_declared(const nlohmann::json& j, const char* key, double derived) {
  const nlohmann::json* v = find_key(j, key);
  if (v == nullptr) return;
  if (!v->is_number()) throw SpecError(std::string("\"") + key + "\" must be a number");
  const double declared = v->get<double>();
  if (std::fabs(declared - derived) > kDegreeMatchTol * std::max(1.0, std::fabs(derived))) {
    std::ostringstream msg;
    msg << "declared " << key << "=" << declared << " is inconsistent with the family (expected "
        << derived << ")";
    throw SpecError(msg.str());
  }
}

Transform parse_transform(const nlohmann::json& j, Transform fallback, Transform::Kind required) {
  const nlohmann::json* t = find_key(j, "transform");
  if (t == nullptr) return fallback;
  if (!t->is_object()) throw SpecError("\"transform\" must be an object");
  const nlohmann::json* kind = find_key(*t, "kind");
  if (kind == nullptr || !kind->is_string()) throw SpecError("transform needs a string \"kind\"");
  const std::string k = kind->get<std::string>();
  for (const auto& [key, value] : t->items()) {
    (void)value;
    if (key != "kind" && key != "offset")
      throw SpecError("unknown transform key \"" + key + "\"");
  }
  Transform parsed = Transform::identity();
  if (k == "identity") {
    if (find_key(*t, "offset") != nullptr) throw SpecError("identity transform takes no offset");
  } else if (k == "log_plus") {
    const nlohmann::json* off = find_key(*t, "offset");
    double offset = 5.0;
    if (off != nullptr) {
      if (!off->is_number()) throw SpecError("transform \"offset\" must be a number");
      offset = off->get<double>();
    }
    parsed = Transform::log_plus(offset);
  } else {
    throw SpecError("transform kind must be \"identity\" or \"log_plus\"");
  }
  if (parsed.kind() != required)
    throw SpecError("transform kind \"" + k + "\" does not match the family");
  return parsed;
}

void reject_unknown_keys(const nlohmann::json& j, std::span<const char* const> allowed) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) throw SpecError("unknown spec key \"" + key + "\"");
  }
}

}  // namespace

nlohmann::json UtilitySpec::to_json() const {
  if (family_ == Family::GenericHomothetic)
    throw SpecError("generic specs carry code and cannot be serialized");
  nlohmann::json j;
  j["family"] = family_name(family_);
  j["alpha"] = alpha_;
  switch (family_) {
    case Family::PowerWeighted:
    case Family::LogTransformedPowerWeighted:
      j["num_goods"] = num_goods_;
      j["eta"] = independent_->eta();
      j["theta"] = independent_->theta();
      if (unrestricted_alpha_) j["allow_unrestricted_alpha"] = true;
      break;
    case Family::AdditiveSeparablePower:
      j["beta"] = beta_;
      if (joint_) j["gamma"] = *joint_;
      break;
    case Family::GenericHomothetic:
      break;
  }
  if (transform_.is_identity()) {
    j["transform"] = {{"kind", "identity"}};
  } else {
    j["transform"] = {{"kind", "log_plus"}, {"offset", transform_.offset()}};
  }
  return j;
}

UtilitySpec UtilitySpec::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SpecError("spec must be a JSON object");
  const nlohmann::json* fam = find_key(j, "family");
  if (fam == nullptr || !fam->is_string()) throw SpecError("spec needs a string \"family\"");
  const std::string name = fam->get<std::string>();

  if (name == "PowerWeighted" || name == "LogTransformedPowerWeighted") {
    static constexpr const char* allowed[] = {"family",    "alpha", "num_goods",
                                              "eta",       "theta", "transform",
                                              "allow_unrestricted_alpha"};
    reject_unknown_keys(j, allowed);
    const double alpha = require_number(j, "alpha");
    std::size_t num_goods = 2;
    if (const nlohmann::json* ng = find_key(j, "num_goods")) {
      if (!ng->is_number_unsigned() || ng->get<std::size_t>() < 1)
        throw SpecError("\"num_goods\" must be a positive integer");
      num_goods = ng->get<std::size_t>();
    }
    bool allow = false;
    if (const nlohmann::json* a = find_key(j, "allow_unrestricted_alpha")) {
      if (!a->is_boolean()) throw SpecError("\"allow_unrestricted_alpha\" must be a boolean");
      allow = a->get<bool>();
    }
    check_declared(j, "eta", alpha);
    check_declared(j, "theta", 1.0);
    if (name == "PowerWeighted") {
      parse_transform(j, Transform::identity(), Transform::Kind::Identity);
      return power_weighted(alpha, num_goods, allow);
    }
    const Transform t = parse_transform(j, Transform::log_plus(5.0), Transform::Kind::LogPlus);
    return log_power_weighted(alpha, num_goods, t.offset(), allow);
  }

  if (name == "AdditiveSeparablePower") {
    static constexpr const char* allowed[] = {"family", "alpha", "beta", "gamma", "transform"};
    reject_unknown_keys(j, allowed);
    const double alpha = require_number(j, "alpha");
    const double beta = require_number(j, "beta");
    parse_transform(j, Transform::identity(), Transform::Kind::Identity);
    UtilitySpec s = additive_separable_power(alpha, beta);
    if (find_key(j, "gamma") != nullptr) {
      if (!s.joint_degree())
        throw SpecError("\"gamma\" declared but alpha != beta (not jointly homogeneous)");
      check_declared(j, "gamma", *s.joint_degree());
    }
    return s;
  }

  if (name == "GenericHomothetic")
    throw SpecError("generic specs carry code and cannot be loaded from JSON");
  throw SpecError("unknown family \"" + name + "\"");
}

UtilitySpec UtilitySpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open spec file: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(std::string("spec file is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

}  // namespace cvkit
