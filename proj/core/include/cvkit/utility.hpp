// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "cvkit/errors.hpp"
#include "cvkit/types.hpp"

namespace cvkit {

enum class Family {
  PowerWeighted,              // u(x; z) = sum_n x_n^alpha * z1_n, identity transform
  LogTransformedPowerWeighted,  // same u, reported through g(u) = ln(u) + offset
  AdditiveSeparablePower,     // u(x; z) = (x1 x2)^(1/alpha) + (z11 z12)^(1/beta)
  GenericHomothetic,          // caller-supplied evaluator with declared degrees
};

/// JSON name of a family ("PowerWeighted", ...).
std::string family_name(Family family);

/// Strictly increasing reporting scale g applied on top of the underlying
/// utility. Either the identity or g(u) = ln(u) + offset.
class Transform {
 public:
  enum class Kind { Identity, LogPlus };

  static Transform identity();
  static Transform log_plus(double offset);

  Kind kind() const noexcept { return kind_; }
  double offset() const noexcept { return offset_; }
  bool is_identity() const noexcept { return kind_ == Kind::Identity; }

  /// g(u). LogPlus throws DomainError for u <= 0.
  double apply(double u) const;
  /// g^{-1}(value).
  double invert(double value) const;

 private:
  Transform(Kind kind, double offset) : kind_(kind), offset_(offset) {}
  Kind kind_;
  double offset_;
};

/// Ingredients of a GenericHomothetic spec. The evaluator computes the
/// underlying utility u(x; z1, z2) on strictly positive inputs; the declared
/// degrees are verified numerically at construction and rejected when wrong.
struct GenericDefinition {
  std::size_t num_goods = 2;
  std::size_t num_z1 = 2;
  std::size_t num_z2 = 0;
  std::function<double(std::span<const double>, std::span<const double>, std::span<const double>)>
      evaluator;
  double eta = 1.0;    // declared degree in x
  double theta = 1.0;  // declared degree in z1
  Transform transform = Transform::identity();
};

/// A complete description of preferences: family, parameters, declared
/// homogeneity degrees, and the reporting transform. Immutable value type.
class UtilitySpec {
 public:
  /// u(x; z) = sum_n x_n^alpha z1_n with eta = alpha, theta = 1.
  /// alpha must lie in (0, 1) unless allow_unrestricted_alpha is set (then
  /// any finite alpha != 0 is accepted; interior solutions are no longer
  /// guaranteed and the solvers may legitimately fail).
  static UtilitySpec power_weighted(double alpha, std::size_t num_goods = 2,
                                    bool allow_unrestricted_alpha = false);

  /// Same underlying utility, reported through g(u) = ln(u) + offset.
  static UtilitySpec log_power_weighted(double alpha, std::size_t num_goods = 2,
                                        double offset = 5.0,
                                        bool allow_unrestricted_alpha = false);

  /// u(x; z) = (x1 x2)^(1/alpha) + (z11 z12)^(1/beta), two private and two
  /// scalable public goods. Not homogeneous in x or z1 separately; jointly
  /// homogeneous of degree 2/alpha exactly when alpha == beta.
  static UtilitySpec additive_separable_power(double alpha, double beta);

  /// Wraps a caller-supplied evaluator. The declared degrees are checked by
  /// sampling: for deterministic base points and t in {0.5, 2, 10} the
  /// identities |ln u(t x; z) - ln u(x; z) - eta ln t| < 1e-8 and the z1
  /// analogue must hold, otherwise SpecError.
  static UtilitySpec generic_homothetic(GenericDefinition definition);

  Family family() const noexcept { return family_; }
  std::size_t num_goods() const noexcept { return num_goods_; }
  std::size_t num_z1() const noexcept { return num_z1_; }
  std::size_t num_z2() const noexcept { return num_z2_; }
  const Transform& transform() const noexcept { return transform_; }

  /// (eta, theta) when the underlying utility is homogeneous in x and z1
  /// separately; empty for AdditiveSeparablePower.
  std::optional<HomogeneityDegrees> independent_degrees() const noexcept { return independent_; }

  /// Degree under joint scaling of (x, z1); empty when not jointly
  /// homogeneous (AdditiveSeparablePower with alpha != beta).
  std::optional<double> joint_degree() const noexcept { return joint_; }

  /// Family parameter access; SpecError when the family has no such
  /// parameter.
  double alpha() const;
  double beta() const;
  bool unrestricted_alpha() const noexcept { return unrestricted_alpha_; }

  /// Serialization. GenericHomothetic specs carry code and cannot round-trip
  /// through JSON; both directions throw SpecError for them.
  nlohmann::json to_json() const;
  static UtilitySpec from_json(const nlohmann::json& j);

  /// Reads and parses a spec file. IoError when unreadable, SpecError when
  /// malformed.
  static UtilitySpec load(const std::string& path);

 private:
  UtilitySpec() = default;

  friend double evaluate_underlying(const UtilitySpec&, std::span<const double>,
                                    const PublicBundle&);

  Family family_ = Family::PowerWeighted;
  std::size_t num_goods_ = 2;
  std::size_t num_z1_ = 2;
  std::size_t num_z2_ = 0;
  double alpha_ = 0.5;
  double beta_ = 0.5;
  bool unrestricted_alpha_ = false;
  Transform transform_ = Transform::identity();
  std::optional<HomogeneityDegrees> independent_;
  std::optional<double> joint_;
  std::function<double(std::span<const double>, std::span<const double>, std::span<const double>)>
      generic_;
};

/// The underlying utility u(x; z1, z2) before the transform. Validates
/// dimensions (DimensionError) and domain (DomainError, e.g. x_n = 0 with a
/// negative exponent) instead of returning NaN.
double evaluate_underlying(const UtilitySpec& spec, const PrivateBundle& x,
                           const PublicBundle& z);

/// h(x; z) = g(u(x; z)): the utility on the reporting scale.
double evaluate_utility(const UtilitySpec& spec, const PrivateBundle& x, const PublicBundle& z);

/// Span overloads used on solver hot paths: same semantics, no bundle
/// construction. Components of x are trusted to be >= 0.
double evaluate_underlying(const UtilitySpec& spec, std::span<const double> x,
                           const PublicBundle& z);
double evaluate_utility(const UtilitySpec& spec, std::span<const double> x, const PublicBundle& z);

}  // namespace cvkit
