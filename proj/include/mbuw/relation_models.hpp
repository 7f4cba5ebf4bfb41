#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbuw/surface_scan.hpp"

namespace mbuw {

/// beta = g(alpha) families:
///   exponential_decay  a exp(b alpha) + c, b < 0
///   quadratic          a alpha^2 + b alpha + c
///   reciprocal         a / alpha + b
///   power_law          a alpha^b + c
///   linear             a alpha + b
enum class Family { exponential_decay, quadratic, reciprocal, power_law, linear };

inline constexpr std::array<Family, 5> kAllFamilies{Family::exponential_decay, Family::quadratic, Family::reciprocal,
                                                    Family::power_law, Family::linear};

/// CLI names: expdecay, quadratic, reciprocal, powerlaw, linear.
std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);
std::size_t coefficient_count(Family f);

struct RelationModel {
  Family family = Family::linear;
  std::vector<double> coefficients;
  double rss = 0.0;
  double r2 = 0.0;
  double rmse = 0.0;
  std::size_t points = 0;
  /// alpha span of the pairs the model was fitted on.
  double alpha_min = 0.0;
  double alpha_max = 0.0;

  /// Model with given coefficients and no fit metrics.
  static RelationModel make(Family family, std::vector<double> coefficients);

  double predict(double alpha) const;
  /// d beta / d alpha.
  double derivative(double alpha) const;
  /// False outside the fitted alpha span (extrapolation).
  bool in_domain(double alpha) const;
};

/// Least squares fit. Linear-in-coefficient families are solved directly; the
/// exponent of expdecay / powerlaw is profiled by a grid plus golden-section
/// search with the remaining coefficients solved exactly at each trial.
RelationModel fit_relation(const RidgePairs& pairs, Family family);

/// Residual sum of squares of `model` on `pairs`.
double residual_sum_of_squares(const RelationModel& model, const RidgePairs& pairs);

}  // namespace mbuw
