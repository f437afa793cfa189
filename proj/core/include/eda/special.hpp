#pragma once

#include <cstdint>
#include <span>

// Special functions and test statistics used by the insight detectors.
namespace eda::special {

double normal_cdf(double x) noexcept;

/// Inverse standard normal CDF; absolute error well below 1e-8 on (0, 1).
/// Returns -inf / +inf at 0 / 1 and NaN outside [0, 1].
double normal_quantile(double p) noexcept;

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// Survival function of the chi-square distribution with `dof` degrees of freedom.
double chi2_sf(double x, double dof);

struct ChiSquare {
  double statistic = 0;
  double dof = 0;
  double p_value = 1;
};

/// Pearson goodness-of-fit against equal expected frequencies.
ChiSquare chi_square_uniform(std::span<const std::int64_t> counts);

struct Normality {
  double skew_z = 0;
  double kurtosis_z = 0;
  double k2 = 0;
  double p_value = 0;
};

/// D'Agostino-Pearson omnibus test. Needs n >= 8 and nonzero variance
/// (throws DegenerateSpread / NoData otherwise).
Normality dagostino_pearson(std::span<const double> sample);

/// Two-sample Kolmogorov-Smirnov statistic of two ascending samples.
double ks_statistic(std::span<const double> sorted_a, std::span<const double> sorted_b) noexcept;

}  // namespace eda::special
