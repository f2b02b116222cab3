#pragma once

// Adaptive Gauss-Kronrod (10/21) integration on finite intervals and a
// panel-doubling driver for [a, inf) integrands that decay eventually.

#include <cstddef>
#include <functional>

namespace hetnet {

struct QuadratureSettings {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  std::size_t max_subdivisions = 2000;
  /// Semi-infinite integrals stop once the integrand at a panel edge falls
  /// below truncation_tol times the largest value seen so far.
  double truncation_tol = 1e-14;

  /// Copy with rel_tol and abs_tol divided by `factor`.
  QuadratureSettings tightened(double factor) const;
};

/// Throws Error(kInvalidSettings) unless every tolerance is > 0 and
/// max_subdivisions >= 1.
void validate(const QuadratureSettings& q);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
};

using Integrand = std::function<double(double)>;

/// Integral over [a, b]. Throws Error(kQuadratureFailure) when the
/// tolerance is not met within q.max_subdivisions intervals.
QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureSettings& q = {});

/// Integral over [lower, inf). `scale` is the width of the first panel and
/// should be the length scale on which f varies; later panels double in
/// width. Requires f continuous, nonnegative and eventually decaying.
QuadratureResult integrate_semi_infinite(const Integrand& f,
                                         const QuadratureSettings& q = {},
                                         double scale = 1.0, double lower = 0.0);

}  // namespace hetnet
