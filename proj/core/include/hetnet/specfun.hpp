#pragma once

#include "hetnet/quadrature.hpp"

namespace hetnet {

/// Interference kernel
///
///   Z(tau, alpha, b) = tau^(2/alpha) * Int_{(b/tau)^(2/alpha)}^inf du / (1 + u^(alpha/2))
///
/// which equals 2 tau b^(2/alpha-1)/(alpha-2) * 2F1(1, 1-2/alpha; 2-2/alpha; -tau/b).
/// The head of the range is integrated adaptively; beyond u = max(2L, 2) the
/// integrand is expanded as sum_n (-1)^n u^(-a(n+1)), which converges there
/// and integrates term by term. Z(0, ., .) = 0.
///
/// Throws Error(kAlphaOutOfRange) for alpha <= 2, Error(kInvalidArgument) for
/// tau < 0 or b_hat <= 0, and propagates kQuadratureFailure.
double z_kernel(double tau, double alpha, double b_hat, const QuadratureSettings& q = {});

/// Closed form of z_kernel at alpha = 4: sqrt(tau) * atan(sqrt(tau / b_hat)).
double z_kernel_alpha4(double tau, double b_hat);

}  // namespace hetnet
