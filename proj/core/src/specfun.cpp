#include "hetnet/specfun.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hetnet/error.hpp"

namespace hetnet {

namespace {

// Int_T^inf du / (1 + u^a) for T >= 2, a > 1, via the alternating series
// sum_{n>=0} (-1)^n T^(1 - a(n+1)) / (a(n+1) - 1). Ratio of terms <= 2^-a.
double kernel_tail(double T, double a) {
  const double ratio = std::pow(T, -a);
  double power = T * ratio;  // T^(1-a)
  double sum = 0.0;
  double sign = 1.0;
  for (int n = 0; n < 4096; ++n) {
    const double term = power / (a * (n + 1) - 1.0);
    sum += sign * term;
    if (term <= std::numeric_limits<double>::epsilon() * 0.25 * std::abs(sum)) break;
    power *= ratio;
    sign = -sign;
  }
  return sum;
}

}  // namespace

double z_kernel(double tau, double alpha, double b_hat, const QuadratureSettings& q) {
  if (!(alpha > 2.0) || !std::isfinite(alpha)) {
    std::ostringstream os;
    os << "Z kernel needs alpha > 2 (got " << alpha << ")";
    throw Error(ErrorCode::kAlphaOutOfRange, os.str());
  }
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw Error(ErrorCode::kInvalidArgument, "Z kernel needs finite tau >= 0");
  }
  if (!(b_hat > 0.0) || !std::isfinite(b_hat)) {
    throw Error(ErrorCode::kInvalidArgument, "Z kernel needs b_hat > 0");
  }
  if (tau == 0.0) return 0.0;

  const double a = 0.5 * alpha;
  const double lower = std::pow(b_hat / tau, 1.0 / a);
  if (!std::isfinite(lower)) {
    // tau underflowed relative to b_hat: leading term of the 2F1 form.
    return 2.0 * tau * std::pow(b_hat, 2.0 / alpha - 1.0) / (alpha - 2.0);
  }
  const double split = std::max(2.0 * lower, 2.0);
  const double head =
      integrate([a](double u) { return 1.0 / (1.0 + std::pow(u, a)); }, lower, split, q)
          .value;
  return std::pow(tau, 1.0 / a) * (head + kernel_tail(split, a));
}

double z_kernel_alpha4(double tau, double b_hat) {
  return std::sqrt(tau) * std::atan(std::sqrt(tau / b_hat));
}

}  // namespace hetnet
