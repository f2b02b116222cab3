#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hetnet/error.hpp"
#include "hetnet/specfun.hpp"
#include "oracles.hpp"

using namespace hetnet;

TEST_CASE("kernel matches a midpoint sum") {
  // u = 1 / s^2 maps the tail onto (0, 1]
  const double ref =
      oracle::midpoint([](double s) { return 2.0 / (1.0 + s * s * s); }, 0.0, 1.0, 10'000'000);
  CHECK(ref == doctest::Approx(oracle::kZ_tau1_alpha3_b1).epsilon(1e-12));
  CHECK(z_kernel(1.0, 3.0, 1.0) == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("kernel matches the hypergeometric series") {
  for (double alpha : {2.1, 2.5, 3.0, 3.5, 3.8, 4.0, 5.0, 6.0}) {
    for (double b : {0.01, 0.1, 1.0, 10.0, 100.0}) {
      for (double tau : {1e-3, 0.1, 1.0, 10.0, 100.0}) {
        CAPTURE(alpha);
        CAPTURE(b);
        CAPTURE(tau);
        CHECK(z_kernel(tau, alpha, b) ==
              doctest::Approx(oracle::z_kernel(tau, alpha, b)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("alpha = 4 arctangent form") {
  CHECK(z_kernel_alpha4(2.0, 0.5) == doctest::Approx(oracle::kZ_tau2_alpha4_bhalf).epsilon(1e-15));
  CHECK(z_kernel(2.0, 4.0, 0.5) == doctest::Approx(oracle::kZ_tau2_alpha4_bhalf).epsilon(1e-10));
  CHECK(z_kernel_alpha4(1.0, 1.0) == doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
  for (double b : {0.1, 1.0, 10.0}) {
    for (double tau : {0.1, 1.0, 10.0}) {
      CHECK(z_kernel(tau, 4.0, b) == doctest::Approx(z_kernel_alpha4(tau, b)).epsilon(1e-10));
    }
  }
}

TEST_CASE("kernel limits and monotonicity") {
  CHECK(z_kernel(0.0, 3.5, 1.0) == 0.0);
  // small-tau leading term
  const double tau = 1e-9;
  CHECK(z_kernel(tau, 3.5, 2.0) ==
        doctest::Approx(2.0 * tau * std::pow(2.0, 2.0 / 3.5 - 1.0) / 1.5).epsilon(1e-7));
  double prev = 0.0;
  for (double t = 0.01; t < 1000.0; t *= 1.7) {
    const double z = z_kernel(t, 3.5, 1.0);
    CHECK(z > prev);
    prev = z;
  }
  // larger bias pushes interferers out
  CHECK(z_kernel(1.0, 3.5, 10.0) < z_kernel(1.0, 3.5, 1.0));
}

TEST_CASE("kernel domain errors") {
  auto code = [](double tau, double alpha, double b) {
    try {
      z_kernel(tau, alpha, b);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kNotApplicable;
  };
  CHECK(code(1.0, 2.0, 1.0) == ErrorCode::kAlphaOutOfRange);
  CHECK(code(1.0, 1.5, 1.0) == ErrorCode::kAlphaOutOfRange);
  CHECK(code(-1.0, 3.0, 1.0) == ErrorCode::kInvalidArgument);
  CHECK(code(1.0, 3.0, 0.0) == ErrorCode::kInvalidArgument);
}
