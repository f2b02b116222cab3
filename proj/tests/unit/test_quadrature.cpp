#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "hetnet/error.hpp"
#include "hetnet/quadrature.hpp"

using namespace hetnet;

TEST_CASE("finite interval integrals") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 3.0).value ==
        doctest::Approx(9.0).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi).value ==
        doctest::Approx(2.0).epsilon(1e-13));
  // integrable endpoint singularity
  CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0).value ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK(integrate([](double x) { return std::log(x); }, 0.0, 1.0).value ==
        doctest::Approx(-1.0).epsilon(1e-9));
  // peaked integrand
  const double peak = integrate([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0).value;
  CHECK(peak == doctest::Approx(2.0 / 1e-2 * std::atan(1.0 / 1e-2)).epsilon(1e-10));
}

TEST_CASE("reversed and empty intervals") {
  auto f = [](double x) { return std::exp(x); };
  CHECK(integrate(f, 1.0, 0.0).value == doctest::Approx(-(std::exp(1.0) - 1.0)).epsilon(1e-14));
  CHECK(integrate(f, 2.0, 2.0).value == 0.0);
}

TEST_CASE("semi-infinite integrals") {
  CHECK(integrate_semi_infinite([](double x) { return std::exp(-x); }).value ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate_semi_infinite([](double x) { return x * std::exp(-2.0 * x * x - 0.5 * x * x * x); })
            .value == doctest::Approx(0.207052578116661576).epsilon(1e-11));
  // long length scale, found from a matching hint
  const double s = 3e4;
  CHECK(integrate_semi_infinite([&](double x) { return std::exp(-x / s); }, {}, s).value ==
        doctest::Approx(s).epsilon(1e-11));
  // lower bound
  CHECK(integrate_semi_infinite([](double x) { return std::exp(-x); }, {}, 1.0, 2.0).value ==
        doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  // algebraic decay only
  CHECK(integrate_semi_infinite([](double x) { return 1.0 / (1.0 + x * x); }, {}, 1.0).value ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-6));
}

TEST_CASE("failures are reported") {
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  CHECK(code([] { integrate([](double) { return std::numeric_limits<double>::quiet_NaN(); }, 0, 1); }) ==
        ErrorCode::kQuadratureFailure);
  QuadratureSettings tight;
  tight.max_subdivisions = 3;
  tight.rel_tol = 1e-14;
  CHECK(code([&] { integrate([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, tight); }) ==
        ErrorCode::kQuadratureFailure);

  QuadratureSettings bad;
  bad.rel_tol = -1.0;
  CHECK(code([&] { validate(bad); }) == ErrorCode::kInvalidSettings);
  bad = {};
  bad.max_subdivisions = 0;
  CHECK(code([&] { validate(bad); }) == ErrorCode::kInvalidSettings);
}

TEST_CASE("tightened settings") {
  const QuadratureSettings q;
  const QuadratureSettings t = q.tightened(10.0);
  CHECK(t.rel_tol == doctest::Approx(q.rel_tol / 10.0));
  CHECK(t.abs_tol == doctest::Approx(q.abs_tol / 10.0));
}

TEST_CASE("error estimate is honest") {
  const auto r = integrate([](double x) { return std::exp(-x * x); }, 0.0, 5.0);
  CHECK(std::abs(r.value - std::sqrt(std::numbers::pi) / 2 * std::erf(5.0)) <= std::max(r.error, 1e-15));
  CHECK(r.evaluations >= 21);
}
