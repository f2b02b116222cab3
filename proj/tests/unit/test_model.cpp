#include "doctest.h"

#include <cmath>

#include "fixtures.hpp"
#include "hetnet/config_io.hpp"
#include "hetnet/model.hpp"

using namespace hetnet;

namespace {

ErrorCode code_of(const NetworkConfig& c) {
  try {
    validate(c);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected validate() to throw");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("unit conversions") {
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(dbm_to_watts(53.0) == doctest::Approx(199.526231496888).epsilon(1e-12));
  CHECK(watts_to_dbm(0.001) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(db_to_linear(-38.5) == doctest::Approx(1.41253754462275e-4).epsilon(1e-12));
  CHECK(linear_to_db(100.0) == doctest::Approx(20.0));
  CHECK(per_km2_to_per_m2(5.0) == 5e-6);
  CHECK(per_m2_to_per_km2(5e-6) == doctest::Approx(5.0));
  for (double db : {-104.0, -3.0, 0.0, 17.25}) {
    CHECK(linear_to_db(db_to_linear(db)) == doctest::Approx(db).epsilon(1e-13));
    CHECK(watts_to_dbm(dbm_to_watts(db)) == doctest::Approx(db).epsilon(1e-13));
  }
}

TEST_CASE("validate rejects bad parameters") {
  NetworkConfig ok = fixture::macro_pico(2.0, 0.0);
  CHECK(&validate(ok) == &ok);

  NetworkConfig c = ok;
  c.tiers.clear();
  CHECK(code_of(c) == ErrorCode::kEmptyTierList);

  c = ok;
  c.tiers[1].pathloss_exp = 2.0;
  CHECK(code_of(c) == ErrorCode::kInvalidExponent);
  try {
    validate(c);
  } catch (const Error& e) {
    CHECK(e.tier() == 2);
  }

  c = ok;
  c.tiers[0].density = 0.0;
  CHECK(code_of(c) == ErrorCode::kNonPositiveParameter);
  c = ok;
  c.tiers[0].power = -1.0;
  CHECK(code_of(c) == ErrorCode::kNonPositiveParameter);
  c = ok;
  c.tiers[1].bias = 0.0;
  CHECK(code_of(c) == ErrorCode::kNonPositiveParameter);
  c = ok;
  c.tiers[1].bias = std::nan("");
  CHECK(code_of(c) == ErrorCode::kNonPositiveParameter);
  c = ok;
  c.noise_power = -1e-15;
  CHECK(code_of(c) == ErrorCode::kNonPositiveParameter);
  c = ok;
  c.user_density = -1.0;
  CHECK(code_of(c) == ErrorCode::kNonPositiveParameter);

  c = ok;
  c.noise_power = 0.0;
  CHECK_NOTHROW(validate(c));
}

TEST_CASE("ratios relative to the serving tier") {
  NetworkConfig c = fixture::three_tier_mixed();
  const auto r = ratios(c, 1);
  REQUIRE(r.size() == 3);
  CHECK(r[1].p_hat == 1.0);
  CHECK(r[1].b_hat == 1.0);
  CHECK(r[1].a_hat == 1.0);
  CHECK(r[0].p_hat == doctest::Approx(100.0));
  CHECK(r[0].b_hat == doctest::Approx(db_to_linear(-6.0)));
  CHECK(r[0].a_hat == doctest::Approx(3.5 / 3.8));
  CHECK(r[2].a_hat == doctest::Approx(4.0 / 3.8));

  CHECK_THROWS_AS(ratios(c, 3), Error);
  try {
    ratios(c, 7);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIndexOutOfRange);
  }
}

TEST_CASE("equal exponent and bias predicates") {
  CHECK(equal_exponents(fixture::macro_pico(2.0, 10.0)));
  CHECK_FALSE(equal_biases(fixture::macro_pico(2.0, 10.0)));
  CHECK(equal_biases(fixture::macro_pico(2.0, 0.0)));
  CHECK_FALSE(equal_exponents(fixture::three_tier_mixed()));
}

TEST_CASE("error messages carry the code name") {
  const Error e(ErrorCode::kZeroUserDensity, "no users");
  CHECK(std::string(e.what()).find("ZeroUserDensity") != std::string::npos);
  CHECK(to_string(ErrorCode::kConfigParseError) == "ConfigParseError");
}

TEST_CASE("config parsing") {
  const char* text = R"({
    "noise_dbm": -104, "l0_db": -38.5, "user_density_per_km2": 20,
    "tiers": [
      {"power_dbm": 53, "density_per_km2": 1.2732395447351628, "alpha": 3.5},
      {"power_dbm": 33, "density_per_km2": 10, "alpha": 4, "bias_db": 10}
    ]})";
  const NetworkConfig c = parse_config(text);
  REQUIRE(c.num_tiers() == 2);
  CHECK(c.noise_power == doctest::Approx(dbm_to_watts(-104.0)).epsilon(1e-14));
  CHECK(c.ref_pathloss == doctest::Approx(db_to_linear(-38.5)).epsilon(1e-14));
  CHECK(c.ref_distance == 1.0);
  CHECK(c.user_density == doctest::Approx(2e-5).epsilon(1e-14));
  CHECK(c.tiers[0].density == doctest::Approx(fixture::kMacroDensity).epsilon(1e-14));
  CHECK(c.tiers[0].bias == 1.0);
  CHECK(c.tiers[1].bias == doctest::Approx(10.0));
  CHECK(c.tiers[1].pathloss_exp == 4.0);

  SUBCASE("round trip") {
    const NetworkConfig back = parse_config(dump_config(c));
    REQUIRE(back.num_tiers() == 2);
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(back.tiers[j].power == doctest::Approx(c.tiers[j].power).epsilon(1e-13));
      CHECK(back.tiers[j].density == doctest::Approx(c.tiers[j].density).epsilon(1e-13));
      CHECK(back.tiers[j].bias == doctest::Approx(c.tiers[j].bias).epsilon(1e-13));
    }
    CHECK(back.noise_power == doctest::Approx(c.noise_power).epsilon(1e-13));
  }
}

TEST_CASE("null noise means interference limited") {
  const NetworkConfig c = parse_config(
      R"({"noise_dbm": null, "l0_db": 0, "tiers": [{"power_dbm": 30, "density_per_km2": 1, "alpha": 4}]})");
  CHECK(c.noise_power == 0.0);
  CHECK(c.user_density == 0.0);
  CHECK(parse_config(dump_config(c)).noise_power == 0.0);
}

TEST_CASE("config parse errors") {
  auto code = [](const char* text) {
    try {
      parse_config(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  CHECK(code("{") == ErrorCode::kConfigParseError);
  CHECK(code("[]") == ErrorCode::kConfigParseError);
  CHECK(code(R"({"noise_dbm": null, "l0_db": 0, "tiers": []})") == ErrorCode::kConfigParseError);
  CHECK(code(R"({"l0_db": 0, "tiers": [{"power_dbm": 30, "density_per_km2": 1, "alpha": 4}]})") ==
        ErrorCode::kConfigParseError);
  CHECK(code(R"({"noise_dbm": null, "l0_db": 0, "tiers": [{"power_dbm": 30, "alpha": 4}]})") ==
        ErrorCode::kConfigParseError);
  CHECK(code(R"({"noise_dbm": null, "l0_db": 0, "tiers": [{"power_dbm": "x", "density_per_km2": 1, "alpha": 4}]})") ==
        ErrorCode::kConfigParseError);
  CHECK(code(R"({"noise_dbm": null, "l0_db": 0, "tiers": [{"power_dbm": 30, "density_per_km2": 1, "alpha": 1.5}]})") ==
        ErrorCode::kInvalidExponent);
  CHECK_THROWS_AS(load_config("/nonexistent/net.json"), Error);
}
