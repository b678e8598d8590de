#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nvforge/coherence.hpp"
#include "nvforge/errors.hpp"
#include "test_util.hpp"

using namespace nvforge;
using testutil::error_code_of;

TEST_CASE("nitrogen-free coherence equals the residual limit exactly") {
  const CoherenceParams params;
  CHECK(t2_from_nitrogen(0.0) == params.t2_other_s);
  CHECK(t2_from_nitrogen(0.0) == 694e-6);
}

TEST_CASE("forward model evaluates the published example point") {
  // [N] = 2.6 ppm / 0.75 = 3.4667 ppm -> ~43.1 us.
  const double t2 = t2_from_nitrogen(3.4667);
  CHECK(std::fabs(t2 * 1e6 - 43.1) < 0.05);
}

TEST_CASE("extreme nitrogen collapses T2 below a nanosecond") {
  CHECK(t2_from_nitrogen(1e6) < 1e-9);
  CHECK(t2_from_nitrogen(1e6) > 0.0);
}

TEST_CASE("T2 is strictly decreasing in nitrogen") {
  double prev = t2_from_nitrogen(0.0);
  for (double n = 1e-3; n <= 1e5; n *= 4.7) {
    const double t2 = t2_from_nitrogen(n);
    CHECK(t2 < prev);
    prev = t2;
  }
}

TEST_CASE("inverse recovers nitrogen to high relative accuracy") {
  for (double n : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    const double back = nitrogen_from_t2(t2_from_nitrogen(n));
    CHECK(back == doctest::Approx(n).epsilon(1e-9));
  }
  const CoherenceParams params;
  CHECK(nitrogen_from_t2(params.t2_other_s) == 0.0);
}

TEST_CASE("inverse of a published T2 lands at the frozen nitrogen value") {
  // Independent oracle: [N] = (1/t2 - 1/t2_other) / b_rate at t2 = 101.3 us.
  CHECK(nitrogen_from_t2(101.3e-6) == doctest::Approx(1.34179).epsilon(1e-4));
}

TEST_CASE("inverse domain errors") {
  CHECK(error_code_of([] { nitrogen_from_t2(0.0); }) == ErrorCode::OutOfRange);
  CHECK(error_code_of([] { nitrogen_from_t2(-1e-6); }) ==
        ErrorCode::OutOfRange);
  CHECK(error_code_of([] { nitrogen_from_t2(695e-6); }) ==
        ErrorCode::OutOfRange);
  CHECK(error_code_of([] { t2_from_nitrogen(-1.0); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("nitrogen from P1 uses the fixed fraction") {
  CHECK(nitrogen_from_p1(0.75) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(nitrogen_from_p1(2.6) == doctest::Approx(2.6 / 0.75).epsilon(1e-12));
  CHECK(nitrogen_from_p1(0.0) == 0.0);
  CHECK(error_code_of([] { nitrogen_from_p1(-1.0); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("parameter validation and overrides") {
  CHECK(error_code_of([] {
          validate_coherence_params({0.0, 694e-6, 0.75});
        }) == ErrorCode::InvalidArgument);
  CHECK(error_code_of([] {
          validate_coherence_params({1000.0, 0.0, 0.75});
        }) == ErrorCode::InvalidArgument);
  CHECK(error_code_of([] {
          validate_coherence_params({1000.0, 694e-6, 0.0});
        }) == ErrorCode::InvalidArgument);
  CHECK(error_code_of([] {
          validate_coherence_params({1000.0, 694e-6, 1.5});
        }) == ErrorCode::InvalidArgument);

  // Doubling the dephasing rate halves the nitrogen-driven term.
  CoherenceParams fast;
  fast.b_rate *= 2.0;
  const double n = 5.0;
  const double inv_default = 1.0 / t2_from_nitrogen(n) - 1.0 / 694e-6;
  const double inv_fast = 1.0 / t2_from_nitrogen(n, fast) - 1.0 / 694e-6;
  CHECK(inv_fast == doctest::Approx(2.0 * inv_default).epsilon(1e-9));

  // The default dephasing rate is angular: 2*pi * 1 kHz per ppm.
  const CoherenceParams params;
  CHECK(params.b_rate ==
        doctest::Approx(2.0 * std::numbers::pi * 1000.0).epsilon(1e-15));
  CHECK(params.p1_fraction == 0.75);
}

TEST_CASE("predictions track the measured high-nitrogen samples") {
  // Samples with P1 >= 0.5 ppm sit within a factor 1.5 of the model.
  const double p1[] = {0.5, 0.8, 1.4, 1.9, 2.6};
  const double measured_us[] = {166.1, 101.3, 72.8, 48.2, 53.3};
  for (int i = 0; i < 5; ++i) {
    const double pred_us = t2_from_nitrogen(nitrogen_from_p1(p1[i])) * 1e6;
    const double ratio = std::max(pred_us / measured_us[i],
                                  measured_us[i] / pred_us);
    CHECK(ratio <= 1.5);
  }
}
