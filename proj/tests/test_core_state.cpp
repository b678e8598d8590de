#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include "nvforge/core_state.hpp"
#include "nvforge/errors.hpp"
#include "test_util.hpp"

using namespace nvforge;
using testutil::error_code_of;

TEST_CASE("stage names") {
  CHECK(std::string(stage_name(Stage::AsGrown)) == "as_grown");
  CHECK(std::string(stage_name(Stage::Irradiated)) == "irradiated");
  CHECK(std::string(stage_name(Stage::Annealed)) == "annealed");
}

TEST_CASE("material state holds its fields and totals exactly") {
  const MaterialState s(2.2, 5.5, 1.25, 0.75, Stage::AsGrown);
  CHECK(s.p1_ppm() == 2.2);
  CHECK(s.nv_minus_ppb() == 5.5);
  CHECK(s.nv_zero_ppb() == 1.25);
  CHECK(s.vacancy_ppm() == 0.75);
  CHECK(s.stage() == Stage::AsGrown);
  CHECK(s.nv_total_ppb() == 5.5 + 1.25);
}

TEST_CASE("material state rejects negative and non-finite concentrations") {
  CHECK(error_code_of([] {
          MaterialState(-0.1, 0, 0, 0, Stage::AsGrown);
        }) == ErrorCode::InvalidArgument);
  CHECK(error_code_of([] {
          MaterialState(0, -1, 0, 0, Stage::AsGrown);
        }) == ErrorCode::InvalidArgument);
  CHECK(error_code_of([] {
          MaterialState(0, 0, -1, 0, Stage::AsGrown);
        }) == ErrorCode::InvalidArgument);
  CHECK(error_code_of([] {
          MaterialState(0, 0, 0, -1, Stage::AsGrown);
        }) == ErrorCode::InvalidArgument);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK(error_code_of([nan] {
          MaterialState(nan, 0, 0, 0, Stage::AsGrown);
        }) == ErrorCode::InvalidArgument);
}

TEST_CASE("material state json uses fixed keys and the annealed stage name") {
  const MaterialState s(1.5, 100, 25, 0.5, Stage::Annealed);
  const std::string text = s.to_json().dump();
  CHECK(text.find("\"p1_ppm\": 1.5") != std::string::npos);
  CHECK(text.find("\"nv_minus_ppb\": 100") != std::string::npos);
  CHECK(text.find("\"nv_zero_ppb\": 25") != std::string::npos);
  CHECK(text.find("\"nv_total_ppb\": 125") != std::string::npos);
  CHECK(text.find("\"vacancy_ppm\": 0.5") != std::string::npos);
  CHECK(text.find("\"stage\": \"annealed\"") != std::string::npos);
}

TEST_CASE("irradiation plan validates energy and fluence") {
  const IrradiationPlan plan(2.0, 1e17);
  CHECK(plan.energy_mev == 2.0);
  CHECK(plan.fluence_e_per_cm2 == 1e17);
  CHECK(IrradiationPlan(1.0, 0.0).fluence_e_per_cm2 == 0.0);
  CHECK(error_code_of([] { IrradiationPlan(0.0, 1e17); }) ==
        ErrorCode::InvalidArgument);
  CHECK(error_code_of([] { IrradiationPlan(-1.0, 1e17); }) ==
        ErrorCode::InvalidArgument);
  CHECK(error_code_of([] { IrradiationPlan(2.0, -1.0); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("conversion ratios divide treated totals by the right denominators") {
  const MaterialState grown(2.0, 0, 0, 0, Stage::AsGrown);
  const MaterialState treated(1.5, 400, 100, 0, Stage::Annealed);
  const ConversionRatios r = conversion_ratios(grown, treated);
  // 500 ppb total = 0.5 ppm.
  CHECK(r.r_re == doctest::Approx(0.5 / 1.5).epsilon(1e-14));
  CHECK(r.r_con == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(r.r_con_minus == doctest::Approx(0.2).epsilon(1e-14));

  const std::string text = r.to_json().dump();
  CHECK(text.find("\"r_re\"") != std::string::npos);
  CHECK(text.find("\"r_con\"") != std::string::npos);
  CHECK(text.find("\"r_con_minus\"") != std::string::npos);
}

TEST_CASE("conversion ratios reject wrong stages and zero P1") {
  const MaterialState grown(2.0, 0, 0, 0, Stage::AsGrown);
  const MaterialState treated(1.5, 400, 100, 0, Stage::Annealed);
  CHECK(error_code_of([&] { conversion_ratios(treated, treated); }) ==
        ErrorCode::InvalidArgument);
  CHECK(error_code_of([&] { conversion_ratios(grown, grown); }) ==
        ErrorCode::InvalidArgument);

  const MaterialState zero_grown(0.0, 0, 0, 0, Stage::AsGrown);
  CHECK(error_code_of([&] { conversion_ratios(zero_grown, treated); }) ==
        ErrorCode::ZeroDenominator);
  const MaterialState zero_treated(0.0, 400, 100, 0, Stage::Annealed);
  CHECK(error_code_of([&] { conversion_ratios(grown, zero_treated); }) ==
        ErrorCode::ZeroDenominator);
}

TEST_CASE("error taxonomy: names and validation class") {
  CHECK(std::string(error_name(ErrorCode::Ok)) == "Ok");
  CHECK(std::string(error_name(ErrorCode::ZeroDenominator)) ==
        "ZeroDenominator");
  CHECK(std::string(error_name(ErrorCode::UncalibratedEnergy)) ==
        "UncalibratedEnergy");
  CHECK(std::string(error_name(ErrorCode::RegressionFailure)) ==
        "RegressionFailure");
  CHECK(is_validation_error(ErrorCode::InvalidArgument));
  CHECK(is_validation_error(ErrorCode::BadConfig));
  CHECK(is_validation_error(ErrorCode::IoError));
  CHECK(is_validation_error(ErrorCode::ParseError));
  CHECK(is_validation_error(ErrorCode::DuplicateWavelength));
  CHECK(is_validation_error(ErrorCode::TooShort));
  CHECK(is_validation_error(ErrorCode::UnknownTable));
  CHECK(is_validation_error(ErrorCode::NonPositiveThickness));
  CHECK_FALSE(is_validation_error(ErrorCode::Ok));
  CHECK_FALSE(is_validation_error(ErrorCode::ZeroDenominator));
  CHECK_FALSE(is_validation_error(ErrorCode::ModelOverrun));
  CHECK_FALSE(is_validation_error(ErrorCode::Internal));
}
