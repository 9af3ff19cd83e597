#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rabi/errors.hpp"
#include "rabi/numerics/spectrum.hpp"

namespace {

rabi::TimeSeries synth(std::size_t n, double dt) {
  rabi::TimeSeries s;
  s.t = rabi::uniform_grid(dt, n - 1);
  for (double t : s.t) {
    s.p1.push_back(0.4 + 0.3 * std::cos(2.0 * std::numbers::pi * 1.37 * t) +
                   0.05 * std::cos(2.0 * std::numbers::pi * 4.02 * t + 0.3));
  }
  return s;
}

}  // namespace

TEST_CASE("recovers two tones") {
  const auto s = synth(8192, 0.01);
  const auto peaks = rabi::dominant_peaks(s);
  REQUIRE(peaks.size() >= 2);
  const double bin = rabi::spectral_bin_width(s);
  CHECK(bin == doctest::Approx(1.0 / 81.92));
  CHECK(std::abs(peaks[0].frequency - 1.37) < 0.25 * bin);
  CHECK(std::abs(peaks[1].frequency - 4.02) < 0.25 * bin);
  CHECK(peaks[0].amplitude == doctest::Approx(0.3).epsilon(0.03));
  CHECK(peaks[1].amplitude == doctest::Approx(0.05).epsilon(0.03));
}

TEST_CASE("a constant has no peaks") {
  rabi::TimeSeries s;
  s.t = rabi::uniform_grid(0.1, 2047);
  s.p1.assign(s.t.size(), 0.25);
  CHECK(rabi::dominant_peaks(s).empty());
}

TEST_CASE("max_peaks caps the list") {
  rabi::PeakOptions o;
  o.max_peaks = 1;
  CHECK(rabi::dominant_peaks(synth(4096, 0.01), o).size() == 1);
}

TEST_CASE("contract violations") {
  CHECK_THROWS_AS(rabi::dominant_peaks(synth(512, 0.01)), rabi::ContractViolation);
  auto s = synth(2048, 0.01);
  s.t[100] += 0.003;
  CHECK_THROWS_AS(rabi::dominant_peaks(s), rabi::ContractViolation);
  s = synth(2048, 0.01);
  s.p1.pop_back();
  CHECK_THROWS_AS(rabi::dominant_peaks(s), rabi::ContractViolation);
}

TEST_CASE("single and paired cosines over a span of 100") {
  rabi::TimeSeries one, two;
  one.t = two.t = rabi::uniform_grid(100.0 / 4096, 4096);
  const double tau = 2.0 * std::numbers::pi;
  for (double t : one.t) {
    one.p1.push_back(0.5 - 0.5 * std::cos(tau * 0.3 * t));
    two.p1.push_back(0.4 * std::cos(tau * 0.3 * t) + 0.1 * std::cos(tau * 0.7 * t));
  }
  const auto p1 = rabi::dominant_peaks(one);
  REQUIRE(p1.size() == 1);
  CHECK(std::abs(p1[0].frequency - 0.3) <= 1.0 / 200.0);
  const auto p2 = rabi::dominant_peaks(two);
  REQUIRE(p2.size() == 2);
  CHECK(std::abs(p2[0].frequency - 0.3) <= 1.0 / 200.0);
  CHECK(std::abs(p2[1].frequency - 0.7) <= 1.0 / 200.0);
  CHECK(p2[0].amplitude > p2[1].amplitude);
}
