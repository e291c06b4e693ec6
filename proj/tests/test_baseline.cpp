#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "llenhance/baseline.hpp"
#include "testkit.hpp"

using namespace llenhance;

TEST_CASE("histogram_equalize") {
  SUBCASE("constant image unchanged") {
    const GrayImage img(5, 5, 37.0);
    CHECK(histogram_equalize(img) == img);
  }
  SUBCASE("two levels already equalized") {
    GrayImage img(4, 4, 0.0);
    for (std::size_t i = 0; i < 8; ++i) img.data()[i] = 255.0;
    const GrayImage out = histogram_equalize(img);
    CHECK(out == img);
  }
  SUBCASE("two dark levels spread to the full range") {
    GrayImage img(4, 1, std::vector<double>{10, 10, 20, 20});
    const GrayImage out = histogram_equalize(img);
    CHECK(out.data()[0] == 0.0);
    CHECK(out.data()[3] == 255.0);
  }
}

TEST_CASE("property: histogram equalization remaps monotonically to a near-linear CDF") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    // Skewed dark content.
    std::gamma_distribution<double> dark(2.0, 12.0);
    GrayImage img(32, 24);
    for (double& v : img.data()) v = std::min(255.0, std::round(dark(rng)));
    const GrayImage out = histogram_equalize(img);

    for (std::size_t i = 0; i < img.size(); ++i) {
      for (std::size_t j = i + 1; j < img.size(); j += 37) {
        if (img.data()[i] < img.data()[j]) CHECK(out.data()[i] <= out.data()[j]);
      }
    }
    // Direct CDF computation: for every occupied output level v, the fraction
    // of pixels <= v tracks v / 255 within one input bin of mass plus a step.
    std::array<int, 256> in_hist{};
    for (double v : img.data()) ++in_hist[static_cast<int>(v)];
    const double n = static_cast<double>(img.size());
    int cdf_min = 0;
    for (int c : in_hist) {
      if (c > 0) {
        cdf_min = c;
        break;
      }
    }
    std::array<int, 256> out_hist{};
    for (double v : out.data()) ++out_hist[static_cast<int>(v)];
    int acc = 0;
    for (int v = 0; v < 256; ++v) {
      acc += out_hist[v];
      if (out_hist[v] == 0) continue;
      const double expected = (acc - cdf_min) / (n - cdf_min) * 255.0;
      CHECK(std::abs(expected - v) <= 0.5 + 1e-9);
    }
  }
}

TEST_CASE("gain_map_enhance") {
  const EnhancementParams p{15.0, 50.0};
  const GrayImage img = testkit::random_image(3, 9, 9);
  CHECK(gain_map_enhance(img, {1.0, 50.0}) == img);
  const GrayImage zeros(3, 3, 0.0);
  CHECK(gain_map_enhance(zeros, p) == zeros);
  CHECK(gain_map_enhance(GrayImage(1, 1, 25.0), p).data()[0] == doctest::Approx(112.5));
  const GrayImage out = gain_map_enhance(img, p, {10.0, 200.0});
  for (double v : out.data()) CHECK((v >= 10.0 && v <= 200.0));
}
