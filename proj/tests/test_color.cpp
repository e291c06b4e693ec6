#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "llenhance/color.hpp"
#include "llenhance/pipeline.hpp"
#include "testkit.hpp"

using namespace llenhance;

namespace {

RgbImage pixel(double r, double g, double b) {
  return RgbImage(GrayImage(1, 1, r), GrayImage(1, 1, g), GrayImage(1, 1, b));
}

RgbImage random_rgb(std::uint64_t seed, int w, int h, double hi = 255.0) {
  return RgbImage(testkit::random_image(seed, w, h, 0.0, hi),
                  testkit::random_image(seed + 1, w, h, 0.0, hi),
                  testkit::random_image(seed + 2, w, h, 0.0, hi));
}

double max_abs_diff(const GrayImage& a, const GrayImage& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace

TEST_CASE("rgb_to_ycc examples") {
  YccImage black = rgb_to_ycc(pixel(0, 0, 0));
  CHECK(black.y.data()[0] == 0.0);
  CHECK(black.cb.data()[0] == 128.0);
  CHECK(black.cr.data()[0] == 128.0);

  YccImage white = rgb_to_ycc(pixel(255, 255, 255));
  CHECK(white.y.data()[0] == doctest::Approx(255.0).epsilon(1e-12));
  CHECK(white.cb.data()[0] == doctest::Approx(128.0).epsilon(1e-12));
  CHECK(white.cr.data()[0] == doctest::Approx(128.0).epsilon(1e-12));

  // Hand evaluation: Y = 0.299 * 255, Cr = 128 + (255 - Y) * 0.713,
  // Cb = 128 + (0 - Y) * 0.564.
  YccImage red = rgb_to_ycc(pixel(255, 0, 0));
  CHECK(red.y.data()[0] == doctest::Approx(76.245).epsilon(1e-12));
  CHECK(red.cr.data()[0] == doctest::Approx(255.452315).epsilon(1e-12));
  CHECK(red.cb.data()[0] == doctest::Approx(84.99782).epsilon(1e-12));
}

TEST_CASE("ycc_to_rgb examples") {
  const RgbImage black = ycc_to_rgb({GrayImage(1, 1, 0.0), GrayImage(1, 1, 128.0), GrayImage(1, 1, 128.0)});
  CHECK(black.red().data()[0] == 0.0);
  CHECK(black.green().data()[0] == 0.0);
  CHECK(black.blue().data()[0] == 0.0);
  const RgbImage gray = ycc_to_rgb({GrayImage(1, 1, 150.0), GrayImage(1, 1, 128.0), GrayImage(1, 1, 128.0)});
  CHECK(gray.red().data()[0] == doctest::Approx(150.0).epsilon(1e-14));
  CHECK(gray.green().data()[0] == doctest::Approx(150.0).epsilon(1e-14));
  CHECK(gray.blue().data()[0] == doctest::Approx(150.0).epsilon(1e-14));
  CHECK_THROWS_AS(ycc_to_rgb({GrayImage(1, 1), GrayImage(1, 2), GrayImage(1, 1)}), Error);
}

TEST_CASE("property: colour transforms are mutual inverses") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> d(0.0, 255.0);
  RgbImage img(64, 64);
  for (GrayImage* plane : {&img.red(), &img.green(), &img.blue()}) {
    for (double& v : plane->data()) v = d(rng);
  }
  const RgbImage back = ycc_to_rgb(rgb_to_ycc(img));
  CHECK(max_abs_diff(back.red(), img.red()) <= 1e-9);
  CHECK(max_abs_diff(back.green(), img.green()) <= 1e-9);
  CHECK(max_abs_diff(back.blue(), img.blue()) <= 1e-9);
  CHECK(max_abs_diff(luminance(img), rgb_to_ycc(img).y) == 0.0);
}

TEST_CASE("enhance_color") {
  const IntensityRange range;
  SolverConfig cfg;

  SUBCASE("gray content commutes with the gray pipeline") {
    const GrayImage g = testkit::random_image(77, 20, 15, 0.0, 120.0);
    const RgbImage rgb(g, g, g);
    const ColorEnhancement col = enhance_color(rgb, {15.0, 50.0}, range, cfg);
    const GrayEnhancement gray = enhance_gray(g, {15.0, 50.0}, range, cfg);
    CHECK(max_abs_diff(col.image.red(), gray.image) <= 1e-6);
    CHECK(max_abs_diff(col.image.green(), gray.image) <= 1e-6);
    CHECK(max_abs_diff(col.image.blue(), gray.image) <= 1e-6);
  }
  SUBCASE("beta 1 reproduces the input") {
    const RgbImage rgb = random_rgb(5, 33, 21);
    const ColorEnhancement col = enhance_color(rgb, {1.0, 50.0}, range, cfg);
    CHECK(col.report.converged);
    CHECK(max_abs_diff(col.image.red(), rgb.red()) <= 10.0 * cfg.tol);
    CHECK(max_abs_diff(col.image.green(), rgb.green()) <= 10.0 * cfg.tol);
    CHECK(max_abs_diff(col.image.blue(), rgb.blue()) <= 10.0 * cfg.tol);
  }
  SUBCASE("luma stays in range and chroma passes through") {
    const RgbImage rgb = random_rgb(9, 40, 30, 90.0);
    const ColorEnhancement col = enhance_color(rgb, {15.0, 50.0}, range, cfg);
    const YccImage before = rgb_to_ycc(rgb);
    const YccImage after = rgb_to_ycc(col.image);
    for (double v : after.y.data()) {
      CHECK(v >= -1e-9);
      CHECK(v <= 255.0 + 1e-9);
    }
    CHECK(max_abs_diff(before.cb, after.cb) <= 1e-9);
    CHECK(max_abs_diff(before.cr, after.cr) <= 1e-9);
    CHECK(col.anchor_mean == doctest::Approx(before.y.mean()));
  }
}

TEST_CASE("enhance_gray brightens dark regions and stays feasible") {
  GrayImage img(40, 30);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> noise(0.0, 6.0);
  for (int y = 0; y < 30; ++y) {
    for (int x = 0; x < 40; ++x) img.at(x, y) = (x < 20 ? 10.0 : 180.0) + std::round(noise(rng));
  }
  const IntensityRange range;
  const GrayEnhancement res = enhance_gray(img, {15.0, 50.0}, range, SolverConfig{});
  CHECK(res.report.converged);
  for (double v : res.image.data()) CHECK((v >= 0.0 && v <= 255.0));
  // Local contrast in the dark half is amplified.
  double in_var = 0.0;
  double out_var = 0.0;
  for (int y = 0; y < 30; ++y) {
    for (int x = 0; x + 1 < 19; ++x) {
      in_var += std::pow(img.at(x + 1, y) - img.at(x, y), 2);
      out_var += std::pow(res.image.at(x + 1, y) - res.image.at(x, y), 2);
    }
  }
  CHECK(out_var > 4.0 * in_var);
  CHECK(res.anchor_mean == doctest::Approx(img.mean()));
}

TEST_CASE("pipeline honours the gradient hook") {
  const GrayImage img = testkit::random_image(4, 10, 10, 0.0, 100.0);
  SolverConfig cfg;
  cfg.anchor_mean = 50.0;
  const GrayEnhancement flat = enhance_gray(img, {15.0, 50.0}, {}, cfg, [](const GradientField& g) {
    return GradientField(g.width(), g.height());
  });
  for (double v : flat.image.data()) CHECK(std::abs(v - 50.0) <= 10.0 * cfg.tol);
}
