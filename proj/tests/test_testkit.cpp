#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "testkit.hpp"

using namespace llenhance;
using testkit::InstanceKind;

TEST_CASE("make_instance is deterministic per seed") {
  for (InstanceKind kind : {InstanceKind::Integrable, InstanceKind::Random, InstanceKind::Saturating}) {
    const auto a = testkit::make_instance(9, 6, 5, kind);
    const auto b = testkit::make_instance(9, 6, 5, kind);
    CHECK(a.image == b.image);
    CHECK(a.field == b.field);
    const auto c = testkit::make_instance(10, 6, 5, kind);
    CHECK_FALSE(a.field == c.field);
  }
}

TEST_CASE("random instances draw from [-64, 64]") {
  const auto inst = testkit::make_instance(3, 8, 8, InstanceKind::Random);
  for (double v : inst.field.horizontal()) CHECK((v >= -64.0 && v <= 64.0));
  for (double v : inst.field.vertical()) CHECK((v >= -64.0 && v <= 64.0));
}

TEST_CASE("saturating instance integral exits the range") {
  const auto inst = testkit::make_instance(1, 8, 8, InstanceKind::Saturating);
  // Path integral: along row 0, then down each column.
  GrayImage u(8, 8);
  for (int x = 1; x < 8; ++x) u.at(x, 0) = u.at(x - 1, 0) + inst.field.h(x - 1, 0);
  for (int y = 1; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) u.at(x, y) = u.at(x, y - 1) + inst.field.v(x, y - 1);
  }
  CHECK(u.max() - u.min() > 255.0);
  // The field is consistent: integrating along the other path agrees.
  GrayImage w(8, 8);
  for (int y = 1; y < 8; ++y) w.at(0, y) = w.at(0, y - 1) + inst.field.v(0, y - 1);
  for (int y = 0; y < 8; ++y) {
    for (int x = 1; x < 8; ++x) w.at(x, y) = w.at(x - 1, y) + inst.field.h(x - 1, y);
  }
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(u.data()[i] == doctest::Approx(w.data()[i]));
}

TEST_CASE("qp_oracle") {
  const IntensityRange range;
  SUBCASE("zero field") {
    const auto res = testkit::qp_oracle(GradientField(5, 5), range);
    CHECK(res.objective == 0.0);
    for (double v : res.image.data()) CHECK(v == res.image.data()[0]);
  }
  SUBCASE("integrable field attains zero") {
    const auto inst = testkit::make_instance(2, 8, 8, InstanceKind::Integrable);
    CHECK(testkit::qp_oracle(inst.field, range).objective <= 1e-9);
  }
  SUBCASE("feasible output") {
    const auto inst = testkit::make_instance(2, 8, 8, InstanceKind::Saturating);
    const auto res = testkit::qp_oracle(inst.field, range);
    for (double v : res.image.data()) CHECK((v >= 0.0 && v <= 255.0));
    CHECK(res.objective == doctest::Approx(testkit::oracle_objective(res.image, inst.field)));
  }
  SUBCASE("size cap") {
    CHECK_THROWS_AS(testkit::qp_oracle(GradientField(17, 4), range), Error);
  }
}

TEST_CASE("unconstrained integral reproduces integrable fields") {
  const auto inst = testkit::make_instance(4, 7, 6, InstanceKind::Integrable);
  const GrayImage u = testkit::unconstrained_integral(inst.field, inst.image.mean());
  for (std::size_t i = 0; i < u.size(); ++i) {
    CHECK(u.data()[i] == doctest::Approx(inst.image.data()[i]).epsilon(1e-9));
  }
}
