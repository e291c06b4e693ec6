#include "testkit.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace llenhance::testkit {

namespace {

// Dense forward-difference operator as an explicit row list: each row is
// (plus index, minus index, target).
struct DiffRow {
  std::size_t plus;
  std::size_t minus;
  double target;
};

std::vector<DiffRow> difference_rows(const GradientField& q) {
  const int w = q.width();
  const int h = q.height();
  std::vector<DiffRow> rows;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x + 1 < w; ++x) {
      const std::size_t p = static_cast<std::size_t>(y) * w + x;
      rows.push_back({p + 1, p, q.horizontal()[static_cast<std::size_t>(y) * (w - 1) + x]});
    }
  }
  for (int y = 0; y + 1 < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t p = static_cast<std::size_t>(y) * w + x;
      rows.push_back({p + w, p, q.vertical()[p]});
    }
  }
  return rows;
}

double rows_objective(const std::vector<DiffRow>& rows, const std::vector<double>& u) {
  double s = 0.0;
  for (const DiffRow& r : rows) {
    const double d = u[r.plus] - u[r.minus] - r.target;
    s += d * d;
  }
  return s;
}

}  // namespace

GrayImage random_image(std::uint64_t seed, int w, int h, double lo, double hi, bool integral) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  GrayImage img(w, h);
  for (double& v : img.data()) {
    v = dist(rng);
    if (integral) v = std::clamp(std::round(v), lo, hi);
  }
  return img;
}

GradientField oracle_differences(const GrayImage& u) {
  const int w = u.width();
  const int h = u.height();
  std::vector<double> gh;
  std::vector<double> gv;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x + 1 < w; ++x) gh.push_back(u.data()[y * w + x + 1] - u.data()[y * w + x]);
  }
  for (int y = 0; y + 1 < h; ++y) {
    for (int x = 0; x < w; ++x) gv.push_back(u.data()[(y + 1) * w + x] - u.data()[y * w + x]);
  }
  return GradientField(w, h, std::move(gh), std::move(gv));
}

double oracle_objective(const GrayImage& u, const GradientField& q) {
  return rows_objective(difference_rows(q), std::vector<double>(u.data().begin(), u.data().end()));
}

Instance make_instance(std::uint64_t seed, int w, int h, InstanceKind kind) {
  // Separate streams so the image and the field do not share draws.
  GrayImage img = random_image(seed * 2654435761ULL + 17, w, h);
  switch (kind) {
    case InstanceKind::Integrable:
      return {img, oracle_differences(img)};
    case InstanceKind::Saturating: {
      GradientField g = oracle_differences(img);
      // Scale so the integral's spread clearly exceeds the 255-level range.
      const double spread = std::max(img.max() - img.min(), 1.0);
      const double scale = 2.0 * 255.0 / spread + 0.5;
      for (double& v : g.horizontal()) v *= scale;
      for (double& v : g.vertical()) v *= scale;
      return {img, std::move(g)};
    }
    case InstanceKind::Random: {
      std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
      std::uniform_real_distribution<double> dist(-64.0, 64.0);
      GradientField g(w, h);
      for (double& v : g.horizontal()) v = dist(rng);
      for (double& v : g.vertical()) v = dist(rng);
      return {img, std::move(g)};
    }
  }
  return {img, oracle_differences(img)};
}

OracleResult qp_oracle(const GradientField& q, const IntensityRange& range, long max_iterations) {
  if (q.width() > kOracleMaxSide || q.height() > kOracleMaxSide) {
    throw Error(ErrorKind::InvalidArgument, "qp_oracle is limited to 16x16 instances");
  }
  const std::vector<DiffRow> rows = difference_rows(q);
  const std::size_t n = static_cast<std::size_t>(q.width()) * q.height();
  std::vector<double> u(n, 0.5 * (range.r_min + range.r_max));
  std::vector<double> grad(n);
  constexpr double kStep = 1.0 / 16.0;

  double obj = rows_objective(rows, u);
  long it = 0;
  while (it < max_iterations) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (const DiffRow& r : rows) {
      const double d = 2.0 * (u[r.plus] - u[r.minus] - r.target);
      grad[r.plus] += d;
      grad[r.minus] -= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = std::clamp(u[i] - kStep * grad[i], range.r_min, range.r_max);
    }
    ++it;
    const double next = rows_objective(rows, u);
    const double drop = obj - next;
    obj = next;
    if (drop < 1e-12) break;
  }
  return {GrayImage(q.width(), q.height(), std::move(u)), obj, it};
}

GrayImage unconstrained_integral(const GradientField& q, double mean) {
  const std::vector<DiffRow> rows = difference_rows(q);
  const std::size_t n = static_cast<std::size_t>(q.width()) * q.height();
  std::vector<double> a(n * n, 1.0 / static_cast<double>(n));
  std::vector<double> b(n, mean);
  for (const DiffRow& r : rows) {
    a[r.plus * n + r.plus] += 1.0;
    a[r.minus * n + r.minus] += 1.0;
    a[r.plus * n + r.minus] -= 1.0;
    a[r.minus * n + r.plus] -= 1.0;
    b[r.plus] += r.target;
    b[r.minus] -= r.target;
  }
  // Gaussian elimination with partial pivoting.
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a[i * n + k]) > std::abs(a[piv * n + k])) piv = i;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      std::swap(b[k], b[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] / a[k * n + k];
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> u(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[k * n + j] * u[j];
    u[k] = s / a[k * n + k];
  }
  return GrayImage(q.width(), q.height(), std::move(u));
}

}  // namespace llenhance::testkit
