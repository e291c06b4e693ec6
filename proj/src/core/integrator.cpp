#include "llenhance/integrator.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

namespace llenhance {

void SolverConfig::validate() const {
  if (omega && !(*omega > 0.0 && *omega < 2.0)) {
    throw Error(ErrorKind::InvalidArgument, "omega must lie in (0, 2)");
  }
  if (!(tol >= 0.0) || !std::isfinite(tol)) {
    throw Error(ErrorKind::InvalidArgument, "tol must be a finite value >= 0");
  }
  if (max_sweeps < 1) throw Error(ErrorKind::InvalidArgument, "max_sweeps must be >= 1");
  if (threads < 1) throw Error(ErrorKind::InvalidArgument, "threads must be >= 1");
  if (anchor_mean && !std::isfinite(*anchor_mean)) {
    throw Error(ErrorKind::NotFinite, "anchor_mean must be finite");
  }
}

namespace {

// Dense view of the normal equations D^T D u = D^T q used by the sweeps.
class NormalSystem {
 public:
  NormalSystem(const GradientField& q, const IntensityRange& range)
      : w_(q.width()), h_(q.height()), lo_(range.r_min), hi_(range.r_max) {
    const GrayImage div = divergence(q);
    rhs_.resize(div.size());
    for (std::size_t i = 0; i < rhs_.size(); ++i) rhs_[i] = -div.data()[i];
  }

  int width() const { return w_; }
  int height() const { return h_; }

  // Residual r_p = deg * u_p - sum(neighbours) - rhs_p for a boundary-aware pixel.
  double residual_at(const double* u, int x, int y, int& deg) const {
    const std::size_t p = static_cast<std::size_t>(y) * w_ + x;
    double s = 0.0;
    deg = 0;
    if (x > 0) { s += u[p - 1]; ++deg; }
    if (x + 1 < w_) { s += u[p + 1]; ++deg; }
    if (y > 0) { s += u[p - w_]; ++deg; }
    if (y + 1 < h_) { s += u[p + w_]; ++deg; }
    return deg * u[p] - s - rhs_[p];
  }

  double clamp(double v) const { return v < lo_ ? lo_ : (v > hi_ ? hi_ : v); }

  // Relaxed, clamped update of one pixel. Returns the pre-update projected
  // residual |u - clip(u - r)|.
  double relax_general(double* u, int x, int y, double omega) const {
    int deg = 0;
    const double r = residual_at(u, x, y, deg);
    if (deg == 0) return 0.0;
    const std::size_t p = static_cast<std::size_t>(y) * w_ + x;
    const double up = u[p];
    const double proj = std::abs(up - clamp(up - r));
    u[p] = clamp(up - omega * r / deg);
    return proj;
  }

  double relax_interior(double* u, std::size_t p, double omega) const {
    const double up = u[p];
    const double r = 4.0 * up - (u[p - 1] + u[p + 1] + u[p - w_] + u[p + w_]) - rhs_[p];
    const double proj = std::abs(up - clamp(up - r));
    u[p] = clamp(up - omega * 0.25 * r);
    return proj;
  }

  // Updates pixels of row y with x in [x0, w) stepping by `step`.
  double relax_row(double* u, int y, int x0, int step, double omega) const {
    double m = 0.0;
    const bool interior_row = y > 0 && y + 1 < h_;
    for (int x = x0; x < w_; x += step) {
      double proj;
      if (interior_row && x > 0 && x + 1 < w_) {
        proj = relax_interior(u, static_cast<std::size_t>(y) * w_ + x, omega);
      } else {
        proj = relax_general(u, x, y, omega);
      }
      m = std::max(m, proj);
    }
    return m;
  }

  double sweep_lexicographic(double* u, double omega) const {
    double m = 0.0;
    for (int y = 0; y < h_; ++y) m = std::max(m, relax_row(u, y, 0, 1, omega));
    return m;
  }

  // Pixels with (x + y) % 2 == color over rows [y0, y1).
  double half_sweep(double* u, int color, int y0, int y1, double omega) const {
    double m = 0.0;
    for (int y = y0; y < y1; ++y) m = std::max(m, relax_row(u, y, (y + color) & 1, 2, omega));
    return m;
  }

  double projected_residual(const double* u) const {
    double m = 0.0;
    for (int y = 0; y < h_; ++y) {
      for (int x = 0; x < w_; ++x) {
        int deg = 0;
        const double r = residual_at(u, x, y, deg);
        const double up = u[static_cast<std::size_t>(y) * w_ + x];
        m = std::max(m, std::abs(up - clamp(up - r)));
      }
    }
    return m;
  }

 private:
  int w_;
  int h_;
  double lo_;
  double hi_;
  std::vector<double> rhs_;
};

// Fixed group of workers executing red-black half sweeps in lock step.
class RedBlackRunner {
 public:
  RedBlackRunner(const NormalSystem& sys, double* u, double omega, int threads)
      : sys_(sys), u_(u), omega_(omega),
        workers_(static_cast<std::size_t>(std::max(1, std::min(threads, sys.height())))),
        partial_(workers_),
        start_(static_cast<std::ptrdiff_t>(workers_)),
        done_(static_cast<std::ptrdiff_t>(workers_)) {
    for (std::size_t i = 1; i < workers_; ++i) {
      pool_.emplace_back([this, i] {
        for (;;) {
          start_.arrive_and_wait();
          if (stop_) break;
          run_chunk(i);
          done_.arrive_and_wait();
        }
      });
    }
  }

  ~RedBlackRunner() {
    stop_ = true;
    if (workers_ > 1) start_.arrive_and_wait();
  }

  RedBlackRunner(const RedBlackRunner&) = delete;
  RedBlackRunner& operator=(const RedBlackRunner&) = delete;

  double sweep() {
    double m = 0.0;
    for (int color = 0; color < 2; ++color) {
      color_ = color;
      if (workers_ > 1) start_.arrive_and_wait();
      run_chunk(0);
      if (workers_ > 1) done_.arrive_and_wait();
      for (double v : partial_) m = std::max(m, v);
    }
    return m;
  }

 private:
  void run_chunk(std::size_t i) {
    const int h = sys_.height();
    const int n = static_cast<int>(workers_);
    const int y0 = static_cast<int>(static_cast<long>(h) * static_cast<long>(i) / n);
    const int y1 = static_cast<int>(static_cast<long>(h) * static_cast<long>(i + 1) / n);
    partial_[i] = sys_.half_sweep(u_, color_, y0, y1, omega_);
  }

  const NormalSystem& sys_;
  double* u_;
  double omega_;
  std::size_t workers_;
  std::vector<double> partial_;
  std::barrier<> start_;
  std::barrier<> done_;
  int color_ = 0;
  bool stop_ = false;
  std::vector<std::jthread> pool_;
};

}  // namespace

double optimal_omega(int width, int height) {
  const int n = std::max(width, height);
  if (n < 2) return 1.0;
  const double rho = 0.5 * (1.0 + std::cos(std::numbers::pi / n));
  return 2.0 / (1.0 + std::sqrt(1.0 - rho * rho));
}

GrayImage anchor(const GrayImage& u, const IntensityRange& range, double anchor_mean) {
  range.validate();
  if (!std::isfinite(anchor_mean)) {
    throw Error(ErrorKind::NotFinite, "anchor_mean must be finite");
  }
  const double lo = u.min();
  const double hi = u.max();
  if (lo < range.r_min || hi > range.r_max) {
    throw Error(ErrorKind::InvalidArgument, "anchor requires an image inside the range");
  }
  const double c = std::clamp(anchor_mean - u.mean(), range.r_min - lo, range.r_max - hi);
  GrayImage out = u;
  if (c == 0.0) return out;
  for (double& v : out.data()) v = range.clamp(v + c);
  return out;
}

double objective(const GrayImage& u, const GradientField& q) {
  if (u.width() != q.width() || u.height() != q.height()) {
    throw Error(ErrorKind::Dimension, "image and gradient field dimensions differ");
  }
  double s = 0.0;
  for (int y = 0; y < q.height(); ++y) {
    for (int x = 0; x < q.h_width(); ++x) {
      const double d = u.at(x + 1, y) - u.at(x, y) - q.h(x, y);
      s += d * d;
    }
  }
  for (int y = 0; y < q.v_height(); ++y) {
    for (int x = 0; x < q.width(); ++x) {
      const double d = u.at(x, y + 1) - u.at(x, y) - q.v(x, y);
      s += d * d;
    }
  }
  return s;
}

GrayImage normal_residual(const GrayImage& u, const GradientField& q) {
  if (u.width() != q.width() || u.height() != q.height()) {
    throw Error(ErrorKind::Dimension, "image and gradient field dimensions differ");
  }
  const NormalSystem sys(q, IntensityRange{});
  GrayImage r(u.width(), u.height());
  for (int y = 0; y < u.height(); ++y) {
    for (int x = 0; x < u.width(); ++x) {
      int deg = 0;
      r.at(x, y) = sys.residual_at(u.data().data(), x, y, deg);
    }
  }
  return r;
}

double projected_residual(const GrayImage& u, const GradientField& q,
                          const IntensityRange& range) {
  if (u.width() != q.width() || u.height() != q.height()) {
    throw Error(ErrorKind::Dimension, "image and gradient field dimensions differ");
  }
  range.validate();
  return NormalSystem(q, range).projected_residual(u.data().data());
}

IntegrationResult integrate(const GradientField& q, const IntensityRange& range,
                            const SolverConfig& cfg, const GrayImage* init) {
  range.validate();
  cfg.validate();
  require_finite(q.horizontal(), "horizontal gradient plane");
  require_finite(q.vertical(), "vertical gradient plane");

  GrayImage u;
  if (init != nullptr) {
    if (init->width() != q.width() || init->height() != q.height()) {
      throw Error(ErrorKind::Dimension, "initial image does not match the field dimensions");
    }
    if (init->min() < range.r_min || init->max() > range.r_max) {
      throw Error(ErrorKind::InvalidArgument, "initial image lies outside the intensity range");
    }
    u = *init;
  } else {
    const double start = cfg.anchor_mean ? range.clamp(*cfg.anchor_mean)
                                         : 0.5 * (range.r_min + range.r_max);
    u = GrayImage(q.width(), q.height(), start);
  }

  std::optional<double> target = cfg.anchor_mean;
  if (!target && init != nullptr) target = init->mean();

  const NormalSystem sys(q, range);
  const double omega = cfg.omega ? *cfg.omega : optimal_omega(q.width(), q.height());
  double* px = u.data().data();
  const bool red_black = cfg.order == SweepOrder::RedBlack || cfg.threads > 1;
  std::optional<RedBlackRunner> runner;
  if (red_black) runner.emplace(sys, px, omega, cfg.threads);

  SolveReport report;
  report.omega = omega;
  if (cfg.record_history) report.objective_history.push_back(objective(u, q));

  for (;;) {
    while (report.sweeps_used < cfg.max_sweeps) {
      const double in_sweep = red_black ? runner->sweep() : sys.sweep_lexicographic(px, omega);
      ++report.sweeps_used;
      if (cfg.record_history) report.objective_history.push_back(objective(u, q));
      if (in_sweep <= cfg.tol && sys.projected_residual(px) <= cfg.tol) break;
    }
    if (target) {
      u = anchor(u, range, *target);
      px = u.data().data();
      if (runner) {
        runner.reset();
        runner.emplace(sys, px, omega, cfg.threads);
      }
    }
    report.final_residual = sys.projected_residual(px);
    if (report.final_residual <= cfg.tol) {
      report.converged = true;
      break;
    }
    if (report.sweeps_used >= cfg.max_sweeps) break;
  }

  report.objective = objective(u, q);
  return {std::move(u), std::move(report)};
}

KktReport kkt_report(const GrayImage& u, const GradientField& q, const IntensityRange& range,
                     double tol, const std::vector<unsigned char>* exclude) {
  range.validate();
  if (exclude != nullptr && exclude->size() != u.size()) {
    throw Error(ErrorKind::Dimension, "exclusion mask does not match the image");
  }
  KktReport rep;
  rep.residual = normal_residual(u, q);
  rep.classes.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double v = u.data()[i];
    const double r = rep.residual.data()[i];
    double excess = 0.0;
    if (exclude != nullptr && (*exclude)[i] != 0) {
      rep.classes[i] = PixelClass::Excluded;
      ++rep.excluded;
      continue;
    }
    if (v <= range.r_min) {
      rep.classes[i] = PixelClass::AtLower;
      ++rep.at_lower;
      excess = -r - tol;
    } else if (v >= range.r_max) {
      rep.classes[i] = PixelClass::AtUpper;
      ++rep.at_upper;
      excess = r - tol;
    } else {
      rep.classes[i] = PixelClass::Interior;
      ++rep.interior;
      excess = std::abs(r) - tol;
    }
    if (excess > 0.0) {
      ++rep.violations;
      rep.max_violation = std::max(rep.max_violation, excess);
    }
  }
  return rep;
}

}  // namespace llenhance
