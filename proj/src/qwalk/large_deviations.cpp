#include "qwalk/large_deviations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qwalk/error.hpp"
#include "qwalk/tolerances.hpp"

namespace qwalk {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_add_exp(double x, double y) {
  if (x == -kInf) return y;
  if (y == -kInf) return x;
  const double hi = std::max(x, y);
  return hi + std::log1p(std::exp(-std::fabs(x - y)));
}

void require_direction(const Vec3& nu) {
  const double s = norm(nu);
  if (!(s > 0.0) || !std::isfinite(s)) {
    fail(ErrorCode::kInvalidArgument, "direction nu must be finite and nonzero");
  }
}

double site_probability(const Vec3& nu, const Vec3& r) {
  return std::clamp(0.5 * (1.0 + dot(nu, r) / norm(nu)), 0.0, 1.0);
}

// Derivative of lambda_limit.
double lambda_limit_slope(double s, double m, double t) {
  const double th = std::tanh(s * t);
  return s * (th + m) / (1.0 + m * th);
}

}  // namespace

bool RateFunction::degenerate() const {
  return std::fabs(mean()) >= scale() * (1.0 - tol::kCondition);
}

double log_two_point_mgf(double a, double p) {
  const double lp = p > 0.0 ? std::log(p) : -kInf;
  const double lq = p < 1.0 ? std::log1p(-p) : -kInf;
  return log_add_exp(lp + a, lq - a);
}

double lambda_n(const WalkSpec& spec, const Vec3& nu, double t) {
  require_direction(nu);
  const double s = norm(nu);
  const auto traj = spec.trajectory(spec.n());
  double total = 0.0;
  for (std::size_t k = 1; k <= spec.n(); ++k) {
    total += log_two_point_mgf(s * t, site_probability(nu, traj[k]));
  }
  return total / static_cast<double>(spec.n());
}

double lambda_limit(const RateFunction& rf, double t) {
  require_direction(rf.nu);
  const double s = rf.scale();
  const double p = std::clamp(0.5 * (1.0 + rf.mean() / s), 0.0, 1.0);
  return log_two_point_mgf(s * t, p);
}

double rate_function(const RateFunction& rf, double x) {
  require_direction(rf.nu);
  const double s = rf.scale();
  const double mu = rf.mean();
  if (std::isnan(x)) fail(ErrorCode::kInvalidArgument, "rate function argument is NaN");
  if (rf.degenerate()) {
    return std::fabs(x - mu) <= tol::kCondition * s ? 0.0 : kInf;
  }
  if (std::fabs(x) > s) return kInf;
  if (x == s) return std::log(2.0 * s / (s + mu));
  if (x == -s) return std::log(2.0 * s / (s - mu));
  const double up = 0.5 * (1.0 + x / s) * std::log((s + x) / (s + mu));
  const double down = 0.5 * (1.0 - x / s) * std::log((s - x) / (s - mu));
  return up + down;
}

double legendre_numeric(const RateFunction& rf, double x) {
  require_direction(rf.nu);
  if (rf.degenerate()) {
    fail(ErrorCode::kDegenerate, "Legendre transform of a degenerate direction");
  }
  const double s = rf.scale();
  const double m = rf.mean() / s;
  if (!(std::fabs(x) < s)) {
    fail(ErrorCode::kNotConverged, "supremum is not attained for |x| >= |nu|");
  }
  auto objective = [&](double t) { return t * x - lambda_limit(rf, t); };
  auto slope = [&](double t) { return x - lambda_limit_slope(s, m, t); };

  const double g0 = slope(0.0);
  if (g0 == 0.0) return objective(0.0);
  const double dir = g0 > 0.0 ? 1.0 : -1.0;
  double lo = 0.0;
  double hi = dir / s;
  while (slope(hi) * dir > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (std::fabs(hi) > 1e8 / s) {
      fail(ErrorCode::kNotConverged, "could not bracket the Legendre maximizer");
    }
  }
  if (lo > hi) std::swap(lo, hi);

  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c), fd = objective(d);
  for (int iter = 0; iter < 500 && b - a > 1e-10; ++iter) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
  }
  return std::max({objective(0.5 * (a + b)), fc, fd});
}

LdpResult ldp_diagnostic(const WalkSpec& spec, const Vec3& nu, double x) {
  require_direction(nu);
  const ChannelAnalysis an = spec.analysis();
  const RateFunction rf{nu, an.v};
  if (rf.degenerate()) {
    fail(ErrorCode::kDegenerate, "LDP direction is degenerate: <nu, v> = +-|nu|");
  }
  const double s = rf.scale();
  const std::size_t n = spec.n();
  const double nd = static_cast<double>(n);
  const auto traj = spec.trajectory(n);

  LdpResult out;
  std::vector<double> probs(n);
  for (std::size_t k = 1; k <= n; ++k) {
    probs[k - 1] = site_probability(nu, traj[k]);
    out.law_mean += (2.0 * probs[k - 1] - 1.0) * s;
  }
  out.law_mean /= nd;
  if (!(x > out.law_mean) || !(std::fabs(x) < s)) {
    fail(ErrorCode::kInvalidArgument, "LDP threshold needs law mean < x < |nu|");
  }

  // S_n = s (2 J - n) with J ~ Poisson-binomial(probs); S_n >= n x iff
  // J >= n (1 + x/s) / 2.
  const auto j0 = static_cast<std::size_t>(
      std::max(0.0, std::ceil(0.5 * nd * (1.0 + x / s) - tol::kFloorSlack)));
  if (j0 == 0) {
    out.limit_rate = rate_function(rf, x);
    return out;
  }
  // Counts at or above j0 collapse into one absorbing bucket.
  std::vector<double> lw(j0 + 1, -kInf);
  lw[0] = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double lp = probs[k] > 0.0 ? std::log(probs[k]) : -kInf;
    const double lq = probs[k] < 1.0 ? std::log1p(-probs[k]) : -kInf;
    lw[j0] = log_add_exp(lw[j0], lw[j0 - 1] + lp);
    const std::size_t top = std::min(k + 1, j0);
    for (std::size_t j = top == j0 ? j0 - 1 : top; j >= 1; --j) {
      lw[j] = log_add_exp(lw[j] + lq, lw[j - 1] + lp);
    }
    lw[0] += lq;
  }
  out.empirical_rate = -lw[j0] / nd;
  out.limit_rate = rate_function(rf, x);
  return out;
}

}  // namespace qwalk
