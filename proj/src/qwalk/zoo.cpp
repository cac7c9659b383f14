#include "qwalk/zoo.hpp"

#include <cmath>
#include <string>

#include "qwalk/error.hpp"

namespace qwalk::zoo {
namespace {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    fail(ErrorCode::kInvalidArgument, std::string(what) + " must lie in [0, 1]");
  }
}

ZooEntry unique_entry(KrausChannel channel, AffineChannel affine, const BlochVector& v) {
  return ZooEntry{std::move(channel), affine, v, limit_covariance(v),
                  bloch_to_density(v)};
}

ZooEntry non_unique_entry(KrausChannel channel, AffineChannel affine) {
  return ZooEntry{std::move(channel), affine, std::nullopt, std::nullopt, std::nullopt};
}

}  // namespace

ZooEntry depolarizing(double p) {
  require_probability(p, "depolarizing p");
  const double a = std::sqrt(p / 3.0);
  auto channel = KrausChannel::make(
      {std::sqrt(1.0 - p) * Mat2::identity(), a * pauli(Axis::kX),
       a * pauli(Axis::kY), a * pauli(Axis::kZ)},
      KrausConvention::kLeftAdjoint);
  const double lambda = 1.0 - 4.0 * p / 3.0;
  auto affine = AffineChannel::make(diag3({lambda, lambda, lambda}), {0.0, 0.0, 0.0});
  if (p == 0.0) return non_unique_entry(std::move(channel), affine);
  return unique_entry(std::move(channel), affine, {0.0, 0.0, 0.0});
}

ZooEntry phase_damping(double p) {
  require_probability(p, "phase damping p");
  const double a = std::sqrt(p);
  auto channel = KrausChannel::make(
      {std::sqrt(1.0 - p) * Mat2::identity(), a * Mat2::unit(0, 0), a * Mat2::unit(1, 1)},
      KrausConvention::kLeftAdjoint);
  auto affine = AffineChannel::make(diag3({1.0 - p, 1.0 - p, 1.0}), {0.0, 0.0, 0.0});
  return non_unique_entry(std::move(channel), affine);
}

BlochVector phase_damping_limit(double p, const BlochVector& initial) {
  require_probability(p, "phase damping p");
  if (p == 0.0) return initial;
  return {0.0, 0.0, initial.z};
}

ZooEntry amplitude_damping(double p) {
  require_probability(p, "amplitude damping p");
  // Printed T-matrix requires Phi(rho) = sum L rho L*.
  auto channel = KrausChannel::make(
      {Mat2{{1.0, 0.0, 0.0, std::sqrt(1.0 - p)}}, std::sqrt(p) * Mat2::unit(0, 1)},
      KrausConvention::kRightAdjoint);
  const double s = std::sqrt(1.0 - p);
  auto affine = AffineChannel::make(diag3({s, s, 1.0 - p}), {0.0, 0.0, p});
  if (p == 0.0) return non_unique_entry(std::move(channel), affine);
  return unique_entry(std::move(channel), affine, {0.0, 0.0, 1.0});
}

ZooEntry trigonometric(double u, double v_angle) {
  if (!std::isfinite(u) || !std::isfinite(v_angle)) {
    fail(ErrorCode::kInvalidArgument, "trigonometric angles must be finite");
  }
  const double cu = std::cos(u), cv = std::cos(v_angle);
  const double denom = 1.0 - cu * cv;
  if (denom < 1e-12) {
    fail(ErrorCode::kDegenerate, "trigonometric channel: 1 - cos u cos v vanishes");
  }
  using namespace std::complex_literals;
  const double ch = std::cos(u / 2.0), sh = std::sin(u / 2.0);
  const double cvh = std::cos(v_angle / 2.0), svh = std::sin(v_angle / 2.0);
  const Mat2 l1 = (cvh * ch) * Mat2::identity() + (svh * sh) * pauli(Axis::kZ);
  const Mat2 l2 = (svh * ch) * pauli(Axis::kX) - (1i * (cvh * sh)) * pauli(Axis::kY);
  // Only the left-adjoint reading reproduces the printed T-matrix.
  auto channel = KrausChannel::make({l1, l2}, KrausConvention::kLeftAdjoint);
  const double t3 = std::sin(u) * std::sin(v_angle);
  auto affine = AffineChannel::make(diag3({cu, cv, cu * cv}), {0.0, 0.0, t3});
  if (std::fabs(cu) >= 1.0 - 1e-12 || std::fabs(cv) >= 1.0 - 1e-12) {
    return non_unique_entry(std::move(channel), affine);
  }
  return unique_entry(std::move(channel), affine, {0.0, 0.0, t3 / denom});
}

ZooEntry markov_chain(double p, double q) {
  if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "Markov chain p and q must lie in (0, 1)");
  }
  // L1 = |0><a|, L2 = |1><b| with a = (sqrt p, sqrt(1-p)), b = (sqrt q, sqrt(1-q)).
  auto channel = KrausChannel::make(
      {Mat2{{std::sqrt(p), std::sqrt(1.0 - p), 0.0, 0.0}},
       Mat2{{0.0, 0.0, std::sqrt(q), std::sqrt(1.0 - q)}}},
      KrausConvention::kLeftAdjoint);
  const double sp = std::sqrt(p * (1.0 - p));
  const double sq = std::sqrt(q * (1.0 - q));
  Mat3 linear{};
  linear[0][2] = sp - sq;
  linear[2][2] = p - q;
  auto affine = AffineChannel::make(linear, {sp + sq, 0.0, p + q - 1.0});

  const double denom = 1.0 + q - p;
  const double beta = q * sp + (1.0 - p) * sq;
  const BlochVector v{2.0 * beta / denom, 0.0, (p + q - 1.0) / denom};
  ZooEntry entry = unique_entry(std::move(channel), affine, v);
  entry.expected_rho_inf = DensityMatrix::make(q / denom, beta / denom);
  return entry;
}

}  // namespace qwalk::zoo
