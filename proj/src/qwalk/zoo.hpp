#pragma once

// The five named channel families with their closed-form affine form,
// stationary vector and limit covariance, used as test oracles.

#include <optional>

#include "qwalk/channel.hpp"

namespace qwalk::zoo {

struct ZooEntry {
  KrausChannel channel;
  AffineChannel expected_affine;
  // Empty when the fixed point is not unique.
  std::optional<BlochVector> expected_v;
  std::optional<Mat3> expected_c;
  std::optional<DensityMatrix> expected_rho_inf;
};

ZooEntry depolarizing(double p);
ZooEntry phase_damping(double p);
ZooEntry amplitude_damping(double p);
ZooEntry trigonometric(double u, double v_angle);
ZooEntry markov_chain(double p, double q);

// Phase damping keeps z and, for p > 0, kills x and y.
BlochVector phase_damping_limit(double p, const BlochVector& initial);

}  // namespace qwalk::zoo
