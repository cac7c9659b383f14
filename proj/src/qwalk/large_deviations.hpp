#pragma once

// Scaled cumulant generating functions and rate functions for the collective
// spin n^{-1} sum_k nu . sigma_k.

#include <cstddef>

#include "qwalk/walk.hpp"

namespace qwalk {

struct RateFunction {
  Vec3 nu{};
  BlochVector v;

  double scale() const { return norm(nu); }
  double mean() const { return dot(nu, v.vec()); }
  // <nu, v> = +-|nu|: the per-site law is a point mass.
  bool degenerate() const;
};

// log(p e^a + (1 - p) e^{-a}) without overflow.
double log_two_point_mgf(double a, double p);

// n^{-1} log omega(exp(t sum_{k <= n} nu . sigma_k)).
double lambda_n(const WalkSpec& spec, const Vec3& nu, double t);

// Limit log(cosh(|nu| t) + (<nu, v>/|nu|) sinh(|nu| t)).
double lambda_limit(const RateFunction& rf, double t);

// Closed-form Legendre transform; +inf outside [-|nu|, |nu|].
double rate_function(const RateFunction& rf, double x);

// sup_t (t x - lambda_limit(t)) by golden-section search. Throws
// kNotConverged when |x| >= |nu| (the supremum is approached only as
// t -> +-inf) and kDegenerate for a degenerate direction.
double legendre_numeric(const RateFunction& rf, double x);

struct LdpResult {
  double empirical_rate = 0.0;  // -n^{-1} log P(S_n / n >= x), exact
  double limit_rate = 0.0;
  double law_mean = 0.0;
};

// Exact upper tail of the finite-n law in log space. Requires a
// non-degenerate direction and law mean < x < |nu|.
LdpResult ldp_diagnostic(const WalkSpec& spec, const Vec3& nu, double x);

}  // namespace qwalk
