#pragma once

// Exact finite-n statistics of the collective Pauli walk over the product
// state rho_1 (x) rho_2 (x) ... with rho_k = Phi^k(rho0).
//
// In a fixed direction every site observable has a two-point spectrum and
// observables on distinct sites commute, so every collective sum in one
// direction is a Poisson-binomial variable. Mixed-direction words are handled
// by a subset dynamic program over sites.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qwalk/channel.hpp"

namespace qwalk {

// nu . sigma - center I
struct Direction {
  Vec3 nu{};
  double center = 0.0;

  static Direction centered(const Vec3& nu, const BlochVector& v) {
    return {nu, dot(nu, v.vec())};
  }
  double norm() const { return qwalk::norm(nu); }
  Mat2 matrix() const { return pauli_combination(nu, center); }
};

// (t0, t1] covering sites floor(n t0) + 1 .. floor(n t1).
struct Window {
  double t0 = 0.0;
  double t1 = 1.0;
};

// Inclusive site range; empty when first > last.
struct SiteRange {
  std::size_t first = 1;
  std::size_t last = 0;

  bool empty() const { return first > last; }
  std::size_t size() const { return empty() ? 0 : last - first + 1; }
  bool contains(std::size_t k) const { return k >= first && k <= last; }
};

SiteRange sites(const Window& w, std::size_t n);

class WalkSpec {
 public:
  static WalkSpec make(Channel channel, const DensityMatrix& rho0, std::size_t n);
  // Starts at the channel's unique stationary state.
  static WalkSpec stationary(Channel channel, std::size_t n);

  const Channel& channel() const { return channel_; }
  const DensityMatrix& rho0() const { return rho0_; }
  std::size_t n() const { return n_; }

  // Bloch(Phi^k(rho0)) for k = 0..last.
  std::vector<Vec3> trajectory(std::size_t last) const;

  // Channel analysis with rho0 resolving non-unique fixed points.
  ChannelAnalysis analysis() const { return analyze(channel_, rho0_); }

 private:
  WalkSpec(Channel channel, const DensityMatrix& rho0, std::size_t n);

  Channel channel_;
  DensityMatrix rho0_;
  std::size_t n_;
  Mat3 linear_;
  Vec3 translation_;
};

struct SiteLaw {
  double a_plus = 1.0;
  double a_minus = -1.0;
  std::vector<double> probs;  // P(outcome = a_plus) per site
  std::size_t first_site = 1;
};

SiteLaw site_laws(const WalkSpec& spec, const Direction& dir, const Window& win);

struct LatticeDistribution {
  double offset = 0.0;
  double step = 1.0;
  std::vector<double> weights;

  double value(std::size_t s) const { return offset + static_cast<double>(s) * step; }
  double mean() const;
  // Raw moments 0..order.
  std::vector<double> moments(int order) const;
};

LatticeDistribution exact_distribution(const SiteLaw& law);

// Raw moments 0..max_order (max_order <= 12) of the sum of site outcomes.
std::vector<double> exact_moments(const SiteLaw& law, int max_order);

// Independent two-valued variable: hi with probability p_hi, else lo.
struct TwoPoint {
  double hi;
  double lo;
  double p_hi;
};

// Raw moments 0..order of the sum of independent two-point variables.
std::vector<double> raw_moments_of_sum(std::span<const TwoPoint> sites, int order);

double gaussian_cdf(double x, double variance);

struct CltResult {
  double ks_distance = 0.0;
  double target_variance = 0.0;
};

// Kolmogorov distance between the exact law of
// n^{-1/2} / |nu| * sum_{k <= floor(n t)} (nu . sigma_k - <nu, v>)
// and N(0, t nu^T C nu / |nu|^2). Throws kDegenerate for vanishing variance.
CltResult clt_diagnostic(const WalkSpec& spec, const Vec3& nu, double t);

struct Letter {
  Direction dir;
  Window win;
};

struct WordSpec {
  std::vector<Letter> letters;
};

inline constexpr std::size_t kMaxWordDegree = 8;
inline constexpr std::size_t kMaxSymmetrizedDegree = 6;

// omega(O_1 ... O_d) n^{-d/2} for collective letters O_i = sum over the
// letter's window of its site matrix.
Complex word_expectation(const WalkSpec& spec, const WordSpec& word);

// Expectation of the average of the word over all letter orderings.
double symmetrized_expectation(const WalkSpec& spec, const WordSpec& word);

// Moment of the limiting Gaussian: letters become nu^T B over their windows,
// with Cov = nu_a^T C nu_b |W_a intersect W_b|.
double gaussian_word_moment(const Mat3& covariance, const WordSpec& word);

// Limit of word_expectation: ordered Wick sum over pairings a < b with
// two-point function nu_a^T (C + i E(v)) nu_b |W_a intersect W_b|, where
// E(v)_{jk} = epsilon_{jkl} v_l carries the site commutators.
Complex quasi_free_word_moment(const BlochVector& v, const WordSpec& word);

// E[prod_j B^{(i_j)}_{t_j}] for letters (component 1..3, time).
double wick_moment(const Mat3& covariance,
                   std::span<const std::pair<int, double>> letters);

struct CommutatorReport {
  bool holds = false;           // per-site identities exact to 1e-15
  double per_site_error = 0.0;  // worst entry deviation
  double exact_scale = 0.0;     // floor(n t) / n
  double approximate_scale = 0.0;  // t
  double discrepancy = 0.0;     // |floor(n t) / n - t|
};

// [Z_t, X_t] = 2i n^{-1/2} Y_t + 2i (floor(n t)/n) v2 I and cyclic versions.
CommutatorReport commutator_identity_check(const BlochVector& v, std::size_t n, double t);

}  // namespace qwalk
