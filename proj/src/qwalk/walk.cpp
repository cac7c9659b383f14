#include "qwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qwalk/error.hpp"
#include "qwalk/tolerances.hpp"

namespace qwalk {
namespace {

std::size_t floor_sites(double nt) {
  return static_cast<std::size_t>(std::floor(nt + tol::kFloorSlack));
}

void require_direction(const Vec3& nu) {
  if (!(norm(nu) > 0.0) || !std::isfinite(norm(nu))) {
    fail(ErrorCode::kInvalidArgument, "direction nu must be finite and nonzero");
  }
}

// Tr(P rho) for rho with Bloch vector r.
Complex expectation(const Mat2& p, const Vec3& r) {
  const double alpha = 0.5 * (1.0 + r[2]);
  const Complex beta(0.5 * r[0], -0.5 * r[1]);
  return p(0, 0) * alpha + p(0, 1) * std::conj(beta) + p(1, 0) * beta +
         p(1, 1) * (1.0 - alpha);
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

std::vector<SiteRange> letter_ranges(const WordSpec& word, std::size_t n) {
  std::vector<SiteRange> ranges;
  for (const auto& letter : word.letters) {
    require_direction(letter.dir.nu);
    const SiteRange r = sites(letter.win, n);
    if (r.empty()) {
      fail(ErrorCode::kInvalidArgument,
           "word letter window contains no grid site (off-grid window)");
    }
    ranges.push_back(r);
  }
  return ranges;
}

double factorial(std::size_t d) {
  double f = 1.0;
  for (std::size_t i = 2; i <= d; ++i) f *= static_cast<double>(i);
  return f;
}

}  // namespace

SiteRange sites(const Window& w, std::size_t n) {
  if (!std::isfinite(w.t0) || !std::isfinite(w.t1) || w.t0 < 0.0 || !(w.t1 > w.t0)) {
    fail(ErrorCode::kInvalidArgument, "window needs 0 <= t0 < t1");
  }
  const double nd = static_cast<double>(n);
  return {floor_sites(nd * w.t0) + 1, floor_sites(nd * w.t1)};
}

WalkSpec::WalkSpec(Channel channel, const DensityMatrix& rho0, std::size_t n)
    : channel_(std::move(channel)),
      rho0_(rho0),
      n_(n),
      linear_(linear_part(channel_)),
      translation_(translation_part(channel_)) {}

WalkSpec WalkSpec::make(Channel channel, const DensityMatrix& rho0, std::size_t n) {
  if (n < 1) fail(ErrorCode::kInvalidArgument, "walk needs n >= 1");
  return WalkSpec(std::move(channel), rho0, n);
}

WalkSpec WalkSpec::stationary(Channel channel, std::size_t n) {
  const DensityMatrix rho_inf = analyze(channel).rho_inf;
  return make(std::move(channel), rho_inf, n);
}

std::vector<Vec3> WalkSpec::trajectory(std::size_t last) const {
  std::vector<Vec3> out;
  out.reserve(last + 1);
  out.push_back(density_to_bloch(rho0_).vec());
  for (std::size_t k = 0; k < last; ++k) {
    out.push_back(linear_ * out.back() + translation_);
  }
  return out;
}

SiteLaw site_laws(const WalkSpec& spec, const Direction& dir, const Window& win) {
  require_direction(dir.nu);
  const SiteRange range = sites(win, spec.n());
  if (range.empty()) fail(ErrorCode::kInvalidArgument, "window contains no site");

  const double s = dir.norm();
  SiteLaw law;
  law.a_plus = s - dir.center;
  law.a_minus = -s - dir.center;
  law.first_site = range.first;
  const auto traj = spec.trajectory(range.last);
  law.probs.reserve(range.size());
  for (std::size_t k = range.first; k <= range.last; ++k) {
    law.probs.push_back(clamp_probability(0.5 * (1.0 + dot(dir.nu, traj[k]) / s)));
  }
  return law;
}

double LatticeDistribution::mean() const {
  double m = 0.0;
  for (std::size_t s = 0; s < weights.size(); ++s) m += weights[s] * value(s);
  return m;
}

std::vector<double> LatticeDistribution::moments(int order) const {
  std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
  for (std::size_t s = 0; s < weights.size(); ++s) {
    double power = weights[s];
    for (auto& m : out) {
      m += power;
      power *= value(s);
    }
  }
  return out;
}

LatticeDistribution exact_distribution(const SiteLaw& law) {
  const std::size_t m = law.probs.size();
  if (m == 0) fail(ErrorCode::kInvalidArgument, "site law has no sites");
  LatticeDistribution out;
  out.offset = static_cast<double>(m) * law.a_minus;
  out.step = law.a_plus - law.a_minus;
  out.weights.assign(m + 1, 0.0);
  out.weights[0] = 1.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double p = law.probs[k];
    for (std::size_t s = k + 1; s >= 1; --s) {
      out.weights[s] = out.weights[s] * (1.0 - p) + out.weights[s - 1] * p;
    }
    out.weights[0] *= 1.0 - p;
  }
  return out;
}

std::vector<double> raw_moments_of_sum(std::span<const TwoPoint> sites, int order) {
  if (order < 0) fail(ErrorCode::kInvalidArgument, "moment order must be >= 0");
  const auto size = static_cast<std::size_t>(order) + 1;
  // Binomial coefficients up to `order`.
  std::vector<std::vector<double>> binom(size, std::vector<double>(size, 0.0));
  for (std::size_t j = 0; j < size; ++j) {
    binom[j][0] = binom[j][j] = 1.0;
    for (std::size_t i = 1; i < j; ++i) binom[j][i] = binom[j - 1][i - 1] + binom[j - 1][i];
  }

  std::vector<double> total(size, 0.0);
  total[0] = 1.0;
  std::vector<double> site(size), next(size);
  for (const auto& x : sites) {
    double hi_pow = 1.0, lo_pow = 1.0;
    for (std::size_t j = 0; j < size; ++j) {
      site[j] = x.p_hi * hi_pow + (1.0 - x.p_hi) * lo_pow;
      hi_pow *= x.hi;
      lo_pow *= x.lo;
    }
    for (std::size_t j = 0; j < size; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i <= j; ++i) acc += binom[j][i] * total[i] * site[j - i];
      next[j] = acc;
    }
    std::swap(total, next);
  }
  return total;
}

std::vector<double> exact_moments(const SiteLaw& law, int max_order) {
  if (max_order < 1 || max_order > 12) {
    fail(ErrorCode::kInvalidArgument, "exact_moments supports orders 1..12");
  }
  std::vector<TwoPoint> two_point;
  two_point.reserve(law.probs.size());
  for (double p : law.probs) two_point.push_back({law.a_plus, law.a_minus, p});
  return raw_moments_of_sum(two_point, max_order);
}

double gaussian_cdf(double x, double variance) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0 * variance));
}

CltResult clt_diagnostic(const WalkSpec& spec, const Vec3& nu, double t) {
  require_direction(nu);
  const ChannelAnalysis an = spec.analysis();
  const double s = norm(nu);
  const Vec3 c_nu = an.covariance * nu;
  CltResult out;
  out.target_variance = t * dot(nu, c_nu) / (s * s);
  if (out.target_variance < tol::kDegenerateVariance) {
    fail(ErrorCode::kDegenerate, "CLT target variance vanishes in this direction");
  }

  const SiteLaw law = site_laws(spec, Direction::centered(nu, an.v), Window{0.0, t});
  const LatticeDistribution dist = exact_distribution(law);
  const double scale = 1.0 / (std::sqrt(static_cast<double>(spec.n())) * s);

  double below = 0.0;  // CDF just left of the current lattice point
  double ks = 0.0;
  for (std::size_t j = 0; j < dist.weights.size(); ++j) {
    const double g = gaussian_cdf(dist.value(j) * scale, out.target_variance);
    const double at = below + dist.weights[j];
    ks = std::max({ks, std::fabs(below - g), std::fabs(at - g)});
    below = at;
  }
  out.ks_distance = ks;
  return out;
}

Complex word_expectation(const WalkSpec& spec, const WordSpec& word) {
  const std::size_t d = word.letters.size();
  if (d == 0) fail(ErrorCode::kInvalidArgument, "word must contain at least one letter");
  if (d > kMaxWordDegree) {
    fail(ErrorCode::kDegreeOverflow, "word degree exceeds 8");
  }
  const auto ranges = letter_ranges(word, spec.n());
  std::size_t first = ranges[0].first, last = ranges[0].last;
  for (const auto& r : ranges) {
    first = std::min(first, r.first);
    last = std::max(last, r.last);
  }
  const auto traj = spec.trajectory(last);

  const std::size_t full = (std::size_t{1} << d) - 1;
  // Ordered product of each letter subset, in word order.
  std::vector<Mat2> product(full + 1, Mat2::identity());
  for (std::size_t u = 1; u <= full; ++u) {
    std::size_t top = 0;
    while ((u >> (top + 1)) != 0) ++top;
    product[u] = product[u & ~(std::size_t{1} << top)] * word.letters[top].dir.matrix();
  }

  // f[S]: sum over assignments of the letters in S to sites seen so far.
  std::vector<Complex> f(full + 1, 0.0);
  f[0] = 1.0;
  std::vector<Complex> site_trace(full + 1);
  for (std::size_t k = first; k <= last; ++k) {
    std::size_t avail = 0;
    for (std::size_t i = 0; i < d; ++i)
      if (ranges[i].contains(k)) avail |= std::size_t{1} << i;
    if (avail == 0) continue;
    for (std::size_t u = avail; u != 0; u = (u - 1) & avail) {
      site_trace[u] = expectation(product[u], traj[k]);
    }
    // Descending S keeps f[S \ U] at its previous-site value.
    for (std::size_t s = full; s != 0; --s) {
      const std::size_t sub = s & avail;
      if (sub == 0) continue;
      Complex acc = 0.0;
      for (std::size_t u = sub; u != 0; u = (u - 1) & sub) acc += f[s ^ u] * site_trace[u];
      f[s] += acc;
    }
  }
  return f[full] * std::pow(static_cast<double>(spec.n()), -0.5 * static_cast<double>(d));
}

double symmetrized_expectation(const WalkSpec& spec, const WordSpec& word) {
  const std::size_t d = word.letters.size();
  if (d == 0) fail(ErrorCode::kInvalidArgument, "word must contain at least one letter");
  if (d > kMaxSymmetrizedDegree) {
    fail(ErrorCode::kDegreeOverflow, "symmetrized word degree exceeds 6");
  }
  const auto ranges = letter_ranges(word, spec.n());
  std::size_t first = ranges[0].first, last = ranges[0].last;
  for (const auto& r : ranges) {
    first = std::min(first, r.first);
    last = std::max(last, r.last);
  }
  const auto traj = spec.trajectory(last);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(spec.n()));

  // Polarization: sym(O_1..O_d) = sum_eps (prod eps) (sum eps_i O_i)^d / (2^d d!).
  // Sign patterns with eps_0 = -1 mirror those with eps_0 = +1.
  double total = 0.0;
  std::vector<TwoPoint> site_values;
  site_values.reserve(last - first + 1);
  for (std::size_t pattern = 0; pattern < (std::size_t{1} << (d - 1)); ++pattern) {
    std::vector<double> eps(d, 1.0);
    double sign = 1.0;
    for (std::size_t i = 1; i < d; ++i) {
      if ((pattern >> (i - 1)) & 1U) {
        eps[i] = -1.0;
        sign = -sign;
      }
    }
    site_values.clear();
    for (std::size_t k = first; k <= last; ++k) {
      Vec3 mu{};
      double center = 0.0;
      bool active = false;
      for (std::size_t i = 0; i < d; ++i) {
        if (!ranges[i].contains(k)) continue;
        active = true;
        mu = mu + eps[i] * word.letters[i].dir.nu;
        center += eps[i] * word.letters[i].dir.center;
      }
      if (!active) continue;
      const double s = norm(mu);
      const double p = s > 0.0 ? clamp_probability(0.5 * (1.0 + dot(mu, traj[k]) / s)) : 0.5;
      site_values.push_back({(s - center) * inv_sqrt_n, (-s - center) * inv_sqrt_n, p});
    }
    const auto m = raw_moments_of_sum(site_values, static_cast<int>(d));
    total += sign * m[d];
  }
  return 2.0 * total / (std::pow(2.0, static_cast<double>(d)) * factorial(d));
}

namespace {

// Sum over perfect matchings of the indices in `open`; the last open index
// is paired with each remaining one, so pairs come out as (earlier, later)
// whenever `open` is increasing.
template <typename T>
T matching_sum(const std::vector<std::vector<T>>& cov, std::vector<int>& open) {
  if (open.empty()) return T(1.0);
  const int tail = open.back();
  open.pop_back();
  T total(0.0);
  for (std::size_t i = 0; i < open.size(); ++i) {
    const int partner = open[i];
    if (cov[partner][tail] == T(0.0)) continue;
    open.erase(open.begin() + static_cast<std::ptrdiff_t>(i));
    total += cov[partner][tail] * matching_sum(cov, open);
    open.insert(open.begin() + static_cast<std::ptrdiff_t>(i), partner);
  }
  open.push_back(tail);
  return total;
}

double overlap(const Window& a, const Window& b) {
  return std::max(0.0, std::min(a.t1, b.t1) - std::max(a.t0, b.t0));
}

}  // namespace

double gaussian_word_moment(const Mat3& covariance, const WordSpec& word) {
  const std::size_t d = word.letters.size();
  if (d % 2 == 1) return 0.0;
  if (d > 12) fail(ErrorCode::kDegreeOverflow, "Gaussian moment degree exceeds 12");
  std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      const auto& la = word.letters[a];
      const auto& lb = word.letters[b];
      cov[a][b] = dot(la.dir.nu, covariance * lb.dir.nu) * overlap(la.win, lb.win);
    }
  }
  std::vector<int> open(d);
  std::iota(open.begin(), open.end(), 0);
  return matching_sum(cov, open);
}

Complex quasi_free_word_moment(const BlochVector& v, const WordSpec& word) {
  const std::size_t d = word.letters.size();
  if (d % 2 == 1) return 0.0;
  if (d > 12) fail(ErrorCode::kDegreeOverflow, "quasi-free moment degree exceeds 12");
  const Vec3 vv = v.vec();
  const Mat3 c = limit_covariance(v);
  // c + i E(v), E antisymmetric with E_{xy} = v_z and cyclic.
  std::array<std::array<Complex, 3>, 3> k{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) k[i][j] = c[i][j];
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t j = (i + 1) % 3;
    const std::size_t l = (i + 2) % 3;
    k[i][j] += Complex(0.0, vv[l]);
    k[j][i] -= Complex(0.0, vv[l]);
  }
  std::vector<std::vector<Complex>> cov(d, std::vector<Complex>(d, 0.0));
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      const auto& na = word.letters[a].dir.nu;
      const auto& nb = word.letters[b].dir.nu;
      Complex acc = 0.0;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) acc += na[i] * k[i][j] * nb[j];
      cov[a][b] = acc * overlap(word.letters[a].win, word.letters[b].win);
    }
  }
  std::vector<int> open(d);
  std::iota(open.begin(), open.end(), 0);
  return matching_sum(cov, open);
}

double wick_moment(const Mat3& covariance, std::span<const std::pair<int, double>> letters) {
  WordSpec word;
  for (const auto& [component, time] : letters) {
    if (component < 1 || component > 3 || !(time >= 0.0)) {
      fail(ErrorCode::kInvalidArgument, "Wick letters need component 1..3 and time >= 0");
    }
    Vec3 nu{};
    nu[static_cast<std::size_t>(component - 1)] = 1.0;
    word.letters.push_back({Direction{nu, 0.0}, Window{0.0, time}});
  }
  return gaussian_word_moment(covariance, word);
}

CommutatorReport commutator_identity_check(const BlochVector& v, std::size_t n, double t) {
  using namespace std::complex_literals;
  if (n < 1) fail(ErrorCode::kInvalidArgument, "commutator check needs n >= 1");
  const Vec3 vv = v.vec();
  const std::array<Axis, 3> axes{Axis::kX, Axis::kY, Axis::kZ};
  CommutatorReport out;
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3;
    const int c = (a + 2) % 3;
    const Mat2 left = pauli(axes[a]) - vv[a] * Mat2::identity();
    const Mat2 right = pauli(axes[b]) - vv[b] * Mat2::identity();
    const Mat2 residual = commutator(left, right) - 2i * pauli(axes[c]);
    out.per_site_error = std::max(out.per_site_error, max_abs(residual));
  }
  out.holds = out.per_site_error <= 1e-15;
  const double nd = static_cast<double>(n);
  out.exact_scale = static_cast<double>(floor_sites(nd * t)) / nd;
  out.approximate_scale = t;
  out.discrepancy = std::fabs(out.exact_scale - t);
  return out;
}

}  // namespace qwalk
