#include "qwalk/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "qwalk/error.hpp"
#include "qwalk/tolerances.hpp"

namespace qwalk {
namespace {

constexpr std::array<Axis, 3> kAxes{Axis::kX, Axis::kY, Axis::kZ};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Mat2 apply_affine(const Mat3& linear, const Vec3& translation, const Mat2& x) {
  // x = (Tr x I + sum c_i sigma_i) / 2 with complex c_i = Tr(sigma_i x).
  const Complex tr = trace(x);
  std::array<Complex, 3> c{};
  for (int i = 0; i < 3; ++i) c[i] = trace(pauli(kAxes[i]) * x);
  Mat2 out = tr * Mat2::identity();
  for (int i = 0; i < 3; ++i) {
    Complex ri = tr * translation[i];
    for (int j = 0; j < 3; ++j) ri += linear[i][j] * c[j];
    out += ri * pauli(kAxes[i]);
  }
  return 0.5 * out;
}

Vec3 fixed_point_of(const Mat3& linear, const Vec3& translation) {
  Mat3 lhs = identity3();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) lhs[i][j] -= linear[i][j];
  if (std::fabs(det3(lhs)) < tol::kSingularDet) {
    fail(ErrorCode::kNonUniqueFixedPoint,
         "fixed point is not unique: det(I - T) vanishes");
  }
  const Vec3 r = solve3(lhs, translation);
  if (norm(lhs * r - translation) >= tol::kFixedPointResidual ||
      norm(r) > 1.0 + tol::kBlochNorm) {
    fail(ErrorCode::kInvalidChannel,
         "fixed point lies outside the Bloch ball; not a valid channel");
  }
  return r;
}

// Any solution of a consistent, possibly singular system: full pivoting,
// free variables set to zero.
Vec3 solve_consistent(Mat3 m, Vec3 rhs) {
  double scale = 0.0;
  for (const auto& row : m)
    for (double x : row) scale = std::max(scale, std::fabs(x));
  std::array<int, 3> col{0, 1, 2};
  int rank = 0;
  for (; rank < 3; ++rank) {
    int pr = rank, pc = rank;
    for (int i = rank; i < 3; ++i)
      for (int j = rank; j < 3; ++j)
        if (std::fabs(m[i][col[j]]) > std::fabs(m[pr][col[pc]])) pr = i, pc = j;
    if (std::fabs(m[pr][col[pc]]) <= 1e-12 * std::max(scale, 1.0)) break;
    std::swap(m[rank], m[pr]);
    std::swap(rhs[rank], rhs[pr]);
    std::swap(col[rank], col[pc]);
    for (int i = rank + 1; i < 3; ++i) {
      const double f = m[i][col[rank]] / m[rank][col[rank]];
      for (int j = 0; j < 3; ++j) m[i][j] -= f * m[rank][j];
      rhs[i] -= f * rhs[rank];
    }
  }
  Vec3 x{};
  for (int i = rank - 1; i >= 0; --i) {
    double acc = rhs[i];
    for (int j = i + 1; j < rank; ++j) acc -= m[i][col[j]] * x[col[j]];
    x[col[i]] = acc / m[i][col[i]];
  }
  return x;
}

// Limit of r_{k+1} = T r_k + t when 1 is an eigenvalue of T. Requires every
// other eigenvalue strictly inside the unit disk. With A = I - T the limit is
// r0 + A y for any y solving A^2 y = t - A r0; eigenvalue 1 is semisimple for
// a channel, so ker A and range A meet only in 0 and A y is unique.
Vec3 singular_limit(const Mat3& linear, const Vec3& translation, const Vec3& r0) {
  for (const Complex& ev : eigenvalues3(linear)) {
    if (std::abs(ev - 1.0) > 1e-9 && std::abs(ev) > 1.0 - 1e-9) {
      fail(ErrorCode::kNonUniqueFixedPoint,
           "iterates do not converge: unit-modulus eigenvalues are not stationary");
    }
  }
  Mat3 a = identity3();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] -= linear[i][j];
  const Vec3 y = solve_consistent(a * a, translation - a * r0);
  const Vec3 r = r0 + a * y;
  if (norm(a * r - translation) > 1e-10) {
    fail(ErrorCode::kNonUniqueFixedPoint, "iterates do not converge: no stationary point");
  }
  return r;
}

// Portable normal deviates: Box-Muller over mt19937_64, which the standard
// pins bit for bit.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

KrausChannel KrausChannel::make(std::vector<Mat2> ops, KrausConvention convention) {
  if (ops.empty() || ops.size() > 4) {
    fail(ErrorCode::kInvalidArgument, "a qubit channel needs 1 to 4 Kraus operators");
  }
  Mat2 sum;
  for (const auto& op : ops) {
    for (const auto& z : op.a) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        fail(ErrorCode::kInvalidArgument, "Kraus operator entries must be finite");
      }
    }
    sum += convention == KrausConvention::kLeftAdjoint ? op * adjoint(op)
                                                       : adjoint(op) * op;
  }
  const double err = max_abs(sum - Mat2::identity());
  if (err > tol::kNormalization) {
    std::ostringstream msg;
    msg << "Kraus operators violate the "
        << (convention == KrausConvention::kLeftAdjoint ? "sum L L* = I"
                                                        : "sum L* L = I")
        << " normalization (error " << err << ")";
    fail(ErrorCode::kInvalidChannel, msg.str());
  }
  return KrausChannel(std::move(ops), convention);
}

AffineChannel AffineChannel::make(const Mat3& linear, const Vec3& translation) {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (!std::isfinite(linear[i][j])) {
        fail(ErrorCode::kInvalidArgument, "affine channel entries must be finite");
      }
    }
    if (!std::isfinite(translation[i])) {
      fail(ErrorCode::kInvalidArgument, "affine channel entries must be finite");
    }
  }
  for (int a = -1; a <= 1; ++a) {
    for (int b = -1; b <= 1; ++b) {
      for (int c = -1; c <= 1; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        const Vec3 d{double(a), double(b), double(c)};
        const Vec3 image = linear * ((1.0 / norm(d)) * d) + translation;
        if (norm(image) > 1.0 + 1e-9) {
          fail(ErrorCode::kInvalidChannel,
               "affine map sends a pure state outside the Bloch ball");
        }
      }
    }
  }
  return AffineChannel(linear, translation);
}

Mat3 linear_part(const Channel& ch) {
  return std::visit(
      Overloaded{[](const KrausChannel& k) { return kraus_to_affine(k).linear(); },
                 [](const AffineChannel& a) { return a.linear(); },
                 [](const KRSWChannel& k) { return diag3(k.lambda); }},
      ch);
}

Vec3 translation_part(const Channel& ch) {
  return std::visit(
      Overloaded{
          [](const KrausChannel& k) { return kraus_to_affine(k).translation(); },
          [](const AffineChannel& a) { return a.translation(); },
          [](const KRSWChannel& k) { return k.t; }},
      ch);
}

Mat2 apply_linear(const Channel& ch, const Mat2& x) {
  return std::visit(
      Overloaded{[&x](const KrausChannel& k) {
                   Mat2 out;
                   for (const auto& op : k.ops()) {
                     out += k.convention() == KrausConvention::kLeftAdjoint
                                ? adjoint(op) * x * op
                                : op * x * adjoint(op);
                   }
                   return out;
                 },
                 [&x](const AffineChannel& a) {
                   return apply_affine(a.linear(), a.translation(), x);
                 },
                 [&x](const KRSWChannel& k) {
                   return apply_affine(diag3(k.lambda), k.t, x);
                 }},
      ch);
}

DensityMatrix apply(const Channel& ch, const DensityMatrix& rho) {
  if (const auto* k = std::get_if<KrausChannel>(&ch)) {
    return DensityMatrix::from_matrix(apply_linear(*k, rho.matrix()));
  }
  const Vec3 r = density_to_bloch(rho).vec();
  return bloch_to_density(
      BlochVector::from(linear_part(ch) * r + translation_part(ch)));
}

AffineChannel kraus_to_affine(const KrausChannel& ch) {
  const Channel any = ch;
  Mat3 linear{};
  Vec3 translation{};
  const Mat2 image_of_identity = apply_linear(any, Mat2::identity());
  for (int i = 0; i < 3; ++i) {
    const Mat2 si = pauli(kAxes[i]);
    translation[i] = 0.5 * trace(si * image_of_identity).real();
    for (int j = 0; j < 3; ++j) {
      linear[i][j] = 0.5 * trace(si * apply_linear(any, pauli(kAxes[j]))).real();
    }
  }
  return AffineChannel::make(linear, translation);
}

AffineChannel krsw_to_affine(const KRSWChannel& ch) {
  return AffineChannel::make(diag3(ch.lambda), ch.t);
}

HermitianMat4 choi(const Channel& ch) {
  std::array<Complex, 16> m{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Mat2 block = apply_linear(ch, Mat2::unit(i, j));
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) m[4 * (2 * i + a) + (2 * j + b)] = block(a, b);
    }
  }
  return HermitianMat4::make(m);
}

double min_choi_eigenvalue(const Channel& ch) { return herm_eigen4(choi(ch))[3]; }

bool is_cp_choi(const Channel& ch, double tolerance) {
  return min_choi_eigenvalue(ch) >= -tolerance;
}

KrswConditions krsw_cp_conditions(const KRSWChannel& ch) {
  const auto [l1, l2, l3] = ch.lambda;
  const auto [t1, t2, t3] = ch.t;
  KrswConditions out;
  if (std::fabs(t3) + std::fabs(l3) > 1.0) return out;
  out.applicable = true;

  const double tt = t1 * t1 + t2 * t2;
  const double inf = std::numeric_limits<double>::infinity();
  auto ratio_term = [&](double num, double den) {
    if (tt == 0.0) return 0.0;
    if (den <= 0.0) return num == 0.0 ? 0.0 : inf;
    return tt * num / den;
  };
  const double eps = tol::kCondition;

  out.cond1 = true;
  out.cond2 = true;
  for (const double sign : {1.0, -1.0}) {
    const double upper1 = (1.0 + l3) * (1.0 + l3) - t3 * t3;
    const double mid1 = upper1 - ratio_term(1.0 + l3 + sign * t3, 1.0 - l3 + sign * t3);
    out.cond1 = out.cond1 && (l1 + l2) * (l1 + l2) <= mid1 + eps && mid1 <= upper1 + eps;

    const double upper2 = (1.0 - l3) * (1.0 - l3) - t3 * t3;
    const double mid2 = upper2 - ratio_term(1.0 - l3 + sign * t3, 1.0 + l3 + sign * t3);
    out.cond2 = out.cond2 && (l1 - l2) * (l1 - l2) <= mid2 + eps && mid2 <= upper2 + eps;
  }

  const double l1s = l1 * l1, l2s = l2 * l2, l3s = l3 * l3;
  const double lhs = 1.0 - (l1s + l2s + l3s) - (t1 * t1 + t2 * t2 + t3 * t3);
  const double rhs = 4.0 * (l1s * (t1 * t1 + l2s) + l2s * (t2 * t2 + l3s) +
                            l3s * (t3 * t3 + l1s) - 2.0 * l1 * l2 * l3);
  out.cond3 = lhs * lhs >= rhs - eps;

  out.completely_positive = out.cond1 && out.cond2 && out.cond3;
  return out;
}

BlochVector fixed_point(const AffineChannel& ch) {
  return BlochVector::from(fixed_point_of(ch.linear(), ch.translation()));
}

std::array<Complex, 3> eigenvalues3(const Mat3& m) {
  // Triangular (including diagonal) matrices carry their eigenvalues on the
  // diagonal exactly, where the cubic would lose precision at repeated roots.
  const bool upper = m[1][0] == 0.0 && m[2][0] == 0.0 && m[2][1] == 0.0;
  const bool lower = m[0][1] == 0.0 && m[0][2] == 0.0 && m[1][2] == 0.0;
  if (upper || lower) return {Complex(m[0][0]), Complex(m[1][1]), Complex(m[2][2])};

  // lambda^3 + a lambda^2 + b lambda + c
  const double tr = m[0][0] + m[1][1] + m[2][2];
  const double minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] +
                        m[0][0] * m[2][2] - m[0][2] * m[2][0] +
                        m[1][1] * m[2][2] - m[1][2] * m[2][1];
  const double a = -tr;
  const double b = minors;
  const double c = -det3(m);

  // Depressed cubic y^3 + p y + q with lambda = y - a / 3.
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  // Eigenvalue magnitude scale; p and q at rounding level mean a triple root.
  const double size = std::fmax(std::fabs(a) / 3.0,
                                std::fmax(std::sqrt(std::fabs(b)), std::cbrt(std::fabs(c))));
  if (std::fabs(p) <= 1e-14 * size * size && std::fabs(q) <= 1e-14 * size * size * size) {
    return {Complex(-a / 3.0), Complex(-a / 3.0), Complex(-a / 3.0)};
  }
  double disc = 0.25 * q * q + p * p * p / 27.0;
  const double scale = std::fmax(0.25 * q * q, std::fabs(p * p * p) / 27.0);
  // A discriminant at rounding level means an exactly repeated root;
  // snapping keeps repeated roots accurate to machine precision.
  if (std::fabs(disc) <= 1e-14 * scale) disc = 0.0;

  const Complex sq = std::sqrt(Complex(disc, 0.0));
  Complex base = -0.5 * q + sq;
  if (std::abs(-0.5 * q - sq) > std::abs(base)) base = -0.5 * q - sq;

  std::array<Complex, 3> roots{};
  if (std::abs(base) == 0.0) {
    roots.fill(Complex(-a / 3.0, 0.0));
    return roots;
  }
  const Complex u = std::pow(base, 1.0 / 3.0);
  const Complex omega(-0.5, std::sqrt(3.0) / 2.0);
  Complex w = 1.0;
  for (auto& root : roots) {
    const Complex uk = u * w;
    root = uk - p / (3.0 * uk) - a / 3.0;
    w *= omega;
  }

  // Newton polish on the cubic; only kept when the residual shrinks.
  auto poly = [&](Complex x) { return ((x + a) * x + b) * x + c; };
  auto dpoly = [&](Complex x) { return (3.0 * x + 2.0 * a) * x + b; };
  for (auto& root : roots) {
    for (int it = 0; it < 3; ++it) {
      const Complex d = dpoly(root);
      if (std::abs(d) < 1e-8) break;
      const Complex next = root - poly(root) / d;
      if (std::abs(poly(next)) >= std::abs(poly(root))) break;
      root = next;
    }
  }
  return roots;
}

double spectral_radius(const Mat3& linear) {
  double radius = 0.0;
  for (const auto& z : eigenvalues3(linear)) radius = std::max(radius, std::abs(z));
  return radius;
}

Mat3 limit_covariance(const BlochVector& v) {
  const Vec3 r = v.vec();
  Mat3 cov = identity3();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) cov[i][j] -= r[i] * r[j];
  return cov;
}

ChannelAnalysis analyze(const Channel& ch, const std::optional<DensityMatrix>& rho0) {
  const Mat3 linear = linear_part(ch);
  const Vec3 translation = translation_part(ch);

  ChannelAnalysis out;
  out.spectral_radius = spectral_radius(linear);

  Vec3 r{};
  try {
    r = fixed_point_of(linear, translation);
    out.fixed_point_unique = true;
    out.assumption_a = out.spectral_radius < 1.0 ? AssumptionA::kHoldsGeometric
                                                 : AssumptionA::kFailsSpectralRadiusOne;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNonUniqueFixedPoint) throw;
    if (!rho0) throw;
    r = singular_limit(linear, translation, density_to_bloch(*rho0).vec());
    out.fixed_point_unique = false;
    out.assumption_a = AssumptionA::kFailsSpectralRadiusOne;
  }
  out.v = BlochVector::from(r);
  out.rho_inf = bloch_to_density(out.v);
  out.covariance = limit_covariance(out.v);
  return out;
}

std::vector<DensityMatrix> iterate(const Channel& ch, const DensityMatrix& rho0,
                                   std::size_t n) {
  std::vector<DensityMatrix> out;
  out.reserve(n + 1);
  out.push_back(rho0);
  for (std::size_t k = 0; k < n; ++k) out.push_back(qwalk::apply(ch, out.back()));
  return out;
}

KrausChannel random_kraus_channel(std::uint64_t seed, int count,
                                  KrausConvention convention) {
  if (count < 1 || count > 4) {
    fail(ErrorCode::kInvalidArgument, "random_kraus_channel: count must be 1..4");
  }
  NormalStream normals(seed);
  for (int attempt = 0; attempt <= 8; ++attempt) {
    std::vector<Mat2> g(static_cast<std::size_t>(count));
    Mat2 s;
    for (auto& op : g) {
      for (auto& z : op.a) {
        const double re = normals.next();
        z = Complex(re, normals.next());
      }
      s += convention == KrausConvention::kLeftAdjoint ? op * adjoint(op)
                                                       : adjoint(op) * op;
    }
    const auto eig = herm_eigen2(s);
    if (eig[1].value < 1e-12) continue;
    const Mat2 inv_sqrt = (1.0 / std::sqrt(eig[0].value)) * eig[0].projector +
                          (1.0 / std::sqrt(eig[1].value)) * eig[1].projector;
    for (auto& op : g) {
      op = convention == KrausConvention::kLeftAdjoint ? inv_sqrt * op : op * inv_sqrt;
    }
    return KrausChannel::make(std::move(g), convention);
  }
  fail(ErrorCode::kNotConverged,
       "random_kraus_channel: normalization matrix singular after 8 retries");
}

}  // namespace qwalk
