#pragma once

// Qubit channels (CPTP maps) in Kraus, affine Bloch and KRSW diagonal form,
// complete-positivity checks, iteration, stationary-state analysis and the
// limit covariance I - v v^T.

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "qwalk/qubit_algebra.hpp"
#include "qwalk/real3.hpp"

namespace qwalk {

enum class KrausConvention {
  kLeftAdjoint,   // Phi(rho) = sum L* rho L, sum L L* = I
  kRightAdjoint,  // Phi(rho) = sum L rho L*, sum L* L = I
};

class KrausChannel {
 public:
  // 1..4 operators satisfying the convention's normalization within
  // tol::kNormalization.
  static KrausChannel make(std::vector<Mat2> ops, KrausConvention convention);

  const std::vector<Mat2>& ops() const { return ops_; }
  KrausConvention convention() const { return convention_; }

 private:
  KrausChannel(std::vector<Mat2> ops, KrausConvention convention)
      : ops_(std::move(ops)), convention_(convention) {}

  std::vector<Mat2> ops_;
  KrausConvention convention_;
};

// r -> linear * r + translation on Bloch vectors.
class AffineChannel {
 public:
  // Rejects maps sending any of 26 sphere directions outside the unit ball
  // (tolerance 1e-9).
  static AffineChannel make(const Mat3& linear, const Vec3& translation);

  const Mat3& linear() const { return linear_; }
  const Vec3& translation() const { return translation_; }
  Vec3 map(const Vec3& r) const { return linear_ * r + translation_; }

 private:
  AffineChannel(const Mat3& linear, const Vec3& translation)
      : linear_(linear), translation_(translation) {}

  Mat3 linear_;
  Vec3 translation_;
};

// Diagonal linear part diag(lambda) plus translation t. Complete positivity
// is a queried property, not a construction invariant.
struct KRSWChannel {
  Vec3 lambda{};
  Vec3 t{};
};

using Channel = std::variant<KrausChannel, AffineChannel, KRSWChannel>;

// Linear extension of the channel to all of M2(C).
Mat2 apply_linear(const Channel& ch, const Mat2& x);
DensityMatrix apply(const Channel& ch, const DensityMatrix& rho);

AffineChannel kraus_to_affine(const KrausChannel& ch);
AffineChannel krsw_to_affine(const KRSWChannel& ch);
// Affine form of any channel. KRSW parameters that are not a valid channel
// are returned without the unit-ball check.
Mat3 linear_part(const Channel& ch);
Vec3 translation_part(const Channel& ch);

// Block (i, j) is Phi(E_ij).
HermitianMat4 choi(const Channel& ch);
double min_choi_eigenvalue(const Channel& ch);
bool is_cp_choi(const Channel& ch, double tolerance);

struct KrswConditions {
  bool applicable = false;  // |t3| + |lambda3| <= 1
  bool cond1 = false;
  bool cond2 = false;
  bool cond3 = false;
  bool completely_positive = false;
};

KrswConditions krsw_cp_conditions(const KRSWChannel& ch);

// Solves (I - T) r = t. Throws kNonUniqueFixedPoint when |det(I - T)| is
// below tol::kSingularDet.
BlochVector fixed_point(const AffineChannel& ch);

// Largest eigenvalue modulus, from the characteristic cubic.
double spectral_radius(const Mat3& linear);
// All three eigenvalues of a real 3x3 matrix.
std::array<Complex, 3> eigenvalues3(const Mat3& linear);

enum class AssumptionA {
  kHoldsGeometric,
  kFailsSpectralRadiusOne,
  kNonUniqueFixedPoint,
};

struct ChannelAnalysis {
  DensityMatrix rho_inf = DensityMatrix::maximally_mixed();
  BlochVector v;
  Mat3 covariance{};
  double spectral_radius = 0.0;
  AssumptionA assumption_a = AssumptionA::kHoldsGeometric;
  bool fixed_point_unique = true;
};

// I - v v^T
Mat3 limit_covariance(const BlochVector& v);

// With a singular I - T the limit depends on the initial state; pass one or
// get kNonUniqueFixedPoint.
ChannelAnalysis analyze(const Channel& ch,
                        const std::optional<DensityMatrix>& rho0 = std::nullopt);

// Phi^k(rho0) for k = 0..n.
std::vector<DensityMatrix> iterate(const Channel& ch, const DensityMatrix& rho0,
                                   std::size_t n);

// Deterministic random Kraus channel with `count` operators.
KrausChannel random_kraus_channel(std::uint64_t seed, int count,
                                  KrausConvention convention);

}  // namespace qwalk
