#pragma once

// Exact 2x2 complex matrix algebra for a single qubit, the Pauli basis,
// density matrices and their Bloch coordinates, and small Hermitian
// eigensolvers (closed form for 2x2, cyclic Jacobi for 4x4).

#include <array>
#include <complex>

#include "qwalk/real3.hpp"

namespace qwalk {

using Complex = std::complex<double>;

enum class Axis { kX, kY, kZ, kIdentity };

struct Mat2 {
  // Row-major: a[0]=m00, a[1]=m01, a[2]=m10, a[3]=m11.
  std::array<Complex, 4> a{};

  constexpr Complex& operator()(int r, int c) { return a[2 * r + c]; }
  constexpr const Complex& operator()(int r, int c) const { return a[2 * r + c]; }

  static Mat2 zero() { return Mat2{}; }
  static Mat2 identity() { return Mat2{{1.0, 0.0, 0.0, 1.0}}; }
  static Mat2 unit(int r, int c) {
    Mat2 m;
    m(r, c) = 1.0;
    return m;
  }

  Mat2& operator+=(const Mat2& o);
  Mat2& operator-=(const Mat2& o);
};

Mat2 operator+(const Mat2& a, const Mat2& b);
Mat2 operator-(const Mat2& a, const Mat2& b);
Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator*(Complex s, const Mat2& a);

Mat2 adjoint(const Mat2& m);
Complex trace(const Mat2& m);
Mat2 commutator(const Mat2& a, const Mat2& b);
double max_abs(const Mat2& m);

Mat2 pauli(Axis which);

// nu . sigma - center * I
Mat2 pauli_combination(const Vec3& nu, double center = 0.0);

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 vec() const { return {x, y, z}; }
  static BlochVector from(const Vec3& v) { return {v[0], v[1], v[2]}; }
  double norm() const { return qwalk::norm(vec()); }
};

// rho = [[alpha, beta], [conj(beta), 1 - alpha]]; positive and unit trace
// within tol::kPsd.
class DensityMatrix {
 public:
  // Validates 0 <= alpha <= 1 and |beta|^2 <= alpha (1 - alpha).
  static DensityMatrix make(double alpha, Complex beta);
  // Reads alpha and beta off a Hermitian unit-trace matrix and validates.
  static DensityMatrix from_matrix(const Mat2& m);
  static DensityMatrix maximally_mixed() { return DensityMatrix(0.5, 0.0); }

  double alpha() const { return alpha_; }
  Complex beta() const { return beta_; }
  Mat2 matrix() const;

 private:
  DensityMatrix(double alpha, Complex beta) : alpha_(alpha), beta_(beta) {}

  double alpha_;
  Complex beta_;
};

// x = 2 Re(beta), y = -2 Im(beta), z = 2 alpha - 1.
BlochVector density_to_bloch(const DensityMatrix& rho);
// Throws for |r| > 1 + tol::kBlochNorm.
DensityMatrix bloch_to_density(const BlochVector& r);

struct EigenPair2 {
  double value;
  Mat2 projector;
};

// Eigenvalues sorted descending. A multiple of I yields the value twice with
// projectors diag(1,0) and diag(0,1).
std::array<EigenPair2, 2> herm_eigen2(const Mat2& m);

class HermitianMat4 {
 public:
  // Throws unless m equals its conjugate transpose within tol::kHermitian.
  static HermitianMat4 make(const std::array<Complex, 16>& m);

  const Complex& operator()(int r, int c) const { return a_[4 * r + c]; }
  const std::array<Complex, 16>& entries() const { return a_; }
  Complex trace() const { return a_[0] + a_[5] + a_[10] + a_[15]; }

 private:
  explicit HermitianMat4(const std::array<Complex, 16>& m) : a_(m) {}
  std::array<Complex, 16> a_;
};

// Cyclic Jacobi. Sorted descending.
std::array<double, 4> herm_eigen4(const HermitianMat4& m);

}  // namespace qwalk
