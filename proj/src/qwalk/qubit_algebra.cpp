#include "qwalk/qubit_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "qwalk/error.hpp"
#include "qwalk/tolerances.hpp"

namespace qwalk {

Mat2& Mat2::operator+=(const Mat2& o) {
  for (int i = 0; i < 4; ++i) a[i] += o.a[i];
  return *this;
}

Mat2& Mat2::operator-=(const Mat2& o) {
  for (int i = 0; i < 4; ++i) a[i] -= o.a[i];
  return *this;
}

Mat2 operator+(const Mat2& a, const Mat2& b) {
  Mat2 out = a;
  return out += b;
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
  Mat2 out = a;
  return out -= b;
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c);
  return out;
}

Mat2 operator*(Complex s, const Mat2& a) {
  Mat2 out;
  for (int i = 0; i < 4; ++i) out.a[i] = s * a.a[i];
  return out;
}

Mat2 adjoint(const Mat2& m) {
  Mat2 out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out(r, c) = std::conj(m(c, r));
  return out;
}

Complex trace(const Mat2& m) { return m(0, 0) + m(1, 1); }

Mat2 commutator(const Mat2& a, const Mat2& b) { return a * b - b * a; }

double max_abs(const Mat2& m) {
  double worst = 0.0;
  for (const auto& z : m.a) worst = std::max(worst, std::abs(z));
  return worst;
}

Mat2 pauli(Axis which) {
  using namespace std::complex_literals;
  switch (which) {
    case Axis::kX:
      return Mat2{{0.0, 1.0, 1.0, 0.0}};
    case Axis::kY:
      return Mat2{{0.0, -1i, 1i, 0.0}};
    case Axis::kZ:
      return Mat2{{1.0, 0.0, 0.0, -1.0}};
    case Axis::kIdentity:
      break;
  }
  return Mat2::identity();
}

Mat2 pauli_combination(const Vec3& nu, double center) {
  // [[nu3 - c, nu1 - i nu2], [nu1 + i nu2, -nu3 - c]]
  return Mat2{{Complex(nu[2] - center, 0.0), Complex(nu[0], -nu[1]),
               Complex(nu[0], nu[1]), Complex(-nu[2] - center, 0.0)}};
}

DensityMatrix DensityMatrix::make(double alpha, Complex beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta.real()) ||
      !std::isfinite(beta.imag())) {
    fail(ErrorCode::kInvalidArgument, "density matrix entries must be finite");
  }
  if (alpha < -tol::kPsd || alpha > 1.0 + tol::kPsd ||
      std::norm(beta) > alpha * (1.0 - alpha) + tol::kPsd) {
    std::ostringstream msg;
    msg << "not a density matrix: alpha=" << alpha << " beta=" << beta;
    fail(ErrorCode::kInvalidArgument, msg.str());
  }
  return DensityMatrix(alpha, beta);
}

DensityMatrix DensityMatrix::from_matrix(const Mat2& m) {
  if (std::abs(trace(m) - 1.0) > tol::kPsd ||
      max_abs(m - adjoint(m)) > tol::kHermitian) {
    fail(ErrorCode::kInvalidArgument,
         "matrix is not a Hermitian unit-trace state");
  }
  return make(m(0, 0).real(), m(0, 1));
}

Mat2 DensityMatrix::matrix() const {
  return Mat2{{alpha_, beta_, std::conj(beta_), 1.0 - alpha_}};
}

BlochVector density_to_bloch(const DensityMatrix& rho) {
  return {2.0 * rho.beta().real(), -2.0 * rho.beta().imag(),
          2.0 * rho.alpha() - 1.0};
}

DensityMatrix bloch_to_density(const BlochVector& r) {
  if (!(r.norm() <= 1.0 + tol::kBlochNorm)) {
    std::ostringstream msg;
    msg << "Bloch vector (" << r.x << ", " << r.y << ", " << r.z
        << ") lies outside the unit ball";
    fail(ErrorCode::kInvalidArgument, msg.str());
  }
  return DensityMatrix::make(0.5 * (1.0 + r.z), Complex(0.5 * r.x, -0.5 * r.y));
}

std::array<EigenPair2, 2> herm_eigen2(const Mat2& m) {
  if (max_abs(m - adjoint(m)) > tol::kHermitian) {
    fail(ErrorCode::kInvalidArgument, "herm_eigen2: matrix is not Hermitian");
  }
  // m = c I + w . sigma with real c and w.
  const double c = 0.5 * (m(0, 0).real() + m(1, 1).real());
  const Vec3 w{m(1, 0).real(), m(1, 0).imag(),
               0.5 * (m(0, 0).real() - m(1, 1).real())};
  const double r = norm(w);
  if (r == 0.0) {
    return {EigenPair2{c, Mat2::unit(0, 0)}, EigenPair2{c, Mat2::unit(1, 1)}};
  }
  const Vec3 u = (1.0 / r) * w;
  // Projector onto the +1 eigenspace of u . sigma is (I + u . sigma) / 2.
  const Mat2 half_u = 0.5 * pauli_combination(u);
  const Mat2 half_i = 0.5 * Mat2::identity();
  return {EigenPair2{c + r, half_i + half_u}, EigenPair2{c - r, half_i - half_u}};
}

HermitianMat4 HermitianMat4::make(const std::array<Complex, 16>& m) {
  for (int r = 0; r < 4; ++r) {
    for (int c = r; c < 4; ++c) {
      if (std::abs(m[4 * r + c] - std::conj(m[4 * c + r])) > tol::kHermitian) {
        fail(ErrorCode::kInvalidArgument, "4x4 matrix is not Hermitian");
      }
    }
  }
  return HermitianMat4(m);
}

std::array<double, 4> herm_eigen4(const HermitianMat4& m) {
  std::array<Complex, 16> a = m.entries();
  auto at = [&a](int r, int c) -> Complex& { return a[4 * r + c]; };
  auto off_mass = [&]() {
    double s = 0.0;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        if (r != c) s += std::norm(at(r, c));
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_mass() >= tol::kJacobiOffDiagonal) {
    if (++sweep > tol::kJacobiMaxSweeps) {
      fail(ErrorCode::kNotConverged, "herm_eigen4: Jacobi did not converge");
    }
    for (int p = 0; p < 3; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        const double g = std::abs(at(p, q));
        if (g == 0.0) continue;
        // U = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane
        // reduces the pair to a real symmetric Jacobi step.
        const Complex phase = at(p, q) / g;
        const double app = at(p, p).real();
        const double aqq = at(q, q).real();
        const double theta = (aqq - app) / (2.0 * g);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * cs;
        const Complex upp = cs;
        const Complex upq = sn;
        const Complex uqp = -sn * std::conj(phase);
        const Complex uqq = cs * std::conj(phase);
        // A <- A U (columns p, q)
        for (int r = 0; r < 4; ++r) {
          const Complex arp = at(r, p);
          const Complex arq = at(r, q);
          at(r, p) = arp * upp + arq * uqp;
          at(r, q) = arp * upq + arq * uqq;
        }
        // A <- U^H A (rows p, q)
        for (int c = 0; c < 4; ++c) {
          const Complex apc = at(p, c);
          const Complex aqc = at(q, c);
          at(p, c) = std::conj(upp) * apc + std::conj(uqp) * aqc;
          at(q, c) = std::conj(upq) * apc + std::conj(uqq) * aqc;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
      }
    }
  }

  std::array<double, 4> eig{at(0, 0).real(), at(1, 1).real(), at(2, 2).real(),
                            at(3, 3).real()};
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

}  // namespace qwalk
