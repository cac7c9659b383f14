#pragma once

namespace qwalk::tol {

inline constexpr double kHermitian = 1e-12;
inline constexpr double kPsd = 1e-10;
inline constexpr double kRoundTrip = 1e-14;

// Kraus normalization (sum L L* or sum L* L equal to I).
inline constexpr double kNormalization = 1e-10;
// Bloch vectors representing states may exceed the unit ball by this much.
inline constexpr double kBlochNorm = 1e-9;
// Jacobi sweeps stop once the off-diagonal Frobenius mass drops below this.
inline constexpr double kJacobiOffDiagonal = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;
// |det(I - T)| below this means the fixed point is not unique.
inline constexpr double kSingularDet = 1e-12;
inline constexpr double kFixedPointResidual = 1e-11;
// Slack on the KRSW inequality conditions.
inline constexpr double kCondition = 1e-12;
// Variance below this makes the CLT diagnostic degenerate.
inline constexpr double kDegenerateVariance = 1e-12;
// Added to n*t before flooring so decimal times hit the intended site.
inline constexpr double kFloorSlack = 1e-9;

}  // namespace qwalk::tol
