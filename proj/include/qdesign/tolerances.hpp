#pragma once

namespace qdesign::tol {

inline constexpr double kNorm = 1e-12;
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-12;
inline constexpr double kPsd = 1e-10;
inline constexpr double kWeights = 1e-12;
inline constexpr double kBlochRadius = 1e-12;
inline constexpr double kDesign = 1e-10;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kPhase = 1e-10;
inline constexpr double kAngle = 1e-9;
inline constexpr double kDegenerate = 1e-12;

}  // namespace qdesign::tol
