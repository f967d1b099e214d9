#pragma once

namespace tgideal::tol {

// Default tolerances for desk-scale dense problems in double precision.
// Every operation that takes a tolerance parameter can override these.

/// Relative symmetry defect accepted when certifying a symmetric matrix.
inline constexpr double kSym = 1e-12;

/// Cholesky pivot threshold, relative to the largest diagonal entry.
inline constexpr double kPivotRel = 1e-13;

/// Orthonormality defect of computed bases and of structural identities
/// such as RS = 0 and RP = I.
inline constexpr double kOrth = 1e-10;

/// Eigenpair residual bound, relative to the matrix norm.
inline constexpr double kResid = 1e-9;

/// Rank / null-space threshold, relative to the largest singular value.
inline constexpr double kRank = 1e-8;

/// Set-membership tolerance for the interpolation classification tests.
inline constexpr double kMembership = 1e-8;

/// Eigenvalue clustering width used when extracting the lambda_min
/// eigenspace, relative to lambda_max.
inline constexpr double kEigCluster = 1e-8;

}  // namespace tgideal::tol
