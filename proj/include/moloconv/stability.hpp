#pragma once

#include <optional>
#include <vector>

#include <Eigen/Eigenvalues>

#include "moloconv/axis.hpp"
#include "moloconv/dynmat.hpp"
#include "moloconv/errors.hpp"

namespace moloconv {

template <typename Scalar>
struct StabilityVerdict {
  bool stable = false;
  Scalar margin{};  // min Re(lambda) over the spectrum of M, same units as M
  Vector6c<Scalar> eigenvalues;
};

/// Default stability tolerance: 1e-9 of the largest |M| entry.
template <typename Scalar>
Scalar default_margin_tolerance(const Matrix6c<Scalar>& m) {
  return Scalar(1e-9) * m.cwiseAbs().maxCoeff();
}

/// dV/dt = -M V is stable iff every eigenvalue of M has positive real part.
template <typename Scalar>
StabilityVerdict<Scalar> classify(const DynamicalSystem<Scalar>& sys, std::optional<Scalar> tol = std::nullopt) {
  if (!sys.m.allFinite()) throw EigensolverFailure("coefficient matrix has non-finite entries");
  Eigen::ComplexEigenSolver<Matrix6c<Scalar>> solver(sys.m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw EigensolverFailure("complex eigensolver did not converge");

  StabilityVerdict<Scalar> v;
  v.eigenvalues = solver.eigenvalues();
  v.margin = v.eigenvalues.real().minCoeff();
  v.stable = v.margin > tol.value_or(default_margin_tolerance(sys.m));
  return v;
}

/// Verdicts on an x-by-y grid; element (ix, iy) belongs to (x_grid[ix], y_grid[iy]).
struct StabilityMap {
  AxisSpec x_axis;
  AxisSpec y_axis;
  std::vector<double> x_grid;
  std::vector<double> y_grid;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> verdicts;
  Eigen::ArrayXXd margins;  // angular units; NaN where `failed`
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> failed;
};

StabilityMap stability_map(const SystemParams& base, const AxisSpec& x, const AxisSpec& y, unsigned workers = 0);

}  // namespace moloconv
