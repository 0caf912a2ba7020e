#pragma once

#include <Eigen/Dense>
#include <vector>

namespace bpbs {

/// Clamped knot sequence on [0,1] with equidistant interior knots.
/// A grid with degree l and K interior knots carries J = l + K + 1 basis
/// functions; the boundary knots 0 and 1 are repeated l+1 times.
struct KnotGrid {
  int degree = 3;
  int interior_count = 0;
  std::vector<double> extended_knots;

  int dimension() const { return degree + interior_count + 1; }
};

/// B-spline design information at a fixed set of evaluation points:
/// the raw basis matrix, its column means, and the mean-centered basis
/// (first column dropped) used by the centered parameterization.
struct SplineBasis {
  KnotGrid grid;
  Eigen::VectorXd x;
  Eigen::MatrixXd values;     // n x J, entry (i,j) = B_j(x_i)
  Eigen::VectorXd col_means;  // length J
  Eigen::MatrixXd centered;   // n x (J-1), entry (i,j) = B_{j+1}(x_i) - col_means(j+1)
};

/// Second-difference operator and the induced quadratic penalties, both for
/// the raw coefficients and for the centered parameterization (first column
/// of the difference operator removed).
struct PenaltySet {
  Eigen::MatrixXd second_diff;           // (J-2) x J
  Eigen::MatrixXd second_diff_centered;  // (J-2) x (J-1)
  Eigen::MatrixXd penalty;               // J x J
  Eigen::MatrixXd penalty_centered;      // (J-1) x (J-1)
};

/// Builds the clamped equidistant grid carrying J basis functions.
/// Throws std::invalid_argument when J < degree + 1 or degree < 1.
KnotGrid make_knots(int J, int degree);

/// Raw basis (order = 0) or basis-derivative (order = 1, 2) matrix at the
/// given points; rows index points, columns index the J basis functions.
/// Requires all x in [0,1] and order <= degree.
Eigen::MatrixXd basis_matrix(const KnotGrid& grid, const Eigen::VectorXd& x,
                             int order = 0);

/// Evaluates the raw basis at the design points and derives the centered
/// basis from the realized column means. Rejects empty x or x outside [0,1].
SplineBasis eval_basis(const KnotGrid& grid, const Eigen::VectorXd& x);

/// Derivative counterpart of eval_basis's raw matrix, by the standard
/// coefficient-differencing recursion against knot spans.
Eigen::MatrixXd eval_derivative_basis(const KnotGrid& grid,
                                      const Eigen::VectorXd& x, int order);

/// Difference/penalty matrices for dimension J (requires J >= 4).
PenaltySet penalty_set(int J);

/// The J x J change of coordinates from raw coefficients to
/// (global mean, centered coefficients): first row is the column means,
/// row j is -e_1 + e_j. Satisfies (0, D̃) A = D and preserves both the
/// fitted function and the second-difference quadratic form.
Eigen::MatrixXd transform_map(const SplineBasis& basis);

/// Greville abscissae of the grid: coefficients equal to these points
/// reproduce the identity function exactly.
Eigen::VectorXd greville_abscissae(const KnotGrid& grid);

}  // namespace bpbs
