#include "bpbs/splines.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bpbs {

namespace {

// Degree-p basis values at one point, all indices, by the triangular
// recursion from the degree-0 indicators. Spans are half-open except the
// last nonempty span, which is closed on the right so that x = 1 activates
// the final basis function instead of producing a zero row.
std::vector<double> basis_row(const std::vector<double>& t, int p, double x) {
  const int nfun0 = static_cast<int>(t.size()) - 1;
  std::vector<double> b(nfun0, 0.0);
  int last_span = -1;
  for (int j = 0; j < nfun0; ++j)
    if (t[j] < t[j + 1]) last_span = j;
  for (int j = 0; j < nfun0; ++j) {
    const bool inside = (t[j] <= x && x < t[j + 1]) ||
                        (j == last_span && x == t[j + 1]);
    b[j] = inside ? 1.0 : 0.0;
  }
  for (int d = 1; d <= p; ++d) {
    const int nfun = static_cast<int>(t.size()) - d - 1;
    for (int j = 0; j < nfun; ++j) {
      double v = 0.0;
      const double den1 = t[j + d] - t[j];
      if (den1 > 0.0) v += (x - t[j]) / den1 * b[j];
      const double den2 = t[j + d + 1] - t[j + 1];
      if (den2 > 0.0) v += (t[j + d + 1] - x) / den2 * b[j + 1];
      b[j] = v;
    }
    b.resize(nfun);
  }
  return b;
}

void check_domain(const Eigen::VectorXd& x) {
  if (x.size() == 0) throw std::invalid_argument("basis evaluation: empty point set");
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!(x[i] >= 0.0 && x[i] <= 1.0))
      throw std::invalid_argument("basis evaluation: point " + std::to_string(x[i]) +
                                  " outside [0,1]");
}

}  // namespace

KnotGrid make_knots(int J, int degree) {
  if (degree < 1) throw std::invalid_argument("make_knots: degree must be >= 1");
  if (J < degree + 1)
    throw std::invalid_argument("make_knots: J = " + std::to_string(J) +
                                " below minimal dimension degree + 1");
  KnotGrid grid;
  grid.degree = degree;
  grid.interior_count = J - degree - 1;
  const int K = grid.interior_count;
  grid.extended_knots.reserve(static_cast<size_t>(J + degree + 1));
  for (int i = 0; i <= degree; ++i) grid.extended_knots.push_back(0.0);
  for (int k = 1; k <= K; ++k)
    grid.extended_knots.push_back(static_cast<double>(k) / (K + 1));
  for (int i = 0; i <= degree; ++i) grid.extended_knots.push_back(1.0);
  return grid;
}

Eigen::MatrixXd basis_matrix(const KnotGrid& grid, const Eigen::VectorXd& x,
                             int order) {
  check_domain(x);
  if (order < 0 || order > grid.degree)
    throw std::invalid_argument("basis_matrix: derivative order exceeds degree");
  const auto& t = grid.extended_knots;
  const int l = grid.degree;
  const int J = grid.dimension();
  Eigen::MatrixXd out(x.size(), J);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    std::vector<double> b = basis_row(t, l - order, x[i]);
    // Raise the degree back up, differentiating at each step:
    // d^o B_{j,p} = p * (d^{o-1} B_{j,p-1} / (t_{j+p}-t_j)
    //               - d^{o-1} B_{j+1,p-1} / (t_{j+p+1}-t_{j+1})).
    for (int s = 1; s <= order; ++s) {
      const int p = l - order + s;
      const int nfun = static_cast<int>(t.size()) - p - 1;
      std::vector<double> d(nfun, 0.0);
      for (int j = 0; j < nfun; ++j) {
        double v = 0.0;
        const double den1 = t[j + p] - t[j];
        if (den1 > 0.0) v += b[j] / den1;
        const double den2 = t[j + p + 1] - t[j + 1];
        if (den2 > 0.0) v -= b[j + 1] / den2;
        d[j] = p * v;
      }
      b = std::move(d);
    }
    for (int j = 0; j < J; ++j) out(i, j) = b[j];
  }
  return out;
}

SplineBasis eval_basis(const KnotGrid& grid, const Eigen::VectorXd& x) {
  SplineBasis basis;
  basis.grid = grid;
  basis.x = x;
  basis.values = basis_matrix(grid, x, 0);
  basis.col_means = basis.values.colwise().mean();
  const int J = grid.dimension();
  basis.centered = basis.values.rightCols(J - 1).rowwise() -
                   basis.col_means.tail(J - 1).transpose();
  return basis;
}

Eigen::MatrixXd eval_derivative_basis(const KnotGrid& grid,
                                      const Eigen::VectorXd& x, int order) {
  if (order < 1 || order > 2)
    throw std::invalid_argument("eval_derivative_basis: order must be 1 or 2");
  return basis_matrix(grid, x, order);
}

PenaltySet penalty_set(int J) {
  if (J < 4) throw std::invalid_argument("penalty_set: J must be >= 4");
  PenaltySet out;
  out.second_diff = Eigen::MatrixXd::Zero(J - 2, J);
  for (int r = 0; r < J - 2; ++r) {
    out.second_diff(r, r) = 1.0;
    out.second_diff(r, r + 1) = -2.0;
    out.second_diff(r, r + 2) = 1.0;
  }
  out.second_diff_centered = out.second_diff.rightCols(J - 1);
  out.penalty = out.second_diff.transpose() * out.second_diff;
  out.penalty_centered =
      out.second_diff_centered.transpose() * out.second_diff_centered;
  return out;
}

Eigen::MatrixXd transform_map(const SplineBasis& basis) {
  const int J = basis.grid.dimension();
  // det(A) equals the sum of the column means, which is 1 for a basis with
  // the partition-of-unity property; anything near zero is a numerical fault.
  const double det = basis.col_means.sum();
  if (std::abs(det) < 1e-8)
    throw std::runtime_error("transform_map: singular coordinate change");
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(J, J);
  A.row(0) = basis.col_means.transpose();
  for (int r = 1; r < J; ++r) {
    A(r, 0) = -1.0;
    A(r, r) = 1.0;
  }
  return A;
}

Eigen::VectorXd greville_abscissae(const KnotGrid& grid) {
  const int J = grid.dimension();
  const int l = grid.degree;
  Eigen::VectorXd xi(J);
  for (int j = 0; j < J; ++j) {
    double s = 0.0;
    for (int m = 1; m <= l; ++m) s += grid.extended_knots[static_cast<size_t>(j + m)];
    xi[j] = s / l;
  }
  return xi;
}

}  // namespace bpbs
