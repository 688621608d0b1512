#pragma once

#include <Eigen/Dense>

namespace slicecert {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Relative rank tolerance: a singular value s counts as zero iff
/// s <= rank_tolerance() * max(1, s_max). Defaults to 1e-9.
double rank_tolerance();
void set_rank_tolerance(double tol);

/// Reads SLICECERT_TOL from the environment, if set. Returns true when the
/// variable was present and parsed.
bool load_rank_tolerance_from_env();

/// Numerical rank of m under the relative tolerance.
int numerical_rank(const Mat& m);

/// Euclidean-orthonormal basis (as columns) of the nullspace of m.
/// m may have zero rows, in which case the identity is returned.
Mat nullspace(const Mat& m);

/// Modified Gram-Schmidt with one reorthogonalization pass, orthonormal with
/// respect to the inner product <u, v> = u^T gram v. Columns whose residual
/// falls below the rank tolerance (relative to the largest input column) are
/// dropped.
Mat orthonormalize(const Mat& columns, const Mat& gram);

/// Columns of `within` (assumed gram-orthonormal) recombined to span the
/// gram-orthogonal complement of span(`against`) inside span(`within`).
Mat complement_within(const Mat& within, const Mat& against, const Mat& gram);

/// Residual of projecting the columns of `v` onto span(`basis`) (both under
/// `gram`, basis orthonormal). Returns the largest column residual norm.
double projection_residual(const Mat& v, const Mat& basis, const Mat& gram);

/// Minimum-norm least-squares solution of a x = b under the rank tolerance.
Vec min_norm_solve(const Mat& a, const Vec& b);

/// Symmetric part (a + a^T) / 2.
Mat symmetrize(const Mat& a);

double max_abs(const Mat& a);

}  // namespace slicecert
