#pragma once

#include <Eigen/Dense>

namespace socc {

/// Column-orthonormal map U_n from R^{n-1} onto the zero-sum hyperplane
/// E_n = { x in R^n : sum_i x_i = 0 }.
///
/// Built by a fixed recursion: U_2 = (1/sqrt2, -1/sqrt2)^T; even n stacks two
/// copies of U_{n/2} block-diagonally and appends a +-1/sqrt(n) column; odd n
/// borders U_{n-1} with a column (1/sqrt(n^2-n), ..., -sqrt((n-1)/n)).
/// Every column has unit norm, columns are pairwise orthogonal, and every
/// column sums to zero, so U_n^T U_n = I and U_n^T 1 = 0.
class PlaneMap {
public:
    /// n >= 1; n == 1 yields the unique (empty) map R^0 -> R^1.
    static PlaneMap build(int n);

    int dim() const { return n_; }

    /// Dense n x (n-1) matrix whose columns span E_n.
    const Eigen::MatrixXd& matrix() const { return u_; }

    /// y = U_n x; preserves the 2-norm and lands in E_n.
    Eigen::VectorXd forward(const Eigen::VectorXd& x) const;

    /// x = U_n^T y; inverts forward() and annihilates constant vectors.
    Eigen::VectorXd adjoint(const Eigen::VectorXd& y) const;

    /// Infinity operator norm max_i sum_j |u_ij|; always < sqrt2/(sqrt2-1).
    double max_row_abs_sum() const;

private:
    explicit PlaneMap(Eigen::MatrixXd u) : u_(std::move(u)), n_(static_cast<int>(u_.rows())) {}

    Eigen::MatrixXd u_;
    int n_;
};

/// Process-wide memoized PlaneMap store; maps are immutable once built and
/// safe to share across threads.
const PlaneMap& cached_planemap(int n);

/// Right-hand side of the recursion bound on max_row_abs_sum for n = 2^k + k',
/// k' in {0..2^k-1}: sum_{j=1..k} 2^{-j/2} + k'/2^k.
double planemap_infnorm_bound(int n);

}  // namespace socc
