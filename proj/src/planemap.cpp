#include "socc/planemap.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace socc {

namespace {

Eigen::MatrixXd build_matrix(int n) {
    if (n < 1) {
        throw std::invalid_argument("PlaneMap: n must be >= 1");
    }
    if (n == 1) {
        return Eigen::MatrixXd::Zero(1, 0);
    }
    if (n == 2) {
        Eigen::MatrixXd u(2, 1);
        const double r = 1.0 / std::sqrt(2.0);
        u << r, -r;
        return u;
    }
    if (n % 2 == 0) {
        const int h = n / 2;
        const Eigen::MatrixXd uh = build_matrix(h);
        Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n - 1);
        u.topLeftCorner(h, h - 1) = uh;
        u.block(h, h - 1, h, h - 1) = uh;
        const double c = 1.0 / std::sqrt(static_cast<double>(n));
        u.col(n - 2).head(h).setConstant(c);
        u.col(n - 2).tail(h).setConstant(-c);
        return u;
    }
    const Eigen::MatrixXd um = build_matrix(n - 1);
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n - 1);
    u.topLeftCorner(n - 1, n - 2) = um;
    const double nn = static_cast<double>(n);
    u.col(n - 2).head(n - 1).setConstant(1.0 / std::sqrt(nn * nn - nn));
    u(n - 1, n - 2) = -std::sqrt((nn - 1.0) / nn);
    return u;
}

}  // namespace

PlaneMap PlaneMap::build(int n) { return PlaneMap(build_matrix(n)); }

Eigen::VectorXd PlaneMap::forward(const Eigen::VectorXd& x) const {
    if (x.size() != n_ - 1) {
        throw std::invalid_argument("PlaneMap::forward: expected length n-1");
    }
    if (n_ == 1) {
        return Eigen::VectorXd::Zero(1);
    }
    return u_ * x;
}

Eigen::VectorXd PlaneMap::adjoint(const Eigen::VectorXd& y) const {
    if (y.size() != n_) {
        throw std::invalid_argument("PlaneMap::adjoint: expected length n");
    }
    return u_.transpose() * y;
}

double PlaneMap::max_row_abs_sum() const {
    if (u_.cols() == 0) {
        return 0.0;
    }
    return u_.cwiseAbs().rowwise().sum().maxCoeff();
}

const PlaneMap& cached_planemap(int n) {
    static std::mutex mutex;
    static std::unordered_map<int, std::unique_ptr<PlaneMap>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, std::make_unique<PlaneMap>(PlaneMap::build(n))).first;
    }
    return *it->second;
}

double planemap_infnorm_bound(int n) {
    if (n < 2) {
        return 0.0;
    }
    int k = 0;
    while ((1 << (k + 1)) <= n) {
        ++k;
    }
    const int rem = n - (1 << k);
    double bound = 0.0;
    for (int j = 1; j <= k; ++j) {
        bound += std::pow(2.0, -0.5 * j);
    }
    return bound + static_cast<double>(rem) / static_cast<double>(1 << k);
}

}  // namespace socc
