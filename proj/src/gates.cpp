#include "pmg/gates.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pmg/numtheory.hpp"

namespace pmg {

namespace {

constexpr int kMaxBlockSize = 10;

const std::complex<double> kImag(0.0, 1.0);

std::complex<double> i_power(std::int64_t e) {
    switch (((e % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

}  // namespace

void BlockGateParams::validate() const {
    if (m < 2 || m > kMaxBlockSize) {
        throw std::invalid_argument("block size m must satisfy 2 <= m <= 10");
    }
    if (!(theta >= 0.0 && theta < std::numbers::pi / 2.0)) {
        throw std::invalid_argument("theta must lie in [0, pi/2)");
    }
}

bool in_half_set(std::uint64_t x) {
    return (x & 1u) == 0;
}

Eigen::MatrixXcd build_a(const BlockGateParams& params) {
    params.validate();
    const int m = params.m;
    const Eigen::Index dim = Eigen::Index(1) << m;
    const double ct = std::cos(params.theta);
    const double st = std::sin(params.theta);

    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const auto x = static_cast<std::uint64_t>(col);
        // Per-qubit states exp(i theta x_{i-1} X)|x_i>, qubit i at bit i-1.
        Eigen::Matrix2Xcd qubit(2, m);
        for (int i = 0; i < m; ++i) {
            const std::uint64_t xi = (x >> i) & 1u;
            const std::uint64_t pred = (x >> ((i + m - 1) % m)) & 1u;
            Eigen::Vector2cd v = Eigen::Vector2cd::Zero();
            if (pred == 0) {
                v(static_cast<Eigen::Index>(xi)) = 1.0;
            } else {
                v(static_cast<Eigen::Index>(xi)) = ct;
                v(static_cast<Eigen::Index>(1 - xi)) = kImag * st;
            }
            qubit.col(i) = v;
        }
        for (Eigen::Index row = 0; row < dim; ++row) {
            std::complex<double> amp(1.0, 0.0);
            for (int i = 0; i < m; ++i) {
                amp *= qubit((static_cast<std::uint64_t>(row) >> i) & 1u, i);
            }
            a(row, col) = amp;
        }
    }
    return a;
}

std::complex<double> gram_schmidt_coefficient(int m, int weight, double theta) {
    return i_power(3 * static_cast<std::int64_t>(m) + 2 * weight + 2) *
           std::pow(std::sin(theta), m);
}

Eigen::MatrixXcd build_u(const BlockGateParams& params) {
    params.validate();
    const int m = params.m;
    const Eigen::Index dim = Eigen::Index(1) << m;
    const double sin_pow = std::pow(std::sin(params.theta), m);
    const double normalizer = std::sqrt(1.0 - sin_pow * sin_pow);
    if (!(normalizer > 0.0)) {
        throw std::invalid_argument("theta leaves the Gram-Schmidt normalizer zero");
    }

    const Eigen::MatrixXcd a = build_a(params);
    Eigen::MatrixXcd u(dim, dim);
    const std::uint64_t mask = (std::uint64_t(1) << m) - 1;
    for (Eigen::Index col = 0; col < dim; ++col) {
        const auto x = static_cast<std::uint64_t>(col);
        if (in_half_set(x)) {
            u.col(col) = a.col(col);
        } else {
            const auto xbar = static_cast<Eigen::Index>(x ^ mask);
            const int weight = std::popcount(x);
            const std::complex<double> lambda =
                gram_schmidt_coefficient(m, weight, params.theta);
            u.col(col) = (a.col(col) + lambda * a.col(xbar)) / normalizer;
        }
    }
    return u;
}

Eigen::MatrixXcd build_c(int m) {
    if (m < 2 || m > kMaxBlockSize) {
        throw std::invalid_argument("block size m must satisfy 2 <= m <= 10");
    }
    const Eigen::Index dim = Eigen::Index(1) << m;
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const auto x = static_cast<std::uint64_t>(col);
        const std::uint64_t rotated = (x >> 1) | ((x & 1u) << (m - 1));
        c(static_cast<Eigen::Index>(rotated), col) = 1.0;
    }
    return c;
}

Eigen::Matrix2cd x_rotation(double angle) {
    Eigen::Matrix2cd r;
    const std::complex<double> diag(std::cos(angle), 0.0);
    const std::complex<double> off = kImag * std::sin(angle);
    r << diag, off, off, diag;
    return r;
}

Eigen::Matrix2cd final_rotation(std::int64_t p, std::int64_t s) {
    if (p < 3 || !is_prime(p)) {
        throw std::invalid_argument("final_rotation requires an odd prime p >= 3");
    }
    if (s < 0 || s >= p) {
        throw std::invalid_argument("final_rotation requires 0 <= s < p");
    }
    const double angle = -std::numbers::pi / 4.0 +
                         std::numbers::pi * static_cast<double>(s) / static_cast<double>(p);
    return x_rotation(angle);
}

double gate_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, MatrixNorm norm) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("gate_distance requires equal dimensions");
    }
    const Eigen::MatrixXcd diff = a - b;
    if (norm == MatrixNorm::Frobenius) {
        return diff.norm();
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(diff);
    return svd.singularValues()(0);
}

double fitted_loglog_slope(const Eigen::VectorXd& thetas, const Eigen::VectorXd& dists) {
    if (thetas.size() != dists.size() || thetas.size() < 2) {
        throw std::invalid_argument("slope fit needs >= 2 matching points");
    }
    const Eigen::VectorXd x = thetas.array().log();
    const Eigen::VectorXd y = dists.array().log();
    const double xm = x.mean();
    const double ym = y.mean();
    const double sxx = (x.array() - xm).square().sum();
    const double sxy = ((x.array() - xm) * (y.array() - ym)).sum();
    return sxy / sxx;
}

}  // namespace pmg
