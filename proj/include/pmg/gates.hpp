#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace pmg {

// Block gate family parameters. theta stays in [0, pi/2) so the
// orthonormalization constant sqrt(1 - sin^{2m} theta) is nonzero;
// m is capped at 10 (dense 2^m x 2^m matrices).
struct BlockGateParams {
    int m = 2;
    double theta = 0.0;

    void validate() const;
};

enum class MatrixNorm { Frobenius, Spectral };

// Membership in the half set B^m used to pick the unproblematic columns:
// the canonical choice is "first bit clear", i.e. x_1 = 0 (bit 0 of the
// packed index). Exactly one of x, ~x is a member.
bool in_half_set(std::uint64_t x);

// A_{m,theta}: the column for |x_1 ... x_m> is the product state whose i-th
// qubit is exp(i theta x_{i-1} X)|x_i>, with cyclic predecessor x_0 := x_m.
// Unit-norm columns; unitary only at theta = 0.
Eigen::MatrixXcd build_a(const BlockGateParams& params);

// Orthonormalization coefficient for the column pair (x, ~x):
// -<A ~x|A x> = i^{3m + 2|x| + 2} sin^m(theta), |x| the Hamming weight.
// (Acting on the half-set convention above; for odd m this equals
// i^{m + 2|x|} sin^m(theta).)
std::complex<double> gram_schmidt_coefficient(int m, int weight, double theta);

// U_{m,theta}: equals A on the half set; the remaining columns are the
// Gram-Schmidt completion (A|x> + lambda_x A|~x>) / sqrt(1 - sin^{2m} theta).
// Unitary for all valid theta.
Eigen::MatrixXcd build_u(const BlockGateParams& params);

// Cyclic permutation |x_1, x_2, ..., x_m> -> |x_2, ..., x_m, x_1>,
// realizable as m-1 SWAPs. build_c(m)^m == identity.
Eigen::MatrixXcd build_c(int m);

// exp(i angle X).
Eigen::Matrix2cd x_rotation(double angle);

// exp(i X (-pi/4 + pi s / p)), the rotation ahead of the last measurement.
Eigen::Matrix2cd final_rotation(std::int64_t p, std::int64_t s);

// Norm of a - b; spectral = largest singular value.
double gate_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                     MatrixNorm norm = MatrixNorm::Frobenius);

// Least-squares slope of log(dist) against log(theta); used to check the
// O(theta^m) closeness scaling.
double fitted_loglog_slope(const Eigen::VectorXd& thetas, const Eigen::VectorXd& dists);

}  // namespace pmg
