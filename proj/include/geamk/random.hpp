// random.hpp: seeded samplers: Ginibre/Haar matrices, density matrices, Schmidt-rank-k vectors

#pragma once

#include "geamk/types.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace geamk {

using Rng = std::mt19937_64;

// Independent stream for (seed, index); used for per-restart and per-group draws.
inline Rng make_stream(std::uint64_t seed, std::uint64_t index = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

inline RealMatrix gaussian_real(int rows, int cols, Rng& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    RealMatrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = nd(rng);
    return m;
}

// entries with independent standard normal real and imaginary parts
inline Matrix ginibre(int rows, int cols, Rng& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Matrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) {
            const double re = nd(rng);
            const double im = nd(rng);
            m(i, j) = cplx(re, im);
        }
    return m;
}

// Haar-distributed unitary (QR of a Ginibre matrix with the phase of diag(R) removed)
inline Matrix haar_unitary(int d, Rng& rng) {
    Eigen::HouseholderQR<Matrix> qr(ginibre(d, d, rng));
    Matrix q = qr.householderQ() * Matrix::Identity(d, d);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
        const double a = std::abs(r(j, j));
        if (a > 0.0) q.col(j) *= r(j, j) / a;
    }
    return q;
}

inline Vector haar_vector(int dim, Rng& rng) {
    Vector v = ginibre(dim, 1, rng).col(0);
    return v / v.norm();
}

inline Matrix random_pure_density(int d, Rng& rng) {
    const Vector v = haar_vector(d, rng);
    return v * v.adjoint();
}

// Wishart-type mixed state G G^dagger / Tr(G G^dagger) with a d x rank Ginibre factor
inline Matrix random_mixed_density(int d, Rng& rng, int rank = -1) {
    if (rank <= 0) rank = d;
    const Matrix g = ginibre(d, rank, rng);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return rho;
}

// Random rank-<=k coefficient matrix C with unit Frobenius norm; |psi> = sum C_mn |m>|n>.
inline Matrix random_schmidt_coefficients(int d, int k, Rng& rng) {
    Matrix c = ginibre(d, k, rng) * ginibre(k, d, rng);
    return c / c.norm();
}

// Row-major vectorization of a coefficient matrix: index m*d + n.
inline Vector coefficients_to_vector(const Matrix& c) {
    const auto d = c.rows();
    Vector v(c.rows() * c.cols());
    for (Eigen::Index m = 0; m < d; ++m)
        for (Eigen::Index n = 0; n < c.cols(); ++n) v(m * c.cols() + n) = c(m, n);
    return v;
}

inline Matrix vector_to_coefficients(const Vector& v, int d) {
    Matrix c(d, d);
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) c(m, n) = v(m * d + n);
    return c;
}

// Uniform point on the probability simplex (flat Dirichlet).
inline std::vector<double> dirichlet_uniform(int n, Rng& rng) {
    std::exponential_distribution<double> ed(1.0);
    std::vector<double> w(n);
    double total = 0.0;
    for (auto& x : w) {
        x = ed(rng);
        total += x;
    }
    for (auto& x : w) x /= total;
    return w;
}

}  // namespace geamk
