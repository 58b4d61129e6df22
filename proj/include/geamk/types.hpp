// types.hpp: shared aliases, tolerances and the error type used across geamk

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace geamk {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

namespace tol {
// exact algebraic identities on constructed objects
inline constexpr double exact = 1e-10;
// one level of arithmetic composition on top of a constructed object
inline constexpr double composed = 1e-9;
// eigenvalue floor below which an operator is considered not PSD
inline constexpr double psd = 1e-10;
// parameter checks (sum of weights etc.)
inline constexpr double param = 1e-12;
}  // namespace tol

enum class ErrorKind {
    invalid_dimension,
    partition,
    parameter,
    positivity,
    precondition,
    dimension_mismatch,
    not_hermiticity_preserving,
    invalid_state,
    io,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::invalid_dimension: return "invalid-dimension";
        case ErrorKind::partition: return "partition";
        case ErrorKind::parameter: return "parameter-validation";
        case ErrorKind::positivity: return "positivity-violation";
        case ErrorKind::precondition: return "precondition";
        case ErrorKind::dimension_mismatch: return "dimension-mismatch";
        case ErrorKind::not_hermiticity_preserving: return "not-hermiticity-preserving";
        case ErrorKind::invalid_state: return "invalid-state";
        case ErrorKind::io: return "io";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// max-entry |X - X^dagger|
inline double hermiticity_defect(const Matrix& m) { return max_abs(m - m.adjoint()); }

inline double min_eigenvalue(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

// Tr(A B) without forming the product
inline cplx trace_product(const Matrix& a, const Matrix& b) {
    return (a.array() * b.transpose().array()).sum();
}

// Kronecker product a (x) b, first factor is the slow index
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// F_d = sum_{m,n} |m><n| (x) |n><m|
inline Matrix flip_operator(int d) {
    Matrix f = Matrix::Zero(d * d, d * d);
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) f(m * d + n, n * d + m) = 1.0;
    return f;
}

}  // namespace geamk
