// superoperator.hpp: dense linear maps on d x d matrices and the Choi-Jamiolkowski correspondence
//
// Representation: d^2 x d^2 matrix S with S(i*d + j, m*d + n) = Phi[|m><n|]_{ij}, i.e. columns are
// input matrix units in row-major order and rows are output matrix units in the same order.

#pragma once

#include "geamk/operator_basis.hpp"
#include "geamk/types.hpp"

#include <string>

namespace geamk {

class Superoperator {
public:
    Superoperator() = default;
    Superoperator(int d, Matrix mat) : d_(d), mat_(std::move(mat)) {
        if (mat_.rows() != d * d || mat_.cols() != d * d)
            throw Error(ErrorKind::dimension_mismatch, "superoperator matrix must be d^2 x d^2");
    }

    static Superoperator zero(int d) { return {d, Matrix::Zero(d * d, d * d)}; }

    int dim() const { return d_; }
    const Matrix& matrix() const { return mat_; }

    Matrix apply(const Matrix& x) const {
        if (x.rows() != d_ || x.cols() != d_) throw Error(ErrorKind::dimension_mismatch, "input must be d x d");
        Vector v(d_ * d_);
        for (int m = 0; m < d_; ++m)
            for (int n = 0; n < d_; ++n) v(m * d_ + n) = x(m, n);
        const Vector w = mat_ * v;
        Matrix out(d_, d_);
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) out(i, j) = w(i * d_ + j);
        return out;
    }

    Matrix operator()(const Matrix& x) const { return apply(x); }

    // sum_{m,n} |m><n| (x) Phi[|m><n|]
    Matrix choi() const {
        Matrix w(d_ * d_, d_ * d_);
        for (int m = 0; m < d_; ++m)
            for (int n = 0; n < d_; ++n)
                for (int i = 0; i < d_; ++i)
                    for (int j = 0; j < d_; ++j) w(m * d_ + i, n * d_ + j) = mat_(i * d_ + j, m * d_ + n);
        return w;
    }

    static Superoperator from_choi(const Matrix& w, int d) {
        if (w.rows() != d * d || w.cols() != d * d)
            throw Error(ErrorKind::dimension_mismatch, "Choi matrix must be d^2 x d^2");
        Matrix s(d * d, d * d);
        for (int m = 0; m < d; ++m)
            for (int n = 0; n < d; ++n)
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) s(i * d + j, m * d + n) = w(m * d + i, n * d + j);
        return {d, std::move(s)};
    }

    /// Largest anti-Hermitian part of Phi[H] over I and the Gell-Mann basis.
    double hermiticity_residue() const {
        double worst = hermiticity_defect(apply(Matrix::Identity(d_, d_)));
        for (const auto& g : gell_mann_basis(d_)) worst = std::max(worst, hermiticity_defect(apply(g)));
        return worst;
    }

    bool is_hermiticity_preserving(double tolerance = tol::exact) const {
        return hermiticity_residue() <= tolerance;
    }

    Superoperator& operator+=(const Superoperator& o) {
        check_same(o);
        mat_ += o.mat_;
        return *this;
    }
    Superoperator& operator-=(const Superoperator& o) {
        check_same(o);
        mat_ -= o.mat_;
        return *this;
    }
    Superoperator& operator*=(double s) {
        mat_ *= s;
        return *this;
    }
    friend Superoperator operator+(Superoperator a, const Superoperator& b) { return a += b; }
    friend Superoperator operator-(Superoperator a, const Superoperator& b) { return a -= b; }
    friend Superoperator operator*(double s, Superoperator a) { return a *= s; }

private:
    void check_same(const Superoperator& o) const {
        if (o.d_ != d_) throw Error(ErrorKind::dimension_mismatch, "superoperators act on different dimensions");
    }

    int d_ = 0;
    Matrix mat_;
};

// X -> Tr(X) I / d
inline Superoperator phi_zero(int d) {
    if (d < 2) throw Error(ErrorKind::invalid_dimension, "d must be >= 2");
    Matrix s = Matrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int m = 0; m < d; ++m) s(i * d + i, m * d + m) = 1.0 / d;
    return {d, std::move(s)};
}

}  // namespace geamk
