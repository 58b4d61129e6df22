// operator_basis.hpp: Hermitian orthonormal operator bases and the H-frame built from them
//
// A basis is {G_0 = I/sqrt(d)} together with d^2 - 1 traceless Hermitian operators,
// split into N groups of sizes M_a - 1. G_0 is implicit and never stored.

#pragma once

#include "geamk/types.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace geamk {

struct HermitianBasis {
    int d = 0;
    std::vector<std::vector<Matrix>> groups;

    int n_groups() const { return static_cast<int>(groups.size()); }

    // M_a = group size + 1
    std::vector<int> layout() const {
        std::vector<int> m;
        m.reserve(groups.size());
        for (const auto& g : groups) m.push_back(static_cast<int>(g.size()) + 1);
        return m;
    }

    std::vector<Matrix> flat() const {
        std::vector<Matrix> out;
        for (const auto& g : groups) out.insert(out.end(), g.begin(), g.end());
        return out;
    }
};

struct FrameOperators {
    // h[a][k], k = 0..M_a-1; the last entry is (1 + sqrt(M_a)) G_a
    std::vector<std::vector<Matrix>> h;
    // G_a = sum of the group's basis operators
    std::vector<Matrix> g_sum;
};

/// Generalized Gell-Mann matrices normalized to Tr(G_i G_j) = delta_ij.
/// Order: symmetric (m<n) lexicographic, antisymmetric (m<n) lexicographic, then diagonal l = 1..d-1.
inline std::vector<Matrix> gell_mann_basis(int d) {
    if (d < 2) throw Error(ErrorKind::invalid_dimension, "d must be >= 2, got " + std::to_string(d));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(d * d - 1));
    for (int m = 0; m < d; ++m)
        for (int n = m + 1; n < d; ++n) {
            Matrix x = Matrix::Zero(d, d);
            x(m, n) = x(n, m) = inv_sqrt2;
            out.push_back(std::move(x));
        }
    for (int m = 0; m < d; ++m)
        for (int n = m + 1; n < d; ++n) {
            Matrix x = Matrix::Zero(d, d);
            x(m, n) = cplx(0.0, -inv_sqrt2);
            x(n, m) = cplx(0.0, inv_sqrt2);
            out.push_back(std::move(x));
        }
    for (int l = 1; l < d; ++l) {
        Matrix x = Matrix::Zero(d, d);
        const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        for (int j = 0; j < l; ++j) x(j, j) = norm;
        x(l, l) = -l * norm;
        out.push_back(std::move(x));
    }
    return out;
}

// U G U^dagger for every element; orthonormality and tracelessness are preserved.
inline std::vector<Matrix> conjugate_basis(const std::vector<Matrix>& flat, const Matrix& unitary) {
    std::vector<Matrix> out;
    out.reserve(flat.size());
    for (const auto& g : flat) {
        if (g.rows() != unitary.rows())
            throw Error(ErrorKind::dimension_mismatch, "unitary and basis dimensions differ");
        out.push_back(unitary * g * unitary.adjoint());
    }
    return out;
}

inline HermitianBasis partition_basis(const std::vector<Matrix>& flat, const std::vector<int>& m_sizes) {
    if (flat.empty()) throw Error(ErrorKind::partition, "empty basis");
    const int d = static_cast<int>(flat.front().rows());
    int needed = 0;
    for (int m : m_sizes) {
        if (m < 2) throw Error(ErrorKind::partition, "every group size M must be >= 2, got " + std::to_string(m));
        needed += m - 1;
    }
    if (needed != d * d - 1 || static_cast<int>(flat.size()) != d * d - 1)
        throw Error(ErrorKind::partition, "sum(M - 1) = " + std::to_string(needed) + " but the basis has " +
                                              std::to_string(flat.size()) + " elements (d^2 - 1 = " +
                                              std::to_string(d * d - 1) + ")");
    HermitianBasis basis;
    basis.d = d;
    std::size_t pos = 0;
    for (int m : m_sizes) {
        std::vector<Matrix> group(flat.begin() + static_cast<std::ptrdiff_t>(pos),
                                  flat.begin() + static_cast<std::ptrdiff_t>(pos + m - 1));
        basis.groups.push_back(std::move(group));
        pos += static_cast<std::size_t>(m - 1);
    }
    return basis;
}

struct BasisCheck {
    double hermiticity = 0.0;  // max |G - G^dagger|
    double trace = 0.0;        // max |Tr G|
    double gram = 0.0;         // max |Tr(G_i G_j) - delta_ij| including G_0
    bool complete = false;     // sum(M - 1) == d^2 - 1

    bool ok() const { return complete && hermiticity <= 1e-12 && trace <= 1e-12 && gram <= tol::exact; }
};

inline BasisCheck check_basis(const HermitianBasis& basis) {
    BasisCheck c;
    std::vector<Matrix> all;
    all.push_back(Matrix::Identity(basis.d, basis.d) / std::sqrt(static_cast<double>(basis.d)));
    for (const auto& g : basis.flat()) {
        c.hermiticity = std::max(c.hermiticity, hermiticity_defect(g));
        c.trace = std::max(c.trace, std::abs(g.trace()));
        all.push_back(g);
    }
    c.complete = static_cast<int>(all.size()) == basis.d * basis.d;
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = 0; j < all.size(); ++j) {
            const double target = i == j ? 1.0 : 0.0;
            c.gram = std::max(c.gram, std::abs(trace_product(all[i], all[j]) - target));
        }
    return c;
}

inline FrameOperators frame_operators(const HermitianBasis& basis) {
    FrameOperators fo;
    for (const auto& group : basis.groups) {
        const int m = static_cast<int>(group.size()) + 1;
        const double sm = std::sqrt(static_cast<double>(m));
        Matrix g_sum = Matrix::Zero(basis.d, basis.d);
        for (const auto& g : group) g_sum += g;
        std::vector<Matrix> h;
        h.reserve(static_cast<std::size_t>(m));
        for (const auto& g : group) h.push_back(g_sum - sm * (1.0 + sm) * g);
        h.push_back((1.0 + sm) * g_sum);
        fo.h.push_back(std::move(h));
        fo.g_sum.push_back(std::move(g_sum));
    }
    return fo;
}

// Largest deviation from the H-frame trace identities and from sum_k H_{a,k} = 0.
struct FrameCheck {
    double self_trace = 0.0;   // Tr(H_k^2) = (M-1)(sqrt(M)+1)^2
    double intra_trace = 0.0;  // Tr(H_k H_l) = -(sqrt(M)+1)^2, k != l
    double inter_trace = 0.0;  // Tr(H_{a,k} H_{b,l}) = 0, a != b
    double group_sum = 0.0;    // max-entry of sum_k H_{a,k}
};

inline FrameCheck check_frame(const FrameOperators& fo) {
    FrameCheck c;
    const std::size_t n = fo.h.size();
    for (std::size_t a = 0; a < n; ++a) {
        const double m = static_cast<double>(fo.h[a].size());
        const double s2 = (std::sqrt(m) + 1.0) * (std::sqrt(m) + 1.0);
        Matrix total = Matrix::Zero(fo.h[a][0].rows(), fo.h[a][0].cols());
        for (std::size_t k = 0; k < fo.h[a].size(); ++k) {
            total += fo.h[a][k];
            for (std::size_t l = 0; l < fo.h[a].size(); ++l) {
                const cplx t = trace_product(fo.h[a][k], fo.h[a][l]);
                if (k == l)
                    c.self_trace = std::max(c.self_trace, std::abs(t - (m - 1.0) * s2));
                else
                    c.intra_trace = std::max(c.intra_trace, std::abs(t + s2));
            }
            for (std::size_t b = a + 1; b < n; ++b)
                for (const auto& hb : fo.h[b])
                    c.inter_trace = std::max(c.inter_trace, std::abs(trace_product(fo.h[a][k], hb)));
        }
        c.group_sum = std::max(c.group_sum, max_abs(total));
    }
    return c;
}

// X = Tr(X G_0) G_0 + sum Tr(X G) G
inline Matrix reconstruct(const HermitianBasis& basis, const Matrix& x) {
    const double inv = 1.0 / static_cast<double>(basis.d);
    Matrix out = x.trace() * inv * Matrix::Identity(basis.d, basis.d);
    for (const auto& g : basis.flat()) out += trace_product(x, g) * g;
    return out;
}

}  // namespace geamk
