// map_builder.hpp: rotated measure-and-prepare maps, the k-positive family and its Choi witnesses
//
//   Phi_a[X]  = sum_{k,l} O^(a)_{kl} P_{a,k} Tr(X P_{a,l})
//   Phi^(k)   = A_k Phi_0 + sum_{a=L+1}^{K} Phi_a - sum_{a=1}^{L} Phi_a
//   W_k       = sum_{m,n} |m><n| (x) Phi^(k)[|m><n|]
//
// The rotations O^(a) are real orthogonal with every row and column summing to one.

#pragma once

#include "geamk/fingerprint.hpp"
#include "geamk/geam.hpp"
#include "geamk/random.hpp"
#include "geamk/superoperator.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace geamk {

struct RotationCheck {
    double orthogonality = 0.0;  // max-entry |O^T O - I|
    double line_sums = 0.0;      // max |row or column sum - 1|

    bool ok(double tolerance = tol::exact) const { return orthogonality <= tolerance && line_sums <= tolerance; }
};

inline RotationCheck check_rotation(const RealMatrix& o) {
    RotationCheck c;
    c.orthogonality = (o.transpose() * o - RealMatrix::Identity(o.rows(), o.cols())).cwiseAbs().maxCoeff();
    c.line_sums = std::max((o.rowwise().sum().array() - 1.0).abs().maxCoeff(),
                           (o.colwise().sum().array() - 1.0).abs().maxCoeff());
    return c;
}

// Orthonormal basis (as columns) of the complement of n* = (1,...,1); deterministic Gram-Schmidt.
inline RealMatrix uniform_complement(int m) {
    std::vector<RealVector> basis;
    basis.push_back(RealVector::Constant(m, 1.0 / std::sqrt(static_cast<double>(m))));
    for (int i = 0; i < m && static_cast<int>(basis.size()) < m; ++i) {
        RealVector v = RealVector::Unit(m, i);
        for (const auto& b : basis) v -= b.dot(v) * b;
        const double nrm = v.norm();
        if (nrm > 1e-8) basis.push_back(v / nrm);
    }
    RealMatrix out(m, m - 1);
    for (int j = 1; j < m; ++j) out.col(j - 1) = basis[static_cast<std::size_t>(j)];
    return out;
}

/// Orthogonal O with O n* = n*: exp of a random antisymmetric generator on the complement of n*,
/// followed by a seeded reflection of one complement direction so both components of O(m-1) are reached.
inline RealMatrix random_rotation(int m, Rng& rng) {
    if (m < 2) throw Error(ErrorKind::invalid_dimension, "rotation size must be >= 2");
    const RealMatrix b = uniform_complement(m);
    const RealMatrix g = gaussian_real(m - 1, m - 1, rng);
    const RealMatrix gen = 0.5 * (g - g.transpose()) * std::sqrt(2.0);
    RealMatrix r = gen.exp();
    std::bernoulli_distribution coin(0.5);
    if (coin(rng)) r.col(0) *= -1.0;
    const RealVector n = RealVector::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));
    return b * r * b.transpose() + n * n.transpose();
}

inline RealMatrix random_rotation(int m, std::uint64_t seed) {
    Rng rng = make_stream(seed, 0);
    return random_rotation(m, rng);
}

struct RotationSet {
    std::vector<RealMatrix> per_group;
    std::optional<std::uint64_t> seed;

    std::string fingerprint() const {
        Fnv1a h;
        for (const auto& o : per_group) h.update(o);
        return h.hex();
    }
};

inline RotationSet random_rotation_set(const std::vector<int>& layout, std::uint64_t seed) {
    RotationSet rs;
    rs.seed = seed;
    for (std::size_t a = 0; a < layout.size(); ++a) {
        Rng rng = make_stream(seed, a);
        rs.per_group.push_back(random_rotation(layout[a], rng));
    }
    return rs;
}

inline RotationSet identity_rotation_set(const std::vector<int>& layout) {
    RotationSet rs;
    for (int m : layout) rs.per_group.push_back(RealMatrix::Identity(m, m));
    return rs;
}

inline Superoperator phi_alpha(const Geam& g, int alpha, const RealMatrix& o) {
    if (alpha < 0 || alpha >= g.n_groups())
        throw Error(ErrorKind::precondition, "group index " + std::to_string(alpha + 1) + " out of range");
    const auto& ops = g.ops[static_cast<std::size_t>(alpha)];
    const int m = static_cast<int>(ops.size());
    if (o.rows() != m || o.cols() != m)
        throw Error(ErrorKind::dimension_mismatch, "rotation for group " + std::to_string(alpha + 1) + " must be " +
                                                       std::to_string(m) + " x " + std::to_string(m));
    const int d = g.d();
    // S = sum O_kl vec(P_k) vec(P_l^T)^T; Tr(X P) = vec(P^T) . vec(X)
    Matrix out_vecs(d * d, m), in_vecs(d * d, m);
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                out_vecs(i * d + j, k) = ops[k](i, j);
                in_vecs(i * d + j, k) = ops[k](j, i);
            }
    return {d, out_vecs * o.cast<cplx>() * in_vecs.transpose()};
}

struct MapIndices {
    int k = 1;   // Schmidt rank the map is built for
    int l = 1;   // groups 1..L enter with a minus sign
    int kk = 1;  // groups L+1..K enter with a plus sign
};

/// A_k = -d(mu_K - 2 mu_L) + sqrt((d-1) S [(d-1) k S + d (k-1) mu_K]).
/// Throws if A_k + d(mu_K - 2 mu_L) is not positive.
inline double a_coefficient(const Geam& g, int k, int l, int kk) {
    const double s = require_common_s(g);
    const int d = g.d();
    if (k < 1 || k > d) throw Error(ErrorKind::precondition, "k must satisfy 1 <= k <= d");
    if (l < 1 || l > kk || kk > g.n_groups())
        throw Error(ErrorKind::precondition, "indices must satisfy 1 <= L <= K <= N");
    const double mu_k = g.derived.mu(kk);
    const double mu_l = g.derived.mu(l);
    const double root = std::sqrt((d - 1.0) * s * ((d - 1.0) * k * s + d * (k - 1.0) * mu_k));
    const double a = -d * (mu_k - 2.0 * mu_l) + root;
    if (!(a + d * (mu_k - 2.0 * mu_l) > 0.0))
        throw Error(ErrorKind::precondition,
                    "A_k + d(mu_K - 2 mu_L) is not positive; the positive-trace branch does not apply");
    return a;
}

inline double a_coefficient(const Geam& g, const MapIndices& ix) { return a_coefficient(g, ix.k, ix.l, ix.kk); }

// Tr(Phi^(k)[X]) / Tr(X)
inline double trace_scale(const Geam& g, const MapIndices& ix, double a_k) {
    return a_k + g.d() * (g.derived.mu(ix.kk) - 2.0 * g.derived.mu(ix.l));
}

inline void require_rotations(const Geam& g, const RotationSet& rot, int kk) {
    if (static_cast<int>(rot.per_group.size()) < kk)
        throw Error(ErrorKind::precondition, "rotation set covers " + std::to_string(rot.per_group.size()) +
                                                 " groups, K = " + std::to_string(kk));
    for (int a = 0; a < kk; ++a) {
        const auto& o = rot.per_group[static_cast<std::size_t>(a)];
        if (o.rows() != g.params.m[a]) throw Error(ErrorKind::dimension_mismatch, "rotation size mismatch");
        if (!check_rotation(o).ok())
            throw Error(ErrorKind::precondition,
                        "rotation for group " + std::to_string(a + 1) + " is not orthogonal with unit line sums");
    }
}

inline Superoperator phi_k(const Geam& g, const RotationSet& rot, const MapIndices& ix) {
    const double a_k = a_coefficient(g, ix);
    require_rotations(g, rot, ix.kk);
    Superoperator phi = a_k * phi_zero(g.d());
    for (int a = 0; a < ix.kk; ++a) {
        const auto term = phi_alpha(g, a, rot.per_group[static_cast<std::size_t>(a)]);
        if (a < ix.l)
            phi -= term;
        else
            phi += term;
    }
    return phi;
}

struct WitnessMeta {
    int d = 0;
    int k = 0;
    int l = 0;
    int kk = 0;
    double a_k = 0.0;
    std::optional<std::uint64_t> rotation_seed;
    std::string rotation_fingerprint;
    std::string geam_fingerprint;
};

struct Witness {
    Matrix w;
    WitnessMeta meta;

    int dim() const { return meta.d; }
};

inline Witness choi_witness(const Superoperator& phi, WitnessMeta meta) {
    const double residue = phi.hermiticity_residue();
    if (residue > tol::exact)
        throw Error(ErrorKind::not_hermiticity_preserving,
                    "map sends a Hermitian input to an output with anti-Hermitian part " + std::to_string(residue));
    meta.d = phi.dim();
    return {phi.choi(), std::move(meta)};
}

// J_a = sum_{k,l} O_kl conj(P_l) (x) P_k
inline Matrix j_operator(const Geam& g, int alpha, const RealMatrix& o) {
    const auto& ops = g.ops[static_cast<std::size_t>(alpha)];
    const int d = g.d();
    Matrix j = Matrix::Zero(d * d, d * d);
    for (std::size_t k = 0; k < ops.size(); ++k)
        for (std::size_t l = 0; l < ops.size(); ++l) {
            const double w = o(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
            if (w != 0.0) j += w * kron(ops[l].conjugate(), ops[k]);
        }
    return j;
}

// (1/d) A_k I(x)I + sum_{a=L+1}^{K} J_a - sum_{a=1}^{L} J_a
inline Matrix witness_from_frames(const Geam& g, const RotationSet& rot, const MapIndices& ix) {
    const double a_k = a_coefficient(g, ix);
    require_rotations(g, rot, ix.kk);
    const int d = g.d();
    Matrix w = (a_k / d) * Matrix::Identity(d * d, d * d);
    for (int a = 0; a < ix.kk; ++a) {
        const Matrix j = j_operator(g, a, rot.per_group[static_cast<std::size_t>(a)]);
        if (a < ix.l)
            w -= j;
        else
            w += j;
    }
    return w;
}

}  // namespace geamk
