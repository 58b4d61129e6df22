// positivity.hpp: numerical k-positivity certificates for witnesses
//
// A map is k-positive iff <psi|W|psi> >= 0 for every |psi> = sum_mn C_mn |m>|n> with rank(C) <= k,
// where W is its Choi matrix. min_schmidt_k minimizes that form by alternating exact
// minimizations over the two Schmidt factors of C = A B^T.

#pragma once

#include "geamk/map_builder.hpp"
#include "geamk/random.hpp"
#include "geamk/superoperator.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace geamk {

struct SchmidtStateSample {
    Matrix c;  // d x d coefficient matrix, unit Frobenius norm

    Vector vector() const { return coefficients_to_vector(c); }
};

enum class Verdict { certified, violated, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::certified: return "certified-k-positive-numerically";
        case Verdict::violated: return "violated";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

struct CertificationReport {
    Verdict verdict = Verdict::inconclusive;
    double min_value = std::numeric_limits<double>::infinity();
    SchmidtStateSample argmin;
    int k = 0;
    int samples = 0;  // see-saw sweeps executed over all restarts
    int restarts = 0;
    int iters = 0;
    std::uint64_t seed = 0;
    double tolerance = 1e-8;
};

struct SeesawOptions {
    int restarts = 50;
    int iters = 500;
    std::uint64_t seed = 0;
    double tolerance = 1e-8;
    // a restart stops once a sweep improves the value by less than this
    double converge = 1e-15;
};

inline double quadratic_form(const Matrix& w, const Matrix& c) {
    const Vector v = coefficients_to_vector(c);
    return (v.adjoint() * w * v)(0, 0).real();
}

namespace detail {

// psi = T vec(A) with T = [I (x) b_1, ..., I (x) b_k] when B is fixed (columns b_i).
inline Matrix left_factor_map(const Matrix& b, int d) {
    const auto k = b.cols();
    Matrix t = Matrix::Zero(d * d, d * k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (int m = 0; m < d; ++m) t.block(m * d, i * d + m, d, 1) = b.col(i);
    return t;
}

// psi = T vec(B) with T = [a_1 (x) I, ..., a_k (x) I] when A is fixed.
inline Matrix right_factor_map(const Matrix& a, int d) {
    const auto k = a.cols();
    Matrix t = Matrix::Zero(d * d, d * k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (int m = 0; m < d; ++m)
            for (int n = 0; n < d; ++n) t(m * d + n, i * d + n) = a(m, i);
    return t;
}

inline Matrix unstack(const Vector& v, int d, int k) {
    Matrix out(d, k);
    for (int i = 0; i < k; ++i) out.col(i) = v.segment(i * d, d);
    return out;
}

// Lowest eigenpair of T^dagger W T for isometric T.
inline std::pair<double, Vector> lowest(const Matrix& w, const Matrix& t) {
    Matrix h = t.adjoint() * w * t;
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

// Rank-k truncation of C, split as C = A B^T with orthonormal columns in the factor named by `left_isometric`.
inline void split(const Matrix& c, int k, Matrix& a, Matrix& b, bool left_isometric) {
    Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Matrix u = svd.matrixU().leftCols(k);
    const Matrix vbar = svd.matrixV().leftCols(k).conjugate();
    const auto sv = svd.singularValues().head(k).cast<cplx>().asDiagonal();
    if (left_isometric) {
        a = u;
        b = vbar * sv;
    } else {
        a = u * sv;
        b = vbar;
    }
}

}  // namespace detail

/// Minimizes <psi|W|psi> over unit vectors of Schmidt rank <= k. Each restart draws its own
/// stream from (seed, restart) and alternates exact minimization over A (B isometric) and
/// over B (A isometric); both half-steps re-split C by SVD so the rank constraint is hard.
inline CertificationReport min_schmidt_k(const Witness& w, int k, const SeesawOptions& opt = {}) {
    const int d = w.dim();
    if (k < 1 || k > d) throw Error(ErrorKind::precondition, "k must satisfy 1 <= k <= d");
    if (w.w.rows() != d * d) throw Error(ErrorKind::dimension_mismatch, "witness is not d^2 x d^2");
    CertificationReport rep;
    rep.k = k;
    rep.restarts = opt.restarts;
    rep.iters = opt.iters;
    rep.seed = opt.seed;
    rep.tolerance = opt.tolerance;

    for (int r = 0; r < opt.restarts; ++r) {
        Rng rng = make_stream(opt.seed, static_cast<std::uint64_t>(r));
        Matrix a, b;
        detail::split(random_schmidt_coefficients(d, k, rng), k, a, b, false);
        double value = std::numeric_limits<double>::infinity();
        Matrix c;
        for (int it = 0; it < opt.iters; ++it) {
            ++rep.samples;
            auto [va, veca] = detail::lowest(w.w, detail::left_factor_map(b, d));
            c = detail::unstack(veca, d, k) * b.transpose();
            detail::split(c, k, a, b, true);
            auto [vb, vecb] = detail::lowest(w.w, detail::right_factor_map(a, d));
            c = a * detail::unstack(vecb, d, k).transpose();
            detail::split(c, k, a, b, false);
            const double prev = value;
            value = vb;
            if (prev - value < opt.converge) break;
        }
        c /= c.norm();
        const double v = quadratic_form(w.w, c);
        if (v < rep.min_value) {
            rep.min_value = v;
            rep.argmin.c = c;
        }
    }
    if (rep.min_value >= -opt.tolerance)
        rep.verdict = Verdict::certified;
    else if (std::abs(quadratic_form(w.w, rep.argmin.c) - rep.min_value) <= tol::exact)
        rep.verdict = Verdict::violated;
    else
        rep.verdict = Verdict::inconclusive;
    return rep;
}

/// Independent check for min_schmidt_k: plain random search over rank-k coefficient matrices.
inline double brute_force_oracle(const Witness& w, int k, int samples, std::uint64_t seed) {
    const int d = w.dim();
    Rng rng = make_stream(seed, 0xb0b);
    double best = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) best = std::min(best, quadratic_form(w.w, random_schmidt_coefficients(d, k, rng)));
    return best;
}

struct PurityRatioReport {
    double max_ratio = 0.0;
    double threshold = 0.0;             // 1 / (d^2 - 1), full extended space
    double rank_aware_threshold = 0.0;  // 1 / (k d - 1), support of (1 (x) Phi)[P_k]
    int samples = 0;
    int skipped = 0;

    bool within_threshold(double slack = 1e-9) const { return max_ratio <= threshold + slack; }
    bool within_rank_aware_threshold(double slack = 1e-9) const { return max_ratio <= rank_aware_threshold + slack; }
};

/// Largest Tr[(L[P])^2] / (Tr L[P])^2 with L = 1 (x) Phi over sampled P = (U (x) V) P_+^(k) (U (x) V)^dagger.
inline PurityRatioReport purity_ratio(const Superoperator& phi, int k, int samples, std::uint64_t seed) {
    const int d = phi.dim();
    if (k < 1 || k > d) throw Error(ErrorKind::precondition, "k must satisfy 1 <= k <= d");
    PurityRatioReport rep;
    rep.threshold = 1.0 / (d * d - 1.0);
    rep.rank_aware_threshold = 1.0 / (k * d - 1.0);
    rep.samples = samples;
    Rng rng = make_stream(seed, 0x3e7a);
    for (int s = 0; s < samples; ++s) {
        const Matrix u = haar_unitary(d, rng);
        const Matrix v = haar_unitary(d, rng);
        Matrix lam = Matrix::Zero(d * d, d * d);
        for (int m = 0; m < k; ++m)
            for (int n = 0; n < k; ++n) {
                const Matrix umn = u.col(m) * u.col(n).adjoint();
                const Matrix vmn = v.col(m) * v.col(n).adjoint();
                lam += kron(umn, phi.apply(vmn));
            }
        lam /= static_cast<double>(k);
        const double tr = lam.trace().real();
        if (std::abs(tr) < 1e-12) {
            ++rep.skipped;
            continue;
        }
        rep.max_ratio = std::max(rep.max_ratio, trace_product(lam, lam).real() / (tr * tr));
    }
    return rep;
}

}  // namespace geamk
