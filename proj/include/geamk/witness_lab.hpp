// witness_lab.hpp: expectation values of witnesses on state families and detection thresholds

#pragma once

#include "geamk/map_builder.hpp"
#include "geamk/random.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace geamk {

inline constexpr double detection_threshold_value = 1e-10;

// P_+^(k) = (1/k) sum_{m,n<k} |m><n| (x) |m><n|
inline Matrix maximally_entangled_projector(int d, int k) {
    Matrix p = Matrix::Zero(d * d, d * d);
    for (int m = 0; m < k; ++m)
        for (int n = 0; n < k; ++n) p(m * d + m, n * d + n) = 1.0 / k;
    return p;
}

struct IsotropicState {
    int d = 2;
    double p = 0.0;

    Matrix density() const {
        if (p < 0.0 || p > 1.0) throw Error(ErrorKind::invalid_state, "isotropic parameter must lie in [0, 1]");
        return p * maximally_entangled_projector(d, d) +
               (1.0 - p) / (d * d) * Matrix::Identity(d * d, d * d);
    }
};

inline void require_density(const Matrix& rho, int dim) {
    if (rho.rows() != dim || rho.cols() != dim) throw Error(ErrorKind::dimension_mismatch, "state has wrong size");
    if (hermiticity_defect(rho) > tol::exact) throw Error(ErrorKind::invalid_state, "state is not Hermitian");
    if (std::abs(rho.trace() - 1.0) > tol::exact) throw Error(ErrorKind::invalid_state, "state does not have unit trace");
    if (min_eigenvalue(0.5 * (rho + rho.adjoint())) < -tol::psd)
        throw Error(ErrorKind::invalid_state, "state is not positive semidefinite");
}

inline double witness_expectation(const Witness& w, const Matrix& rho) {
    require_density(rho, static_cast<int>(w.w.rows()));
    return trace_product(w.w, rho).real();
}

/// Root of p -> Tr(W rho_p) on [0, 1] for the isotropic family; the map is affine in p.
inline std::optional<double> detection_threshold(const Witness& w) {
    const int d = w.dim();
    const double f0 = witness_expectation(w, IsotropicState{d, 0.0}.density());
    const double f1 = witness_expectation(w, IsotropicState{d, 1.0}.density());
    if ((f0 >= 0.0) == (f1 >= 0.0)) return std::nullopt;
    return -f0 / (f1 - f0);
}

/// Mixture of 2d random pure states of Schmidt rank <= k with flat Dirichlet weights.
inline Matrix sample_schmidt_bounded_state(int d, int k, Rng& rng) {
    const int count = 2 * d;
    const auto weights = dirichlet_uniform(count, rng);
    Matrix rho = Matrix::Zero(d * d, d * d);
    for (int i = 0; i < count; ++i) {
        const Vector v = coefficients_to_vector(random_schmidt_coefficients(d, k, rng));
        rho += weights[static_cast<std::size_t>(i)] * (v * v.adjoint());
    }
    return rho;
}

struct DetectionRow {
    std::string family;
    double parameter = 0.0;
    WitnessMeta meta;
    double expectation = 0.0;
    bool detected = false;
};

inline DetectionRow detect(const Witness& w, const std::string& family, double parameter, const Matrix& rho) {
    DetectionRow row{family, parameter, w.meta, witness_expectation(w, rho), false};
    row.detected = row.expectation < -detection_threshold_value;
    return row;
}

inline std::vector<DetectionRow> isotropic_sweep(const Witness& w, int points) {
    if (points < 2) throw Error(ErrorKind::precondition, "an isotropic sweep needs at least two points");
    std::vector<DetectionRow> rows;
    for (int i = 0; i < points; ++i) {
        const double p = static_cast<double>(i) / (points - 1);
        rows.push_back(detect(w, "isotropic", p, IsotropicState{w.dim(), p}.density()));
    }
    return rows;
}

}  // namespace geamk
