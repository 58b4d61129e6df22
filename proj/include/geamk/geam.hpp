// geam.hpp: generalized equiangular measurements: parameters, construction and analysis
//
// Each group a holds M_a operators P_{a,k} = (a_a/d) I + tau_a H_{a,k} that sum to gamma_a I.
// Group and element indices are 0-based in code and 1-based in messages.

#pragma once

#include "geamk/operator_basis.hpp"
#include "geamk/random.hpp"
#include "geamk/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace geamk {

struct GeamParams {
    int d = 0;
    std::vector<int> m;
    std::vector<double> gamma;
    std::vector<double> b;
    // +1/-1 per group; empty selects the sign automatically per group
    std::vector<int> tau_sign;

    int n_groups() const { return static_cast<int>(m.size()); }
};

struct DerivedParams {
    std::vector<double> a;
    std::vector<double> c;
    double f = 0.0;
    std::vector<double> s_per_group;
    std::vector<double> tau;  // signed once the GEAM is built
    std::optional<double> s;  // common S when all S_a agree within 1e-10
    std::vector<double> mu_prefix;  // mu_prefix[L] = (1/d) sum_{a<L} a_a gamma_a

    double mu(int l) const { return mu_prefix.at(static_cast<std::size_t>(l)); }
};

inline void validate_params(const GeamParams& p) {
    auto fail = [](const std::string& msg) { throw Error(ErrorKind::parameter, msg); };
    if (p.d < 2) throw Error(ErrorKind::invalid_dimension, "d must be >= 2, got " + std::to_string(p.d));
    const int n = p.n_groups();
    if (n < 1) fail("at least one group is required");
    if (static_cast<int>(p.gamma.size()) != n || static_cast<int>(p.b.size()) != n)
        fail("m, gamma and b must have the same length");
    if (!p.tau_sign.empty()) {
        if (static_cast<int>(p.tau_sign.size()) != n) fail("tau_sign must have one entry per group");
        for (int s : p.tau_sign)
            if (s != 1 && s != -1) fail("tau_sign entries must be +1 or -1");
    }
    int total = 0;
    for (int a = 0; a < n; ++a) {
        if (p.m[a] < 2) fail("M_" + std::to_string(a + 1) + " = " + std::to_string(p.m[a]) + " (must be >= 2)");
        total += p.m[a];
    }
    if (total != p.d * p.d + n - 1)
        fail("sum of M is " + std::to_string(total) + ", expected d^2 + N - 1 = " + std::to_string(p.d * p.d + n - 1));
    double gsum = 0.0;
    for (int a = 0; a < n; ++a) {
        if (!(p.gamma[a] > 0.0)) fail("gamma_" + std::to_string(a + 1) + " must be positive");
        gsum += p.gamma[a];
    }
    if (std::abs(gsum - 1.0) > tol::param) fail("gamma must sum to 1 (sum = " + std::to_string(gsum) + ")");
    const double inv_d = 1.0 / p.d;
    for (int a = 0; a < n; ++a) {
        const double upper = static_cast<double>(std::min(p.d, p.m[a])) / p.d;
        if (!(p.b[a] > inv_d) || p.b[a] > upper + tol::param) {
            std::ostringstream os;
            os << "b_" << a + 1 << " = " << p.b[a] << " violates 1/d < b <= min(d, M)/d, i.e. (" << inv_d << ", "
               << upper << "]";
            fail(os.str());
        }
    }
}

inline DerivedParams derive_params(const GeamParams& p) {
    validate_params(p);
    const int n = p.n_groups();
    const double d = p.d;
    DerivedParams dp;
    dp.f = 1.0 / d;
    dp.mu_prefix.assign(static_cast<std::size_t>(n + 1), 0.0);
    for (int a = 0; a < n; ++a) {
        const double m = p.m[a];
        const double aa = d * p.gamma[a] / m;
        const double cc = (m - d * p.b[a]) / (d * (m - 1.0));
        const double s = aa * aa * (p.b[a] - cc);
        const double sm1 = std::sqrt(m) + 1.0;
        dp.a.push_back(aa);
        dp.c.push_back(cc);
        dp.s_per_group.push_back(s);
        dp.tau.push_back(std::sqrt(s / (m * sm1 * sm1)));
        dp.mu_prefix[a + 1] = dp.mu_prefix[a] + aa * p.gamma[a] / d;
    }
    const auto [lo, hi] = std::minmax_element(dp.s_per_group.begin(), dp.s_per_group.end());
    if (*hi - *lo <= tol::exact) dp.s = dp.s_per_group.front();
    return dp;
}

struct BasisSpec {
    std::string kind = "gell_mann";
    std::optional<std::uint64_t> unitary_seed;
};

struct Geam {
    GeamParams params;
    BasisSpec basis;
    DerivedParams derived;
    std::vector<std::vector<Matrix>> ops;

    int d() const { return params.d; }
    int n_groups() const { return params.n_groups(); }
    int size() const {
        int n = 0;
        for (const auto& g : ops) n += static_cast<int>(g.size());
        return n;
    }
};

namespace detail {

struct GroupCandidate {
    std::vector<Matrix> ops;
    double min_eig = std::numeric_limits<double>::infinity();
    int worst_k = 0;
};

inline GroupCandidate make_group(const std::vector<Matrix>& h, double a_over_d, double tau) {
    GroupCandidate gc;
    const auto d = h.front().rows();
    for (std::size_t k = 0; k < h.size(); ++k) {
        Matrix p = a_over_d * Matrix::Identity(d, d) + tau * h[k];
        const double e = min_eigenvalue(p);
        if (e < gc.min_eig) {
            gc.min_eig = e;
            gc.worst_k = static_cast<int>(k);
        }
        gc.ops.push_back(std::move(p));
    }
    return gc;
}

}  // namespace detail

/// Builds P_{a,k} from the basis layout. With explicit signs the construction fails if any
/// operator has an eigenvalue below -1e-10; in auto mode +1 is tried before -1 for each group.
inline Geam build_geam(const HermitianBasis& basis, const GeamParams& params) {
    Geam g;
    g.params = params;
    g.derived = derive_params(params);
    if (basis.d != params.d)
        throw Error(ErrorKind::dimension_mismatch, "basis dimension " + std::to_string(basis.d) +
                                                       " differs from d = " + std::to_string(params.d));
    if (basis.layout() != params.m) throw Error(ErrorKind::partition, "basis layout does not match m");
    const FrameOperators fo = frame_operators(basis);
    const bool automatic = params.tau_sign.empty();
    g.params.tau_sign.assign(static_cast<std::size_t>(params.n_groups()), 1);
    for (int a = 0; a < params.n_groups(); ++a) {
        const double a_over_d = g.derived.a[a] / params.d;
        const std::vector<int> signs = automatic ? std::vector<int>{1, -1} : std::vector<int>{params.tau_sign[a]};
        std::optional<detail::GroupCandidate> chosen;
        detail::GroupCandidate worst;
        int chosen_sign = signs.front();
        for (int s : signs) {
            auto cand = detail::make_group(fo.h[a], a_over_d, s * g.derived.tau[a]);
            if (cand.min_eig >= -tol::psd) {
                chosen = std::move(cand);
                chosen_sign = s;
                break;
            }
            if (worst.ops.empty() || cand.min_eig > worst.min_eig) worst = std::move(cand);
        }
        if (!chosen) {
            std::ostringstream os;
            os.precision(6);
            os << "P_(" << a + 1 << "," << worst.worst_k + 1 << ") has minimum eigenvalue " << worst.min_eig
               << (automatic ? " for both tau signs" : "");
            throw Error(ErrorKind::positivity, os.str());
        }
        g.params.tau_sign[a] = chosen_sign;
        g.derived.tau[a] *= chosen_sign;
        g.ops.push_back(std::move(chosen->ops));
    }
    return g;
}

// Gell-Mann realization, optionally conjugated by a seeded Haar unitary.
inline HermitianBasis default_basis(int d, const std::vector<int>& layout,
                                    std::optional<std::uint64_t> unitary_seed = std::nullopt) {
    auto flat = gell_mann_basis(d);
    if (unitary_seed) {
        Rng rng = make_stream(*unitary_seed, 0);
        flat = conjugate_basis(flat, haar_unitary(d, rng));
    }
    return partition_basis(flat, layout);
}

inline Geam build_geam(const GeamParams& params, std::optional<std::uint64_t> unitary_seed = std::nullopt) {
    validate_params(params);
    Geam g = build_geam(default_basis(params.d, params.m, unitary_seed), params);
    g.basis.unitary_seed = unitary_seed;
    return g;
}

struct ConditionResult {
    std::string name;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ValidationReport {
    std::vector<ConditionResult> conditions;

    bool ok() const {
        return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.pass; });
    }
    const ConditionResult& at(const std::string& name) const {
        for (const auto& c : conditions)
            if (c.name == name) return c;
        throw Error(ErrorKind::precondition, "no condition named " + name);
    }
};

/// Checks the tight-frame sums, the element count and the four trace symmetries
/// (Tr P = a, Tr P^2 = b a^2, intra-group c a^2, inter-group f a_a a_b) plus positivity.
inline ValidationReport validate_geam(const Geam& g) {
    ValidationReport rep;
    const int d = g.d();
    const int n = static_cast<int>(g.ops.size());
    const auto& dp = g.derived;

    double tight = 0.0;
    for (int a = 0; a < n; ++a) {
        Matrix sum = Matrix::Zero(d, d);
        for (const auto& p : g.ops[a]) sum += p;
        tight = std::max(tight, max_abs(sum - g.params.gamma[a] * Matrix::Identity(d, d)));
    }
    rep.conditions.push_back({"tight_frame", tight, tol::exact, tight <= tol::exact});

    const double count_dev = std::abs(g.size() - (d * d + n - 1));
    bool layout_ok = n == g.params.n_groups();
    for (int a = 0; layout_ok && a < n; ++a) layout_ok = static_cast<int>(g.ops[a].size()) == g.params.m[a];
    rep.conditions.push_back({"cardinality", count_dev, 0.0, count_dev == 0.0 && layout_ok});

    double tr = 0.0, pur = 0.0, intra = 0.0, inter = 0.0, neg = 0.0;
    for (int a = 0; a < n; ++a) {
        const double aa = dp.a[a];
        for (std::size_t k = 0; k < g.ops[a].size(); ++k) {
            const Matrix& p = g.ops[a][k];
            tr = std::max(tr, std::abs(p.trace() - aa));
            pur = std::max(pur, std::abs(trace_product(p, p) - g.params.b[a] * aa * aa));
            neg = std::max(neg, std::max(0.0, -min_eigenvalue(p)) + hermiticity_defect(p));
            for (std::size_t l = k + 1; l < g.ops[a].size(); ++l)
                intra = std::max(intra, std::abs(trace_product(p, g.ops[a][l]) - dp.c[a] * aa * aa));
            for (int b = a + 1; b < n; ++b)
                for (const auto& q : g.ops[b])
                    inter = std::max(inter, std::abs(trace_product(p, q) - dp.f * aa * dp.a[b]));
        }
    }
    rep.conditions.push_back({"trace", tr, tol::composed, tr <= tol::composed});
    rep.conditions.push_back({"purity", pur, tol::composed, pur <= tol::composed});
    rep.conditions.push_back({"intra_group", intra, tol::composed, intra <= tol::composed});
    rep.conditions.push_back({"inter_group", inter, tol::composed, inter <= tol::composed});
    rep.conditions.push_back({"positivity", neg, tol::psd, neg <= tol::psd});
    return rep;
}

struct EquidistanceReport {
    bool equidistant = false;
    std::optional<double> s;          // common within-frame squared distance
    std::vector<double> s_per_group;  // a_a^2 (b_a - c_a)
    // 1/2 Tr[(P - P')^2] over distinct pairs inside one frame, all frames pooled
    double min_distance = 0.0;
    double max_distance = 0.0;
    // same over pairs from different frames; informational, f-determined and not equal to S in general
    std::optional<double> min_cross_distance;
    std::optional<double> max_cross_distance;
};

/// Equidistance means every pair of elements from the same frame sits at the same squared
/// distance S, for all frames at once (equivalently S_a = S for every a).
inline EquidistanceReport equidistance(const Geam& g) {
    auto half_sq = [](const Matrix& p, const Matrix& q) {
        const Matrix diff = p - q;
        return 0.5 * trace_product(diff, diff).real();
    };
    EquidistanceReport rep;
    rep.s_per_group = g.derived.s_per_group;
    rep.min_distance = std::numeric_limits<double>::infinity();
    rep.max_distance = -std::numeric_limits<double>::infinity();
    const std::size_t n = g.ops.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t k = 0; k < g.ops[a].size(); ++k) {
            for (std::size_t l = k + 1; l < g.ops[a].size(); ++l) {
                const double dist = half_sq(g.ops[a][k], g.ops[a][l]);
                rep.min_distance = std::min(rep.min_distance, dist);
                rep.max_distance = std::max(rep.max_distance, dist);
            }
            for (std::size_t b = a + 1; b < n; ++b)
                for (const auto& q : g.ops[b]) {
                    const double dist = half_sq(g.ops[a][k], q);
                    rep.min_cross_distance = std::min(rep.min_cross_distance.value_or(dist), dist);
                    rep.max_cross_distance = std::max(rep.max_cross_distance.value_or(dist), dist);
                }
        }
    rep.equidistant = rep.max_distance - rep.min_distance <= tol::composed;
    if (rep.equidistant) rep.s = 0.5 * (rep.min_distance + rep.max_distance);
    return rep;
}

inline double require_common_s(const Geam& g) {
    const auto eq = equidistance(g);
    if (!eq.equidistant)
        throw Error(ErrorKind::precondition, "GEAM is not equidistant (pairwise distances span [" +
                                                 std::to_string(eq.min_distance) + ", " +
                                                 std::to_string(eq.max_distance) + "])");
    return *eq.s;
}

struct ConicalReport {
    double kappa_plus = 0.0;   // mu_N - S/d
    double kappa_minus = 0.0;  // S
    double residual = 0.0;     // max-entry of sum P(x)P - kappa_+ I(x)I - kappa_- F
};

inline ConicalReport conical_design_check(const Geam& g) {
    const double s = require_common_s(g);
    const int d = g.d();
    ConicalReport rep;
    rep.kappa_minus = s;
    rep.kappa_plus = g.derived.mu(g.n_groups()) - s / d;
    Matrix sum = Matrix::Zero(d * d, d * d);
    for (const auto& grp : g.ops)
        for (const auto& p : grp) sum += kron(p, p);
    sum -= rep.kappa_plus * Matrix::Identity(d * d, d * d) + rep.kappa_minus * flip_operator(d);
    rep.residual = max_abs(sum);
    return rep;
}

/// sum_{a<=l} sum_k |Tr(P_{a,k} X)|^2 for an equidistant GEAM; l is 1-based.
inline double coincidence_index(const Geam& g, const Matrix& x, int l) {
    require_common_s(g);
    if (l < 1 || l > g.n_groups())
        throw Error(ErrorKind::precondition, "l = " + std::to_string(l) + " outside 1.." + std::to_string(g.n_groups()));
    if (x.rows() != g.d() || x.cols() != g.d()) throw Error(ErrorKind::dimension_mismatch, "X must be d x d");
    double total = 0.0;
    for (int a = 0; a < l; ++a)
        for (const auto& p : g.ops[a]) total += std::norm(trace_product(p, x));
    return total;
}

/// S [Tr(X^dagger X) - 1/d] + mu_l; bounds coincidence_index for unit-trace X, tight at l = N.
inline double coincidence_bound(const Geam& g, const Matrix& x, int l) {
    const double s = require_common_s(g);
    if (l < 1 || l > g.n_groups())
        throw Error(ErrorKind::precondition, "l = " + std::to_string(l) + " outside 1.." + std::to_string(g.n_groups()));
    if (std::abs(x.trace() - 1.0) > tol::exact)
        throw Error(ErrorKind::precondition, "the bound holds for unit-trace operators only");
    return s * (x.squaredNorm() - 1.0 / g.d()) + g.derived.mu(l);
}

}  // namespace geamk
