#include <catch_amalgamated.hpp>

#include "geamk/fixtures.hpp"
#include "geamk/geam.hpp"
#include "geamk/random.hpp"

#include <cmath>

using namespace geamk;

namespace {

Matrix pauli(int which) {
    Matrix m = Matrix::Zero(2, 2);
    if (which == 0) m << 0.0, 1.0, 1.0, 0.0;
    if (which == 1) m << 0.0, cplx(0, -1), cplx(0, 1), 0.0;
    if (which == 2) m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no geamk::Error thrown");
    return ErrorKind::io;
}

// Two-group d=2 GEAM (M = 2, 3); S_1 = (2 b_1 - 1)/4 and S_2 = (2 b_2 - 1)/12.
GeamParams two_group(double b1, double b2) {
    GeamParams p;
    p.d = 2;
    p.m = {2, 3};
    p.gamma = {0.5, 0.5};
    p.b = {b1, b2};
    return p;
}

// Sum over groups of |Tr(X P)|^2 through the H-frame expansion X = I/d + sum r_{a,k} H_{a,k}
// (unit-trace X). Independent of coincidence_index: only uses the basis, a_a and tau_a.
double coincidence_via_frame_coefficients(const Geam& g, const HermitianBasis& basis, const Matrix& x, int l) {
    double total = 0.0;
    const double d = g.d();
    for (int a = 0; a < l; ++a) {
        const auto& grp = basis.groups[a];
        const double m = grp.size() + 1.0;
        const double sm = std::sqrt(m);
        // G-coefficients x_j = Tr(X G_j); choose r_M = 0, then R - s r_j = x_j with s = sqrt(M)(1 + sqrt(M))
        std::vector<cplx> xs;
        cplx xsum = 0.0;
        for (const auto& gj : grp) {
            xs.push_back(trace_product(x, gj));
            xsum += xs.back();
        }
        const double s = sm * (1.0 + sm);
        const cplx r_total = xsum / (m - 1.0 - s);
        std::vector<cplx> r;
        for (const auto& xj : xs) r.push_back((r_total - xj) / s);
        r.push_back(0.0);
        cplx r_alpha = 0.0;
        double r_sq = 0.0;
        for (const auto& rk : r) {
            r_alpha += rk;
            r_sq += std::norm(rk);
        }
        const double aa = g.derived.a[a];
        const double tau = g.derived.tau[a];
        total += aa * aa * m / (d * d) +
                 tau * tau * m * std::pow(sm + 1.0, 4) * (m * r_sq - std::norm(r_alpha));
    }
    return total;
}

}  // namespace

TEST_CASE("mub_d2_is_rescaled_pauli_projectors") {
    const Geam g = fixtures::mub_d2();
    REQUIRE(g.size() == 6);
    for (int a = 0; a < 3; ++a) {
        CHECK(std::abs(g.derived.a[a] - 1.0 / 3.0) < 1e-15);
        CHECK(std::abs(g.derived.c[a]) < 1e-15);
        CHECK(std::abs(g.derived.s_per_group[a] - 1.0 / 9.0) < 1e-15);
        const Matrix plus = (Matrix::Identity(2, 2) + pauli(a)) / 6.0;
        const Matrix minus = (Matrix::Identity(2, 2) - pauli(a)) / 6.0;
        const bool first_plus = max_abs(g.ops[a][0] - plus) < 1e-14;
        CHECK(max_abs(g.ops[a][first_plus ? 0 : 1] - plus) < 1e-14);
        CHECK(max_abs(g.ops[a][first_plus ? 1 : 0] - minus) < 1e-14);
    }
    REQUIRE(g.derived.s.has_value());
    CHECK(std::abs(*g.derived.s - 1.0 / 9.0) < 1e-15);
    CHECK(std::abs(g.derived.mu(3) - 1.0 / 6.0) < 1e-15);
    CHECK(std::abs(g.derived.mu(1) - 1.0 / 18.0) < 1e-15);
}

TEST_CASE("sic_type_d3_parameters") {
    const Geam g = fixtures::sic_type_d3();
    CHECK(std::abs(g.derived.a[0] - 1.0 / 3.0) < 1e-15);
    CHECK(std::abs(g.derived.c[0] - (9.0 - 3.0 * 0.4) / 24.0) < 1e-15);
    CHECK(validate_geam(g).ok());
}

TEST_CASE("sic_type_d3_admissible_b_range_for_gell_mann") {
    // Pinned empirically: auto sign keeps every operator PSD at b = 0.52 and fails at b = 0.53.
    auto p = fixtures::uniform_params(3, fixtures::sic_layout(3), 0.52);
    const Geam g = build_geam(p);
    CHECK(g.params.tau_sign == std::vector<int>{1});
    CHECK(validate_geam(g).ok());

    p.tau_sign = {-1};
    CHECK(kind_of([&] { build_geam(p); }) == ErrorKind::positivity);

    p = fixtures::uniform_params(3, fixtures::sic_layout(3), 0.53);
    try {
        build_geam(p);
        FAIL("expected positivity error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::positivity);
        CHECK(std::string(e.what()).find("P_(1,") != std::string::npos);
    }
}

TEST_CASE("mub_type_d3_admissible_b_range_for_gell_mann") {
    CHECK(validate_geam(build_geam(fixtures::uniform_params(3, fixtures::mub_layout(3), 0.54))).ok());
    CHECK(kind_of([] { build_geam(fixtures::uniform_params(3, fixtures::mub_layout(3), 0.56)); }) ==
          ErrorKind::positivity);
}

TEST_CASE("parameter_validation_errors") {
    CHECK(kind_of([] { build_geam(fixtures::uniform_params(2, fixtures::mub_layout(2), 0.5)); }) ==
          ErrorKind::parameter);
    CHECK(kind_of([] { build_geam(fixtures::uniform_params(2, fixtures::mub_layout(2), 1.0 + 1e-6)); }) ==
          ErrorKind::parameter);
    auto p = fixtures::uniform_params(2, fixtures::mub_layout(2), 1.0);
    p.gamma = {0.5, 0.3, 0.3};
    CHECK(kind_of([&] { validate_params(p); }) == ErrorKind::parameter);
    p = fixtures::uniform_params(2, {2, 2}, 1.0);
    CHECK(kind_of([&] { validate_params(p); }) == ErrorKind::parameter);
    p = fixtures::uniform_params(2, {1, 4, 2}, 0.6);
    CHECK(kind_of([&] { validate_params(p); }) == ErrorKind::parameter);
    p = fixtures::uniform_params(2, fixtures::mub_layout(2), 1.0);
    p.tau_sign = {1, 0, 1};
    CHECK(kind_of([&] { validate_params(p); }) == ErrorKind::parameter);
    CHECK(kind_of([] { validate_params(fixtures::uniform_params(1, {1}, 1.0)); }) == ErrorKind::invalid_dimension);
}

TEST_CASE("validate_reports_all_conditions") {
    for (const auto& [name, g] : fixtures::all()) {
        INFO(name);
        const auto rep = validate_geam(g);
        CHECK(rep.ok());
        for (const auto& c : rep.conditions) CHECK(c.max_deviation < 1e-9);
    }
    const auto rep = validate_geam(fixtures::mub_d2());
    for (const auto& c : rep.conditions) CHECK(c.max_deviation < 1e-12);
}

TEST_CASE("validate_detects_corruption") {
    Geam g = fixtures::mub_d2();
    g.ops[1][0] = Matrix::Identity(2, 2) / 2.0;
    const auto rep = validate_geam(g);
    CHECK_FALSE(rep.ok());
    CHECK_FALSE(rep.at("purity").pass);
    CHECK_FALSE(rep.at("tight_frame").pass);
}

TEST_CASE("equidistance_examples") {
    const auto e = equidistance(fixtures::mub_d2());
    REQUIRE(e.equidistant);
    // 1/2 Tr[(P - P')^2] on the explicit projectors: (1/2)(1/36) Tr[(2 sigma)^2] = 1/9 inside a frame,
    // (1/2)(1/36) Tr[(sigma_x - sigma_z)^2] = 1/18 across frames
    const Matrix p = (Matrix::Identity(2, 2) + pauli(0)) / 6.0;
    const Matrix q = (Matrix::Identity(2, 2) - pauli(0)) / 6.0;
    const Matrix r = (Matrix::Identity(2, 2) + pauli(2)) / 6.0;
    CHECK(std::abs(0.5 * trace_product(p - q, p - q).real() - 1.0 / 9.0) < 1e-15);
    CHECK(std::abs(0.5 * trace_product(p - r, p - r).real() - 1.0 / 18.0) < 1e-15);
    CHECK(std::abs(*e.s - 1.0 / 9.0) < 1e-12);
    CHECK(std::abs(e.min_distance - 1.0 / 9.0) < 1e-12);
    CHECK(std::abs(e.max_distance - 1.0 / 9.0) < 1e-12);
    CHECK(std::abs(*e.min_cross_distance - 1.0 / 18.0) < 1e-12);
    CHECK(std::abs(*e.max_cross_distance - 1.0 / 18.0) < 1e-12);

    const auto mismatched = equidistance(build_geam(two_group(0.8, 0.65)));
    CHECK_FALSE(mismatched.equidistant);
    CHECK_FALSE(mismatched.s.has_value());
    CHECK(mismatched.s_per_group.size() == 2);
    CHECK(std::abs(mismatched.s_per_group[0] - 0.15) < 1e-12);
    CHECK(std::abs(mismatched.s_per_group[1] - 0.025) < 1e-12);

    // 3(2 b_1 - 1) = 2 b_2 - 1 makes S_1 = S_2 with unequal a_a; cross-group distances agree too
    const auto matched = equidistance(build_geam(two_group(0.55, 0.65)));
    CHECK(matched.equidistant);
    CHECK(std::abs(*matched.s - 0.025) < 1e-12);

    const auto single = equidistance(fixtures::sic_type_d3());
    CHECK(single.equidistant);
    CHECK(std::abs(*single.s - fixtures::sic_type_d3().derived.s_per_group[0]) < 1e-12);
    CHECK_FALSE(single.min_cross_distance.has_value());
}

TEST_CASE("conical_design_examples") {
    const auto c2 = conical_design_check(fixtures::mub_d2());
    CHECK(std::abs(c2.kappa_plus - 1.0 / 9.0) < 1e-12);
    CHECK(std::abs(c2.kappa_minus - 1.0 / 9.0) < 1e-12);
    CHECK(c2.residual < 1e-12);

    for (const auto& [name, g] : fixtures::all()) {
        INFO(name);
        const auto c = conical_design_check(g);
        CHECK(c.residual < 1e-10);
        CHECK(c.kappa_minus == *equidistance(g).s);
    }
    CHECK(conical_design_check(build_geam(two_group(0.55, 0.65))).residual < 1e-10);
    CHECK(kind_of([] { conical_design_check(build_geam(two_group(0.8, 0.65))); }) == ErrorKind::precondition);
}

TEST_CASE("coincidence_index_examples") {
    const Geam g = fixtures::mub_d2();
    const Matrix mixed = Matrix::Identity(2, 2) / 2.0;
    CHECK(std::abs(coincidence_index(g, mixed, 3) - g.derived.mu(3)) < 1e-12);
    CHECK(std::abs(coincidence_bound(g, mixed, 3) - g.derived.mu(3)) < 1e-15);

    Matrix zero = Matrix::Zero(2, 2);
    zero(0, 0) = 1.0;
    // p = (1/3, 0) for sigma_z and 1/6 for the four others
    const double by_hand = 1.0 / 9.0 + 4.0 / 36.0;
    CHECK(std::abs(coincidence_index(g, zero, 3) - 2.0 / 9.0) < 1e-12);
    CHECK(std::abs(by_hand - 2.0 / 9.0) < 1e-15);
    CHECK(std::abs(coincidence_bound(g, zero, 3) - 2.0 / 9.0) < 1e-12);

    CHECK(kind_of([&] { coincidence_index(g, zero, 0); }) == ErrorKind::precondition);
    CHECK(kind_of([&] { coincidence_index(g, zero, 4); }) == ErrorKind::precondition);
    CHECK(kind_of([&] { coincidence_bound(g, 2.0 * zero, 1); }) == ErrorKind::precondition);
}

TEST_CASE("coincidence_bound_random_operators") {
    for (const auto& [name, g] : fixtures::all()) {
        INFO(name);
        Rng rng = make_stream(2024, 1);
        int strict = 0;
        for (int s = 0; s < 200; ++s) {
            Matrix x = ginibre(g.d(), g.d(), rng);
            x /= x.trace();
            for (int l = 1; l <= g.n_groups(); ++l) {
                const double lhs = coincidence_index(g, x, l);
                const double rhs = coincidence_bound(g, x, l);
                CHECK(rhs - lhs >= -1e-9);
                if (l < g.n_groups() && rhs - lhs > 1e-9) ++strict;
                if (l == g.n_groups()) CHECK(std::abs(rhs - lhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
            }
        }
        if (g.n_groups() > 1) CHECK(strict > 0);
    }
}

TEST_CASE("purity_relation_random_states") {
    for (const auto& [name, g] : fixtures::all()) {
        INFO(name);
        const double s = *equidistance(g).s;
        Rng rng = make_stream(77, 0);
        for (int i = 0; i < 200; ++i) {
            const Matrix rho = (i % 2 == 0) ? random_pure_density(g.d(), rng) : random_mixed_density(g.d(), rng);
            const double purity = trace_product(rho, rho).real();
            const double c = coincidence_index(g, rho, g.n_groups());
            CHECK(std::abs(c - s * (purity - 1.0 / g.d()) - g.derived.mu(g.n_groups())) <= 1e-9);
        }
    }
}

TEST_CASE("frame_coefficient_oracle_matches_direct_sum") {
    struct Case {
        Geam g;
        HermitianBasis basis;
    };
    std::vector<Case> cases;
    for (const auto& [name, g] : fixtures::all()) cases.push_back({g, default_basis(g.d(), g.params.m)});
    Rng rng = make_stream(3, 3);
    for (const auto& c : cases)
        for (int s = 0; s < 50; ++s) {
            Matrix x = ginibre(c.g.d(), c.g.d(), rng);
            x /= x.trace();
            for (int l = 1; l <= c.g.n_groups(); ++l) {
                const double oracle = coincidence_via_frame_coefficients(c.g, c.basis, x, l);
                CHECK(std::abs(oracle - coincidence_index(c.g, x, l)) <= 1e-9 * std::max(1.0, oracle));
            }
        }
}

TEST_CASE("all_operators_sum_to_identity") {
    for (const auto& [name, g] : fixtures::all()) {
        Matrix total = Matrix::Zero(g.d(), g.d());
        for (const auto& grp : g.ops)
            for (const auto& p : grp) total += p;
        CHECK(max_abs(total - Matrix::Identity(g.d(), g.d())) <= 1e-10);
    }
}

TEST_CASE("rotated_basis_geam_is_valid") {
    auto p = fixtures::uniform_params(3, fixtures::mub_layout(3), 0.4);
    const Geam g = build_geam(p, 99u);
    CHECK(g.basis.unitary_seed == std::optional<std::uint64_t>(99u));
    CHECK(validate_geam(g).ok());
    CHECK(conical_design_check(g).residual < 1e-10);
}
