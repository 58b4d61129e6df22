// fixtures.hpp: layouts and the built-in GEAMs used by tests, the acceptance suite and the CLI

#pragma once

#include "geamk/geam.hpp"

#include <string>
#include <vector>

namespace geamk::fixtures {

// d + 1 groups of d elements
inline std::vector<int> mub_layout(int d) { return std::vector<int>(static_cast<std::size_t>(d + 1), d); }

// a single group of d^2 elements
inline std::vector<int> sic_layout(int d) { return {d * d}; }

inline std::vector<double> uniform_gamma(int n) { return std::vector<double>(static_cast<std::size_t>(n), 1.0 / n); }

inline GeamParams uniform_params(int d, std::vector<int> layout, double b) {
    GeamParams p;
    p.d = d;
    p.m = std::move(layout);
    p.gamma = uniform_gamma(static_cast<int>(p.m.size()));
    p.b.assign(p.m.size(), b);
    return p;
}

// d=2, three groups of two: rescaled Pauli-eigenbasis projectors (I +- sigma)/6.
inline Geam mub_d2() { return build_geam(uniform_params(2, mub_layout(2), 1.0)); }

// d=3, four groups of three on consecutive Gell-Mann pairs. b = 1/2 keeps every operator PSD;
// the Gell-Mann realization stays PSD up to b ~ 0.55 for this layout.
inline Geam mub_type_d3() { return build_geam(uniform_params(3, mub_layout(3), 0.5)); }

// d=3, one frame of nine; PSD for b up to ~0.52 in the Gell-Mann realization.
inline Geam sic_type_d3() { return build_geam(uniform_params(3, sic_layout(3), 0.4)); }

struct Named {
    std::string name;
    Geam geam;
};

inline std::vector<Named> all() { return {{"mub_d2", mub_d2()}, {"mub_type_d3", mub_type_d3()}, {"sic_type_d3", sic_type_d3()}}; }

}  // namespace geamk::fixtures
