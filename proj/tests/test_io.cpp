#include <catch_amalgamated.hpp>

#include "geamk/fixtures.hpp"
#include "geamk/io.hpp"

#include <cmath>
#include <filesystem>

using namespace geamk;
using io::json;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("geamk_test_io_" + name)).string();
}

Witness sample_witness(const Geam& g, std::uint64_t seed, const MapIndices& ix) {
    const auto rot = random_rotation_set(g.params.m, seed);
    WitnessMeta meta;
    meta.k = ix.k;
    meta.l = ix.l;
    meta.kk = ix.kk;
    meta.a_k = a_coefficient(g, ix);
    meta.rotation_seed = seed;
    meta.rotation_fingerprint = rot.fingerprint();
    meta.geam_fingerprint = io::geam_fingerprint(g);
    return choi_witness(phi_k(g, rot, ix), meta);
}

}  // namespace

TEST_CASE("format_double_round_trips") {
    Rng rng = make_stream(5, 0);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double x = n(rng) * std::pow(10.0, static_cast<int>(i % 40) - 20);
        CHECK(std::stod(io::format_double(x)) == x);
    }
    CHECK(io::format_double(0.5) == "0.5");
    CHECK(io::format_double(1.0 / 3.0) == "0.3333333333333333");
}

TEST_CASE("geam_export_import_export_is_byte_identical") {
    for (const auto& [name, g] : fixtures::all()) {
        const std::string first = io::geam_to_json(g).dump(2);
        const Geam back = io::geam_from_json(json::parse(first));
        CHECK(io::geam_to_json(back).dump(2) == first);
        for (std::size_t a = 0; a < g.ops.size(); ++a)
            for (std::size_t k = 0; k < g.ops[a].size(); ++k) CHECK(max_abs(back.ops[a][k] - g.ops[a][k]) == 0.0);
    }
}

TEST_CASE("geam_without_operators_is_rebuilt") {
    const Geam g = build_geam(fixtures::uniform_params(3, {9}, 0.4), std::uint64_t{17});
    const Geam back = io::geam_from_json(io::geam_to_json(g, false));
    CHECK(io::geam_to_json(back).dump() == io::geam_to_json(g).dump());
    CHECK(back.basis.unitary_seed == std::optional<std::uint64_t>(17));
}

TEST_CASE("witness_round_trip_is_byte_identical_across_seeds") {
    const Geam g = fixtures::sic_type_d3();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto w = sample_witness(g, seed, {1 + static_cast<int>(seed % 3), 1, 1});
        const std::string first = io::witness_to_json(w).dump(2);
        const auto back = io::witness_from_json(json::parse(first));
        CHECK(io::witness_to_json(back).dump(2) == first);
        CHECK(max_abs(back.w - w.w) == 0.0);
        CHECK(io::witness_fingerprint(back) == io::witness_fingerprint(w));
    }
}

TEST_CASE("fingerprints_follow_content") {
    const Geam g = fixtures::mub_type_d3();
    const auto w1 = sample_witness(g, 1, {1, 1, 4});
    const auto w2 = sample_witness(g, 2, {1, 1, 4});
    CHECK(io::witness_fingerprint(w1) != io::witness_fingerprint(w2));
    CHECK(w1.meta.geam_fingerprint == io::geam_fingerprint(g));
    CHECK(io::geam_fingerprint(g) != io::geam_fingerprint(fixtures::sic_type_d3()));
    CHECK(io::geam_fingerprint(g).size() == 16);
}

TEST_CASE("file_round_trip") {
    const auto path = temp_path("witness.json");
    const auto w = sample_witness(fixtures::mub_d2(), 3, {2, 1, 3});
    const std::string text = io::witness_to_json(w).dump(2) + "\n";
    io::write_text_file(path, text);
    CHECK(io::read_text_file(path) == text);
    CHECK(io::witness_to_json(io::witness_from_json(io::read_json_file(path))).dump(2) + "\n" == text);
    std::filesystem::remove(path);
}

TEST_CASE("malformed_inputs_raise_io_errors") {
    auto kind_of = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::invalid_state;
    };
    CHECK(kind_of([] { io::read_text_file("/nonexistent/geamk/file.json"); }) == ErrorKind::io);

    const auto path = temp_path("broken.json");
    io::write_text_file(path, "{ \"d\": 2, ");
    CHECK(kind_of([&] { io::read_json_file(path); }) == ErrorKind::io);
    std::filesystem::remove(path);

    CHECK(kind_of([] { io::geam_from_json(json{{"d", 2}}); }) == ErrorKind::io);
    CHECK(kind_of([] { io::witness_from_json(json{{"d", 2}, {"meta", json::object()}}); }) == ErrorKind::io);
    CHECK(kind_of([] { io::matrix_from_json(json::array({json::array({1.0, 0.0})}), 2, 2); }) == ErrorKind::io);
    CHECK(kind_of([] { io::matrix_from_json(json::array({1.0, 0.0, 0.0, 1.0}), 2, 2); }) == ErrorKind::io);

    json j = io::geam_to_json(fixtures::mub_d2());
    j["basis"]["kind"] = "weyl";
    CHECK(kind_of([&] { io::geam_from_json(j); }) == ErrorKind::io);

    json bad_group = io::geam_to_json(fixtures::mub_d2());
    bad_group["operators"][0].erase(0);
    CHECK(kind_of([&] { io::geam_from_json(bad_group); }) == ErrorKind::io);

    // parameters are validated when rebuilding
    json bad_b = io::geam_to_json(fixtures::mub_d2(), false);
    bad_b["b"] = {0.5, 0.5, 0.5};
    CHECK(kind_of([&] { io::geam_from_json(bad_b); }) == ErrorKind::parameter);
}

TEST_CASE("csv_rows") {
    DetectionRow r;
    r.family = "isotropic";
    r.parameter = 0.25;
    r.meta.k = 1;
    r.meta.l = 1;
    r.meta.kk = 3;
    r.expectation = -0.125;
    r.detected = true;
    CHECK(io::csv_row(r) == "isotropic,0.25,1,1,3,-0.125,true");
    CHECK(std::string(io::csv_header()) == "family,parameter,k,L,K,expectation,detected");
}
