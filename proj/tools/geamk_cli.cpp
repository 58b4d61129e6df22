#include "geamk/geamk.hpp"
#include "geamk/io.hpp"

#include <CLI11.hpp>

#include <ctime>
#include <iostream>
#include <sstream>

using namespace geamk;
using io::json;

namespace {

enum Exit { ok = 0, validation_failure = 2, certification_violation = 3, io_failure = 4 };

struct Common {
    bool no_timestamp = false;
    std::string out;
};

struct GeamArgs {
    std::string geam_file;
    int d = 0;
    std::string layout = "mub";
    std::string gamma = "uniform";
    std::string b;
    std::string tau = "auto";
    std::optional<std::uint64_t> unitary_seed;
};

template <typename T>
std::vector<T> parse_list(const std::string& text, const std::string& flag) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::istringstream is(item);
        T v{};
        if (!(is >> v) || !(is >> std::ws).eof())
            throw Error(ErrorKind::parameter, "cannot parse '" + item + "' in " + flag);
        out.push_back(v);
    }
    if (out.empty()) throw Error(ErrorKind::parameter, flag + " is empty");
    return out;
}

GeamParams params_from_args(const GeamArgs& a) {
    GeamParams p;
    p.d = a.d;
    if (a.layout == "mub")
        p.m = fixtures::mub_layout(a.d);
    else if (a.layout == "sic")
        p.m = fixtures::sic_layout(a.d);
    else
        p.m = parse_list<int>(a.layout, "--layout");
    const auto n = p.m.size();
    p.gamma = a.gamma == "uniform" ? fixtures::uniform_gamma(static_cast<int>(n)) : parse_list<double>(a.gamma, "--gamma");
    p.b = parse_list<double>(a.b, "--b");
    if (p.b.size() == 1 && n > 1) p.b.assign(n, p.b.front());
    if (a.tau != "auto") p.tau_sign = parse_list<int>(a.tau, "--tau");
    return p;
}

void add_geam_options(CLI::App* sub, GeamArgs& a, bool allow_file) {
    auto* group = sub->add_option_group("geam", "GEAM parameters");
    CLI::Option* file = nullptr;
    if (allow_file) file = group->add_option("--geam", a.geam_file, "read the GEAM from a JSON document");
    auto* d = group->add_option("--d", a.d, "Hilbert space dimension");
    group->add_option("--layout", a.layout, "mub, sic or a comma list of frame sizes")->capture_default_str();
    group->add_option("--gamma", a.gamma, "uniform or a comma list")->capture_default_str();
    auto* b = group->add_option("--b", a.b, "purity parameter, one value or one per frame");
    group->add_option("--tau", a.tau, "auto or a comma list of +1/-1 signs")->capture_default_str();
    group->add_option("--unitary-seed", a.unitary_seed, "rotate the Gell-Mann basis by a seeded Haar unitary");
    if (file) {
        file->excludes(d);
        file->excludes(b);
    }
}

Geam load_geam(const GeamArgs& a) {
    if (!a.geam_file.empty()) return io::geam_from_json(io::read_json_file(a.geam_file));
    if (a.d == 0 || a.b.empty()) throw Error(ErrorKind::parameter, "either --geam or both --d and --b are required");
    return build_geam(params_from_args(a), a.unitary_seed);
}

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void stamp(json& j, const Common& c) {
    if (!c.no_timestamp) j["generated_at"] = utc_now();
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty())
        std::cout << text;
    else
        io::write_text_file(c.out, text);
}

void emit_json(const Common& c, const json& j) { emit(c, j.dump(2) + "\n"); }

int cmd_build_geam(const Common& c, const GeamArgs& a) {
    const Geam g = load_geam(a);
    const auto rep = validate_geam(g);
    json j = io::geam_to_json(g);
    j["fingerprint"] = io::geam_fingerprint(g);
    j["validation"] = io::validation_to_json(rep);
    stamp(j, c);
    emit_json(c, j);
    if (!rep.ok()) {
        std::cerr << "GEAM validation failed\n";
        return validation_failure;
    }
    return ok;
}

struct AnalyzeArgs {
    std::optional<std::uint64_t> seed;
    int samples = 200;
};

int cmd_analyze(const Common& c, const GeamArgs& a, const AnalyzeArgs& an) {
    const Geam g = load_geam(a);
    json j;
    j["geam_fingerprint"] = io::geam_fingerprint(g);
    const auto eq = equidistance(g);
    json je;
    je["equidistant"] = eq.equidistant;
    je["s"] = eq.s ? json(*eq.s) : json(nullptr);
    je["s_per_group"] = eq.s_per_group;
    je["min_distance"] = eq.min_distance;
    je["max_distance"] = eq.max_distance;
    je["min_cross_distance"] = eq.min_cross_distance ? json(*eq.min_cross_distance) : json(nullptr);
    je["max_cross_distance"] = eq.max_cross_distance ? json(*eq.max_cross_distance) : json(nullptr);
    j["equidistance"] = je;
    bool pass = eq.equidistant;

    if (eq.equidistant) {
        const auto cd = conical_design_check(g);
        const bool cd_ok = cd.residual < tol::composed;
        j["conical_design"] = {{"kappa_plus", cd.kappa_plus}, {"kappa_minus", cd.kappa_minus},
                               {"residual", cd.residual}, {"pass", cd_ok}};
        pass = pass && cd_ok;

        // bound slack over seeded unit-trace operators, per prefix length L
        Rng rng = make_stream(*an.seed, 0);
        const int n = g.n_groups();
        std::vector<double> min_slack(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
        double max_gap_full = 0.0;
        for (int s = 0; s < an.samples; ++s) {
            Matrix x = ginibre(g.d(), g.d(), rng);
            x /= x.trace();
            for (int l = 1; l <= n; ++l) {
                const double slack = coincidence_bound(g, x, l) - coincidence_index(g, x, l);
                min_slack[static_cast<std::size_t>(l - 1)] = std::min(min_slack[static_cast<std::size_t>(l - 1)], slack);
                if (l == n) max_gap_full = std::max(max_gap_full, std::abs(slack));
            }
        }
        bool co_ok = max_gap_full < tol::exact;
        for (double s : min_slack) co_ok = co_ok && s >= -tol::composed;
        j["coincidence"] = {{"samples", an.samples}, {"seed", *an.seed}, {"min_slack_per_L", min_slack},
                            {"max_gap_at_N", max_gap_full}, {"pass", co_ok}};
        pass = pass && co_ok;
    }
    j["pass"] = pass;
    stamp(j, c);
    emit_json(c, j);
    return pass ? ok : validation_failure;
}

struct WitnessArgs {
    std::uint64_t seed = 0;
    int k = 1;
    int l = 1;
    int kk = 0;
};

int cmd_witness(const Common& c, const GeamArgs& a, const WitnessArgs& wa) {
    const Geam g = load_geam(a);
    if (!validate_geam(g).ok()) {
        std::cerr << "input GEAM fails validation\n";
        return validation_failure;
    }
    const MapIndices ix{wa.k, wa.l, wa.kk};
    const auto rot = random_rotation_set(g.params.m, wa.seed);
    WitnessMeta meta;
    meta.k = wa.k;
    meta.l = wa.l;
    meta.kk = wa.kk;
    meta.a_k = a_coefficient(g, ix);
    meta.rotation_seed = wa.seed;
    meta.rotation_fingerprint = rot.fingerprint();
    meta.geam_fingerprint = io::geam_fingerprint(g);
    const auto w = choi_witness(phi_k(g, rot, ix), meta);
    json j = io::witness_to_json(w);
    j["fingerprint"] = io::witness_fingerprint(w);
    stamp(j, c);
    emit_json(c, j);
    return ok;
}

struct CertifyArgs {
    std::string witness_file;
    std::uint64_t seed = 0;
    int k = 0;
    int restarts = 50;
    int iters = 500;
    double tolerance = 1e-8;
    int purity_samples = 0;
};

int cmd_certify(const Common& c, const CertifyArgs& ca) {
    const auto w = io::witness_from_json(io::read_json_file(ca.witness_file));
    const int k = ca.k > 0 ? ca.k : w.meta.k;
    SeesawOptions opt;
    opt.restarts = ca.restarts;
    opt.iters = ca.iters;
    opt.seed = ca.seed;
    opt.tolerance = ca.tolerance;
    const auto rep = min_schmidt_k(w, k, opt);
    json j;
    j["witness_fingerprint"] = io::witness_fingerprint(w);
    j["geam_fingerprint"] = w.meta.geam_fingerprint;
    j["certification"] = io::report_to_json(rep);
    if (ca.purity_samples > 0) {
        const auto phi = Superoperator::from_choi(w.w, w.dim());
        j["purity_ratio"] = io::purity_ratio_to_json(purity_ratio(phi, k, ca.purity_samples, ca.seed));
    }
    stamp(j, c);
    emit_json(c, j);
    return rep.verdict == Verdict::violated ? certification_violation : ok;
}

struct DetectArgs {
    std::string witness_file;
    std::string family = "isotropic";
    int points = 11;
    int samples = 100;
    int k_state = 0;
    std::optional<std::uint64_t> seed;
};

int cmd_detect(const Common& c, const DetectArgs& da) {
    const auto w = io::witness_from_json(io::read_json_file(da.witness_file));
    std::vector<DetectionRow> rows;
    if (da.family == "isotropic") {
        rows = isotropic_sweep(w, da.points);
    } else if (da.family == "schmidt-bounded") {
        if (!da.seed) throw Error(ErrorKind::parameter, "--seed is required for the schmidt-bounded family");
        const int k = da.k_state > 0 ? da.k_state : w.meta.k;
        Rng rng = make_stream(*da.seed, 0);
        for (int s = 0; s < da.samples; ++s)
            rows.push_back(detect(w, "schmidt-bounded-" + std::to_string(k), s,
                                  sample_schmidt_bounded_state(w.dim(), k, rng)));
    } else {
        throw Error(ErrorKind::parameter, "unknown family '" + da.family + "'");
    }
    std::ostringstream os;
    os << "# witness_fingerprint=" << io::witness_fingerprint(w) << "\n";
    os << "# geam_fingerprint=" << w.meta.geam_fingerprint << "\n";
    if (da.family == "isotropic") {
        const auto p = detection_threshold(w);
        os << "# isotropic_threshold=" << (p ? io::format_double(*p) : std::string("none")) << "\n";
    }
    if (!c.no_timestamp) os << "# generated_at=" << utc_now() << "\n";
    os << io::csv_header() << "\n";
    for (const auto& r : rows) os << io::csv_row(r) << "\n";
    emit(c, os.str());
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GEAM construction, k-positive maps and Schmidt-number witnesses"};
    app.require_subcommand(1);
    Common common;
    app.add_flag("--no-timestamp", common.no_timestamp, "omit the generated_at field for byte-stable output");

    GeamArgs geam_args;
    auto* build = app.add_subcommand("build-geam", "build a GEAM and validate it");
    add_geam_options(build, geam_args, false);
    build->add_option("-o,--out", common.out, "output JSON (default stdout)");

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "equidistance, 2-design and coincidence bound report");
    add_geam_options(analyze, geam_args, true);
    analyze->add_option("--seed", an.seed, "seed for the random test operators")->required();
    analyze->add_option("--samples", an.samples, "random operators per prefix length")->capture_default_str();
    analyze->add_option("-o,--out", common.out, "output JSON (default stdout)");

    WitnessArgs wa;
    auto* witness = app.add_subcommand("witness", "build a rotated map and its Choi witness");
    add_geam_options(witness, geam_args, true);
    witness->add_option("--seed", wa.seed, "rotation seed")->required();
    witness->add_option("--k", wa.k, "Schmidt number k")->capture_default_str();
    witness->add_option("--L", wa.l, "number of subtracted frames")->capture_default_str();
    witness->add_option("--K", wa.kk, "number of frames used")->required();
    witness->add_option("-o,--out", common.out, "output JSON (default stdout)");

    CertifyArgs ca;
    auto* certify = app.add_subcommand("certify", "numerically certify block positivity of a witness");
    certify->add_option("--witness", ca.witness_file, "witness JSON")->required();
    certify->add_option("--seed", ca.seed, "see-saw seed")->required();
    certify->add_option("--k", ca.k, "Schmidt number (default: the witness k)");
    certify->add_option("--restarts", ca.restarts)->capture_default_str();
    certify->add_option("--iters", ca.iters)->capture_default_str();
    certify->add_option("--tolerance", ca.tolerance)->capture_default_str();
    certify->add_option("--purity-samples", ca.purity_samples, "also sample the purity ratio (0 disables)")
        ->capture_default_str();
    certify->add_option("-o,--out", common.out, "output JSON (default stdout)");

    DetectArgs da;
    auto* det = app.add_subcommand("detect", "evaluate a witness on a state family, CSV output");
    det->add_option("--witness", da.witness_file, "witness JSON")->required();
    det->add_option("--family", da.family, "isotropic or schmidt-bounded")->capture_default_str();
    det->add_option("--points", da.points, "grid points for the isotropic family")->capture_default_str();
    det->add_option("--samples", da.samples, "states for the schmidt-bounded family")->capture_default_str();
    det->add_option("--k-state", da.k_state, "Schmidt bound of sampled states (default: the witness k)");
    det->add_option("--seed", da.seed, "seed, required for stochastic families");
    det->add_option("-o,--out", common.out, "output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : validation_failure;  // usage errors share the validation exit code
    }

    try {
        if (build->parsed()) return cmd_build_geam(common, geam_args);
        if (analyze->parsed()) return cmd_analyze(common, geam_args, an);
        if (witness->parsed()) return cmd_witness(common, geam_args, wa);
        if (certify->parsed()) return cmd_certify(common, ca);
        if (det->parsed()) return cmd_detect(common, da);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::io ? io_failure : validation_failure;
    }
    return ok;
}
