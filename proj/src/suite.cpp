#include <filesystem>
#include <fstream>

#include "tentlab/verify.hpp"

namespace tentlab {

namespace {

using nlohmann::json;

double jget(const json& j, const char* key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
}

int jgeti(const json& j, const char* key, int fallback) {
    return j.contains(key) ? j.at(key).get<int>() : fallback;
}

std::vector<double> jsched(const json& j, const char* key, double from, double to, int count) {
    if (j.contains(key)) return j.at(key).get<std::vector<double>>();
    return geometric_schedule(from, to, count);
}

TestFamily family_from_json(const json& j, int n, const SuiteDefaults& d,
                            double default_exponent) {
    std::string kind = j.contains("kind") ? j.at("kind").get<std::string>() : "atoms";
    uint64_t seed = j.contains("seed") ? j.at("seed").get<uint64_t>() : d.seed;
    int count = jgeti(j, "count", 8);
    if (kind == "polys")
        return random_polynomials(n, count, jgeti(j, "degree", 6), seed);
    if (kind == "logs") return truncated_logs(n, jgeti(j, "degree", 40), count, seed);
    if (kind == "mixed") return mixed_family(n, jget(j, "exponent", default_exponent), count, seed);
    auto sched = jsched(j, "eps_schedule", jget(j, "from", 0.5), jget(j, "to", 1e-2), count);
    if (kind == "bergman") return bergman_kernels(n, jget(j, "alpha", 0.0), sched, seed);
    if (kind == "trunc_atoms")
        return truncated_atoms(n, jget(j, "exponent", default_exponent), sched,
                               jgeti(j, "degree", 30), seed);
    return kernel_atoms(n, jget(j, "exponent", default_exponent), sched, seed);
}

}  // namespace

bool SuiteReport::all_passed() const {
    for (const auto& r : results)
        if (!r.skipped && !r.pass) return false;
    return true;
}

json SuiteReport::to_json() const {
    json out;
    out["config"] = config;
    out["results"] = json::array();
    for (const auto& r : results) out["results"].push_back(r.to_json());
    out["all_passed"] = all_passed();
    return out;
}

std::string SuiteReport::to_csv() const {
    std::string out = RatioBandResult::csv_header() + "\n";
    for (const auto& r : results) out += r.csv_row() + "\n";
    return out;
}

SuiteReport run_suite(const json& config) {
    SuiteDefaults d;
    if (config.contains("seed")) d.seed = config.at("seed").get<uint64_t>();
    d.eps_trunc = jget(config, "eps_trunc", d.eps_trunc);
    d.band_tol = jget(config, "band_tol", d.band_tol);
    d.cross_band_tol = jget(config, "cross_band_tol", d.cross_band_tol);
    d.slope_tol = jget(config, "slope_tol", d.slope_tol);
    d.sphere_res = jgeti(config, "sphere_res", d.sphere_res);
    d.sphere_res_n2 = jgeti(config, "sphere_res_n2", d.sphere_res_n2);
    d.gamma = jget(config, "gamma", d.gamma);

    SuiteReport report;
    report.config = config;
    if (!config.contains("experiments")) return report;

    for (const auto& e : config.at("experiments")) {
        std::string type = e.at("type").get<std::string>();
        const int n = jgeti(e, "n", 1);
        RatioBandResult r;
        try {
            if (type == "forelli_rudin") {
                r = check_forelli_rudin(n, jget(e, "t", 0.0), jget(e, "s", 1.0),
                                        jsched(e, "gaps", 0.3, 1e-3, 10), d);
            } else if (type == "fr_general") {
                r = check_fr_general(n, jget(e, "s", 0.0), jget(e, "r", 1.2),
                                     jget(e, "t", 1.5), jgeti(e, "branch", 1),
                                     jsched(e, "gaps", 0.3, 1e-2, 8),
                                     e.contains("split_poles") && e.at("split_poles").get<bool>(),
                                     d);
            } else if (type == "lemma_gamma") {
                r = check_lemma_gamma(n, jget(e, "s", 2.0), jget(e, "lambda", 4.0),
                                      jsched(e, "gaps", 0.3, 1e-2, 8), d);
            } else if (type == "equivalence") {
                EquivParams ep;
                ep.n = n;
                ep.p = jget(e, "p", 2.0);
                ep.q = jget(e, "q", 2.0);
                ep.alpha = jget(e, "alpha", 0.0);
                ep.s = jget(e, "s", 0.0);
                ep.t = jget(e, "t", 1.0);
                ep.s2 = jget(e, "s2", 1.0);
                ep.t2 = jget(e, "t2", 2.0);
                Equivalence which = equivalence_from_string(e.at("theorem").get<std::string>());
                double dflt_exp = double(n) + 1.0 + ep.s;
                json fj = e.contains("family") ? e.at("family") : json::object();
                if (which == Equivalence::BTchar && !fj.contains("kind"))
                    fj["kind"] = "polys";
                TestFamily fam = family_from_json(fj, n, d, dflt_exp);
                SuiteDefaults dd = d;
                if (fam.name == "mixed") dd.band_tol = d.cross_band_tol;
                if (e.contains("band_tol")) dd.band_tol = e.at("band_tol").get<double>();
                r = check_equivalence(which, ep, fam, dd);
            } else if (type == "projection_bound") {
                r = check_projection_bound(n, jget(e, "p", 2.0), jget(e, "q", 2.0),
                                           jget(e, "alpha", 0.0), jgeti(e, "count", 6), d);
            } else if (type == "projection_unbounded") {
                r = check_projection_unbounded(n, jget(e, "p", 6.0), jget(e, "alpha", 0.0),
                                               jsched(e, "gaps", 0.5, 1e-2, 7),
                                               jget(e, "growth_factor", 3.0), d);
            } else if (type == "dilation") {
                std::vector<double> rs = e.contains("rs")
                                             ? e.at("rs").get<std::vector<double>>()
                                             : std::vector<double>{0.9, 0.99, 0.999};
                r = check_dilation(n, jget(e, "p", 2.0), jget(e, "q", 1.0),
                                   jget(e, "alpha", 0.0), rs, jget(e, "C_max", 5.0), d);
            } else if (type == "duality_pairing") {
                std::string kind = e.contains("kind") ? e.at("kind").get<std::string>() : "pq";
                DualityKind k = kind == "small_q" ? DualityKind::small_q
                                : kind == "bloch" ? DualityKind::bloch
                                                  : DualityKind::pq;
                r = check_duality_pairing(k, n, jget(e, "p", 2.0), jget(e, "q", 2.0),
                                          jget(e, "alpha", 0.0),
                                          jsched(e, "gaps", 0.5, 1e-2, 8), d);
            } else if (type == "sigma_slice") {
                std::vector<double> radii =
                    e.contains("radii") ? e.at("radii").get<std::vector<double>>()
                                        : std::vector<double>{0.3,  0.5,  0.7,  0.9,
                                                              0.95, 0.99, 0.995, 0.999};
                r = check_sigma_slice(n, jget(e, "gamma", d.gamma), radii, d);
            } else if (type == "eqg") {
                json fj = e.contains("family") ? e.at("family") : json::object();
                TestFamily fam = family_from_json(fj, n, d, double(n) + 1.0);
                r = check_eqg(n, jget(e, "alpha", 0.0), fam, d);
            } else if (type == "carleson_routes") {
                std::vector<double> Ts = e.contains("Ts")
                                             ? e.at("Ts").get<std::vector<double>>()
                                             : std::vector<double>{1.0, 2.0, 4.0};
                json fj = e.contains("family") ? e.at("family") : json::object();
                if (!fj.contains("kind")) fj["kind"] = "mixed";
                if (!fj.contains("count")) fj["count"] = 10;
                TestFamily fam = family_from_json(fj, n, d, double(n) + 1.0);
                r = check_carleson_routes(n, jget(e, "q", 2.0), jget(e, "alpha", 0.0), Ts,
                                          fam, d);
            } else if (type == "lattice") {
                r = check_lattice_invariants(n, jget(e, "r", 0.3), jget(e, "eps", 1e-4),
                                             size_t(jgeti(e, "samples", 10000)),
                                             long(jgeti(e, "n_obs_cap", 64)), d);
            } else if (type == "neumann") {
                r = check_neumann(n, jget(e, "r", 0.15), jget(e, "theta", 4.0),
                                  jget(e, "alpha", 0.0), jgeti(e, "max_iter", 25),
                                  jget(e, "target", 1e-4), d);
            } else {
                r.name = type;
                r.skipped = true;
                r.reason = "unknown experiment type";
            }
        } catch (const std::exception& ex) {
            r.name = type;
            r.pass = false;
            r.skipped = false;
            r.reason = std::string("exception: ") + ex.what();
        }
        if (e.contains("name")) r.name = e.at("name").get<std::string>();
        report.results.push_back(std::move(r));
    }
    return report;
}

void emit_report(const SuiteReport& report, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream f(out_dir + "/report.json");
        f << report.to_json().dump(2) << "\n";
    }
    {
        std::ofstream f(out_dir + "/report.csv");
        f << report.to_csv();
    }
}

json default_suite_config() {
    json cfg;
    cfg["seed"] = 20230815;
    cfg["eps_trunc"] = 1e-4;
    cfg["sphere_res"] = 256;
    cfg["experiments"] = json::array({
        json{{"type", "forelli_rudin"}, {"n", 1}, {"t", 0.0}, {"s", 1.0},
             {"gaps", geometric_schedule(0.3, 1e-2, 6)}},
        json{{"type", "fr_general"}, {"n", 1}, {"s", 0.0}, {"r", 1.2}, {"t", 1.5},
             {"branch", 1}, {"gaps", geometric_schedule(0.3, 3e-2, 5)}},
        json{{"type", "lemma_gamma"}, {"n", 1}, {"s", 2.0}, {"lambda", 4.0},
             {"gaps", geometric_schedule(0.3, 3e-2, 5)}},
        json{{"type", "equivalence"}, {"theorem", "HTchar"}, {"n", 1}, {"p", 2.0},
             {"q", 2.0}, {"alpha", 0.0}, {"s", 0.0}, {"t", 1.0},
             {"family", json{{"kind", "atoms"}, {"count", 6}, {"from", 0.5}, {"to", 3e-2}}}},
        json{{"type", "equivalence"}, {"theorem", "BTchar"}, {"n", 1}, {"p", 2.0},
             {"s", 0.0}, {"t", 1.0}, {"s2", 1.0}, {"t2", 2.0},
             {"family", json{{"kind", "polys"}, {"count", 4}}}},
        json{{"type", "equivalence"}, {"theorem", "HTpp_is_Bergman"}, {"n", 1}, {"p", 2.0},
             {"alpha", 0.0},
             {"family", json{{"kind", "atoms"}, {"count", 5}, {"from", 0.5}, {"to", 3e-2},
                             {"exponent", 2.0}}}},
        json{{"type", "projection_bound"}, {"n", 1}, {"p", 2.0}, {"q", 2.0}, {"alpha", 0.0},
             {"count", 4}},
        json{{"type", "dilation"}, {"n", 1}, {"p", 2.0}, {"q", 1.0}, {"alpha", 0.0}},
        json{{"type", "duality_pairing"}, {"kind", "pq"}, {"n", 1}, {"p", 2.0}, {"q", 2.0},
             {"alpha", 0.0}, {"gaps", geometric_schedule(0.5, 3e-2, 6)}},
        json{{"type", "sigma_slice"}, {"n", 1}, {"radii", {0.3, 0.5, 0.7, 0.9, 0.99}}},
        json{{"type", "eqg"}, {"n", 1}, {"alpha", 0.0},
             {"family", json{{"kind", "atoms"}, {"count", 5}, {"from", 0.5}, {"to", 5e-2},
                             {"exponent", 2.0}}}},
        json{{"type", "carleson_routes"}, {"n", 1}, {"q", 2.0}, {"alpha", 0.0},
             {"family", json{{"kind", "mixed"}, {"count", 6}}}},
        json{{"type", "lattice"}, {"n", 1}, {"r", 0.3}, {"eps", 1e-3}, {"samples", 2000}},
        json{{"type", "neumann"}, {"n", 1}, {"r", 0.2}, {"theta", 4.0}, {"max_iter", 15},
             {"target", 1e-3}},
    });
    return cfg;
}

}  // namespace tentlab
