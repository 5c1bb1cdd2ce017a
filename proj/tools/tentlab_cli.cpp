// Command-line front end: compute norms and pairings of serialized functions,
// apply fractional operators, project, dump lattices, and run experiment
// suites. Machine-readable JSON goes to stdout, human summaries to stderr.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "tentlab/verify.hpp"

using namespace tentlab;
using nlohmann::json;

namespace {

constexpr int kExitBadInput = 2;

HoloFunction load_function(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open function file: " + path);
    json j;
    in >> j;
    return HoloFunction::from_json(j);
}

std::string default_out_dir() {
    const char* env = std::getenv("TENTLAB_OUT");
    return env ? env : "tentlab_out";
}

struct CommonFlags {
    double p = 2.0, q = 2.0, alpha = 0.0, gamma = 2.0, beta = 0.0;
    double s = 0.0, t = 1.0, T = 2.0;
    double eps = 1e-4;
    int sphere_res = 256;
    uint64_t seed = 20230815;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--p", f.p, "integrability exponent p");
    cmd->add_option("--q", f.q, "inner exponent q ('inf' via --q-inf)");
    cmd->add_option("--alpha", f.alpha, "weight exponent alpha");
    cmd->add_option("--gamma", f.gamma, "approach-region aperture");
    cmd->add_option("--beta", f.beta, "Bergman weight beta");
    cmd->add_option("--s", f.s, "fractional parameter s");
    cmd->add_option("--t", f.t, "fractional parameter t");
    cmd->add_option("--T", f.T, "Carleson kernel exponent T");
    cmd->add_option("--eps", f.eps, "boundary truncation");
    cmd->add_option("--sphere-res", f.sphere_res, "sphere rule resolution");
    cmd->add_option("--seed", f.seed, "rng seed (echoed in output)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for holomorphic tent spaces on the unit ball"};
    app.require_subcommand(1);

    CommonFlags f;
    std::string function_path, g_path, out_path, config_path, kind = "tent", mode = "exact";
    bool q_inf = false;
    int n = 1;
    double lattice_r = 0.3, theta = 4.0;
    int max_iter = 25;

    auto* cmd_norm = app.add_subcommand("norm", "compute a norm of a serialized function");
    cmd_norm->add_option("--function", function_path, "function JSON file")->required();
    cmd_norm->add_option("--kind", kind,
                         "tent|tentinf|hardy|bergman|bloch|bt|carleson|carleson-kernel");
    cmd_norm->add_flag("--q-inf", q_inf, "use q = infinity");
    add_common(cmd_norm, f);

    auto* cmd_pair = app.add_subcommand("pairing", "weighted pairing of two functions");
    cmd_pair->add_option("--f", function_path, "first function file")->required();
    cmd_pair->add_option("--g", g_path, "second function file")->required();
    cmd_pair->add_option("--mode", mode, "exact|numeric|limit");
    add_common(cmd_pair, f);

    auto* cmd_frac = app.add_subcommand("fracderiv", "apply a fractional operator");
    cmd_frac->add_option("--function", function_path)->required();
    cmd_frac->add_option("--mode", mode, "derivative|integral");
    cmd_frac->add_option("--out", out_path, "output function file (default stdout)");
    add_common(cmd_frac, f);

    auto* cmd_proj = app.add_subcommand("project", "Bergman projection of a polynomial");
    cmd_proj->add_option("--function", function_path)->required();
    add_common(cmd_proj, f);

    auto* cmd_lat = app.add_subcommand("lattice", "generate a Bergman-metric lattice");
    cmd_lat->add_option("--n", n, "dimension");
    cmd_lat->add_option("--r", lattice_r, "lattice radius")->required();
    cmd_lat->add_option("--eps", f.eps, "boundary truncation");

    auto* cmd_atoms = app.add_subcommand("atoms", "atomic reconstruction of a function");
    cmd_atoms->add_option("--function", function_path)->required();
    cmd_atoms->add_option("--r", lattice_r, "lattice radius");
    cmd_atoms->add_option("--theta", theta, "atom weight exponent");
    cmd_atoms->add_option("--max-iter", max_iter, "iteration cap");
    add_common(cmd_atoms, f);

    auto* cmd_verify = app.add_subcommand("verify", "run an experiment suite");
    cmd_verify->add_option("--config", config_path, "suite config JSON (default suite if absent)");
    cmd_verify->add_option("--out", out_path, "report directory");
    cmd_verify->add_option("--seed", f.seed, "seed override");

    auto* cmd_report = app.add_subcommand("report", "convert a JSON report to CSV");
    cmd_report->add_option("--in", function_path, "report.json path")->required();
    cmd_report->add_option("--out", out_path, "CSV output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_norm->parsed()) {
            HoloFunction fn = load_function(function_path);
            const int dim = fn.dim();
            SphereRule sphere = SphereRule::make(dim, f.sphere_res);
            BallRule rule = BallRule::make(dim, BallRuleOptions::standard(f.eps));
            NormReport rep;
            if (kind == "tent" && !q_inf) {
                rep = tent_norm(fn, SpaceParams(dim, f.p, f.q, f.alpha, f.gamma), rule, sphere);
            } else if (kind == "tentinf" || (kind == "tent" && q_inf)) {
                rep = tent_inf_norm(fn, SpaceParams(dim, f.p, kInf, 0.0, f.gamma), sphere);
            } else if (kind == "hardy") {
                rep = hardy_norm(fn, f.p, sphere, RadialMesh::geometric(f.eps));
            } else if (kind == "bergman") {
                rep = bergman_norm(fn, f.p, f.beta, rule);
            } else if (kind == "bloch") {
                rep = bloch_norm(fn, f.eps);
            } else if (kind == "bt") {
                rep = bt_norm(fn, f.p, FracParams(f.s, f.t, dim), Aperture(f.gamma), sphere,
                              f.eps);
            } else if (kind == "carleson") {
                rep = carleson_norm(fn, f.q, f.alpha, rule);
            } else if (kind == "carleson-kernel") {
                rep = carleson_kernel_norm(fn, f.q, f.alpha, f.T, rule);
            } else {
                throw std::invalid_argument("unknown norm kind: " + kind);
            }
            rep.seed = f.seed;
            std::cout << rep.to_json().dump() << "\n";
            std::cerr << "[norm] " << kind << " = " << rep.value << "\n";
        } else if (cmd_pair->parsed()) {
            HoloFunction fa = load_function(function_path);
            HoloFunction fb = load_function(g_path);
            BallRule rule = BallRule::make(fa.dim(), BallRuleOptions::smooth(1e-6));
            json out;
            out["alpha"] = f.alpha;
            out["seed"] = f.seed;
            Cx v;
            if (mode == "exact") {
                if (!fa.is_polynomial() || !fb.is_polynomial())
                    throw std::invalid_argument("exact pairing needs polynomial inputs");
                v = pairing_exact(fa.poly(), fb.poly(), f.alpha);
            } else if (mode == "limit") {
                PairingLimit pl =
                    pairing_limit(fa, fb, f.alpha, {0.9, 0.99, 0.999, 0.9999}, rule);
                v = pl.value;
                out["converged"] = pl.converged;
            } else {
                v = pairing_numeric(fa, fb, f.alpha, rule);
            }
            out["value"] = {v.real(), v.imag()};
            std::cout << out.dump() << "\n";
            std::cerr << "[pairing] " << mode << " = " << v << "\n";
        } else if (cmd_frac->parsed()) {
            HoloFunction fn = load_function(function_path);
            FracMode fm = mode == "integral" ? FracMode::integral : FracMode::derivative;
            FracResult fr = apply_frac(FracParams(f.s, f.t, fn.dim()), fn, fm);
            json out = fr.f.to_json();
            out["truncated_atoms"] = fr.truncated_atoms;
            out["tail_bound"] = fr.tail_bound;
            if (out_path.empty()) {
                std::cout << out.dump() << "\n";
            } else {
                std::ofstream o(out_path);
                o << out.dump(2) << "\n";
            }
            std::cerr << "[fracderiv] applied (s,t)=(" << f.s << "," << f.t << ")\n";
        } else if (cmd_proj->parsed()) {
            HoloFunction fn = load_function(function_path);
            if (!fn.is_polynomial())
                throw std::invalid_argument("project: polynomial input required");
            TaylorPoly pf = project_poly(ProjParams(f.beta, fn.dim()),
                                         MixedPoly::from_poly(fn.poly()));
            std::cout << HoloFunction(pf).to_json().dump() << "\n";
            std::cerr << "[project] exact monomial projection\n";
        } else if (cmd_lat->parsed()) {
            Lattice Z = generate_lattice(n, lattice_r, f.eps);
            LatticeCheck chk = verify_lattice(Z, 4000, 0x5eedULL);
            json out = Z.to_json();
            out["invariants"] = {{"covering", chk.covering_ok},
                                 {"separation", chk.separation_ok},
                                 {"min_separation", chk.min_separation},
                                 {"N_obs", chk.n_obs}};
            std::cout << out.dump() << "\n";
            std::cerr << "[lattice] " << Z.count() << " points, N_obs=" << chk.n_obs << "\n";
        } else if (cmd_atoms->parsed()) {
            HoloFunction fn = load_function(function_path);
            Lattice Z = generate_lattice(fn.dim(), lattice_r, 1e-2);
            BallRule rule = BallRule::make(fn.dim(), BallRuleOptions::standard(1e-3));
            NeumannResult nr =
                neumann_reconstruct(fn, Z, theta, f.alpha, max_iter, 1e-6, rule);
            json out;
            out["residuals"] = nr.residuals;
            out["diverged"] = nr.diverged;
            out["lattice_points"] = Z.count();
            std::cout << out.dump() << "\n";
            std::cerr << "[atoms] final residual "
                      << (nr.residuals.empty() ? -1.0 : nr.residuals.back()) << "\n";
        } else if (cmd_verify->parsed()) {
            json cfg;
            if (config_path.empty()) {
                cfg = default_suite_config();
            } else {
                std::ifstream in(config_path);
                if (!in) throw std::runtime_error("cannot open config: " + config_path);
                in >> cfg;
            }
            if (cmd_verify->count("--seed")) cfg["seed"] = f.seed;
            SuiteReport rep = run_suite(cfg);
            std::string dir = out_path.empty() ? default_out_dir() : out_path;
            emit_report(rep, dir);
            int failed = 0, skipped = 0;
            for (const auto& r : rep.results) {
                if (r.skipped) ++skipped;
                else if (!r.pass) ++failed;
                std::cerr << (r.skipped ? "[SKIP] " : r.pass ? "[PASS] " : "[FAIL] ")
                          << r.name << (r.reason.empty() ? "" : "  (" + r.reason + ")")
                          << "\n";
            }
            std::cerr << "[verify] " << rep.results.size() << " checks, " << failed
                      << " failed, " << skipped << " skipped; reports in " << dir << "\n";
            return failed == 0 ? 0 : 1;
        } else if (cmd_report->parsed()) {
            std::ifstream in(function_path);
            if (!in) throw std::runtime_error("cannot open report: " + function_path);
            json j;
            in >> j;
            std::string csv = RatioBandResult::csv_header() + "\n";
            for (const auto& rj : j.at("results")) {
                RatioBandResult r;
                r.name = rj.at("name").get<std::string>();
                r.pass = rj.at("pass").get<bool>();
                r.skipped = rj.at("skipped").get<bool>();
                r.band_min = rj.at("band_min").get<double>();
                r.band_max = rj.at("band_max").get<double>();
                r.max_over_min = rj.at("max_over_min").get<double>();
                r.slope = rj.at("slope").get<double>();
                r.reason = rj.at("reason").get<std::string>();
                csv += r.csv_row() + "\n";
            }
            if (out_path.empty()) {
                std::cout << csv;
            } else {
                std::ofstream o(out_path);
                o << csv;
            }
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitBadInput;
    }
    return 0;
}
