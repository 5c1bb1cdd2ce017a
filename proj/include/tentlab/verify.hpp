#pragma once

// The experiment harness: each estimate or equivalence the library exercises
// becomes a named, reproducible ratio-band check with a pass/fail contract.
// Equivalences (≍) are tested as bounded ratio bands over declared families
// plus a no-trend condition on the log-ratio against the boundary parameter;
// hypothesis violations are reported as skips, never silent passes.

#include "tentlab/families.hpp"
#include "tentlab/lattice.hpp"

namespace tentlab {

struct RatioBandResult {
    std::string name;
    nlohmann::json params;            // echo of the configuration that ran
    std::vector<double> ratios;
    std::vector<double> member_param; // boundary parameter per ratio
    double band_min = 0.0;
    double band_max = 0.0;
    double max_over_min = 0.0;
    double slope = 0.0;               // log-ratio vs log(boundary parameter)
    double band_tol = 20.0;
    double slope_tol = 0.1;
    bool extra_ok = true;             // check-specific side conditions
    bool pass = false;
    bool skipped = false;
    std::string reason;               // skip reason or failure description
    std::string notes;

    void finalize();  // fills band/slope/pass from ratios
    nlohmann::json to_json() const;
    std::string csv_row() const;
    static std::string csv_header();
};

struct SuiteDefaults {
    uint64_t seed = 20230815;
    double eps_trunc = 1e-4;
    double band_tol = 20.0;
    double cross_band_tol = 50.0;
    double slope_tol = 0.1;
    int sphere_res = 512;    // outer integrals, n = 1
    int sphere_res_n2 = 12;
    double gamma = 2.0;
};

// Kernel growth bound: int (1-|u|^2)^t / |1-<z,u>|^{n+1+t+s} dV against
// (1-|z|^2)^{-s} along a radial schedule.
RatioBandResult check_forelli_rudin(int n, double t, double s,
                                    const std::vector<double>& gap_schedule,
                                    const SuiteDefaults& d);

// Double-kernel bound, branch 1 (regular) or branch 2 (boundary-weighted).
RatioBandResult check_fr_general(int n, double s, double r, double t, int branch,
                                 const std::vector<double>& gap_schedule, bool split_poles,
                                 const SuiteDefaults& d);

// Sphere average of the lambda-kernel mass of a discrete measure against the
// sphere average of its region masses.
RatioBandResult check_lemma_gamma(int n, double s_exp, double lambda,
                                  const std::vector<double>& gap_schedule,
                                  const SuiteDefaults& d);

enum class Equivalence {
    HTchar,          // fractional shift on the q-integral scale
    BTchar,          // parameter invariance of the weighted-derivative norm
    CTchar,          // fractional shift on the Carleson scale
    area,            // Hardy norm against the square-integral derivative norm
    embed,           // q <= 1 embedding into the 1-integral scale
    embed2,          // p < 1 embedding into a weighted Bergman space
    HTinf_is_Hardy,  // regionwise-sup scale against the Hardy norm
    HTpp_is_Bergman  // diagonal p = q against the Bergman norm
};

Equivalence equivalence_from_string(const std::string& s);

struct EquivParams {
    int n = 1;
    double p = 2.0;
    double q = 2.0;
    double alpha = 0.0;
    double s = 0.0, t = 1.0;    // fractional parameters
    double s2 = 1.0, t2 = 2.0;  // second pair (BTchar)
};

RatioBandResult check_equivalence(Equivalence which, const EquivParams& ep,
                                  const TestFamily& family, const SuiteDefaults& d);

// Bounded projection: exact projection of measurable conj-monomial mixtures,
// out-norm over in-norm banded.
RatioBandResult check_projection_bound(int n, double p, double q, double alpha, int count,
                                       const SuiteDefaults& d);

// Unboundedness demonstration on the regionwise-sup scale: unimodular
// symbols aligned with a boundary pole schedule; the out/in ratio must grow
// by `growth_factor` with positive trend. (The family is this laboratory's
// construction; the claim it illustrates is qualitative.)
RatioBandResult check_projection_unbounded(int n, double p, double alpha,
                                           const std::vector<double>& gap_schedule,
                                           double growth_factor, const SuiteDefaults& d);

// Dilation contract: ||f_r|| <= C ||f|| uniformly and ||f_r - f|| decreasing
// along the schedule.
RatioBandResult check_dilation(int n, double p, double q, double alpha,
                               const std::vector<double>& r_schedule, double C_max,
                               const SuiteDefaults& d);

enum class DualityKind { pq, small_q, bloch };

// Pairing two-sided contract: |<f,g>| <= C ||f|| ||g|| (upper band) and a
// non-degeneracy constant bounded away from zero along the pole schedule.
RatioBandResult check_duality_pairing(DualityKind kind, int n, double p, double q,
                                      double alpha, const std::vector<double>& gap_schedule,
                                      const SuiteDefaults& d);

// sigma(I(z)) / (1-|z|^2)^n band over radii.
RatioBandResult check_sigma_slice(int n, double gamma, const std::vector<double>& radii,
                                  const SuiteDefaults& d);

// Iterated region integral against the direct weighted integral.
RatioBandResult check_eqg(int n, double alpha, const TestFamily& family,
                          const SuiteDefaults& d);

// Box-sup route against the kernel-test route, all T in one band.
RatioBandResult check_carleson_routes(int n, double q, double alpha,
                                      const std::vector<double>& Ts, const TestFamily& family,
                                      const SuiteDefaults& d);

// Lattice invariants as a check row.
RatioBandResult check_lattice_invariants(int n, double r, double eps, size_t samples,
                                         long n_obs_cap, const SuiteDefaults& d);

// Neumann reconstruction decay as a check row.
RatioBandResult check_neumann(int n, double r, double theta, double alpha, int max_iter,
                              double target_residual, const SuiteDefaults& d);

// --------------------------------------------------------------------------
// Config-driven suite

struct SuiteReport {
    nlohmann::json config;
    std::vector<RatioBandResult> results;

    bool all_passed() const;  // skipped rows do not count as failures
    nlohmann::json to_json() const;
    std::string to_csv() const;
};

SuiteReport run_suite(const nlohmann::json& config);

// Writes report.json and report.csv; bodies are deterministic functions of
// the config and seeds.
void emit_report(const SuiteReport& report, const std::string& out_dir);

// The default experiment suite (one instance of every check type).
nlohmann::json default_suite_config();

}  // namespace tentlab
