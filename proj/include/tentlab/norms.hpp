#pragma once

// Every norm, quasinorm and pairing the laboratory computes on holomorphic
// inputs: tent norms (finite q and the regionwise-sup variant), Carleson-box
// norms and their kernel-test route, Hardy / Bergman / Bloch norms, the
// weighted-derivative (Hardy-Bloch) norm with its vanishing-tail functional,
// and the weighted pairings <f,g>_{n+alpha} in exact, quadrature and
// dilation-limit form.

#include "tentlab/operators.hpp"

namespace tentlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct SpaceParams {
    int n = 1;
    double p = 2.0;
    double q = 2.0;  // kInf for the regionwise-sup scale (alpha then ignored)
    double alpha = 0.0;
    Aperture gamma{};

    SpaceParams() = default;
    SpaceParams(int n_, double p_, double q_, double alpha_, double gamma_ = 2.0);
};

struct NormReport {
    double value = 0.0;
    double eps_trunc = 0.0;
    std::string resolution;
    uint64_t seed = 0;
    std::string notes;

    nlohmann::json to_json() const;
};

// ||f||_{T^p_{q,alpha}}^p = int_S ( int_{Gamma(zeta)} |f|^q (1-|z|^2)^alpha dV )^{p/q} dsigma.
NormReport tent_norm(const HoloFunction& f, const SpaceParams& sp, const BallRule& rule,
                     const SphereRule& sphere);

// Same norm for an arbitrary measurable integrand.
NormReport tent_norm_fn(const std::function<Cx(std::span<const Cx>)>& f, const SpaceParams& sp,
                        const BallRule& rule, const SphereRule& sphere);

// q = infinity: ||f||^p = int_S ( sup_{Gamma(zeta)} |f| )^p dsigma.
NormReport tent_inf_norm(const HoloFunction& f, const SpaceParams& sp,
                         const SphereRule& sphere, const SupGrid& grid = {});

// Same sup-integral applied to an arbitrary nonnegative evaluable function.
NormReport tent_sup_norm(const std::function<double(std::span<const Cx>)>& g, int n,
                         double p, const Aperture& gamma, const SphereRule& sphere,
                         double eps_trunc = 1e-4, const SupGrid& grid = {});

// Cached-grid variant for expensive integrands: the region sup is the max of
// precomputed values over nodes falling inside each region.
NormReport tent_sup_norm_grid(const std::vector<Cx>& coords, const std::vector<double>& values,
                              int n, double p, const Aperture& gamma, const SphereRule& sphere);

struct CarlesonGrid {
    int radial = 12;
    int angular = 16;
    double eps = 1e-3;     // deepest candidate gap 1-|u|
    int refine_rounds = 1;
    long min_tent_nodes = 4;
};

// sup_u (1-|u|^2)^{-n} int_{Q(u)} |f|^q (1-|z|^2)^{n+alpha} dV, to the 1/q.
NormReport carleson_norm(const HoloFunction& f, double q, double alpha,
                         const BallRule& rule, const CarlesonGrid& grid = {});

// Kernel-test route: sup_a int (1-|a|^2)^T |1-<z,a>|^{-(n+T)} dmu, dmu =
// |f|^q (1-|z|^2)^{n+alpha} dV, to the 1/q.
NormReport carleson_kernel_norm(const HoloFunction& f, double q, double alpha, double T,
                                const BallRule& rule, const CarlesonGrid& grid = {});

// Tail profile: for each radius, the kernel-test sup restricted to |a| >= radius.
std::vector<std::pair<double, double>> vanishing_carleson_profile(
    const HoloFunction& f, double q, double alpha, double T, const BallRule& rule,
    const std::vector<double>& radii, const CarlesonGrid& grid = {});

// ||f||_{H^p}^p = sup_{0<r<1} int_S |f(r zeta)|^p dsigma; realized as the max
// over the mesh radii (monotonicity is asserted in tests, not assumed).
NormReport hardy_norm(const HoloFunction& f, double p, const SphereRule& sphere,
                      const RadialMesh& radii);
std::vector<double> hardy_sphere_means(const HoloFunction& f, double p,
                                       const SphereRule& sphere, const RadialMesh& radii);

// ||f||_{A^p_beta}^p = int |f|^p (1-|z|^2)^beta dV; p = 2 polynomial inputs
// take the exact coefficient branch.
NormReport bergman_norm(const HoloFunction& f, double p, double beta, const BallRule& rule);

NormReport bloch_norm(const HoloFunction& f, double eps_trunc = 1e-4,
                      const SupGrid& grid = {});

// || (1-|.|^2)^t R^{s,t} f ||_{T^p_inf}.
NormReport bt_norm(const HoloFunction& f, double p, const FracParams& fp,
                   const Aperture& gamma, const SphereRule& sphere,
                   double eps_trunc = 1e-4, const SupGrid& grid = {});

// The same sup restricted to the annulus |z| > r; the vanishing-tail
// functional whose decay as r -> 1 detects the little-o subspace.
double bt_tail(const HoloFunction& f, double p, const FracParams& fp, double r,
               const Aperture& gamma, const SphereRule& sphere, double eps_trunc = 1e-4,
               const SupGrid& grid = {});

// <f,g>_{n+alpha} = int f conj(g) (1-|z|^2)^{n+alpha} dV.
Cx pairing_exact(const TaylorPoly& f, const TaylorPoly& g, double alpha);
Cx pairing_numeric(const HoloFunction& f, const HoloFunction& g, double alpha,
                   const BallRule& rule);

struct PairingLimit {
    Cx value = 0.0;
    bool converged = false;
    std::vector<std::pair<double, Cx>> profile;  // (r, <f_r, g>)
};

// lim_{r->1} <f_r, g>_{n+alpha} along a dilation schedule; declared converged
// when successive values differ by < tol.
PairingLimit pairing_limit(const HoloFunction& f, const HoloFunction& g, double alpha,
                           const std::vector<double>& r_schedule, const BallRule& rule,
                           double tol = 1e-6);

// Exact pairing of measurable monomial mixtures (used by adjointness tests).
Cx mixed_pairing_exact(const MixedPoly& F, const MixedPoly& G, double beta);

// alpha' = alpha + (1/q - 1)(n+1+alpha): the weight raising q-mass to 1-mass.
double embed_alpha_prime(double q, int n, double alpha);
// (1/p - 1) n + (n+1+alpha)/q - 1: the Bergman weight receiving the p < 1 scale.
double embed_bergman_exponent(double p, double q, int n, double alpha);

}  // namespace tentlab
