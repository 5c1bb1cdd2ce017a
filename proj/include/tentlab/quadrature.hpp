#pragma once

// Deterministic quadrature over the sphere S_n and the (truncated) ball B_n
// for n in {1,2}, with geometric radial grading toward the boundary, plus a
// multi-start sup search over ball / region / sphere domains.
//
// Ball rules are built for the unweighted measure dV_n (normalized so that
// V_n(B_n) = 1); singular weights (1-|z|^2)^alpha are applied per node at
// integration time so one rule serves every exponent.

#include <functional>
#include <optional>
#include <string>

#include "tentlab/geometry.hpp"
#include "tentlab/util.hpp"

namespace tentlab {

struct RadialMesh {
    std::vector<double> radii;  // increasing breakpoints in (0, 1 - eps_trunc]
    double lambda_geo = 0.5;    // ratio of consecutive boundary gaps 1 - rho_j
    double eps_trunc = 1e-4;

    // Breakpoints 1 - lambda^j clamped so the last equals 1 - eps.
    static RadialMesh geometric(double eps_trunc, double lambda_geo = 0.5);
};

// Product rule on S_n with normalized surface measure, sigma(S_n) = 1.
//  n = 1: trapezoid on the circle.
//  n = 2: zeta = (e^{i th1} sqrt(1-x), e^{i th2} sqrt(x)); trapezoid in th1,
//         th2 and Gauss-Legendre in x on [0,1], since dsigma reduces to
//         dx dth1 dth2 / (2 (2 pi)^2) in these coordinates.
class SphereRule {
  public:
    static SphereRule make(int n, int resolution);
    static SphereRule make_product(int n_theta1, int n_theta2, int n_x);  // n = 2

    int dim() const { return n_; }
    size_t count() const { return count_; }
    std::string describe() const;

    // Streams (node coords, weight); nodes are generated on the fly so very
    // fine slice rules never have to be materialized.
    template <typename F>
    void for_each(F&& f) const {
        Cx node[2];
        if (n_ == 1) {
            const double w = 1.0 / double(n_theta1_);
            for (int j = 0; j < n_theta1_; ++j) {
                double t = 2.0 * kPi * (double(j) + 0.5) / double(n_theta1_);
                node[0] = Cx(std::cos(t), std::sin(t));
                f(std::span<const Cx>(node, 1), w);
            }
            return;
        }
        const double wt = 1.0 / double(n_theta1_ * n_theta2_);
        for (size_t k = 0; k < x_nodes_.size(); ++k) {
            const double c = std::sqrt(1.0 - x_nodes_[k]);
            const double s = std::sqrt(x_nodes_[k]);
            const double w = wt * x_weights_[k];
            for (int j1 = 0; j1 < n_theta1_; ++j1) {
                double t1 = 2.0 * kPi * (double(j1) + 0.5) / double(n_theta1_);
                const Cx e1(std::cos(t1), std::sin(t1));
                for (int j2 = 0; j2 < n_theta2_; ++j2) {
                    double t2 = 2.0 * kPi * (double(j2) + 0.5) / double(n_theta2_);
                    node[0] = c * e1;
                    node[1] = s * Cx(std::cos(t2), std::sin(t2));
                    f(std::span<const Cx>(node, 2), w);
                }
            }
        }
    }

    // Materialized copies for callers that iterate many times.
    const std::vector<Cx>& coords() const;   // count * n, interleaved
    const std::vector<double>& weights() const;
    std::span<const Cx> node(size_t i) const {
        return {coords().data() + i * size_t(n_), size_t(n_)};
    }

  private:
    int n_ = 1;
    int n_theta1_ = 0, n_theta2_ = 0;
    std::vector<double> x_nodes_, x_weights_;  // Gauss-Legendre on [0,1]
    size_t count_ = 0;
    mutable std::vector<Cx> cached_coords_;
    mutable std::vector<double> cached_weights_;
};

struct BallRuleOptions {
    double eps_trunc = 1e-4;
    double lambda_geo = 0.5;
    int radial_per_segment = 8;
    int angular_base = 64;    // minimum angular resolution (theta_1)
    double angular_scale = 6.0;  // target ~scale/(1-r) nodes near the boundary
    int angular_cap = 2048;
    // n = 2 factors; theta_2 and x stay fixed per shell.
    int n2_theta2 = 16;
    int n2_x = 8;
    int n2_theta1_cap = 64;

    static BallRuleOptions smooth(double eps = 1e-6);    // interior-dominated integrands
    static BallRuleOptions standard(double eps = 1e-4);
    static BallRuleOptions boundary(double eps = 1e-4);  // boundary-peaked kernels, n = 1
};

// Nodes z_i with weights w_i so that sum w_i f(z_i) ~ int f dV_n over
// |z| <= 1 - eps_trunc. 1 - |z_i|^2 is cached for weight application.
class BallRule {
  public:
    static BallRule make(int n, const RadialMesh& mesh, const BallRuleOptions& opt);
    static BallRule make(int n, const BallRuleOptions& opt);
    // Seeded quasi-uniform sampled rule (fallback when product cost explodes).
    static BallRule make_sampled(int n, size_t count, double eps_trunc, uint64_t seed);

    int dim() const { return n_; }
    double eps_trunc() const { return eps_trunc_; }
    size_t count() const { return w_.size(); }
    uint64_t seed() const { return seed_; }
    std::string describe() const;

    std::span<const Cx> point(size_t i) const {
        return {coords_.data() + i * size_t(n_), size_t(n_)};
    }
    double weight(size_t i) const { return w_[i]; }
    double one_minus_abs2(size_t i) const { return omz2_[i]; }
    const std::vector<double>& weights() const { return w_; }
    const std::vector<double>& one_minus_abs2_all() const { return omz2_; }

    // sum_i w_i (1-|z_i|^2)^alpha f(z_i), pairwise-summed in node order.
    template <typename F>
    auto integrate(double alpha, F&& f) const {
        using R = decltype(f(point(0)));
        std::vector<R> terms(count());
        for (size_t i = 0; i < count(); ++i)
            terms[i] = w_[i] * std::pow(omz2_[i], alpha) * f(point(i));
        return pairwise_sum(terms);
    }

  private:
    int n_ = 1;
    double eps_trunc_ = 1e-4;
    uint64_t seed_ = 0;
    std::vector<Cx> coords_;
    std::vector<double> w_, omz2_;
    std::string desc_;
};

struct RegionIntegral {
    Cx value = 0.0;
    long contributing_nodes = 0;
};

// int_{Gamma_gamma(zeta)} f(z) (1-|z|^2)^alpha dV_n(z) by indicator
// restriction of a ball rule. Throws if no node lands in the region.
RegionIntegral region_integral(const std::function<Cx(std::span<const Cx>)>& f,
                               const SpherePoint& zeta, const Aperture& gamma,
                               double alpha, const BallRule& rule);

// ---------------------------------------------------------------------------
// sup search

struct SupDomain {
    enum class Kind { ball, region, sphere } kind = Kind::ball;
    int n = 1;
    double eps_trunc = 1e-4;
    SpherePoint zeta;   // region only
    double gamma = 2.0; // region only

    static SupDomain ball(int n, double eps_trunc = 1e-4);
    static SupDomain region(const SpherePoint& zeta, double gamma, double eps_trunc = 1e-4);
    static SupDomain sphere(int n);
};

struct SupGrid {
    int radial = 12;
    int angular = 16;
    int refine_rounds = 2;
    int refine_points = 5;  // per coordinate and round
};

struct SupResult {
    double value = 0.0;
    CVec argmax;
    int basins = 1;  // distinct refined maximizers among the top seeds
};

// Deterministic multi-start local refinement from a graded seed grid.
// Ties break toward the first-encountered seed.
SupResult sup_search(const std::function<double(std::span<const Cx>)>& g,
                     const SupDomain& domain, const SupGrid& grid = {});

// Gauss-Legendre nodes/weights on [a,b].
void gauss_legendre(int k, double a, double b, std::vector<double>& x,
                    std::vector<double>& w);

}  // namespace tentlab
