#pragma once

// Linear operators on holomorphic functions: the fractional derivative and
// integral pair R^{s,t} / R_{s,t} (coefficient multipliers normalized on the
// kernels (1-<z,u>)^{-(n+1+s)}), the Bergman projection P_beta, and the
// modulus-kernel (maximal) projection.

#include "tentlab/funcspace.hpp"
#include "tentlab/quadrature.hpp"

namespace tentlab {

struct FracParams {
    double s = 0.0;
    double t = 0.0;
    int n = 1;

    FracParams() = default;
    FracParams(double s_, double t_, int n_);
};

// Degree-k multiplier of R^{s,t}: lambda_0 = 1,
// lambda_{k+1} = lambda_k (n+1+s+t+k)/(n+1+s+k); R_{s,t} divides instead.
double frac_multiplier(const FracParams& fp, int k);
std::vector<double> frac_multipliers(const FracParams& fp, int max_order);

enum class FracMode { derivative, integral };

struct FracResult {
    HoloFunction f;
    int truncated_atoms = 0;    // atoms without a matched exponent, expanded
    double tail_bound = 0.0;    // accumulated truncation tail bound
};

// Applies the multiplier to the polynomial part (exact) and shifts matched
// atom exponents (exact); mismatched atoms are truncated to `trunc_degree`
// first, which the result reports.
FracResult apply_frac(const FracParams& fp, const HoloFunction& f, FracMode mode,
                      int trunc_degree = 30);

// Max over an interior grid of |multiplier route - kernel-integral route|,
// for the integral representations valid when s > -1, t > 0 (derivative) or
// s + t > -1, t > 0 (integral).
double frac_integral_formula_check(const FracParams& fp, const TaylorPoly& f,
                                   const BallRule& rule, FracMode mode = FracMode::derivative);

struct ProjParams {
    double beta = 0.0;
    int n = 1;

    ProjParams() = default;
    ProjParams(double beta_, int n_);
    // c(n, beta) = Gamma(n+beta+1) / (n! Gamma(beta+1)) = (beta+1)_n / n!,
    // the normalizer that makes (1-|z|^2)^beta dV_n a probability measure.
    double constant() const { return pochhammer(beta + 1.0, n) / factorial(n); }
};

// Finite combinations of z^a conj(z)^b, the natural inputs of P_beta that
// stay exactly computable.
class MixedPoly {
  public:
    MixedPoly() = default;
    explicit MixedPoly(int n) : n_(n) {}

    int dim() const { return n_; }
    void add(const MultiIndex& a, const MultiIndex& b, Cx c);
    const std::map<std::pair<MultiIndex, MultiIndex>, Cx>& terms() const { return terms_; }

    Cx evaluate(std::span<const Cx> z) const;
    static MixedPoly from_poly(const TaylorPoly& p);
    static MixedPoly conj_monomial(int n, const MultiIndex& b, Cx c = 1.0);

  private:
    int n_ = 1;
    std::map<std::pair<MultiIndex, MultiIndex>, Cx> terms_;
};

// int_{B_n} |z^m|^2 (1-|z|^2)^beta dV_n = m! / ((n+1+beta)_{|m|} c(n,beta)).
double monomial_weighted_square_integral(int n, const MultiIndex& m, double beta);

// Exact projection: P_beta(z^a conj(z)^b) is a scalar multiple of z^{a-b}
// when a >= b componentwise and 0 otherwise; reproduces holomorphic
// polynomials identically.
TaylorPoly project_poly(const ProjParams& pp, const MixedPoly& F);

// Kernel-integral evaluation of P_beta F at one point, by quadrature.
Cx project_numeric(const ProjParams& pp, const std::function<Cx(std::span<const Cx>)>& F,
                   const BallPoint& z, const BallRule& rule);

// Modulus-kernel integral c(n,beta) int (1-|u|^2)^beta |1-<z,u>|^{-(1+n+beta+extra_t)} |F| dV.
// extra_t = 0 dominates |project_numeric| pointwise.
double project_maximal(const ProjParams& pp, double extra_t,
                       const std::function<Cx(std::span<const Cx>)>& F, const BallPoint& z,
                       const BallRule& rule);

}  // namespace tentlab
