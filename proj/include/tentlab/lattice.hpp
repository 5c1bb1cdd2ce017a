#pragma once

// Lattices in the Bergman metric: covering, separated, finite-multiplicity
// point sets with a nearest-center cell partition, the sequence tent spaces
// they index, the kernel-atom synthesis operator, its Riemann-sum analysis
// coefficients, and the Neumann-series reconstruction driven by them.

#include "tentlab/norms.hpp"

namespace tentlab {

struct LatticeCheck {
    bool covering_ok = false;     // (i) every sample within beta < r of a center
    bool separation_ok = false;   // (ii) pairwise beta >= r/2
    long n_obs = 0;               // (iii) max #centers with beta(z, a_k) < 4r
    double min_separation = 0.0;
    double worst_cover_gap = 0.0; // max over samples of the nearest-center distance
    size_t samples = 0;

    bool all_ok() const { return covering_ok && separation_ok; }
};

class Lattice {
  public:
    int n = 1;
    double r = 0.3;
    double eps_trunc = 1e-4;
    long n_obs = 0;  // recorded multiplicity from the construction-time check

    size_t count() const { return coords_.size() / size_t(n); }
    std::span<const Cx> point(size_t k) const {
        return {coords_.data() + k * size_t(n), size_t(n)};
    }
    double one_minus_abs2(size_t k) const { return omz2_[k]; }
    const std::vector<Cx>& coords() const { return coords_; }

    // Nearest center in the Bergman metric; ties resolve to the lowest index.
    size_t cell_index(std::span<const Cx> z) const;

    nlohmann::json to_json() const;

    friend Lattice generate_lattice(int, double, double);

  private:
    std::vector<Cx> coords_;
    std::vector<double> omz2_;
    // shell structure for fast nearest queries (n = 1: rings of points)
    struct Ring {
        double u;       // Bergman radial coordinate
        double rho;     // tanh(u)
        size_t start;
        size_t count;
        double offset;  // angular phase of point 0 (n = 1)
    };
    std::vector<Ring> rings_;
    friend struct LatticeBuilder;
};

// Structured shell construction: radial shells at Bergman pitch ~1.2 r with
// staggered in-shell pitch ~1.4 r (n = 1), product pitches ~0.7 r (n = 2).
// Invariants are verified on seeded samples before the lattice is returned.
Lattice generate_lattice(int n, double r, double eps_trunc);

LatticeCheck verify_lattice(const Lattice& Z, size_t samples, uint64_t seed);

struct SeqTent {
    const Lattice* lattice = nullptr;
    std::vector<Cx> values;

    SeqTent() = default;
    SeqTent(const Lattice& Z, std::vector<Cx> v);
};

// ||{c_k}||_{T^p_q(Z)} with the per-region filter a_k in Gamma(zeta);
// q = kInf takes the regionwise sup.
double seq_tent_norm(const SeqTent& c, double p, double q, const SphereRule& sphere,
                     const Aperture& gamma);

// <{c_k},{d_k}>_Z = sum c_k conj(d_k) (1-|a_k|^2)^n.
Cx seq_pairing(const SeqTent& c, const SeqTent& d);

// S^theta_Z {c_k}(z) = sum c_k (1-|a_k|^2)^theta (1-<z,a_k>)^{-(theta+(n+1+alpha)/q)}.
// Requires theta > n max(1, q/p, 1/p, 1/q).
HoloFunction atomic_synthesis(const SeqTent& c, double theta, const SpaceParams& sp);

// Riemann-sum coefficients over the nearest-center cells:
//   c_k = c(n, theta+alpha) int_{D_k} (1-|z|^2)^{theta+alpha} dV  f(a_k) (1-|a_k|^2)^{-theta}.
// The normalizing constant c(n, theta+alpha) makes synthesis-after-analysis
// approximate the identity (it is the reproducing-kernel normalizer).
SeqTent atomic_analysis(const HoloFunction& f, const Lattice& Z, double theta, double alpha,
                        const BallRule& rule);

struct NeumannResult {
    HoloFunction approximation;
    std::vector<double> residuals;  // sampled sup-norm on |z| <= 0.9, per iteration
    bool diverged = false;
};

// Neumann iteration g_{m+1} = g_m - S T g_m accumulating sum S T g_m -> f.
// q = 1 path; divergence (non-decreasing residuals after 3 iterations) is
// reported, not thrown.
NeumannResult neumann_reconstruct(const HoloFunction& f, const Lattice& Z, double theta,
                                  double alpha, int max_iter, double tol,
                                  const BallRule& rule);

}  // namespace tentlab
