#pragma once

// Seeded test families. Kernel-atom families carry the boundary parameter
// 1-|a| so ratio trends can be regressed against the approach to the sphere;
// polynomial families are boundary-free extremizer foils.

#include "tentlab/norms.hpp"

namespace tentlab {

struct TestFamily {
    std::string name;
    std::vector<HoloFunction> members;
    std::vector<double> boundary_param;  // e.g. 1-|a|; 1.0 when not applicable
    uint64_t seed = 0;

    size_t size() const { return members.size(); }
};

// Geometric schedule from `from` down to `to` (inclusive), `count` steps.
std::vector<double> geometric_schedule(double from, double to, int count);

// (A) random polynomials, coefficients in the unit disk.
TestFamily random_polynomials(int n, int count, int max_degree, uint64_t seed);

// (B) kernel atoms (1-<z,a>)^{-e} with 1-|a| on the schedule and rotating
// pole directions.
TestFamily kernel_atoms(int n, double exponent, const std::vector<double>& eps_schedule,
                        uint64_t seed);

// (C) Bergman kernels B_a^{n+alpha} (atoms with the reproducing scale).
TestFamily bergman_kernels(int n, double alpha, const std::vector<double>& eps_schedule,
                           uint64_t seed);

// (D) degree-truncated -log(1 - <z,dir>), the standard unbounded Bloch member.
TestFamily truncated_logs(int n, int degree, int count, uint64_t seed);

// Truncated-atom polynomials (atoms pushed through Taylor truncation).
TestFamily truncated_atoms(int n, double exponent, const std::vector<double>& eps_schedule,
                           int degree, uint64_t seed);

// Mixture of (A) and (B) for cross-family bands.
TestFamily mixed_family(int n, double atom_exponent, int count, uint64_t seed);

// -log(1-<z,dir>) truncated to `degree` as a TaylorPoly.
TaylorPoly log_kernel_poly(int n, const CVec& dir, int degree);

// Random measurable conj-monomial mixtures sum c_{ab} z^a conj(z)^b.
std::vector<MixedPoly> random_conj_mixtures(int n, int count, int max_order, uint64_t seed);

}  // namespace tentlab
