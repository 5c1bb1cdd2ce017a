#pragma once

// Points of the unit ball B_n in C^n, the sphere S_n = bd(B_n), the Bergman
// metric, and the regions every integral in this library ranges over:
// Koranyi approach regions Gamma_gamma(zeta), tents Q(u), and boundary
// slices I(z) = { zeta : z in Gamma(zeta) }.

#include <span>

#include "tentlab/util.hpp"

namespace tentlab {

struct BallPoint {
    CVec z;

    BallPoint() = default;
    explicit BallPoint(CVec coords);
    static BallPoint origin(int n) { return BallPoint(CVec(size_t(n), Cx(0.0))); }

    int dim() const { return int(z.size()); }
    double abs() const { return euclid_norm(z); }
    std::span<const Cx> span() const { return {z.data(), z.size()}; }
};

struct SpherePoint {
    CVec zeta;  // renormalized to |zeta| = 1 on construction

    SpherePoint() = default;
    explicit SpherePoint(CVec coords);

    int dim() const { return int(zeta.size()); }
    std::span<const Cx> span() const { return {zeta.data(), zeta.size()}; }
};

struct Aperture {
    double gamma = 2.0;

    Aperture() = default;
    explicit Aperture(double g);
};

// Membership in Gamma_gamma(zeta): |1 - <z,zeta>| < (gamma/2)(1 - |z|^2).
// All predicates are strict, matching the region definitions.
inline bool in_approach_region(std::span<const Cx> zeta, double gamma,
                               std::span<const Cx> z, double one_minus_abs2) {
    return std::abs(1.0 - hermitian_inner(z, zeta)) < 0.5 * gamma * one_minus_abs2;
}

bool in_approach_region(const SpherePoint& zeta, const Aperture& gamma, const BallPoint& z);

// Membership in the tent Q(u); Q(0) is the whole ball.
bool in_tent(const BallPoint& u, const BallPoint& z);
bool in_tent_raw(std::span<const Cx> u, double abs_u, std::span<const Cx> z);

// Involutive automorphism phi_a of the ball with phi_a(0) = a, phi_a(a) = 0.
BallPoint mobius(const BallPoint& a, const BallPoint& z);

// Bergman metric beta(z,w) = (1/2) log((1+|phi_z(w)|)/(1-|phi_z(w)|)).
double bergman_metric(const BallPoint& z, const BallPoint& w);
double bergman_metric_raw(std::span<const Cx> z, std::span<const Cx> w);

class SphereRule;  // quadrature.hpp

struct SliceMeasure {
    double value = 0.0;
    long nodes_inside = 0;
    bool low_confidence = false;  // fewer than 8 rule nodes fell in the slice
};

// sigma(I(z)) by integrating the indicator of the slice over the sphere.
SliceMeasure boundary_slice_measure(const BallPoint& z, const Aperture& gamma,
                                    const SphereRule& rule);

}  // namespace tentlab
