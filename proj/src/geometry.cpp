#include "tentlab/geometry.hpp"

#include "tentlab/quadrature.hpp"

namespace tentlab {

BallPoint::BallPoint(CVec coords) : z(std::move(coords)) {
    if (z.empty()) throw std::invalid_argument("BallPoint: dimension must be >= 1");
    if (norm_sq(span()) >= 1.0)
        throw std::invalid_argument("BallPoint: |z| < 1 required");
}

SpherePoint::SpherePoint(CVec coords) : zeta(std::move(coords)) {
    if (zeta.empty()) throw std::invalid_argument("SpherePoint: dimension must be >= 1");
    double r = euclid_norm({zeta.data(), zeta.size()});
    if (r <= 0.0) throw std::invalid_argument("SpherePoint: zero vector");
    for (Cx& c : zeta) c /= r;
}

Aperture::Aperture(double g) : gamma(g) {
    if (!(g > 1.0)) throw std::invalid_argument("Aperture: gamma > 1 required");
}

bool in_approach_region(const SpherePoint& zeta, const Aperture& gamma, const BallPoint& z) {
    return in_approach_region(zeta.span(), gamma.gamma, z.span(), 1.0 - norm_sq(z.span()));
}

bool in_tent_raw(std::span<const Cx> u, double abs_u, std::span<const Cx> z) {
    if (abs_u == 0.0) return true;
    Cx ip = hermitian_inner(z, u) / abs_u;  // <z, u/|u|>
    return std::abs(1.0 - ip) < 1.0 - abs_u * abs_u;
}

bool in_tent(const BallPoint& u, const BallPoint& z) {
    return in_tent_raw(u.span(), u.abs(), z.span());
}

// phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z,a>), with P_a the projection
// onto C a, Q_a = I - P_a, s_a = sqrt(1 - |a|^2).
BallPoint mobius(const BallPoint& a, const BallPoint& z) {
    if (a.dim() != z.dim()) throw std::invalid_argument("mobius: dimension mismatch");
    const size_t n = a.z.size();
    const double a2 = norm_sq(a.span());
    if (a2 == 0.0) {
        CVec out(n);
        for (size_t j = 0; j < n; ++j) out[j] = -z.z[j];
        return BallPoint(std::move(out));
    }
    const Cx za = hermitian_inner(z.span(), a.span());
    const double s = std::sqrt(1.0 - a2);
    const Cx denom = 1.0 - za;
    CVec out(n);
    for (size_t j = 0; j < n; ++j) {
        Cx proj = (za / a2) * a.z[j];
        Cx perp = z.z[j] - proj;
        out[j] = (a.z[j] - proj - s * perp) / denom;
    }
    return BallPoint(std::move(out));
}

double bergman_metric_raw(std::span<const Cx> z, std::span<const Cx> w) {
    // |phi_z(w)|^2 = 1 - (1-|z|^2)(1-|w|^2)/|1-<z,w>|^2, so the metric needs
    // only moduli; this closed form avoids building phi_z(w).
    const double z2 = norm_sq(z), w2 = norm_sq(w);
    const double d2 = std::norm(1.0 - hermitian_inner(z, w));
    double rho2 = 1.0 - (1.0 - z2) * (1.0 - w2) / d2;
    if (rho2 <= 0.0) return 0.0;
    double rho = std::sqrt(std::min(rho2, 1.0 - 1e-300));
    return 0.5 * std::log((1.0 + rho) / (1.0 - rho));
}

double bergman_metric(const BallPoint& z, const BallPoint& w) {
    if (z.dim() != w.dim()) throw std::invalid_argument("bergman_metric: dimension mismatch");
    return bergman_metric_raw(z.span(), w.span());
}

SliceMeasure boundary_slice_measure(const BallPoint& z, const Aperture& gamma,
                                    const SphereRule& rule) {
    SliceMeasure out;
    const double omz2 = 1.0 - norm_sq(z.span());
    if (z.abs() == 0.0) {  // I(0) is the full sphere, sigma(S_n) = 1
        out.value = 1.0;
        out.nodes_inside = long(rule.count());
        return out;
    }
    double acc = 0.0;
    long inside = 0;
    auto zs = z.span();
    rule.for_each([&](std::span<const Cx> zeta, double w) {
        if (in_approach_region(zeta, gamma.gamma, zs, omz2)) {
            acc += w;
            ++inside;
        }
    });
    out.value = acc;
    out.nodes_inside = inside;
    out.low_confidence = inside < 8;
    return out;
}

}  // namespace tentlab
