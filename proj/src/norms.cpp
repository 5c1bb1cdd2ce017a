#include "tentlab/norms.hpp"

#include <algorithm>
#include <sstream>

namespace tentlab {

SpaceParams::SpaceParams(int n_, double p_, double q_, double alpha_, double gamma_)
    : n(n_), p(p_), q(q_), alpha(alpha_), gamma(gamma_) {
    if (n < 1) throw std::invalid_argument("SpaceParams: n >= 1 required");
    if (!(p > 0.0)) throw std::invalid_argument("SpaceParams: p > 0 required");
    if (!(q > 0.0)) throw std::invalid_argument("SpaceParams: q > 0 required");
    if (q != kInf && !(alpha > -double(n) - 1.0))
        throw std::invalid_argument("SpaceParams: alpha > -n-1 required");
}

nlohmann::json NormReport::to_json() const {
    return {{"value", value},
            {"eps_trunc", eps_trunc},
            {"resolution", resolution},
            {"seed", seed},
            {"notes", notes}};
}

namespace {

// Cached per-node data shared by the region filters.
struct NodeCache {
    const BallRule& rule;
    std::vector<double> weighted;   // w_i (1-|z_i|^2)^alpha |f(z_i)|^q
    std::vector<double> threshold;  // (gamma/2)(1-|z_i|^2)

    NodeCache(const BallRule& r, const std::function<Cx(std::span<const Cx>)>& f, double q,
              double alpha, double gamma)
        : rule(r) {
        const size_t m = r.count();
        weighted.resize(m);
        threshold.resize(m);
        for (size_t i = 0; i < m; ++i) {
            double omz2 = r.one_minus_abs2(i);
            double af = std::abs(f(r.point(i)));
            weighted[i] = r.weight(i) * std::pow(omz2, alpha) * std::pow(af, q);
            threshold[i] = 0.5 * gamma * omz2;
        }
    }

    NodeCache(const BallRule& r, const HoloFunction& f, double q, double alpha, double gamma)
        : NodeCache(r, [&f](std::span<const Cx> z) { return f.evaluate(z); }, q, alpha,
                    gamma) {}
};

double region_mass(const NodeCache& c, std::span<const Cx> zeta, long& nodes) {
    double acc = 0.0;
    nodes = 0;
    const int n = c.rule.dim();
    const size_t m = c.rule.count();
    if (n == 1) {
        const Cx zc = std::conj(zeta[0]);
        for (size_t i = 0; i < m; ++i) {
            if (std::abs(1.0 - c.rule.point(i)[0] * zc) < c.threshold[i]) {
                acc += c.weighted[i];
                ++nodes;
            }
        }
    } else {
        for (size_t i = 0; i < m; ++i) {
            if (std::abs(1.0 - hermitian_inner(c.rule.point(i), zeta)) < c.threshold[i]) {
                acc += c.weighted[i];
                ++nodes;
            }
        }
    }
    return acc;
}

}  // namespace

namespace {

NormReport tent_norm_cached(const NodeCache& cache, const SpaceParams& sp,
                            const BallRule& rule, const SphereRule& sphere);

}  // namespace

NormReport tent_norm(const HoloFunction& f, const SpaceParams& sp, const BallRule& rule,
                     const SphereRule& sphere) {
    if (sp.q == kInf) throw std::invalid_argument("tent_norm: q < infinity required");
    if (f.dim() != sp.n || rule.dim() != sp.n || sphere.dim() != sp.n)
        throw std::invalid_argument("tent_norm: dimension mismatch");
    NodeCache cache(rule, f, sp.q, sp.alpha, sp.gamma.gamma);
    return tent_norm_cached(cache, sp, rule, sphere);
}

NormReport tent_norm_fn(const std::function<Cx(std::span<const Cx>)>& f, const SpaceParams& sp,
                        const BallRule& rule, const SphereRule& sphere) {
    if (sp.q == kInf) throw std::invalid_argument("tent_norm_fn: q < infinity required");
    NodeCache cache(rule, f, sp.q, sp.alpha, sp.gamma.gamma);
    return tent_norm_cached(cache, sp, rule, sphere);
}

namespace {

NormReport tent_norm_cached(const NodeCache& cache, const SpaceParams& sp,
                            const BallRule& rule, const SphereRule& sphere) {
    const auto& sw = sphere.weights();
    std::vector<double> terms(sphere.count());
    long min_nodes = std::numeric_limits<long>::max();
    for (size_t k = 0; k < sphere.count(); ++k) {
        long nodes = 0;
        double a = region_mass(cache, sphere.node(k), nodes);
        min_nodes = std::min(min_nodes, nodes);
        if (nodes == 0)
            throw std::runtime_error("tent_norm: region starved of quadrature nodes");
        terms[k] = sw[k] * std::pow(a, sp.p / sp.q);
    }
    NormReport rep;
    rep.value = std::pow(pairwise_sum(terms), 1.0 / sp.p);
    rep.eps_trunc = rule.eps_trunc();
    rep.resolution = rule.describe() + "x" + sphere.describe();
    rep.seed = rule.seed();
    std::ostringstream os;
    os << "min_region_nodes=" << min_nodes;
    rep.notes = os.str();
    return rep;
}

}  // namespace

NormReport tent_sup_norm(const std::function<double(std::span<const Cx>)>& g, int n,
                         double p, const Aperture& gamma, const SphereRule& sphere,
                         double eps_trunc, const SupGrid& grid) {
    const auto& sw = sphere.weights();
    std::vector<double> terms(sphere.count());
    for (size_t k = 0; k < sphere.count(); ++k) {
        SpherePoint zeta(CVec(sphere.node(k).begin(), sphere.node(k).end()));
        SupResult s = sup_search(g, SupDomain::region(zeta, gamma.gamma, eps_trunc), grid);
        terms[k] = sw[k] * std::pow(std::max(s.value, 0.0), p);
    }
    NormReport rep;
    rep.value = std::pow(pairwise_sum(terms), 1.0 / p);
    rep.eps_trunc = eps_trunc;
    rep.resolution = sphere.describe() + "+supgrid";
    return rep;
}

NormReport tent_inf_norm(const HoloFunction& f, const SpaceParams& sp,
                         const SphereRule& sphere, const SupGrid& grid) {
    if (sp.q != kInf) throw std::invalid_argument("tent_inf_norm: q = infinity required");
    auto g = [&](std::span<const Cx> z) { return std::abs(f.evaluate(z)); };
    return tent_sup_norm(g, sp.n, sp.p, sp.gamma, sphere, 1e-4, grid);
}

NormReport tent_sup_norm_grid(const std::vector<Cx>& coords, const std::vector<double>& values,
                              int n, double p, const Aperture& gamma,
                              const SphereRule& sphere) {
    const size_t m = values.size();
    std::vector<double> omz2(m), thr(m);
    for (size_t i = 0; i < m; ++i) {
        omz2[i] = 1.0 - norm_sq({coords.data() + i * size_t(n), size_t(n)});
        thr[i] = 0.5 * gamma.gamma * omz2[i];
    }
    const auto& sw = sphere.weights();
    std::vector<double> terms(sphere.count());
    for (size_t k = 0; k < sphere.count(); ++k) {
        auto zeta = sphere.node(k);
        double best = 0.0;
        for (size_t i = 0; i < m; ++i) {
            std::span<const Cx> z{coords.data() + i * size_t(n), size_t(n)};
            if (std::abs(1.0 - hermitian_inner(z, zeta)) < thr[i])
                best = std::max(best, values[i]);
        }
        terms[k] = sw[k] * std::pow(best, p);
    }
    NormReport rep;
    rep.value = std::pow(pairwise_sum(terms), 1.0 / p);
    rep.resolution = sphere.describe() + "+grid";
    return rep;
}

// --------------------------------------------------------------------------
// Carleson-side norms

namespace {

struct TentCandidates {
    std::vector<CVec> points;  // includes the origin
};

TentCandidates carleson_candidates(int n, const CarlesonGrid& grid) {
    TentCandidates cand;
    cand.points.push_back(CVec(size_t(n), Cx(0.0)));
    for (int i = 1; i <= grid.radial; ++i) {
        double gap = std::pow(grid.eps, double(i) / double(grid.radial));
        double r = 1.0 - gap;
        if (r <= 0.0) continue;
        for (int j = 0; j < grid.angular; ++j) {
            double t1 = 2.0 * kPi * double(j) / double(grid.angular);
            if (n == 1) {
                cand.points.push_back({r * Cx(std::cos(t1), std::sin(t1))});
            } else {
                for (double x : {0.0, 0.35, 0.7, 1.0}) {
                    double t2 = 2.0 * kPi * double((j * 5) % grid.angular) /
                                double(grid.angular);
                    CVec u = {r * std::sqrt(1.0 - x) * Cx(std::cos(t1), std::sin(t1)),
                              r * std::sqrt(x) * Cx(std::cos(t2), std::sin(t2))};
                    cand.points.push_back(std::move(u));
                }
            }
        }
    }
    return cand;
}

std::vector<CVec> refine_candidates(const CVec& best, int n, double shrink) {
    std::vector<CVec> out;
    double r0 = euclid_norm({best.data(), best.size()});
    if (r0 == 0.0) return out;
    double gap = 1.0 - r0;
    for (int i = -2; i <= 2; ++i) {
        double r = 1.0 - gap * std::pow(2.0, double(i) * shrink);
        if (r <= 0.0 || r >= 1.0) continue;
        for (int j = -2; j <= 2; ++j) {
            double dt = double(j) * shrink * gap;
            if (n == 1) {
                double t = std::arg(best[0]) + dt;
                out.push_back({r * Cx(std::cos(t), std::sin(t))});
            } else {
                CVec u = best;
                double scale = r / r0;
                Cx rot(std::cos(dt), std::sin(dt));
                u[0] *= scale * rot;
                u[1] *= scale;
                out.push_back(std::move(u));
            }
        }
    }
    return out;
}

}  // namespace

NormReport carleson_norm(const HoloFunction& f, double q, double alpha,
                         const BallRule& rule, const CarlesonGrid& grid) {
    if (!(q > 0.0)) throw std::invalid_argument("carleson_norm: q > 0 required");
    const int n = rule.dim();
    NodeCache cache(rule, f, q, n + alpha, 2.0);  // threshold unused here

    long skipped = 0;
    auto tent_ratio = [&](const CVec& u) {
        double au = euclid_norm({u.data(), u.size()});
        double om = 1.0 - au * au;
        double acc = 0.0;
        long nodes = 0;
        for (size_t i = 0; i < rule.count(); ++i) {
            if (in_tent_raw({u.data(), u.size()}, au, rule.point(i))) {
                acc += cache.weighted[i];
                ++nodes;
            }
        }
        if (au > 0.0 && nodes < grid.min_tent_nodes) {
            ++skipped;
            return -1.0;  // starved tent, skip this candidate
        }
        return acc / std::pow(om, n);
    };

    TentCandidates cand = carleson_candidates(n, grid);
    double best = 0.0;
    CVec best_u = cand.points.front();
    for (const CVec& u : cand.points) {
        double v = tent_ratio(u);
        if (v > best) {
            best = v;
            best_u = u;
        }
    }
    for (int round = 0; round < grid.refine_rounds; ++round) {
        for (const CVec& u : refine_candidates(best_u, n, 0.5 / double(round + 1))) {
            double v = tent_ratio(u);
            if (v > best) {
                best = v;
                best_u = u;
            }
        }
    }

    NormReport rep;
    rep.value = std::pow(best, 1.0 / q);
    rep.eps_trunc = rule.eps_trunc();
    rep.resolution = rule.describe() + "+tentgrid";
    std::ostringstream os;
    os << "skipped_candidates=" << skipped;
    rep.notes = os.str();
    return rep;
}

namespace {

double kernel_test_integral(const NodeCache& cache, const BallRule& rule, int n, double T,
                            const CVec& a) {
    double a2 = norm_sq({a.data(), a.size()});
    double pre = std::pow(1.0 - a2, T);
    double acc = 0.0;
    for (size_t i = 0; i < rule.count(); ++i) {
        double d = std::abs(1.0 - hermitian_inner(rule.point(i), {a.data(), a.size()}));
        acc += cache.weighted[i] * std::pow(d, -double(n) - T);
    }
    return pre * acc;
}

}  // namespace

NormReport carleson_kernel_norm(const HoloFunction& f, double q, double alpha, double T,
                                const BallRule& rule, const CarlesonGrid& grid) {
    if (!(T > 0.0)) throw std::invalid_argument("carleson_kernel_norm: T > 0 required");
    if (!(q > 0.0)) throw std::invalid_argument("carleson_kernel_norm: q > 0 required");
    const int n = rule.dim();
    NodeCache cache(rule, f, q, n + alpha, 2.0);

    TentCandidates cand = carleson_candidates(n, grid);
    double best = 0.0;
    CVec best_a = cand.points.front();
    for (const CVec& a : cand.points) {
        double v = kernel_test_integral(cache, rule, n, T, a);
        if (v > best) {
            best = v;
            best_a = a;
        }
    }
    for (int round = 0; round < grid.refine_rounds; ++round) {
        for (const CVec& a : refine_candidates(best_a, n, 0.5 / double(round + 1))) {
            double v = kernel_test_integral(cache, rule, n, T, a);
            if (v > best) {
                best = v;
                best_a = a;
            }
        }
    }

    NormReport rep;
    rep.value = std::pow(best, 1.0 / q);
    rep.eps_trunc = rule.eps_trunc();
    rep.resolution = rule.describe() + "+kernelgrid";
    return rep;
}

std::vector<std::pair<double, double>> vanishing_carleson_profile(
    const HoloFunction& f, double q, double alpha, double T, const BallRule& rule,
    const std::vector<double>& radii, const CarlesonGrid& grid) {
    const int n = rule.dim();
    NodeCache cache(rule, f, q, n + alpha, 2.0);
    TentCandidates cand = carleson_candidates(n, grid);

    std::vector<std::pair<double, double>> profile;
    for (double rad : radii) {
        double best = 0.0;
        for (const CVec& a : cand.points) {
            if (euclid_norm({a.data(), a.size()}) < rad) continue;
            best = std::max(best, kernel_test_integral(cache, rule, n, T, a));
        }
        profile.emplace_back(rad, best);
    }
    return profile;
}

// --------------------------------------------------------------------------

std::vector<double> hardy_sphere_means(const HoloFunction& f, double p,
                                       const SphereRule& sphere, const RadialMesh& radii) {
    std::vector<double> out;
    out.reserve(radii.radii.size());
    CVec scaled(size_t(f.dim()));
    for (double r : radii.radii) {
        std::vector<double> terms;
        terms.reserve(sphere.count());
        sphere.for_each([&](std::span<const Cx> zeta, double w) {
            for (size_t j = 0; j < scaled.size(); ++j) scaled[j] = r * zeta[j];
            terms.push_back(w * std::pow(std::abs(f.evaluate({scaled.data(), scaled.size()})), p));
        });
        out.push_back(pairwise_sum(terms));
    }
    return out;
}

NormReport hardy_norm(const HoloFunction& f, double p, const SphereRule& sphere,
                      const RadialMesh& radii) {
    if (!(p > 0.0)) throw std::invalid_argument("hardy_norm: p > 0 required");
    auto means = hardy_sphere_means(f, p, sphere, radii);
    double best = 0.0;
    size_t arg = 0;
    for (size_t i = 0; i < means.size(); ++i)
        if (means[i] > best) {
            best = means[i];
            arg = i;
        }
    NormReport rep;
    rep.value = std::pow(best, 1.0 / p);
    rep.eps_trunc = radii.eps_trunc;
    rep.resolution = sphere.describe() + "+radii";
    std::ostringstream os;
    os << "argmax_radius=" << (radii.radii.empty() ? 0.0 : radii.radii[arg]);
    rep.notes = os.str();
    return rep;
}

NormReport bergman_norm(const HoloFunction& f, double p, double beta, const BallRule& rule) {
    if (!(p > 0.0)) throw std::invalid_argument("bergman_norm: p > 0 required");
    if (!(beta > -1.0)) throw std::invalid_argument("bergman_norm: beta > -1 required");
    NormReport rep;
    rep.eps_trunc = rule.eps_trunc();
    if (p == 2.0 && f.is_polynomial()) {
        double acc = 0.0;
        for (const auto& [m, c] : f.poly().coefficients())
            acc += std::norm(c) * monomial_weighted_square_integral(f.dim(), m, beta);
        rep.value = std::sqrt(acc);
        rep.eps_trunc = 0.0;
        rep.resolution = "exact-coefficient";
        return rep;
    }
    double v = rule.integrate(beta, [&](std::span<const Cx> z) {
        return std::pow(std::abs(f.evaluate(z)), p);
    });
    rep.value = std::pow(v, 1.0 / p);
    rep.resolution = rule.describe();
    return rep;
}

NormReport bloch_norm(const HoloFunction& f, double eps_trunc, const SupGrid& grid) {
    auto g = [&](std::span<const Cx> z) {
        return (1.0 - norm_sq(z)) * euclid_norm(f.gradient(z));
    };
    SupResult s = sup_search(g, SupDomain::ball(f.dim(), eps_trunc), grid);
    CVec zero(size_t(f.dim()), Cx(0.0));
    NormReport rep;
    rep.value = s.value + std::abs(f.evaluate({zero.data(), zero.size()}));
    rep.eps_trunc = eps_trunc;
    rep.resolution = "supgrid";
    std::ostringstream os;
    os << "basins=" << s.basins;
    rep.notes = os.str();
    return rep;
}

NormReport bt_norm(const HoloFunction& f, double p, const FracParams& fp,
                   const Aperture& gamma, const SphereRule& sphere, double eps_trunc,
                   const SupGrid& grid) {
    if (!(p > 1.0)) throw std::invalid_argument("bt_norm: p > 1 required");
    if (!(fp.t > 0.0)) throw std::invalid_argument("bt_norm: t > 0 required");
    FracResult rf = apply_frac(fp, f, FracMode::derivative);
    auto g = [&](std::span<const Cx> z) {
        return std::pow(1.0 - norm_sq(z), fp.t) * std::abs(rf.f.evaluate(z));
    };
    NormReport rep = tent_sup_norm(g, f.dim(), p, gamma, sphere, eps_trunc, grid);
    if (rf.truncated_atoms > 0) {
        std::ostringstream os;
        os << rep.notes << (rep.notes.empty() ? "" : ";")
           << "truncated_atoms=" << rf.truncated_atoms << ",tail<=" << rf.tail_bound;
        rep.notes = os.str();
    }
    return rep;
}

double bt_tail(const HoloFunction& f, double p, const FracParams& fp, double r,
               const Aperture& gamma, const SphereRule& sphere, double eps_trunc,
               const SupGrid& grid) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("bt_tail: r in (0,1) required");
    FracResult rf = apply_frac(fp, f, FracMode::derivative);
    const double r2 = r * r;
    auto g = [&](std::span<const Cx> z) {
        double z2 = norm_sq(z);
        if (z2 <= r2) return 0.0;  // annulus indicator
        return std::pow(1.0 - z2, fp.t) * std::abs(rf.f.evaluate(z));
    };
    return tent_sup_norm(g, f.dim(), p, gamma, sphere, eps_trunc, grid).value;
}

// --------------------------------------------------------------------------
// Pairings

Cx pairing_exact(const TaylorPoly& f, const TaylorPoly& g, double alpha) {
    const int n = f.dim();
    Cx acc = 0.0;
    for (const auto& [m, a] : f.coefficients()) {
        Cx b = g.coefficient(m);
        if (b == Cx(0.0)) continue;
        acc += a * std::conj(b) * monomial_weighted_square_integral(n, m, n + alpha);
    }
    return acc;
}

Cx pairing_numeric(const HoloFunction& f, const HoloFunction& g, double alpha,
                   const BallRule& rule) {
    const double w = double(f.dim()) + alpha;
    return rule.integrate(w, [&](std::span<const Cx> z) {
        return f.evaluate(z) * std::conj(g.evaluate(z));
    });
}

PairingLimit pairing_limit(const HoloFunction& f, const HoloFunction& g, double alpha,
                           const std::vector<double>& r_schedule, const BallRule& rule,
                           double tol) {
    PairingLimit out;
    for (double r : r_schedule)
        out.profile.emplace_back(r, pairing_numeric(f.dilate(r), g, alpha, rule));
    if (out.profile.empty()) return out;
    out.value = out.profile.back().second;
    if (out.profile.size() < 2) return out;

    // The dilation error is linear in the gap 1-r to first order, so the
    // Richardson step v_k + (v_k - v_{k-1}) g_k / (g_{k-1} - g_k) removes it;
    // convergence is declared on the extrapolated sequence.
    Cx prev_extrap = 0.0;
    bool have_prev = false;
    for (size_t k = 1; k < out.profile.size(); ++k) {
        double g0 = 1.0 - out.profile[k - 1].first;
        double g1 = 1.0 - out.profile[k].first;
        if (g0 <= g1) continue;
        Cx v0 = out.profile[k - 1].second, v1 = out.profile[k].second;
        Cx extrap = v1 + (v1 - v0) * (g1 / (g0 - g1));
        if (have_prev && std::abs(extrap - prev_extrap) < tol) out.converged = true;
        prev_extrap = extrap;
        have_prev = true;
        out.value = extrap;
    }
    return out;
}

Cx mixed_pairing_exact(const MixedPoly& F, const MixedPoly& G, double beta) {
    // Only z^{a+d} conj(z)^{b+c} with a+d = b+c survive the angular
    // integration; each contributes the monomial square integral.
    const int n = F.dim();
    Cx acc = 0.0;
    for (const auto& [ab, cf] : F.terms()) {
        for (const auto& [cd, cg] : G.terms()) {
            std::vector<int> hol(size_t(n), 0), anti(size_t(n), 0);
            bool match = true;
            for (int j = 0; j < n; ++j) {
                hol[size_t(j)] = ab.first.m[size_t(j)] + cd.second.m[size_t(j)];
                anti[size_t(j)] = ab.second.m[size_t(j)] + cd.first.m[size_t(j)];
                if (hol[size_t(j)] != anti[size_t(j)]) match = false;
            }
            if (!match) continue;
            acc += cf * std::conj(cg) *
                   monomial_weighted_square_integral(n, MultiIndex(hol), beta);
        }
    }
    return acc;
}

double embed_alpha_prime(double q, int n, double alpha) {
    return alpha + (1.0 / q - 1.0) * (double(n) + 1.0 + alpha);
}

double embed_bergman_exponent(double p, double q, int n, double alpha) {
    return (1.0 / p - 1.0) * double(n) + (double(n) + 1.0 + alpha) / q - 1.0;
}

}  // namespace tentlab
