#include "tentlab/quadrature.hpp"

#include <algorithm>
#include <sstream>

namespace tentlab {

// Golub-Welsch is overkill at these sizes; Newton on P_k from the asymptotic
// initial guess converges in a few steps and is fully deterministic.
void gauss_legendre(int k, double a, double b, std::vector<double>& x,
                    std::vector<double>& w) {
    x.assign(size_t(k), 0.0);
    w.assign(size_t(k), 0.0);
    const int m = (k + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double t = std::cos(kPi * (double(i) + 0.75) / (double(k) + 0.5));
        double p0 = 0.0, p1 = 0.0, dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = 0.0;
            for (int j = 0; j < k; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * t * p1 - double(j) * p2) / double(j + 1);
            }
            dp = double(k) * (t * p0 - p1) / (t * t - 1.0);
            double t1 = t;
            t = t1 - p0 / dp;
            if (std::abs(t - t1) < 1e-15) break;
        }
        x[size_t(i)] = -t;
        x[size_t(k - 1 - i)] = t;
        double wi = 2.0 / ((1.0 - t * t) * dp * dp);
        w[size_t(i)] = wi;
        w[size_t(k - 1 - i)] = wi;
    }
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < k; ++i) {
        x[size_t(i)] = mid + half * x[size_t(i)];
        w[size_t(i)] *= half;
    }
}

RadialMesh RadialMesh::geometric(double eps_trunc, double lambda_geo) {
    if (!(eps_trunc > 0.0 && eps_trunc <= 0.01))
        throw std::invalid_argument("RadialMesh: eps_trunc in (0, 0.01] required");
    if (!(lambda_geo > 0.0 && lambda_geo < 1.0))
        throw std::invalid_argument("RadialMesh: lambda_geo in (0,1) required");
    RadialMesh m;
    m.lambda_geo = lambda_geo;
    m.eps_trunc = eps_trunc;
    double gap = lambda_geo;
    while (gap > eps_trunc) {
        m.radii.push_back(1.0 - gap);
        gap *= lambda_geo;
    }
    m.radii.push_back(1.0 - eps_trunc);
    return m;
}

// --------------------------------------------------------------------------
// SphereRule

SphereRule SphereRule::make(int n, int resolution) {
    if (resolution < 1) throw std::invalid_argument("sphere_rule: resolution >= 1");
    if (n == 1) {
        SphereRule r;
        r.n_ = 1;
        r.n_theta1_ = resolution;
        r.count_ = size_t(resolution);
        return r;
    }
    if (n == 2)
        return make_product(resolution, resolution, std::max(4, resolution / 2));
    throw std::invalid_argument("sphere_rule: only n in {1,2} supported");
}

SphereRule SphereRule::make_product(int n_theta1, int n_theta2, int n_x) {
    SphereRule r;
    r.n_ = 2;
    r.n_theta1_ = n_theta1;
    r.n_theta2_ = n_theta2;
    gauss_legendre(n_x, 0.0, 1.0, r.x_nodes_, r.x_weights_);
    r.count_ = size_t(n_theta1) * size_t(n_theta2) * size_t(n_x);
    return r;
}

std::string SphereRule::describe() const {
    std::ostringstream os;
    if (n_ == 1)
        os << "sphere[n=1,theta=" << n_theta1_ << "]";
    else
        os << "sphere[n=2,theta1=" << n_theta1_ << ",theta2=" << n_theta2_
           << ",x=" << x_nodes_.size() << "]";
    return os.str();
}

const std::vector<Cx>& SphereRule::coords() const {
    if (cached_coords_.empty() && count_ > 0) {
        cached_coords_.reserve(count_ * size_t(n_));
        cached_weights_.reserve(count_);
        for_each([&](std::span<const Cx> node, double w) {
            for (const Cx& c : node) cached_coords_.push_back(c);
            cached_weights_.push_back(w);
        });
    }
    return cached_coords_;
}

const std::vector<double>& SphereRule::weights() const {
    coords();
    return cached_weights_;
}

// --------------------------------------------------------------------------
// BallRule

BallRuleOptions BallRuleOptions::smooth(double eps) {
    BallRuleOptions o;
    o.eps_trunc = eps;
    o.angular_base = 64;
    o.angular_scale = 0.0;  // no boundary refinement
    o.angular_cap = 64;
    o.n2_theta2 = 16;
    o.n2_x = 8;
    o.n2_theta1_cap = 16;
    return o;
}

BallRuleOptions BallRuleOptions::standard(double eps) {
    BallRuleOptions o;
    o.eps_trunc = eps;
    o.angular_base = 512;  // region windows are wide at inner radii
    return o;
}

BallRuleOptions BallRuleOptions::boundary(double eps) {
    BallRuleOptions o;
    o.eps_trunc = eps;
    o.angular_base = 512;
    o.angular_scale = 8.0;
    o.angular_cap = 8192;
    o.n2_theta1_cap = 96;
    return o;
}

BallRule BallRule::make(int n, const BallRuleOptions& opt) {
    return make(n, RadialMesh::geometric(opt.eps_trunc, opt.lambda_geo), opt);
}

BallRule BallRule::make(int n, const RadialMesh& mesh, const BallRuleOptions& opt) {
    if (n != 1 && n != 2) throw std::invalid_argument("ball_rule: only n in {1,2}");
    if (mesh.radii.empty()) throw std::invalid_argument("ball_rule: empty mesh");
    BallRule rule;
    rule.n_ = n;
    rule.eps_trunc_ = 1.0 - mesh.radii.back();

    std::vector<double> rx, rw;
    double lo = 0.0;
    size_t shells = 0;
    for (double hi : mesh.radii) {
        if (!(hi > lo)) throw std::invalid_argument("ball_rule: mesh not increasing");
        std::vector<double> gx, gw;
        gauss_legendre(opt.radial_per_segment, lo, hi, gx, gw);
        for (size_t i = 0; i < gx.size(); ++i) {
            const double r = gx[i];
            // dV_n = 2n r^{2n-1} dr dsigma with both measures normalized.
            const double wr = gw[i] * 2.0 * n * std::pow(r, 2 * n - 1);
            int na = opt.angular_base;
            if (opt.angular_scale > 0.0) {
                double want = opt.angular_scale / (1.0 - r);
                na = int(std::min<double>(opt.angular_cap,
                                          std::max<double>(na, std::ceil(want))));
            }
            SphereRule sr = (n == 1)
                ? SphereRule::make(1, na)
                : SphereRule::make_product(std::min(na, opt.n2_theta1_cap),
                                           opt.n2_theta2, opt.n2_x);
            // Deterministic golden-ratio shell rotation: region and tent
            // boundaries cut every shell, and without it the indicator
            // quantization error is phase-locked across shells instead of
            // averaging out.
            const double golden = 0.6180339887498949;
            const double phase = 2.0 * kPi * std::fmod(double(shells) * golden, 1.0) /
                                 double(std::max(na, 1));
            const Cx rot(std::cos(phase), std::sin(phase));
            sr.for_each([&](std::span<const Cx> zeta, double ws) {
                for (const Cx& c : zeta) rule.coords_.push_back(r * rot * c);
                rule.w_.push_back(wr * ws);
                rule.omz2_.push_back(1.0 - r * r);
            });
            ++shells;
        }
        lo = hi;
    }
    std::ostringstream os;
    os << "ball[n=" << n << ",eps=" << rule.eps_trunc_ << ",shells=" << shells
       << ",nodes=" << rule.w_.size() << "]";
    rule.desc_ = os.str();
    return rule;
}

BallRule BallRule::make_sampled(int n, size_t count, double eps_trunc, uint64_t seed) {
    if (n != 1 && n != 2) throw std::invalid_argument("ball_rule: only n in {1,2}");
    BallRule rule;
    rule.n_ = n;
    rule.eps_trunc_ = eps_trunc;
    rule.seed_ = seed;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double R = 1.0 - eps_trunc;
    const double w = std::pow(R, 2.0 * n) / double(count);
    for (size_t i = 0; i < count; ++i) {
        const double r = R * std::pow(u(rng), 1.0 / (2.0 * n));
        double t1 = 2.0 * kPi * u(rng);
        if (n == 1) {
            rule.coords_.push_back(r * Cx(std::cos(t1), std::sin(t1)));
        } else {
            double t2 = 2.0 * kPi * u(rng);
            double x = u(rng);
            rule.coords_.push_back(r * std::sqrt(1.0 - x) * Cx(std::cos(t1), std::sin(t1)));
            rule.coords_.push_back(r * std::sqrt(x) * Cx(std::cos(t2), std::sin(t2)));
        }
        rule.w_.push_back(w);
        rule.omz2_.push_back(1.0 - r * r);
    }
    std::ostringstream os;
    os << "ball[n=" << n << ",sampled=" << count << ",eps=" << eps_trunc
       << ",seed=" << seed << "]";
    rule.desc_ = os.str();
    return rule;
}

std::string BallRule::describe() const { return desc_; }

RegionIntegral region_integral(const std::function<Cx(std::span<const Cx>)>& f,
                               const SpherePoint& zeta, const Aperture& gamma,
                               double alpha, const BallRule& rule) {
    RegionIntegral out;
    std::vector<Cx> terms;
    auto zs = zeta.span();
    for (size_t i = 0; i < rule.count(); ++i) {
        auto z = rule.point(i);
        const double omz2 = rule.one_minus_abs2(i);
        if (!in_approach_region(zs, gamma.gamma, z, omz2)) continue;
        terms.push_back(rule.weight(i) * std::pow(omz2, alpha) * f(z));
        ++out.contributing_nodes;
    }
    if (out.contributing_nodes == 0)
        throw std::runtime_error("region_integral: no quadrature node in the region");
    out.value = pairwise_sum(terms);
    return out;
}

// --------------------------------------------------------------------------
// sup search

SupDomain SupDomain::ball(int n, double eps_trunc) {
    SupDomain d;
    d.kind = Kind::ball;
    d.n = n;
    d.eps_trunc = eps_trunc;
    return d;
}

SupDomain SupDomain::region(const SpherePoint& zeta, double gamma, double eps_trunc) {
    SupDomain d;
    d.kind = Kind::region;
    d.n = zeta.dim();
    d.eps_trunc = eps_trunc;
    d.zeta = zeta;
    d.gamma = gamma;
    return d;
}

SupDomain SupDomain::sphere(int n) {
    SupDomain d;
    d.kind = Kind::sphere;
    d.n = n;
    return d;
}

namespace {

// Intrinsic coordinates: n=1 ball (r, t); n=2 ball (r, x, t1, t2); sphere
// drops r. Membership failures map to -inf so refinement cannot escape.
struct SupProblem {
    const SupDomain& dom;
    const std::function<double(std::span<const Cx>)>& g;
    int coords;

    explicit SupProblem(const SupDomain& d, const std::function<double(std::span<const Cx>)>& gg)
        : dom(d), g(gg) {
        coords = (d.kind == SupDomain::Kind::sphere) ? (d.n == 1 ? 1 : 3)
                                                     : (d.n == 1 ? 2 : 4);
    }

    void to_point(const std::vector<double>& c, CVec& z) const {
        z.resize(size_t(dom.n));
        bool sphere = dom.kind == SupDomain::Kind::sphere;
        double r = sphere ? 1.0 : c[0];
        size_t k = sphere ? 0 : 1;
        if (dom.n == 1) {
            z[0] = r * Cx(std::cos(c[k]), std::sin(c[k]));
        } else {
            double x = std::clamp(c[k], 0.0, 1.0);
            z[0] = r * std::sqrt(1.0 - x) * Cx(std::cos(c[k + 1]), std::sin(c[k + 1]));
            z[1] = r * std::sqrt(x) * Cx(std::cos(c[k + 2]), std::sin(c[k + 2]));
        }
    }

    double eval(const std::vector<double>& c, CVec& scratch) const {
        bool sphere = dom.kind == SupDomain::Kind::sphere;
        if (!sphere) {
            if (c[0] < 0.0 || c[0] > 1.0 - dom.eps_trunc) return -1e300;
        }
        if (dom.n == 2) {
            size_t k = sphere ? 0 : 1;
            if (c[k] < 0.0 || c[k] > 1.0) return -1e300;
        }
        to_point(c, scratch);
        if (dom.kind == SupDomain::Kind::region) {
            double omz2 = 1.0 - norm_sq({scratch.data(), scratch.size()});
            if (!in_approach_region(dom.zeta.span(), dom.gamma,
                                    {scratch.data(), scratch.size()}, omz2))
                return -1e300;
        }
        return g({scratch.data(), scratch.size()});
    }
};

}  // namespace

SupResult sup_search(const std::function<double(std::span<const Cx>)>& g,
                     const SupDomain& domain, const SupGrid& grid) {
    SupProblem prob(domain, g);
    const bool sphere = domain.kind == SupDomain::Kind::sphere;

    // Graded radial seeds: denser toward the boundary where everything peaks.
    std::vector<double> radii;
    if (!sphere) {
        radii.push_back(0.0);
        const double top = 1.0 - domain.eps_trunc;
        for (int i = 0; i < grid.radial; ++i) {
            double gap = std::pow(domain.eps_trunc, double(i + 1) / double(grid.radial));
            radii.push_back(std::min(top, 1.0 - gap));
        }
        radii.push_back(top);
    }

    std::vector<std::vector<double>> seeds;
    auto push_angles = [&](double r) {
        if (domain.n == 1) {
            for (int j = 0; j < grid.angular; ++j) {
                double t = 2.0 * kPi * double(j) / double(grid.angular);
                if (sphere)
                    seeds.push_back({t});
                else
                    seeds.push_back({r, t});
            }
        } else {
            int na = std::max(4, grid.angular / 2);
            for (int jx = 0; jx <= 4; ++jx) {
                double x = double(jx) / 4.0;
                for (int j1 = 0; j1 < na; ++j1) {
                    double t1 = 2.0 * kPi * double(j1) / double(na);
                    for (int j2 = 0; j2 < na; ++j2) {
                        double t2 = 2.0 * kPi * double(j2) / double(na);
                        if (sphere)
                            seeds.push_back({x, t1, t2});
                        else
                            seeds.push_back({r, x, t1, t2});
                    }
                }
            }
        }
    };
    if (sphere) {
        push_angles(1.0);
    } else {
        for (double r : radii) push_angles(r);
        if (domain.kind == SupDomain::Kind::region) {
            // The radial ray toward the vertex lies in the region for
            // gamma >= 2 at every radius; it guards against pinched regions
            // the coarse grid misses.
            for (double r : radii) {
                if (r == 0.0) continue;
                std::vector<double> c;
                if (domain.n == 1) {
                    c = {r, std::arg(domain.zeta.zeta[0])};
                } else {
                    double x = std::norm(domain.zeta.zeta[1]);
                    c = {r, x, std::arg(domain.zeta.zeta[0]), std::arg(domain.zeta.zeta[1])};
                }
                seeds.push_back(std::move(c));
            }
        }
    }

    CVec scratch;
    double best = -1e300;
    std::vector<double> best_c;
    std::vector<std::pair<double, std::vector<double>>> top;
    for (const auto& s : seeds) {
        double v = prob.eval(s, scratch);
        if (v > best) {
            best = v;
            best_c = s;
        }
        top.emplace_back(v, s);
    }
    if (best_c.empty()) return {};

    std::stable_sort(top.begin(), top.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    const size_t keep = std::min<size_t>(top.size(), 5);

    // Local coordinate-wise grid refinement with shrinking windows.
    auto refine = [&](std::vector<double> c, double v0) {
        double v = v0;
        std::vector<double> widths(size_t(prob.coords));
        for (int k = 0; k < prob.coords; ++k) {
            bool is_radius = !sphere && k == 0;
            bool is_x = domain.n == 2 && k == (sphere ? 0 : 1);
            if (is_radius)
                widths[size_t(k)] = std::max(1e-6, (1.0 - c[0]) * 0.9);
            else if (is_x)
                widths[size_t(k)] = 0.25;
            else
                widths[size_t(k)] = kPi / double(grid.angular);
        }
        for (int round = 0; round < grid.refine_rounds; ++round) {
            for (int k = 0; k < prob.coords; ++k) {
                std::vector<double> cand = c;
                for (int j = -grid.refine_points; j <= grid.refine_points; ++j) {
                    if (j == 0) continue;
                    cand[size_t(k)] =
                        c[size_t(k)] + widths[size_t(k)] * double(j) / double(grid.refine_points);
                    double vv = prob.eval(cand, scratch);
                    if (vv > v) {
                        v = vv;
                        c = cand;
                    }
                }
            }
            for (double& wd : widths) wd *= 0.25;
        }
        return std::make_pair(v, c);
    };

    SupResult out;
    std::vector<CVec> finals;
    for (size_t i = 0; i < keep; ++i) {
        if (top[i].first <= -1e299) continue;
        auto [v, c] = refine(top[i].second, top[i].first);
        CVec pt;
        prob.to_point(c, pt);
        finals.push_back(pt);
        if (out.argmax.empty() || v > out.value) {
            out.value = v;
            out.argmax = pt;
        }
    }
    // Count distinct refined maximizers as a confidence signal.
    int basins = 0;
    for (size_t i = 0; i < finals.size(); ++i) {
        bool dup = false;
        for (size_t j = 0; j < i; ++j) {
            double d = 0;
            for (size_t k = 0; k < finals[i].size(); ++k)
                d += std::norm(finals[i][k] - finals[j][k]);
            if (std::sqrt(d) < 1e-4) dup = true;
        }
        if (!dup) ++basins;
    }
    out.basins = std::max(1, basins);
    return out;
}

}  // namespace tentlab
