#include "tentlab/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace tentlab {

void RatioBandResult::finalize() {
    if (skipped) {
        pass = false;
        return;
    }
    if (ratios.empty()) {
        pass = false;
        if (reason.empty()) reason = "no ratios computed";
        return;
    }
    band_min = *std::min_element(ratios.begin(), ratios.end());
    band_max = *std::max_element(ratios.begin(), ratios.end());
    max_over_min = band_min > 0.0 ? band_max / band_min
                                  : std::numeric_limits<double>::infinity();
    // Regress log-ratio on log(boundary parameter); degenerate parameter
    // vectors (constant) yield slope 0 and the band alone decides.
    std::vector<double> lx, ly;
    for (size_t i = 0; i < ratios.size(); ++i) {
        if (member_param.size() != ratios.size()) break;
        if (!(member_param[i] > 0.0) || !(ratios[i] > 0.0)) continue;
        lx.push_back(std::log(member_param[i]));
        ly.push_back(std::log(ratios[i]));
    }
    slope = regression_slope(lx, ly);
    pass = extra_ok && max_over_min < band_tol && std::abs(slope) < slope_tol;
    if (!pass && reason.empty()) {
        std::ostringstream os;
        if (!(max_over_min < band_tol)) os << "band " << max_over_min << " >= " << band_tol;
        if (!(std::abs(slope) < slope_tol))
            os << (os.str().empty() ? "" : "; ") << "slope " << slope << " >= " << slope_tol;
        if (!extra_ok) os << (os.str().empty() ? "" : "; ") << "side condition failed";
        reason = os.str();
    }
}

nlohmann::json RatioBandResult::to_json() const {
    return {{"name", name},
            {"params", params},
            {"ratios", ratios},
            {"member_param", member_param},
            {"band_min", band_min},
            {"band_max", band_max},
            {"max_over_min", max_over_min},
            {"slope", slope},
            {"band_tol", band_tol},
            {"slope_tol", slope_tol},
            {"pass", pass},
            {"skipped", skipped},
            {"reason", reason},
            {"notes", notes}};
}

std::string RatioBandResult::csv_header() {
    return "name,pass,skipped,band_min,band_max,max_over_min,slope,reason";
}

std::string RatioBandResult::csv_row() const {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g", band_min, band_max,
                  max_over_min, slope);
    std::string r = reason;
    std::replace(r.begin(), r.end(), ',', ';');
    return name + "," + (pass ? "1" : "0") + "," + (skipped ? "1" : "0") + "," + buf + "," + r;
}

namespace {

RatioBandResult skip(std::string name, std::string why, nlohmann::json params) {
    RatioBandResult r;
    r.name = std::move(name);
    r.params = std::move(params);
    r.skipped = true;
    r.reason = std::move(why);
    return r;
}

BallRule boundary_rule(int n, double eps) {
    return BallRule::make(n, n == 1 ? BallRuleOptions::boundary(eps)
                                    : BallRuleOptions::standard(eps));
}

SphereRule outer_sphere(int n, const SuiteDefaults& d) {
    return SphereRule::make(n, n == 1 ? d.sphere_res : d.sphere_res_n2);
}

CVec e1_point(int n, double rho) {
    CVec z(size_t(n), Cx(0.0));
    z[0] = rho;
    return z;
}

}  // namespace

RatioBandResult check_forelli_rudin(int n, double t, double s,
                                    const std::vector<double>& gap_schedule,
                                    const SuiteDefaults& d) {
    nlohmann::json params{{"n", n}, {"t", t}, {"s", s}, {"gaps", gap_schedule}};
    if (!(t > -1.0)) return skip("forelli_rudin", "hypothesis t > -1 violated", params);
    if (!(s > 0.0)) return skip("forelli_rudin", "hypothesis s > 0 violated", params);

    RatioBandResult res;
    res.name = "forelli_rudin";
    res.params = params;
    res.band_tol = d.band_tol;
    res.slope_tol = d.slope_tol;

    BallRule rule = boundary_rule(n, d.eps_trunc);
    const double kexp = double(n) + 1.0 + t + s;
    for (double gap : gap_schedule) {
        CVec z = e1_point(n, 1.0 - gap);
        std::span<const Cx> zs{z.data(), z.size()};
        double integral = rule.integrate(t, [&](std::span<const Cx> u) {
            return std::pow(std::abs(1.0 - hermitian_inner(zs, u)), -kexp);
        });
        double omz2 = 1.0 - norm_sq(zs);
        res.ratios.push_back(integral * std::pow(omz2, s));
        res.member_param.push_back(gap);
    }
    res.finalize();
    return res;
}

RatioBandResult check_fr_general(int n, double s, double r, double t, int branch,
                                 const std::vector<double>& gap_schedule, bool split_poles,
                                 const SuiteDefaults& d) {
    nlohmann::json params{{"n", n},        {"s", s},
                          {"r", r},        {"t", t},
                          {"branch", branch}, {"split_poles", split_poles},
                          {"gaps", gap_schedule}};
    const double sn1 = s + double(n) + 1.0;
    if (!(s > -1.0)) return skip("fr_general", "hypothesis s > -1 violated", params);
    if (branch == 1) {
        if (!(r > 0.0 && t > 0.0 && sn1 > r && sn1 > t && r + t - s > double(n) + 1.0))
            return skip("fr_general", "branch 1 hypotheses violated", params);
    } else if (branch == 2) {
        if (!(r > 0.0 && t > 0.0 && t > sn1 && sn1 > r))
            return skip("fr_general", "branch 2 hypotheses violated", params);
    } else {
        return skip("fr_general", "branch must be 1 or 2", params);
    }

    RatioBandResult res;
    res.name = "fr_general";
    res.params = params;
    res.band_tol = d.band_tol;
    res.slope_tol = d.slope_tol;

    BallRule rule = boundary_rule(n, d.eps_trunc);
    for (double gap : gap_schedule) {
        CVec z = e1_point(n, 1.0 - gap);
        CVec u(size_t(n), Cx(0.0));
        if (split_poles) {
            if (n == 1)
                u[0] = -(1.0 - gap);
            else
                u[1] = 1.0 - gap;
        } else {
            u = z;
        }
        std::span<const Cx> zs{z.data(), z.size()}, us{u.data(), u.size()};
        double integral = rule.integrate(s, [&](std::span<const Cx> w) {
            return std::pow(std::abs(1.0 - hermitian_inner(us, w)), -r) *
                   std::pow(std::abs(1.0 - hermitian_inner(zs, w)), -t);
        });
        double dzu = std::abs(1.0 - hermitian_inner(zs, us));
        double bound = (branch == 1)
                           ? std::pow(dzu, -(r + t - s - double(n) - 1.0))
                           : std::pow(dzu, -r) *
                                 std::pow(1.0 - norm_sq(zs), -(t - s - double(n) - 1.0));
        res.ratios.push_back(integral / bound);
        res.member_param.push_back(gap);
    }
    res.finalize();
    return res;
}

RatioBandResult check_lemma_gamma(int n, double s_exp, double lambda,
                                  const std::vector<double>& gap_schedule,
                                  const SuiteDefaults& d) {
    nlohmann::json params{
        {"n", n}, {"s", s_exp}, {"lambda", lambda}, {"gaps", gap_schedule}};
    if (!(s_exp > 0.0)) return skip("lemma_gamma", "s > 0 required", params);
    if (!(lambda > double(n) * std::max(1.0, 1.0 / s_exp)))
        return skip("lemma_gamma", "hypothesis lambda > n max(1, 1/s) violated", params);

    RatioBandResult res;
    res.name = "lemma_gamma";
    res.params = params;
    res.band_tol = d.band_tol;
    res.slope_tol = d.slope_tol;

    // Discrete point masses: the inner integral is exact, the region mass is
    // an indicator sum; the sphere resolution must resolve the smallest
    // slice.
    double min_gap = *std::min_element(gap_schedule.begin(), gap_schedule.end());
    int resolution = n == 1 ? std::max(d.sphere_res, int(std::ceil(48.0 / min_gap)))
                            : d.sphere_res_n2;
    SphereRule sphere = SphereRule::make(n, resolution);
    const double golden = kPi * (3.0 - std::sqrt(5.0));

    int idx = 0;
    for (double gap : gap_schedule) {
        double t0 = golden * idx++;
        CVec zj(size_t(n), Cx(0.0));
        zj[0] = (1.0 - gap) * Cx(std::cos(t0), std::sin(t0));
        std::span<const Cx> zjs{zj.data(), zj.size()};
        double omz2 = 1.0 - norm_sq(zjs);
        double lhs = 0.0, rhs = 0.0;
        sphere.for_each([&](std::span<const Cx> zeta, double w) {
            double kern = std::pow(omz2 / std::abs(1.0 - hermitian_inner(zjs, zeta)), lambda);
            lhs += w * std::pow(kern, s_exp);
            if (in_approach_region(zeta, d.gamma, zjs, omz2)) rhs += w;  // 1^s
        });
        if (rhs <= 0.0) {
            res.skipped = true;
            res.reason = "slice unresolved at the sphere resolution";
            return res;
        }
        res.ratios.push_back(lhs / rhs);
        res.member_param.push_back(gap);
    }
    res.finalize();
    return res;
}

Equivalence equivalence_from_string(const std::string& s) {
    if (s == "HTchar") return Equivalence::HTchar;
    if (s == "BTchar") return Equivalence::BTchar;
    if (s == "CTchar") return Equivalence::CTchar;
    if (s == "area") return Equivalence::area;
    if (s == "embed") return Equivalence::embed;
    if (s == "embed2") return Equivalence::embed2;
    if (s == "HTinf_is_Hardy") return Equivalence::HTinf_is_Hardy;
    if (s == "HTpp_is_Bergman") return Equivalence::HTpp_is_Bergman;
    throw std::invalid_argument("unknown equivalence name: " + s);
}

namespace {

std::string equivalence_name(Equivalence e) {
    switch (e) {
        case Equivalence::HTchar: return "HTchar";
        case Equivalence::BTchar: return "BTchar";
        case Equivalence::CTchar: return "CTchar";
        case Equivalence::area: return "area";
        case Equivalence::embed: return "embed";
        case Equivalence::embed2: return "embed2";
        case Equivalence::HTinf_is_Hardy: return "HTinf_is_Hardy";
        case Equivalence::HTpp_is_Bergman: return "HTpp_is_Bergman";
    }
    return "?";
}

}  // namespace

RatioBandResult check_equivalence(Equivalence which, const EquivParams& ep,
                                  const TestFamily& family, const SuiteDefaults& d) {
    const std::string name = "equivalence_" + equivalence_name(which);
    nlohmann::json params{{"n", ep.n},     {"p", ep.p},   {"q", ep.q}, {"alpha", ep.alpha},
                          {"s", ep.s},     {"t", ep.t},   {"s2", ep.s2}, {"t2", ep.t2},
                          {"family", family.name}, {"family_seed", family.seed}};

    RatioBandResult res;
    res.name = name;
    res.params = params;
    res.band_tol = d.band_tol;
    res.slope_tol = d.slope_tol;

    const int n = ep.n;
    SphereRule sphere = outer_sphere(n, d);
    BallRule rule = boundary_rule(n, d.eps_trunc);

    switch (which) {
        case Equivalence::HTchar: {
            if (!(ep.q * ep.t + n + 1 + ep.alpha > 0.0))
                return skip(name, "hypothesis qt+n+1+alpha > 0 violated", params);
            FracParams fp(ep.s, ep.t, n);
            SpaceParams in(n, ep.p, ep.q, ep.alpha, d.gamma);
            SpaceParams out(n, ep.p, ep.q, ep.alpha + ep.q * ep.t, d.gamma);
            for (size_t i = 0; i < family.size(); ++i) {
                FracResult rf = apply_frac(fp, family.members[i], FracMode::derivative);
                double denom = tent_norm(family.members[i], in, rule, sphere).value;
                double numer = tent_norm(rf.f, out, rule, sphere).value;
                res.ratios.push_back(numer / denom);
                res.member_param.push_back(family.boundary_param[i]);
            }
            break;
        }
        case Equivalence::BTchar: {
            if (!(ep.p > 1.0 && ep.t > 0.0 && ep.t2 > 0.0))
                return skip(name, "hypotheses p > 1, t1, t2 > 0 violated", params);
            FracParams fp1(ep.s, ep.t, n), fp2(ep.s2, ep.t2, n);
            for (size_t i = 0; i < family.size(); ++i) {
                if (!family.members[i].is_polynomial())
                    return skip(name, "parameter-invariance family must be polynomial",
                                params);
                double a = bt_norm(family.members[i], ep.p, fp1, Aperture(d.gamma), sphere,
                                   d.eps_trunc).value;
                double b = bt_norm(family.members[i], ep.p, fp2, Aperture(d.gamma), sphere,
                                   d.eps_trunc).value;
                res.ratios.push_back(b / a);
                res.member_param.push_back(family.boundary_param[i]);
            }
            break;
        }
        case Equivalence::CTchar: {
            if (!(ep.q > 1.0)) return skip(name, "hypothesis q > 1 violated", params);
            if (!(ep.q * ep.t + n + 1 + ep.alpha > 0.0))
                return skip(name, "hypothesis qt+n+1+alpha > 0 violated", params);
            FracParams fp(ep.s, ep.t, n);
            for (size_t i = 0; i < family.size(); ++i) {
                FracResult rf = apply_frac(fp, family.members[i], FracMode::derivative);
                double denom = carleson_norm(family.members[i], ep.q, ep.alpha, rule).value;
                double numer =
                    carleson_norm(rf.f, ep.q, ep.alpha + ep.q * ep.t, rule).value;
                res.ratios.push_back(numer / denom);
                res.member_param.push_back(family.boundary_param[i]);
            }
            break;
        }
        case Equivalence::area: {
            if (!(ep.t > 0.0)) return skip(name, "hypothesis t > 0 violated", params);
            FracParams fp(ep.s, ep.t, n);
            const double alpha_area = 2.0 * ep.t - 1.0 - double(n);
            SpaceParams out(n, ep.p, 2.0, alpha_area, d.gamma);
            RadialMesh mesh = RadialMesh::geometric(d.eps_trunc);
            SphereRule hsphere =
                SphereRule::make(n, n == 1 ? std::max(d.sphere_res, 2048) : d.sphere_res_n2);
            for (size_t i = 0; i < family.size(); ++i) {
                FracResult rf = apply_frac(fp, family.members[i], FracMode::derivative);
                double hn = hardy_norm(family.members[i], ep.p, hsphere, mesh).value;
                double tn = tent_norm(rf.f, out, rule, sphere).value;
                res.ratios.push_back(tn / hn);
                res.member_param.push_back(family.boundary_param[i]);
            }
            break;
        }
        case Equivalence::embed: {
            if (!(ep.q <= 1.0)) return skip(name, "hypothesis q <= 1 violated", params);
            double ap = embed_alpha_prime(ep.q, n, ep.alpha);
            SpaceParams in(n, ep.p, ep.q, ep.alpha, d.gamma);
            SpaceParams out(n, ep.p, 1.0, ap, d.gamma);
            for (size_t i = 0; i < family.size(); ++i) {
                double denom = tent_norm(family.members[i], in, rule, sphere).value;
                double numer = tent_norm(family.members[i], out, rule, sphere).value;
                res.ratios.push_back(numer / denom);
                res.member_param.push_back(family.boundary_param[i]);
            }
            res.notes = "one-sided inclusion bound";
            break;
        }
        case Equivalence::embed2: {
            if (!(ep.p < 1.0)) return skip(name, "hypothesis p < 1 violated", params);
            double beta = embed_bergman_exponent(ep.p, ep.q, n, ep.alpha);
            if (!(beta > -1.0)) return skip(name, "derived Bergman weight <= -1", params);
            SpaceParams in(n, ep.p, ep.q, ep.alpha, d.gamma);
            for (size_t i = 0; i < family.size(); ++i) {
                double denom = tent_norm(family.members[i], in, rule, sphere).value;
                double numer = bergman_norm(family.members[i], 1.0, beta, rule).value;
                res.ratios.push_back(numer / denom);
                res.member_param.push_back(family.boundary_param[i]);
            }
            res.notes = "one-sided inclusion bound";
            break;
        }
        case Equivalence::HTinf_is_Hardy: {
            RadialMesh mesh = RadialMesh::geometric(d.eps_trunc);
            SphereRule hsphere =
                SphereRule::make(n, n == 1 ? std::max(d.sphere_res, 2048) : d.sphere_res_n2);
            SpaceParams sp(n, ep.p, kInf, 0.0, d.gamma);
            for (size_t i = 0; i < family.size(); ++i) {
                double hn = hardy_norm(family.members[i], ep.p, hsphere, mesh).value;
                double tn = tent_inf_norm(family.members[i], sp, sphere).value;
                res.ratios.push_back(tn / hn);
                res.member_param.push_back(family.boundary_param[i]);
            }
            break;
        }
        case Equivalence::HTpp_is_Bergman: {
            SpaceParams sp(n, ep.p, ep.p, ep.alpha, d.gamma);
            for (size_t i = 0; i < family.size(); ++i) {
                double tn = tent_norm(family.members[i], sp, rule, sphere).value;
                double bn =
                    bergman_norm(family.members[i], ep.p, double(n) + ep.alpha, rule).value;
                res.ratios.push_back(tn / bn);
                res.member_param.push_back(family.boundary_param[i]);
            }
            break;
        }
    }
    res.finalize();
    return res;
}

RatioBandResult check_projection_bound(int n, double p, double q, double alpha, int count,
                                       const SuiteDefaults& d) {
    nlohmann::json params{{"n", n}, {"p", p}, {"q", q}, {"alpha", alpha}, {"count", count}};
    if (!(p > 1.0 && q > 1.0))
        return skip("projection_bound", "hypotheses 1 < p,q violated", params);
    if (!(alpha > -double(n) - 1.0))
        return skip("projection_bound", "alpha > -n-1 violated", params);

    RatioBandResult res;
    res.name = "projection_bound";
    res.params = params;
    res.band_tol = d.band_tol;
    res.slope_tol = d.slope_tol;

    ProjParams pp(double(n) + alpha, n);
    SphereRule sphere = outer_sphere(n, d);
    BallRule rule = BallRule::make(n, BallRuleOptions::standard(d.eps_trunc));
    SpaceParams sp(n, p, q, alpha, d.gamma);
    auto mixtures = random_conj_mixtures(n, count, 4, d.seed ^ 0xabcdULL);
    for (const MixedPoly& F : mixtures) {
        double in = tent_norm_fn([&](std::span<const Cx> z) { return F.evaluate(z); }, sp,
                                 rule, sphere)
                        .value;
        TaylorPoly PF = project_poly(pp, F);
        double out = tent_norm(HoloFunction(PF), sp, rule, sphere).value;
        res.ratios.push_back(out / in);
        res.member_param.push_back(1.0);
    }
    res.finalize();
    return res;
}

RatioBandResult check_projection_unbounded(int n, double p, double alpha,
                                           const std::vector<double>& gap_schedule,
                                           double growth_factor, const SuiteDefaults& d) {
    nlohmann::json params{{"n", n},
                          {"p", p},
                          {"alpha", alpha},
                          {"gaps", gap_schedule},
                          {"growth_factor", growth_factor}};
    if (!(alpha > -double(n) - 1.0))
        return skip("projection_unbounded", "alpha > -n-1 violated", params);

    RatioBandResult res;
    res.name = "projection_unbounded";
    res.params = params;
    res.band_tol = 1e9;  // growth demonstration, no band requirement
    res.slope_tol = 1e9;

    ProjParams pp(double(n) + alpha, n);
    const double kappa = 1.0 + 2.0 * double(n) + alpha;

    // Quadrature for the projection integrals and a shared evaluation grid.
    BallRuleOptions qopt = BallRuleOptions::standard(d.eps_trunc);
    qopt.angular_cap = n == 1 ? 512 : 64;
    qopt.angular_scale = 4.0;
    BallRule qrule = BallRule::make(n, qopt);

    BallRuleOptions eopt;
    eopt.eps_trunc = 1e-3;
    eopt.radial_per_segment = 2;
    eopt.angular_base = 48;
    eopt.angular_scale = 0.0;
    eopt.angular_cap = 48;
    BallRule egrid = BallRule::make(n, eopt);

    SphereRule sphere = SphereRule::make(n, n == 1 ? 1024 : d.sphere_res_n2);
    const double golden = kPi * (3.0 - std::sqrt(5.0));

    int idx = 0;
    for (double gap : gap_schedule) {
        double t0 = golden * idx++;
        CVec a(size_t(n), Cx(0.0));
        a[0] = (1.0 - gap) * Cx(std::cos(t0), std::sin(t0));
        std::span<const Cx> as{a.data(), a.size()};

        // Unimodular symbol aligned with the modulus kernel at z = a.
        auto F = [&](std::span<const Cx> u) {
            double th = std::arg(1.0 - hermitian_inner(u, as));
            return Cx(std::cos(kappa * th), -std::sin(kappa * th));
        };
        auto PF = [&](std::span<const Cx> z) {
            Cx acc = 0.0;
            for (size_t i = 0; i < qrule.count(); ++i) {
                Cx base = 1.0 - hermitian_inner(z, qrule.point(i));
                acc += qrule.weight(i) * std::pow(qrule.one_minus_abs2(i), pp.beta) *
                       cpow(base, -kappa) * F(qrule.point(i));
            }
            return pp.constant() * acc;
        };

        // Evaluation cache: shared grid plus the ray toward the pole, which
        // carries the logarithmic spike the grid would miss.
        std::vector<Cx> coords(egrid.count() * size_t(n));
        for (size_t i = 0; i < egrid.count(); ++i)
            for (int j = 0; j < n; ++j)
                coords[i * size_t(n) + size_t(j)] = egrid.point(i)[size_t(j)];
        for (int k = 0; k < 24; ++k) {
            double g = std::pow(10.0, -4.0 * (double(k) + 1.0) / 24.0);
            for (int j = 0; j < n; ++j)
                coords.push_back((1.0 - g) * a[size_t(j)] / (1.0 - gap));
        }
        const size_t pts = coords.size() / size_t(n);
        std::vector<double> vals(pts);
        for (size_t i = 0; i < pts; ++i)
            vals[i] = std::abs(PF({coords.data() + i * size_t(n), size_t(n)}));

        double out = tent_sup_norm_grid(coords, vals, n, p, Aperture(d.gamma), sphere).value;
        std::vector<double> ones(pts, 1.0);  // |F| == 1 exactly
        double in = tent_sup_norm_grid(coords, ones, n, p, Aperture(d.gamma), sphere).value;
        res.ratios.push_back(out / in);
        res.member_param.push_back(gap);
    }

    double growth = res.ratios.back() / res.ratios.front();
    std::vector<double> lx, ly;
    for (size_t i = 0; i < res.ratios.size(); ++i) {
        lx.push_back(std::log(1.0 / res.member_param[i]));
        ly.push_back(std::log(res.ratios[i]));
    }
    double trend = regression_slope(lx, ly);
    res.extra_ok = growth >= growth_factor && trend > 0.0;
    std::ostringstream os;
    os << "growth=" << growth << ",trend=" << trend
       << ",family=laboratory construction (alignment symbols)";
    res.notes = os.str();
    if (!res.extra_ok) res.reason = "growth or trend bar missed: " + os.str();
    res.finalize();
    return res;
}

RatioBandResult check_dilation(int n, double p, double q, double alpha,
                               const std::vector<double>& r_schedule, double C_max,
                               const SuiteDefaults& d) {
    nlohmann::json params{
        {"n", n}, {"p", p}, {"q", q}, {"alpha", alpha}, {"rs", r_schedule}, {"C_max", C_max}};
    RatioBandResult res;
    res.name = "dilation_approx";
    res.params = params;
    res.band_tol = d.band_tol;
    res.slope_tol = 1e9;  // no boundary trend here

    SpaceParams sp(n, p, q, alpha, d.gamma);
    SphereRule sphere = outer_sphere(n, d);
    BallRule rule = BallRule::make(n, BallRuleOptions::standard(d.eps_trunc));

    TestFamily fam = random_polynomials(n, 3, 6, d.seed ^ 0x77ULL);
    TestFamily tr = truncated_atoms(n, double(n) + 1.0, geometric_schedule(0.5, 0.1, 3), 30,
                                    d.seed ^ 0x78ULL);
    for (size_t i = 0; i < tr.size(); ++i) {
        fam.members.push_back(tr.members[i]);
        fam.boundary_param.push_back(tr.boundary_param[i]);
    }

    bool monotone = true, bounded = true;
    std::ostringstream note;
    for (size_t i = 0; i < fam.size(); ++i) {
        double base = tent_norm(fam.members[i], sp, rule, sphere).value;
        double prev_diff = std::numeric_limits<double>::infinity();
        for (double r : r_schedule) {
            HoloFunction fr = fam.members[i].dilate(r);
            double nr = tent_norm(fr, sp, rule, sphere).value;
            double diff = tent_norm(fr - fam.members[i], sp, rule, sphere).value;
            res.ratios.push_back(nr / base);
            res.member_param.push_back(1.0 - r);
            if (diff > prev_diff * (1.0 + 1e-9)) monotone = false;
            if (nr / base > C_max) bounded = false;
            prev_diff = diff;
        }
        if (i == 0) note << "member0_last_diff=" << prev_diff;
    }
    res.extra_ok = monotone && bounded;
    res.notes = note.str();
    if (!res.extra_ok)
        res.reason = std::string(monotone ? "" : "||f_r - f|| not decreasing; ") +
                     (bounded ? "" : "||f_r|| exceeds C ||f||");
    res.finalize();
    return res;
}

RatioBandResult check_duality_pairing(DualityKind kind, int n, double p, double q,
                                      double alpha, const std::vector<double>& gap_schedule,
                                      const SuiteDefaults& d) {
    nlohmann::json params{{"n", n}, {"p", p}, {"q", q}, {"alpha", alpha},
                          {"gaps", gap_schedule}};
    RatioBandResult res;
    res.params = params;
    res.band_tol = d.band_tol;
    res.slope_tol = d.slope_tol;

    SphereRule sphere = outer_sphere(n, d);
    BallRule rule = boundary_rule(n, d.eps_trunc);

    if (kind == DualityKind::pq) {
        res.name = "duality_pq";
        if (!(p > 1.0 && q > 1.0))
            return skip(res.name, "hypotheses 1 < p,q violated", params);
        const double pp_ = p / (p - 1.0), qq_ = q / (q - 1.0);
        SpaceParams primal(n, p, q, alpha, d.gamma);
        SpaceParams dual(n, pp_, qq_, alpha, d.gamma);
        TestFamily fam = bergman_kernels(n, alpha, gap_schedule, d.seed ^ 0x99ULL);
        for (size_t i = 0; i < fam.size(); ++i) {
            const HoloFunction& f = fam.members[i];
            Cx pr = pairing_numeric(f, f, alpha, rule);
            double a = tent_norm(f, primal, rule, sphere).value;
            double b = tent_norm(f, dual, rule, sphere).value;
            res.ratios.push_back(std::abs(pr) / (a * b));
            res.member_param.push_back(fam.boundary_param[i]);
        }
        // reproducing diagnostic: <B_a,B_a> should equal B_a(a)
        const HoloFunction& f0 = fam.members.front();
        CVec a0 = f0.atoms().front().pole;
        double rep_res = std::abs(pairing_numeric(f0, f0, alpha, rule) -
                                  f0.evaluate({a0.data(), a0.size()})) /
                         std::abs(f0.evaluate({a0.data(), a0.size()}));
        std::ostringstream os;
        os << "lower-bound constants; reproducing_residual=" << rep_res;
        res.notes = os.str();
    } else if (kind == DualityKind::small_q) {
        res.name = "duality_small_q";
        if (!(q < 1.0 && p > 1.0))
            return skip(res.name, "hypotheses q < 1 < p violated", params);
        const double ap = embed_alpha_prime(q, n, alpha);
        const double pp_ = p / (p - 1.0);
        SpaceParams primal(n, p, q, alpha, d.gamma);
        FracParams fp(0.0, 1.0, n);
        HoloFunction g(log_kernel_poly(n, e1_point(n, 1.0), 40));
        double gn = bt_norm(g, pp_, fp, Aperture(d.gamma), sphere, d.eps_trunc).value;
        TestFamily fam =
            kernel_atoms(n, double(n) + 1.0 + ap, gap_schedule, d.seed ^ 0x9aULL);
        std::vector<double> rs = {0.9, 0.99, 0.999};
        for (size_t i = 0; i < fam.size(); ++i) {
            const HoloFunction& f = fam.members[i];
            PairingLimit pl = pairing_limit(f, g, ap, rs, rule);
            double fn = tent_norm(f, primal, rule, sphere).value;
            res.ratios.push_back(std::abs(pl.value) / (fn * gn));
            res.member_param.push_back(fam.boundary_param[i]);
        }
        res.notes = "upper pairing bound via weighted-derivative dual norm";
    } else {
        res.name = "duality_bloch";
        if (!(p < 1.0)) return skip(res.name, "hypothesis p < 1 violated", params);
        if (!(alpha > -1.0)) return skip(res.name, "hypothesis alpha > -1 violated", params);
        const double beta4 = embed_bergman_exponent(p, q, n, alpha);
        if (!(beta4 > -1.0)) return skip(res.name, "pairing weight <= -1", params);
        SpaceParams primal(n, p, q, alpha, d.gamma);
        HoloFunction g(log_kernel_poly(n, e1_point(n, 1.0), 40));
        double gn = bloch_norm(g, d.eps_trunc).value;
        const double theta = double(n) + 2.0;
        std::vector<double> rs = {0.9, 0.99, 0.999};
        int idx = 0;
        const double golden = kPi * (3.0 - std::sqrt(5.0));
        for (double gap : gap_schedule) {
            KernelAtom atom;
            atom.pole = CVec(size_t(n), Cx(0.0));
            atom.pole[0] = (1.0 - gap) * Cx(std::cos(golden * idx), std::sin(golden * idx));
            ++idx;
            atom.e = theta + (double(n) + 1.0 + alpha) / q + double(n) / p;
            atom.c = std::pow(gap * (2.0 - gap), theta);  // (1-|a|^2)^theta
            HoloFunction f(atom);
            PairingLimit pl = pairing_limit(f, g, beta4 - double(n), rs, rule);
            double fn = tent_norm(f, primal, rule, sphere).value;
            res.ratios.push_back(std::abs(pl.value) / (fn * gn));
            res.member_param.push_back(gap);
        }
        res.notes = "upper pairing bound against the gradient-sup norm";
    }
    res.finalize();
    return res;
}

RatioBandResult check_sigma_slice(int n, double gamma, const std::vector<double>& radii,
                                  const SuiteDefaults& d) {
    nlohmann::json params{{"n", n}, {"gamma", gamma}, {"radii", radii}};
    RatioBandResult res;
    res.name = "sigma_slice";
    res.params = params;
    res.band_tol = d.band_tol;
    res.slope_tol = 1e9;  // the band is the claim; the ratio tends to a constant
    Aperture ap(gamma);
    for (double rho : radii) {
        double delta = 0.5 * gamma * (1.0 - rho * rho);
        SphereRule rule =
            n == 1 ? SphereRule::make(1, std::max(512, int(std::ceil(48.0 / delta))))
                   : SphereRule::make_product(
                         std::min(40000, std::max(64, int(std::ceil(44.0 / delta)))), 8,
                         std::min(400, std::max(8, int(std::ceil(10.0 / std::sqrt(delta))))));
        BallPoint z(e1_point(n, rho));
        SliceMeasure m = boundary_slice_measure(z, ap, rule);
        if (m.low_confidence) {
            res.skipped = true;
            res.reason = "slice rule under-resolved";
            return res;
        }
        res.ratios.push_back(m.value / std::pow(1.0 - rho * rho, n));
        res.member_param.push_back(1.0 - rho);
    }
    res.finalize();
    return res;
}

RatioBandResult check_eqg(int n, double alpha, const TestFamily& family,
                          const SuiteDefaults& d) {
    nlohmann::json params{{"n", n}, {"alpha", alpha}, {"family", family.name}};
    RatioBandResult res;
    res.name = "eqg_fubini";
    res.params = params;
    res.band_tol = d.band_tol;
    res.slope_tol = d.slope_tol;
    SphereRule sphere = outer_sphere(n, d);
    BallRule rule = boundary_rule(n, d.eps_trunc);
    SpaceParams sp(n, 2.0, 2.0, alpha, d.gamma);
    for (size_t i = 0; i < family.size(); ++i) {
        double iterated = std::pow(tent_norm(family.members[i], sp, rule, sphere).value, 2.0);
        double direct =
            std::pow(bergman_norm(family.members[i], 2.0, double(n) + alpha, rule).value, 2.0);
        res.ratios.push_back(iterated / direct);
        res.member_param.push_back(family.boundary_param[i]);
    }
    res.finalize();
    return res;
}

RatioBandResult check_carleson_routes(int n, double q, double alpha,
                                      const std::vector<double>& Ts, const TestFamily& family,
                                      const SuiteDefaults& d) {
    nlohmann::json params{{"n", n}, {"q", q}, {"alpha", alpha}, {"Ts", Ts},
                          {"family", family.name}};
    RatioBandResult res;
    res.name = "carleson_routes";
    res.params = params;
    res.band_tol = d.band_tol;
    res.slope_tol = d.slope_tol;
    BallRule rule = boundary_rule(n, d.eps_trunc);
    for (size_t i = 0; i < family.size(); ++i) {
        double box = carleson_norm(family.members[i], q, alpha, rule).value;
        for (double T : Ts) {
            double ker = carleson_kernel_norm(family.members[i], q, alpha, T, rule).value;
            res.ratios.push_back(ker / box);
            res.member_param.push_back(family.boundary_param[i]);
        }
    }
    res.finalize();
    return res;
}

RatioBandResult check_lattice_invariants(int n, double r, double eps, size_t samples,
                                         long n_obs_cap, const SuiteDefaults& d) {
    nlohmann::json params{{"n", n}, {"r", r}, {"eps", eps}, {"samples", samples},
                          {"n_obs_cap", n_obs_cap}};
    RatioBandResult res;
    res.name = "lattice_invariants";
    res.params = params;
    res.band_tol = 1e9;
    res.slope_tol = 1e9;
    Lattice Z = generate_lattice(n, r, eps);
    LatticeCheck chk = verify_lattice(Z, samples, d.seed ^ 0x1a77ULL);
    res.ratios = {chk.min_separation / (r / 2.0), double(chk.n_obs),
                  chk.worst_cover_gap / r};
    res.member_param = {1.0, 1.0, 1.0};
    res.extra_ok = chk.all_ok() && chk.n_obs <= n_obs_cap;
    std::ostringstream os;
    os << "points=" << Z.count() << ",min_sep=" << chk.min_separation
       << ",worst_gap=" << chk.worst_cover_gap << ",N_obs=" << chk.n_obs;
    res.notes = os.str();
    if (!res.extra_ok) res.reason = "lattice invariants failed: " + os.str();
    res.finalize();
    return res;
}

RatioBandResult check_neumann(int n, double r, double theta, double alpha, int max_iter,
                              double target_residual, const SuiteDefaults& d) {
    nlohmann::json params{{"n", n},       {"r", r},
                          {"theta", theta}, {"alpha", alpha},
                          {"max_iter", max_iter}, {"target", target_residual}};
    RatioBandResult res;
    res.name = "neumann_reconstruction";
    res.params = params;
    res.band_tol = 1e9;
    res.slope_tol = 1e9;

    TaylorPoly f(n);
    f.set(MultiIndex::zero(n), 1.0);
    f.set(MultiIndex::unit(n, 0), 1.0);
    {
        std::vector<int> m2(size_t(n), 0);
        m2[0] = 2;
        f.set(MultiIndex(m2), 0.5);
    }
    Lattice Z = generate_lattice(n, r, 1e-2);
    BallRule rule = BallRule::make(n, BallRuleOptions::standard(1e-3));
    NeumannResult nr =
        neumann_reconstruct(HoloFunction(f), Z, theta, alpha, max_iter, target_residual, rule);
    res.ratios = nr.residuals;
    res.member_param.assign(nr.residuals.size(), 1.0);

    bool decayed = !nr.diverged && !nr.residuals.empty() &&
                   nr.residuals.back() < target_residual;
    bool geometric = true;
    for (size_t i = 1; i < nr.residuals.size(); ++i)
        if (nr.residuals[i] > 0.9 * nr.residuals[i - 1] &&
            nr.residuals[i] > target_residual)
            geometric = false;
    res.extra_ok = decayed && geometric;
    std::ostringstream os;
    os << "lattice_points=" << Z.count() << ",iterations=" << nr.residuals.size()
       << ",final=" << (nr.residuals.empty() ? -1.0 : nr.residuals.back());
    res.notes = os.str();
    if (!res.extra_ok) res.reason = "reconstruction decay bar missed: " + os.str();
    res.finalize();
    return res;
}

}  // namespace tentlab
