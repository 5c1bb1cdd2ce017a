#include <algorithm>

#include "doctest.h"
#include "tentlab/families.hpp"
#include "tentlab/norms.hpp"

using namespace tentlab;

namespace {

// Shared rules: construction dominates the cheap checks, so build once.
const BallRule& rule1() {
    static BallRule r = BallRule::make(1, BallRuleOptions::standard(1e-4));
    return r;
}
const SphereRule& sphere1() {
    static SphereRule s = SphereRule::make(1, 256);
    return s;
}
const BallRule& smooth1() {
    static BallRule r = BallRule::make(1, BallRuleOptions::smooth(1e-6));
    return r;
}

HoloFunction constant(int n, Cx c) { return HoloFunction(TaylorPoly::constant(n, c)); }

HoloFunction zmono(int n, std::vector<int> m, Cx c = 1.0) {
    return HoloFunction(TaylorPoly::monomial(n, MultiIndex(std::move(m)), c));
}

HoloFunction random_poly(int n, int deg, uint64_t seed) {
    std::mt19937_64 rng(seed);
    TaylorPoly p(n);
    for (const auto& m : MultiIndex::up_to_order(n, deg)) p.set(m, random_unit_disk(rng));
    return HoloFunction(p);
}

}  // namespace

TEST_CASE("tent norm: zero, homogeneity, diagonal matches the Bergman mass") {
    SpaceParams sp(1, 2.0, 2.0, 0.0);
    CHECK(tent_norm(constant(1, 0.0), sp, rule1(), sphere1()).value == 0.0);

    HoloFunction f = random_poly(1, 4, 101);
    double base = tent_norm(f, sp, rule1(), sphere1()).value;
    HoloFunction cf = f;
    cf *= Cx(0.0, -2.5);
    CHECK(tent_norm(cf, sp, rule1(), sphere1()).value ==
          doctest::Approx(2.5 * base).epsilon(1e-12));

    // f == 1, p = q = 2, alpha = 0: comparable to ||1||_{A^2_1} = 2^{-1/2}
    double v = tent_norm(constant(1, 1.0), sp, rule1(), sphere1()).value;
    double ratio = v / std::pow(2.0, -0.5);
    CHECK(ratio > 0.2);
    CHECK(ratio < 5.0);
}

TEST_CASE("tent norm rejects q = infinity") {
    SpaceParams sp(1, 2.0, kInf, 0.0);
    CHECK_THROWS_AS((void)tent_norm(constant(1, 1.0), sp, rule1(), sphere1()),
                    std::invalid_argument);
}

TEST_CASE("regionwise-sup norm") {
    SpaceParams sp(1, 2.0, kInf, 0.0);
    // constants
    CHECK(tent_inf_norm(constant(1, Cx(0.0, -3.0)), sp, sphere1()).value ==
          doctest::Approx(3.0).epsilon(1e-9));
    // f = z: every region reaches the truncation rim near its vertex
    CHECK(tent_inf_norm(zmono(1, {1}), sp, sphere1()).value ==
          doctest::Approx(1.0).epsilon(1e-3));

    // Jensen: the p-means over the probability measure sigma are ordered
    HoloFunction f = random_poly(1, 5, 103);
    double m1 = tent_inf_norm(f, SpaceParams(1, 1.0, kInf, 0.0), sphere1()).value;
    double m2 = tent_inf_norm(f, SpaceParams(1, 2.0, kInf, 0.0), sphere1()).value;
    double m4 = tent_inf_norm(f, SpaceParams(1, 4.0, kInf, 0.0), sphere1()).value;
    CHECK(m1 <= m2 * (1.0 + 1e-9));
    CHECK(m2 <= m4 * (1.0 + 1e-9));
}

TEST_CASE("hardy norm") {
    RadialMesh mesh = RadialMesh::geometric(1e-4);
    CHECK(hardy_norm(constant(1, Cx(2.0, 1.0)), 2.0, sphere1(), mesh).value ==
          doctest::Approx(std::sqrt(5.0)).epsilon(1e-10));
    // n=1, f = z, p = 2: sup_r r^2 -> 1 up to truncation
    CHECK(hardy_norm(zmono(1, {1}), 2.0, sphere1(), mesh).value ==
          doctest::Approx(1.0).epsilon(1e-3));

    // sphere means are nondecreasing in the radius for holomorphic f
    for (uint64_t seed : {11ULL, 12ULL, 13ULL}) {
        HoloFunction f = random_poly(1, 6, seed);
        auto means = hardy_sphere_means(f, 2.0, sphere1(), mesh);
        for (size_t i = 0; i + 1 < means.size(); ++i)
            CHECK(means[i] <= means[i + 1] * (1.0 + 1e-11));
    }
}

TEST_CASE("bergman norm: closed forms and the exact p = 2 branch") {
    // ||1||_{A^2_0}^2 = 1, ||1||_{A^2_1}^2 = 1/2, ||z||_{A^2_0}^2 = 1/2 (n = 1)
    CHECK(bergman_norm(constant(1, 1.0), 2.0, 0.0, rule1()).value == doctest::Approx(1.0));
    CHECK(sq(bergman_norm(constant(1, 1.0), 2.0, 1.0, rule1()).value) ==
          doctest::Approx(0.5));
    CHECK(sq(bergman_norm(zmono(1, {1}), 2.0, 0.0, rule1()).value) == doctest::Approx(0.5));

    // exact branch against quadrature for a random polynomial
    HoloFunction f = random_poly(2, 4, 107);
    double exact = bergman_norm(f, 2.0, 0.5, rule1()).value;  // exact (polynomial, p=2)
    BallRule r2 = BallRule::make(2, BallRuleOptions::smooth(1e-6));
    double quad = r2.integrate(0.5, [&](std::span<const Cx> z) {
        return std::norm(f.evaluate(z));
    });
    CHECK(std::sqrt(quad) == doctest::Approx(exact).epsilon(1e-6));

    // homogeneity
    HoloFunction g = f;
    g *= 3.0;
    CHECK(bergman_norm(g, 2.0, 0.5, rule1()).value == doctest::Approx(3.0 * exact));
}

TEST_CASE("bloch norm") {
    CHECK(bloch_norm(constant(1, Cx(0.0, 4.0))).value == doctest::Approx(4.0));
    // f = z: sup (1-|z|^2)*1 = 1 plus |f(0)| = 0
    CHECK(bloch_norm(zmono(1, {1})).value == doctest::Approx(1.0).epsilon(1e-6));

    // truncated -log(1-z) stabilizes in the degree (Bloch function)
    double b50 = bloch_norm(HoloFunction(log_kernel_poly(1, CVec{Cx(1.0)}, 50))).value;
    double b60 = bloch_norm(HoloFunction(log_kernel_poly(1, CVec{Cx(1.0)}, 60))).value;
    CHECK(b50 == doctest::Approx(b60).epsilon(5e-2));
    CHECK(b50 < 2.0);  // sup (1-|z|^2)/|1-z| <= 2 for the full function
}

TEST_CASE("weighted-derivative sup norm and its tail") {
    // constants: R^{0,1}c = c and the weighted sup approaches |c| near 0
    FracParams fp(0.0, 1.0, 1);
    double v = bt_norm(constant(1, Cx(3.0)), 2.0, fp, Aperture(2.0), sphere1()).value;
    CHECK(v == doctest::Approx(3.0).epsilon(1e-2));

    // homogeneity
    HoloFunction f = random_poly(1, 5, 109);
    double base = bt_norm(f, 2.0, fp, Aperture(2.0), sphere1()).value;
    HoloFunction g = f;
    g *= 2.0;
    CHECK(bt_norm(g, 2.0, fp, Aperture(2.0), sphere1()).value ==
          doctest::Approx(2.0 * base).epsilon(1e-9));

    // parameter robustness band on a small polynomial family
    FracParams fp2(1.0, 2.0, 1);
    std::vector<double> ratios;
    for (uint64_t s : {21ULL, 22ULL, 23ULL, 24ULL}) {
        HoloFunction h = random_poly(1, 5, s);
        ratios.push_back(bt_norm(h, 2.0, fp2, Aperture(2.0), sphere1()).value /
                         bt_norm(h, 2.0, fp, Aperture(2.0), sphere1()).value);
    }
    double lo = *std::min_element(ratios.begin(), ratios.end());
    double hi = *std::max_element(ratios.begin(), ratios.end());
    CHECK(hi / lo < 20.0);

    // polynomial tails vanish, and the tail is nonincreasing in r
    double t1 = bt_tail(f, 2.0, fp, 0.9, Aperture(2.0), sphere1());
    double t2 = bt_tail(f, 2.0, fp, 0.99, Aperture(2.0), sphere1());
    double t3 = bt_tail(f, 2.0, fp, 0.999, Aperture(2.0), sphere1());
    CHECK(t1 >= t2);
    CHECK(t2 >= t3);
    CHECK(t3 < 0.05 * base);

    // an atom with matching growth keeps a flat tail: for (1-z)^{-1} the
    // weighted derivative (1-|z|^2)(1-z)^{-2} has unit size along the ray
    KernelAtom a;
    a.pole = CVec{Cx(1.0 - 1e-6)};
    a.e = 2.0;  // matched to n+1+s at s = 0
    a.c = 1.0;
    HoloFunction atom(a);
    double a1 = bt_tail(atom, 2.0, fp, 0.9, Aperture(2.0), sphere1());
    double a3 = bt_tail(atom, 2.0, fp, 0.999, Aperture(2.0), sphere1());
    CHECK(a3 > 0.2 * a1);  // no decay
}

TEST_CASE("carleson norms") {
    // zero and homogeneity
    CHECK(carleson_norm(constant(1, 0.0), 2.0, 0.0, rule1()).value == 0.0);
    HoloFunction f = random_poly(1, 4, 113);
    double base = carleson_norm(f, 2.0, 0.0, rule1()).value;
    HoloFunction g = f;
    g *= Cx(0.0, 2.0);
    CHECK(carleson_norm(g, 2.0, 0.0, rule1()).value ==
          doctest::Approx(2.0 * base).epsilon(1e-9));

    // f == 1: finite and stable under grid refinement
    CarlesonGrid coarse;
    CarlesonGrid fine;
    fine.radial = 20;
    fine.angular = 32;
    double c1 = carleson_norm(constant(1, 1.0), 2.0, 0.0, rule1(), coarse).value;
    double c2 = carleson_norm(constant(1, 1.0), 2.0, 0.0, rule1(), fine).value;
    CHECK(c1 == doctest::Approx(c2).epsilon(0.1));
    CHECK(std::isfinite(c1));

    // kernel route: T-independence band and route agreement
    std::vector<double> vals;
    for (double T : {1.0, 2.0, 4.0})
        vals.push_back(carleson_kernel_norm(f, 2.0, 0.0, T, rule1()).value);
    double lo = *std::min_element(vals.begin(), vals.end());
    double hi = *std::max_element(vals.begin(), vals.end());
    CHECK(hi / lo < 20.0);
    CHECK(vals[1] / base < 20.0);
    CHECK(base / vals[1] < 20.0);

    CHECK(carleson_kernel_norm(constant(1, 0.0), 2.0, 0.0, 2.0, rule1()).value == 0.0);
}

TEST_CASE("vanishing carleson profile") {
    std::vector<double> radii{0.3, 0.6, 0.9, 0.99};
    // f == 1 gives a vanishing measure: the tail decreases
    auto prof = vanishing_carleson_profile(constant(1, 1.0), 2.0, 0.0, 2.0, rule1(), radii);
    for (size_t i = 0; i + 1 < prof.size(); ++i) CHECK(prof[i].second >= prof[i + 1].second);
    CHECK(prof.back().second < 0.5 * prof.front().second);

    // zero function: all zeros
    auto zero = vanishing_carleson_profile(constant(1, 0.0), 2.0, 0.0, 2.0, rule1(), radii);
    for (auto& [r, v] : zero) CHECK(v == 0.0);

    // boundary-concentrating atom: essentially flat profile over these radii
    KernelAtom a;
    a.pole = CVec{Cx(1.0 - 1e-3)};
    a.e = 1.0;
    a.c = 1.0;
    auto flat = vanishing_carleson_profile(HoloFunction(a), 2.0, 0.0, 2.0, rule1(), radii);
    CHECK(flat.back().second > 0.3 * flat.front().second);
}

TEST_CASE("pairing: exact coefficient formula") {
    // n=1, alpha=0: <z,z>_1 = 1/6 (radial integral 2 int r^3 (1-r^2) dr)
    TaylorPoly z = TaylorPoly::monomial(1, MultiIndex({1}));
    CHECK(pairing_exact(z, z, 0.0).real() == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

    // orthogonality of distinct monomials
    TaylorPoly z2 = TaylorPoly::monomial(1, MultiIndex({2}));
    CHECK(std::abs(pairing_exact(z, z2, 0.0)) == 0.0);

    // conjugate symmetry
    std::mt19937_64 rng(117);
    TaylorPoly f(2), g(2);
    for (const auto& m : MultiIndex::up_to_order(2, 3)) {
        f.set(m, random_unit_disk(rng));
        g.set(m, random_unit_disk(rng));
    }
    Cx fg = pairing_exact(f, g, 0.5), gf = pairing_exact(g, f, 0.5);
    CHECK(std::abs(fg - std::conj(gf)) < 1e-14);
}

TEST_CASE("pairing: quadrature route against the exact route") {
    std::mt19937_64 rng(119);
    for (int n : {1, 2}) {
        BallRule rule = BallRule::make(n, BallRuleOptions::smooth(1e-6));
        for (double alpha : {-0.5, 0.0, 1.0}) {
            TaylorPoly f(n), g(n);
            for (const auto& m : MultiIndex::up_to_order(n, 5)) {
                f.set(m, random_unit_disk(rng));
                g.set(m, random_unit_disk(rng));
            }
            Cx exact = pairing_exact(f, g, alpha);
            Cx numeric = pairing_numeric(HoloFunction(f), HoloFunction(g), alpha, rule);
            CHECK(std::abs(exact - numeric) < 1e-6 * std::max(1.0, std::abs(exact)));
        }
        // <1,1>_{n+alpha} = 1/c(n, n+alpha)
        TaylorPoly one(n);
        one.set(MultiIndex::zero(n), 1.0);
        double expect = 1.0 / ProjParams(double(n) + 1.0, n).constant();
        CHECK(pairing_exact(one, one, 1.0).real() == doctest::Approx(expect).epsilon(1e-13));
    }

    // linearity in the first slot
    TaylorPoly a = TaylorPoly::monomial(1, MultiIndex({1}), Cx(0.5, 1.0));
    TaylorPoly b = TaylorPoly::monomial(1, MultiIndex({2}), Cx(-1.0, 0.25));
    TaylorPoly s = a;
    s += b;
    Cx left = pairing_exact(s, a, 0.0);
    Cx right = pairing_exact(a, a, 0.0) + pairing_exact(b, a, 0.0);
    CHECK(std::abs(left - right) < 1e-14);
}

TEST_CASE("pairing: dilation limit") {
    std::vector<double> sched{0.9, 0.99, 0.999, 0.9999};
    HoloFunction f = random_poly(1, 4, 121);
    HoloFunction g = random_poly(1, 4, 122);
    PairingLimit pl = pairing_limit(f, g, 0.0, sched, smooth1());
    CHECK(pl.converged);
    CHECK(std::abs(pl.value - pairing_exact(f.poly(), g.poly(), 0.0)) < 1e-5);

    // atom against polynomial: limit matches the direct integral
    KernelAtom at;
    at.pole = CVec{Cx(0.7, 0.1)};
    at.e = 2.0;
    at.c = 1.0;
    HoloFunction fa(at);
    PairingLimit pa = pairing_limit(fa, g, 0.0, sched, smooth1());
    Cx direct = pairing_numeric(fa, g, 0.0, smooth1());
    CHECK(std::abs(pa.value - direct) < 1e-5);

    // schedule independence of the declared limit
    PairingLimit pb = pairing_limit(fa, g, 0.0, {0.95, 0.995, 0.9995, 0.99995}, smooth1());
    CHECK(std::abs(pa.value - pb.value) < 1e-6);
}

TEST_CASE("norm axioms across the scales") {
    // triangle inequality for p, q >= 1 and the min(p,q)-power metric otherwise
    SpaceParams pq(1, 2.0, 1.0, 0.0);
    HoloFunction f = random_poly(1, 4, 131), g = random_poly(1, 4, 132);
    double nf = tent_norm(f, pq, rule1(), sphere1()).value;
    double ng = tent_norm(g, pq, rule1(), sphere1()).value;
    double nfg = tent_norm(f + g, pq, rule1(), sphere1()).value;
    CHECK(nfg <= nf + ng + 1e-9);

    SpaceParams small(1, 0.5, 1.0, 0.0);  // min(p,q) = 1/2
    double sf = tent_norm(f, small, rule1(), sphere1()).value;
    double sg = tent_norm(g, small, rule1(), sphere1()).value;
    double sfg = tent_norm(f + g, small, rule1(), sphere1()).value;
    CHECK(std::pow(sfg, 0.5) <= std::pow(sf, 0.5) + std::pow(sg, 0.5) + 1e-9);

    // zero only at zero (on the representation)
    CHECK(tent_norm(zmono(1, {3}, 1e-8), pq, rule1(), sphere1()).value > 0.0);
}

TEST_CASE("tent space nesting and aperture robustness bands") {
    TestFamily fam = kernel_atoms(1, 2.0, geometric_schedule(0.5, 0.05, 4), 77);
    fam.members.push_back(random_poly(1, 4, 133));
    fam.boundary_param.push_back(1.0);

    std::vector<double> nest, apert;
    for (const auto& f : fam.members) {
        double big = tent_norm(f, SpaceParams(1, 2.0, 2.0, 0.0), rule1(), sphere1()).value;
        double sml = tent_norm(f, SpaceParams(1, 1.0, 1.0, 0.0), rule1(), sphere1()).value;
        nest.push_back(sml / big);

        double g15 = tent_norm(f, SpaceParams(1, 2.0, 2.0, 0.0, 1.5), rule1(), sphere1()).value;
        double g30 = tent_norm(f, SpaceParams(1, 2.0, 2.0, 0.0, 3.0), rule1(), sphere1()).value;
        apert.push_back(g30 / g15);
    }
    auto band = [](const std::vector<double>& v) {
        return *std::max_element(v.begin(), v.end()) /
               *std::min_element(v.begin(), v.end());
    };
    CHECK(band(nest) < 50.0);
    CHECK(band(apert) < 20.0);
}

TEST_CASE("scale comparison bands: sup scale vs Hardy, diagonal vs Bergman") {
    TestFamily fam = kernel_atoms(1, 2.0, geometric_schedule(0.5, 0.1, 3), 79);
    fam.members.push_back(random_poly(1, 3, 135));
    fam.boundary_param.push_back(1.0);
    RadialMesh mesh = RadialMesh::geometric(1e-4);

    std::vector<double> hsup, diag;
    for (const auto& f : fam.members) {
        hsup.push_back(tent_inf_norm(f, SpaceParams(1, 2.0, kInf, 0.0), sphere1()).value /
                       hardy_norm(f, 2.0, sphere1(), mesh).value);
        diag.push_back(tent_norm(f, SpaceParams(1, 2.0, 2.0, 0.0), rule1(), sphere1()).value /
                       bergman_norm(f, 2.0, 1.0, rule1()).value);
    }
    auto band = [](const std::vector<double>& v) {
        return *std::max_element(v.begin(), v.end()) /
               *std::min_element(v.begin(), v.end());
    };
    CHECK(band(hsup) < 20.0);
    CHECK(band(diag) < 20.0);
}

TEST_CASE("derived weight helpers") {
    CHECK(embed_alpha_prime(0.5, 1, 0.0) == doctest::Approx(2.0));
    CHECK(embed_alpha_prime(1.0, 2, 0.7) == doctest::Approx(0.7));
    CHECK(embed_bergman_exponent(0.5, 2.0, 1, 0.0) == doctest::Approx(1.0));
    CHECK(embed_bergman_exponent(1.0, 1.0, 2, -0.5) == doctest::Approx(1.5));
}

TEST_CASE("norm report serialization") {
    NormReport rep = bergman_norm(constant(1, 1.0), 2.0, 0.0, rule1());
    auto j = rep.to_json();
    CHECK(j.at("value").get<double>() == rep.value);
    CHECK(j.contains("eps_trunc"));
    CHECK(j.contains("resolution"));
    CHECK(j.contains("seed"));
    CHECK(j.contains("notes"));
}
