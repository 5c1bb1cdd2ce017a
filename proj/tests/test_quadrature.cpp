#include <algorithm>

#include "doctest.h"
#include "tentlab/funcspace.hpp"
#include "tentlab/quadrature.hpp"

using namespace tentlab;

TEST_CASE("sphere rule integrates constants and monomials") {
    for (int n : {1, 2}) {
        SphereRule rule = SphereRule::make(n, n == 1 ? 64 : 16);
        double total = 0.0;
        Cx cross = 0.0;
        double mod2 = 0.0;
        rule.for_each([&](std::span<const Cx> zeta, double w) {
            total += w;
            if (n == 2) cross += w * zeta[0] * std::conj(zeta[1]);
            mod2 += w * norm_sq(zeta);
        });
        CHECK(std::abs(total - 1.0) < 1e-12);          // sigma(S_n) = 1
        CHECK(std::abs(mod2 - 1.0) < 1e-12);           // |zeta| = 1 on the sphere
        if (n == 2) CHECK(std::abs(cross) < 1e-13);    // rotation symmetry
    }
    // exact monomial square integrals: int |zeta^m|^2 dsigma = (n-1)! m! / (n-1+|m|)!
    SphereRule r2 = SphereRule::make(2, 16);
    Cx v = 0.0;
    r2.for_each([&](std::span<const Cx> zeta, double w) {
        v += w * std::norm(zeta[0] * zeta[0] * zeta[1]);  // m = (2,1)
    });
    double expect = factorial(1) * 2.0 * 1.0 / factorial(1 + 3);  // 2/24
    CHECK(std::abs(v - expect) < 1e-12);
}

TEST_CASE("radial mesh geometry") {
    RadialMesh m = RadialMesh::geometric(1e-4, 0.5);
    REQUIRE(m.radii.size() > 3);
    for (size_t i = 0; i + 2 < m.radii.size(); ++i) {
        double g0 = 1.0 - m.radii[i], g1 = 1.0 - m.radii[i + 1];
        CHECK(g1 / g0 == doctest::Approx(0.5));
    }
    CHECK(m.radii.back() == doctest::Approx(1.0 - 1e-4));
    CHECK_THROWS_AS(RadialMesh::geometric(0.5), std::invalid_argument);
}

TEST_CASE("ball rule: volume, symmetry, radial polynomial exactness") {
    for (int n : {1, 2}) {
        BallRule rule = BallRule::make(n, BallRuleOptions::standard(1e-4));
        const double R = 1.0 - rule.eps_trunc();
        double total = 0.0;
        Cx first = 0.0;
        for (size_t i = 0; i < rule.count(); ++i) {
            total += rule.weight(i);
            first += rule.weight(i) * rule.point(i)[0];
        }
        // truncated volume is exactly R^{2n}
        CHECK(std::abs(total - std::pow(R, 2 * n)) < 1e-10);
        CHECK(std::abs(first) < 1e-12);  // odd symmetry

        // |z|^{2k} integrates exactly (modulo truncation) for k <= 6
        for (int k = 1; k <= 6; ++k) {
            double v = 0.0;
            for (size_t i = 0; i < rule.count(); ++i)
                v += rule.weight(i) *
                     std::pow(1.0 - rule.one_minus_abs2(i), double(k));  // |z|^{2k}
            double expect = double(n) / double(n + k) * std::pow(R, 2.0 * (n + k));
            CHECK(std::abs(v - expect) < 1e-10);
        }
    }
    // closed-form weighted moment: int |z|^2 (1-|z|^2) dV_1 = 1/6 - O(eps)
    BallRule r1 = BallRule::make(1, BallRuleOptions::smooth(1e-6));
    double v = r1.integrate(1.0, [](std::span<const Cx> z) { return std::norm(z[0]); });
    CHECK(v == doctest::Approx(1.0 / 6.0).epsilon(1e-7));
}

TEST_CASE("region integral") {
    // The region edge is an indicator cut, so the area error scales with the
    // angular spacing; the base rule is refined enough for the 1e-3 bar.
    BallRule rule = BallRule::make(1, BallRuleOptions::standard(1e-4));
    SpherePoint zeta(CVec{Cx(1.0)});
    Aperture g2(2.0);
    auto one = [](std::span<const Cx>) { return Cx(1.0); };

    RegionIntegral a = region_integral(one, zeta, g2, 0.0, rule);
    CHECK(a.contributing_nodes > 100);

    // self-refinement: a much finer mesh moves the area by < 1e-3 relative
    BallRuleOptions fine = BallRuleOptions::standard(1e-4);
    fine.radial_per_segment = 16;
    fine.angular_base = 2048;
    fine.angular_scale = 96.0;
    fine.angular_cap = 32768;
    RegionIntegral b = region_integral(one, zeta, g2, 0.0, BallRule::make(1, fine));
    CHECK(std::abs(a.value - b.value) / std::abs(b.value) < 1e-3);

    // zero integrand
    auto zero = [](std::span<const Cx>) { return Cx(0.0); };
    CHECK(std::abs(region_integral(zero, zeta, g2, 0.0, rule).value) == 0.0);

    // aperture monotonicity for f >= 0
    RegionIntegral narrow = region_integral(one, zeta, Aperture(1.5), 0.0, rule);
    RegionIntegral wide = region_integral(one, zeta, Aperture(3.0), 0.0, rule);
    CHECK(narrow.value.real() <= wide.value.real());
}

TEST_CASE("sup search on the ball") {
    // unique max of 1-|z|^2 at the origin
    auto g = [](std::span<const Cx> z) { return 1.0 - norm_sq(z); };
    SupResult s = sup_search(g, SupDomain::ball(1, 1e-4));
    CHECK(s.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(euclid_norm({s.argmax.data(), s.argmax.size()}) < 1e-3);

    // (1-|z|^2)/|1-z| maximizes along the ray toward 1 at the truncation rim
    // (on the ray the value is 1+r)
    auto h = [](std::span<const Cx> z) {
        return (1.0 - norm_sq(z)) / std::abs(1.0 - z[0]);
    };
    SupResult sh = sup_search(h, SupDomain::ball(1, 1e-4));
    CHECK(sh.value == doctest::Approx(2.0 - 1e-4).epsilon(1e-4));
    CHECK(std::abs(std::arg(sh.argmax[0])) < 1e-2);

    // constant objective: deterministic tie-break to the first seed
    auto c = [](std::span<const Cx>) { return 3.5; };
    SupResult s1 = sup_search(c, SupDomain::ball(1, 1e-4));
    SupResult s2 = sup_search(c, SupDomain::ball(1, 1e-4));
    CHECK(s1.value == 3.5);
    CHECK(s1.argmax == s2.argmax);
}

TEST_CASE("sup search over a region stays inside") {
    SpherePoint zeta(CVec{Cx(0.0, 1.0)});
    auto g = [](std::span<const Cx> z) { return std::abs(z[0]); };
    SupResult s = sup_search(g, SupDomain::region(zeta, 2.0, 1e-4));
    CHECK(s.value > 0.99);  // the region reaches the truncation rim near the vertex
    BallPoint arg(s.argmax);
    CHECK(in_approach_region(zeta, Aperture(2.0), arg));
}

TEST_CASE("refinement convergence on kernel atoms") {
    // halving the radial grading gap moves a bounded-kernel integral by < 1e-3
    KernelAtom atom;
    atom.pole = CVec{Cx(0.99)};
    atom.e = 2.0;
    atom.c = 1.0;
    BallRuleOptions a = BallRuleOptions::boundary(1e-4);
    BallRuleOptions b = a;
    b.lambda_geo = 0.25;  // much steeper grading
    b.radial_per_segment = 12;
    auto f = [&](std::span<const Cx> z) { return std::abs(atom.evaluate(z)); };
    double va = BallRule::make(1, a).integrate(0.0, f);
    double vb = BallRule::make(1, b).integrate(0.0, f);
    CHECK(std::abs(va - vb) / vb < 1e-3);
}

TEST_CASE("eqg consistency band: iterated region integrals vs direct") {
    // For phi >= 0 and dnu = (1-|z|^2)^{n+alpha} dV the iterated integral
    // over regions against (1-|z|^2)^alpha matches the direct integral up to
    // a bounded ratio.
    BallRule rule = BallRule::make(1, BallRuleOptions::standard(1e-4));
    SphereRule sphere = SphereRule::make(1, 256);
    const double alpha = 0.0;
    std::vector<double> ratios;
    for (double pole : {0.0, 0.3, 0.6, 0.8, 0.9, 0.95, -0.5, -0.8, 0.99, 0.7}) {
        KernelAtom atom;
        atom.pole = CVec{Cx(pole)};
        atom.e = 2.0;
        atom.c = 1.0;
        auto phi = [&](std::span<const Cx> z) { return std::norm(atom.evaluate(z)); };
        double direct = rule.integrate(1.0 + alpha, phi);  // n + alpha
        double iterated = 0.0;
        const auto& sw = sphere.weights();
        for (size_t k = 0; k < sphere.count(); ++k) {
            SpherePoint zeta(CVec(sphere.node(k).begin(), sphere.node(k).end()));
            auto ri = region_integral([&](std::span<const Cx> z) { return Cx(phi(z)); },
                                      zeta, Aperture(2.0), alpha, rule);
            iterated += sw[k] * ri.value.real();
        }
        ratios.push_back(iterated / direct);
    }
    double lo = *std::min_element(ratios.begin(), ratios.end());
    double hi = *std::max_element(ratios.begin(), ratios.end());
    CHECK(lo > 0.0);
    CHECK(hi / lo < 20.0);
}

TEST_CASE("sampled rule is seeded and deterministic") {
    BallRule a = BallRule::make_sampled(2, 5000, 1e-4, 42);
    BallRule b = BallRule::make_sampled(2, 5000, 1e-4, 42);
    CHECK(a.seed() == 42);
    REQUIRE(a.count() == b.count());
    double sa = 0.0, sb = 0.0;
    for (size_t i = 0; i < a.count(); ++i) {
        sa += a.weight(i) * a.one_minus_abs2(i);
        sb += b.weight(i) * b.one_minus_abs2(i);
    }
    CHECK(sa == sb);  // bit-identical
    // unbiased-ish: int (1-|z|^2) dV_2 = 1/3 up to sampling error
    CHECK(sa == doctest::Approx(1.0 / 3.0).epsilon(0.05));
}
