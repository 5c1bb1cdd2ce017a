#include <algorithm>

#include "doctest.h"
#include "tentlab/geometry.hpp"
#include "tentlab/quadrature.hpp"

using namespace tentlab;

namespace {

BallPoint bp1(Cx z) { return BallPoint(CVec{z}); }

CVec random_ball_vec(int n, std::mt19937_64& rng, double rmax = 0.95) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    while (true) {
        CVec z(size_t(n), Cx(0.0));
        for (auto& c : z) c = Cx(2.0 * u(rng) - 1.0, 2.0 * u(rng) - 1.0) * rmax;
        if (norm_sq({z.data(), z.size()}) < rmax * rmax) return z;
    }
}

}  // namespace

TEST_CASE("hermitian inner product") {
    CHECK(hermitian_inner(CVec{1.0, 0.0}, CVec{1.0, 0.0}) == Cx(1.0));
    // |z|^2 by direct expansion
    CVec z{Cx(0.5, 0.0), Cx(0.0, 0.5)};
    CHECK(std::abs(hermitian_inner(z, z) - Cx(0.5)) < 1e-15);
    // conjugate symmetry on random pairs
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        CVec a = random_ball_vec(2, rng), b = random_ball_vec(2, rng);
        Cx ab = hermitian_inner(a, b), ba = hermitian_inner(b, a);
        CHECK(std::abs(ab - std::conj(ba)) < 1e-14);
    }
    CHECK_THROWS_AS((void)hermitian_inner(CVec{1.0}, CVec{1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("approach region membership") {
    SpherePoint zeta(CVec{Cx(1.0), Cx(0.0)});
    BallPoint origin = BallPoint::origin(2);
    // at the origin the inequality is 1 < gamma/2, strict
    CHECK_FALSE(in_approach_region(zeta, Aperture(2.0), origin));
    CHECK(in_approach_region(zeta, Aperture(2.5), origin));

    // the radial ray toward the vertex stays inside for gamma = 2
    SpherePoint z1(CVec{Cx(0.6, 0.8)});
    for (double r : {0.1, 0.5, 0.9, 0.999}) {
        BallPoint z(CVec{r * z1.zeta[0]});
        CHECK(in_approach_region(z1, Aperture(2.0), z));
    }

    // an orthogonal ray leaves every region as r -> 1
    SpherePoint e1(CVec{Cx(1.0), Cx(0.0)});
    BallPoint orth(CVec{Cx(0.0), Cx(0.95)});
    CHECK_FALSE(in_approach_region(e1, Aperture(2.0), orth));
    CHECK_FALSE(in_approach_region(e1, Aperture(3.0), orth));

    CHECK_THROWS_AS(Aperture(1.0), std::invalid_argument);
}

TEST_CASE("tent membership") {
    BallPoint zero = BallPoint::origin(1);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 10; ++i) {
        BallPoint z(random_ball_vec(1, rng));
        CHECK(in_tent(zero, z));  // Q(0) is the whole ball
    }
    // u = z != 0 always lies in its own tent
    for (int i = 0; i < 10; ++i) {
        BallPoint z(random_ball_vec(1, rng));
        if (z.abs() == 0.0) continue;
        CHECK(in_tent(z, z));
    }
    // antipodal point far outside
    BallPoint u(CVec{Cx(0.9)});
    BallPoint anti(CVec{Cx(-0.9)});
    CHECK_FALSE(in_tent(u, anti));
}

TEST_CASE("mobius involution and fixed values") {
    std::mt19937_64 rng(13);
    for (int n : {1, 2}) {
        for (int i = 0; i < 15; ++i) {
            BallPoint a(random_ball_vec(n, rng, 0.9));
            BallPoint z(random_ball_vec(n, rng, 0.9));
            BallPoint za = mobius(a, a);
            CHECK(za.abs() < 1e-12);
            BallPoint at0 = mobius(a, BallPoint::origin(n));
            for (int j = 0; j < n; ++j)
                CHECK(std::abs(at0.z[size_t(j)] - a.z[size_t(j)]) < 1e-12);
            BallPoint round = mobius(a, mobius(a, z));
            for (int j = 0; j < n; ++j)
                CHECK(std::abs(round.z[size_t(j)] - z.z[size_t(j)]) < 1e-12);
        }
    }
    // phi_0 = -id
    BallPoint z(CVec{Cx(0.3, 0.2)});
    BallPoint m = mobius(BallPoint::origin(1), z);
    CHECK(std::abs(m.z[0] + z.z[0]) < 1e-15);
}

TEST_CASE("bergman metric") {
    std::mt19937_64 rng(17);
    for (int n : {1, 2}) {
        for (int i = 0; i < 15; ++i) {
            BallPoint z(random_ball_vec(n, rng, 0.95));
            BallPoint w(random_ball_vec(n, rng, 0.95));
            CHECK(bergman_metric(z, z) == 0.0);
            // symmetry: the mobius-modulus route is symmetric
            CHECK(std::abs(bergman_metric(z, w) - bergman_metric(w, z)) < 1e-12);
            // against the explicit mobius magnitude
            double rho = mobius(z, w).abs();
            double direct = 0.5 * std::log((1.0 + rho) / (1.0 - rho));
            CHECK(std::abs(bergman_metric(z, w) - direct) < 1e-10);
        }
        // beta(0,z) = (1/2) log((1+|z|)/(1-|z|))
        BallPoint z(random_ball_vec(n, rng, 0.9));
        double expect = 0.5 * std::log((1.0 + z.abs()) / (1.0 - z.abs()));
        CHECK(std::abs(bergman_metric(BallPoint::origin(n), z) - expect) < 1e-12);
    }
}

TEST_CASE("bergman metric triangle inequality on sampled triples") {
    std::mt19937_64 rng(19);
    for (int n : {1, 2}) {
        for (int i = 0; i < 200; ++i) {
            BallPoint a(random_ball_vec(n, rng, 0.97));
            BallPoint b(random_ball_vec(n, rng, 0.97));
            BallPoint c(random_ball_vec(n, rng, 0.97));
            CHECK(bergman_metric(a, c) <=
                  bergman_metric(a, b) + bergman_metric(b, c) + 1e-9);
        }
    }
}

TEST_CASE("boundary slice measure") {
    // sigma(I(0)) = 1 by convention
    SphereRule rule = SphereRule::make(1, 512);
    SliceMeasure m0 = boundary_slice_measure(BallPoint::origin(1), Aperture(2.0), rule);
    CHECK(m0.value == 1.0);

    // closed form for n = 1: theta_max = 2 asin((1-rho) sqrt(2+rho) / 2)
    for (double rho : {0.3, 0.5, 0.7, 0.9}) {
        SliceMeasure m = boundary_slice_measure(bp1(Cx(rho)), Aperture(2.0),
                                                SphereRule::make(1, 16384));
        double theta_max = 2.0 * std::asin((1.0 - rho) * std::sqrt(2.0 + rho) / 2.0);
        CHECK(m.value == doctest::Approx(theta_max / kPi).epsilon(0.02));
        CHECK_FALSE(m.low_confidence);
    }

    // ratio sigma(I(z)) / (1-|z|^2)^n stays in a narrow band over radii
    std::vector<double> ratios;
    for (int i = 0; i < 10; ++i) {
        double rho = 0.3 + 0.069 * i;
        SliceMeasure m = boundary_slice_measure(bp1(Cx(rho)), Aperture(2.0),
                                                SphereRule::make(1, 8192));
        ratios.push_back(m.value / (1.0 - rho * rho));
    }
    double lo = *std::min_element(ratios.begin(), ratios.end());
    double hi = *std::max_element(ratios.begin(), ratios.end());
    CHECK(hi / lo < 2.0);

    // rotation invariance
    SliceMeasure ma = boundary_slice_measure(bp1(Cx(0.6)), Aperture(2.0), rule);
    SliceMeasure mb =
        boundary_slice_measure(bp1(0.6 * Cx(std::cos(1.1), std::sin(1.1))), Aperture(2.0), rule);
    CHECK(ma.value == doctest::Approx(mb.value).epsilon(0.05));
}
