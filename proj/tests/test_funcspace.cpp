#include "doctest.h"
#include "tentlab/funcspace.hpp"
#include "tentlab/operators.hpp"

using namespace tentlab;

namespace {

HoloFunction monomial(int n, std::vector<int> m, Cx c = 1.0) {
    return HoloFunction(TaylorPoly::monomial(n, MultiIndex(std::move(m)), c));
}

std::mt19937_64 rng_for(uint64_t s) { return std::mt19937_64(s); }

HoloFunction random_poly(int n, int deg, std::mt19937_64& rng) {
    TaylorPoly p(n);
    for (const auto& m : MultiIndex::up_to_order(n, deg)) p.set(m, random_unit_disk(rng));
    return HoloFunction(p);
}

}  // namespace

TEST_CASE("evaluation") {
    CHECK(monomial(2, {2, 0}).evaluate(CVec{Cx(0.5), Cx(0.0)}) == Cx(0.25));

    // reproducing-kernel atom centered at 0 is the constant c(n, n+alpha)
    for (int n : {1, 2}) {
        double alpha = 0.5;
        KernelAtom b0;
        b0.pole = CVec(size_t(n), Cx(0.0));
        b0.e = 1.0 + 2.0 * n + alpha;
        b0.c = ProjParams(double(n) + alpha, n).constant();
        HoloFunction f(b0);
        CVec z(size_t(n), Cx(0.1));
        CHECK(std::abs(f.evaluate({z.data(), z.size()}) - Cx(b0.c)) < 1e-14);
    }

    KernelAtom a;
    a.pole = CVec{Cx(1.0)};  // boundary-limit pole
    a.e = 2.0;
    a.c = 1.0;
    CHECK(std::abs(a.evaluate(CVec{Cx(0.5)}) - Cx(4.0)) < 1e-13);
}

TEST_CASE("gradient") {
    CHECK(monomial(2, {1, 0}).gradient(CVec{Cx(0.3), Cx(0.1)})[0] == Cx(1.0));
    CHECK(monomial(2, {1, 0}).gradient(CVec{Cx(0.3), Cx(0.1)})[1] == Cx(0.0));

    KernelAtom geo;
    geo.pole = CVec{Cx(1.0)};
    geo.e = 1.0;
    geo.c = 1.0;
    CHECK(std::abs(HoloFunction(geo).gradient(CVec{Cx(0.0)})[0] - Cx(1.0)) < 1e-14);

    // central finite differences match the exact gradient
    auto rng = rng_for(3);
    for (int n : {1, 2}) {
        HoloFunction f = random_poly(n, 5, rng);
        KernelAtom at;
        at.pole = CVec(size_t(n), Cx(0.0));
        at.pole[0] = Cx(0.4, 0.3);
        at.e = 2.7;
        at.c = Cx(0.5, -0.2);
        f += HoloFunction(at);
        CVec z(size_t(n), Cx(0.2, -0.1));
        const double h = 1e-6;
        CVec grad = f.gradient({z.data(), z.size()});
        for (int j = 0; j < n; ++j) {
            CVec zp = z, zm = z;
            zp[size_t(j)] += h;
            zm[size_t(j)] -= h;
            Cx fd_re = (f.evaluate({zp.data(), zp.size()}) -
                        f.evaluate({zm.data(), zm.size()})) /
                       (2.0 * h);
            CHECK(std::abs(grad[size_t(j)] - fd_re) < 1e-6);
        }
    }
}

TEST_CASE("dilation") {
    auto rng = rng_for(5);
    HoloFunction f = random_poly(1, 6, rng);
    // coefficient multiplier r^{|m|}
    HoloFunction fr = f.dilate(0.7);
    for (const auto& [m, c] : f.poly().coefficients())
        CHECK(std::abs(fr.poly().coefficient(m) - c * std::pow(0.7, m.order())) < 1e-15);

    // f_r(z) = f(rz) including atoms
    KernelAtom at;
    at.pole = CVec{Cx(0.6, 0.5)};
    at.e = 3.0;
    at.c = 1.0;
    f += HoloFunction(at);
    HoloFunction g = f.dilate(0.9);
    for (double x : {0.1, -0.4, 0.8}) {
        CVec z{Cx(x, 0.05)};
        CVec rz{0.9 * z[0]};
        CHECK(std::abs(g.evaluate({z.data(), z.size()}) -
                       f.evaluate({rz.data(), rz.size()})) < 1e-12);
    }
    // atom pole scales by r
    CHECK(std::abs(g.atoms().front().pole[0] - 0.9 * at.pole[0]) < 1e-15);

    // composition is exact on representations
    HoloFunction two_step = f.dilate(0.8).dilate(0.5);
    HoloFunction one_step = f.dilate(0.4);
    for (const auto& [m, c] : one_step.poly().coefficients())
        CHECK(std::abs(two_step.poly().coefficient(m) - c) < 1e-15);
    CHECK(std::abs(two_step.atoms().front().pole[0] - one_step.atoms().front().pole[0]) <
          1e-15);
}

TEST_CASE("atom truncation") {
    // e = 1, pole at the boundary: geometric series, all coefficients 1
    KernelAtom geo;
    geo.pole = CVec{Cx(1.0)};
    geo.e = 1.0;
    geo.c = 1.0;
    TruncationReport rep = truncate_atom(geo, 8);
    for (int k = 0; k <= 8; ++k)
        CHECK(std::abs(rep.poly.coefficient(MultiIndex({k})) - Cx(1.0)) < 1e-14);

    // e = 2: coefficient of z^k is (k+1) conj(a)^k
    KernelAtom sq;
    sq.pole = CVec{Cx(0.4, 0.2)};
    sq.e = 2.0;
    sq.c = 1.0;
    TruncationReport rep2 = truncate_atom(sq, 10);
    for (int k = 0; k <= 10; ++k) {
        Cx expect = double(k + 1) * ipow(std::conj(sq.pole[0]), k);
        CHECK(std::abs(rep2.poly.coefficient(MultiIndex({k})) - expect) < 1e-13);
    }

    // n = 2 truncation against direct evaluation within the tail bound
    KernelAtom a2;
    a2.pole = CVec{Cx(0.5, 0.2), Cx(-0.3, 0.4)};
    a2.e = 4.0;  // n+1+s with s = 1
    a2.c = Cx(1.0, 0.5);
    TruncationReport rep3 = truncate_atom(a2, 30);
    CHECK(rep3.bound_valid);
    std::span<const Cx> pole{a2.pole.data(), a2.pole.size()};
    for (double scale : {0.1, 0.3, 0.5, 0.65}) {
        CVec z{scale * Cx(0.8, 0.1), scale * Cx(0.2, -0.5)};
        double zn = euclid_norm({z.data(), z.size()});
        if (zn * euclid_norm(pole) > 0.5) continue;
        Cx direct = a2.evaluate({z.data(), z.size()});
        Cx trunc = rep3.poly.evaluate({z.data(), z.size()});
        CHECK(std::abs(direct - trunc) <= rep3.tail_bound + 1e-13);
    }

    // geometric convergence in the degree at interior points
    KernelAtom mid;
    mid.pole = CVec{Cx(0.7)};
    mid.e = 2.5;
    mid.c = 1.0;
    for (double x : {0.1, -0.3, 0.5, 0.62, -0.66}) {
        CVec z{Cx(x)};
        double prev = 1e300;
        for (int D : {10, 20, 30, 40}) {
            double err = std::abs(truncate_atom(mid, D).poly.evaluate({z.data(), z.size()}) -
                                  mid.evaluate({z.data(), z.size()}));
            CHECK(err < std::max(prev * 0.5, 1e-14));
            prev = err;
        }
    }

    CHECK_THROWS_AS(truncate_atom(geo, 100), std::invalid_argument);
}

TEST_CASE("linearity of evaluation and gradient") {
    auto rng = rng_for(9);
    HoloFunction f = random_poly(2, 4, rng), g = random_poly(2, 4, rng);
    Cx a(0.7, -0.3), b(-0.2, 1.1);
    HoloFunction fa = f, gb = g;
    fa *= a;
    gb *= b;
    HoloFunction lin = fa + gb;
    CVec z{Cx(0.2, 0.1), Cx(-0.3, 0.25)};
    std::span<const Cx> zs{z.data(), z.size()};
    CHECK(std::abs(lin.evaluate(zs) - (a * f.evaluate(zs) + b * g.evaluate(zs))) < 1e-13);
    CVec gl = lin.gradient(zs), gf = f.gradient(zs), gg = g.gradient(zs);
    for (int j = 0; j < 2; ++j)
        CHECK(std::abs(gl[size_t(j)] - (a * gf[size_t(j)] + b * gg[size_t(j)])) < 1e-13);
}

TEST_CASE("serialization round trip") {
    auto rng = rng_for(21);
    for (int n : {1, 2}) {
        HoloFunction f = random_poly(n, 4, rng);
        KernelAtom at;
        at.pole = CVec(size_t(n), Cx(0.0));
        at.pole[0] = Cx(0.3, -0.6);
        at.e = 3.25;
        at.c = Cx(-0.4, 0.9);
        f += HoloFunction(at);
        HoloFunction back = HoloFunction::from_json(f.to_json());
        for (int i = 0; i < 10; ++i) {
            CVec z(size_t(n), Cx(0.0));
            z[0] = Cx(0.06 * i, -0.03 * i);
            std::span<const Cx> zs{z.data(), z.size()};
            CHECK(std::abs(f.evaluate(zs) - back.evaluate(zs)) < 1e-15);
        }
    }
}

TEST_CASE("fused batch evaluation matches pointwise evaluation") {
    auto rng = rng_for(23);
    HoloFunction f = random_poly(1, 5, rng);
    KernelAtom at;
    at.pole = CVec{Cx(0.5, 0.1)};
    at.e = 2.0;
    at.c = 1.0;
    f += HoloFunction(at);
    std::vector<Cx> coords;
    for (int i = 0; i < 50; ++i) coords.push_back(Cx(0.018 * i, -0.011 * i));
    auto vals = f.evaluate_many(coords, 1);
    for (size_t i = 0; i < coords.size(); ++i) {
        CVec z{coords[i]};
        CHECK(std::abs(vals[i] - f.evaluate({z.data(), z.size()})) < 1e-15);
    }
}
