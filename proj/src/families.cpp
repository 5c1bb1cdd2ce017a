#include "tentlab/families.hpp"

namespace tentlab {

std::vector<double> geometric_schedule(double from, double to, int count) {
    if (count < 1) throw std::invalid_argument("geometric_schedule: count >= 1");
    std::vector<double> out;
    if (count == 1) {
        out.push_back(from);
        return out;
    }
    for (int i = 0; i < count; ++i)
        out.push_back(from * std::pow(to / from, double(i) / double(count - 1)));
    return out;
}

namespace {

CVec direction(int n, double t, double x) {
    CVec d(size_t(n), Cx(0.0));
    if (n == 1) {
        d[0] = Cx(std::cos(t), std::sin(t));
    } else {
        d[0] = std::sqrt(1.0 - x) * Cx(std::cos(t), std::sin(t));
        d[1] = std::sqrt(x) * Cx(std::cos(2.1 * t + 0.7), std::sin(2.1 * t + 0.7));
    }
    return d;
}

}  // namespace

TestFamily random_polynomials(int n, int count, int max_degree, uint64_t seed) {
    TestFamily fam;
    fam.name = "random_polys";
    fam.seed = seed;
    std::mt19937_64 rng(seed);
    auto indices = MultiIndex::up_to_order(n, max_degree);
    for (int i = 0; i < count; ++i) {
        TaylorPoly p(n);
        for (const auto& m : indices) p.set(m, random_unit_disk(rng));
        fam.members.emplace_back(std::move(p));
        fam.boundary_param.push_back(1.0);
    }
    return fam;
}

TestFamily kernel_atoms(int n, double exponent, const std::vector<double>& eps_schedule,
                        uint64_t seed) {
    TestFamily fam;
    fam.name = "kernel_atoms";
    fam.seed = seed;
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    int i = 0;
    for (double eps : eps_schedule) {
        KernelAtom a;
        a.pole = direction(n, golden * double(i) + 0.37, 0.35 + 0.3 * ((i * 7) % 3) / 2.0);
        for (Cx& c : a.pole) c *= (1.0 - eps);
        a.e = exponent;
        a.c = 1.0;
        fam.members.emplace_back(std::move(a));
        fam.boundary_param.push_back(eps);
        ++i;
    }
    return fam;
}

TestFamily bergman_kernels(int n, double alpha, const std::vector<double>& eps_schedule,
                           uint64_t seed) {
    TestFamily fam = kernel_atoms(n, 1.0 + 2.0 * n + alpha, eps_schedule, seed);
    fam.name = "bergman_kernels";
    const double c = ProjParams(double(n) + alpha, n).constant();
    for (auto& f : fam.members) {
        KernelAtom a = f.atoms().front();
        a.c = c;
        f = HoloFunction(a);
    }
    return fam;
}

TaylorPoly log_kernel_poly(int n, const CVec& dir, int degree) {
    // -log(1-w) = sum_{k>=1} w^k / k with w = <z,dir>; the multinomial
    // expansion mirrors the atom truncation.
    TaylorPoly p(n);
    for (const auto& m : MultiIndex::up_to_order(n, degree)) {
        int k = m.order();
        if (k == 0) continue;
        Cx am = 1.0;
        for (int j = 0; j < n; ++j) am *= ipow(std::conj(dir[size_t(j)]), m.m[size_t(j)]);
        if (am == Cx(0.0)) continue;
        p.set(m, am * factorial(k - 1) / m.factorial());
    }
    return p;
}

TestFamily truncated_logs(int n, int degree, int count, uint64_t seed) {
    TestFamily fam;
    fam.name = "truncated_logs";
    fam.seed = seed;
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
        fam.members.emplace_back(log_kernel_poly(n, direction(n, golden * i + 0.11, 0.4), degree));
        fam.boundary_param.push_back(1.0);
    }
    return fam;
}

TestFamily truncated_atoms(int n, double exponent, const std::vector<double>& eps_schedule,
                           int degree, uint64_t seed) {
    TestFamily fam = kernel_atoms(n, exponent, eps_schedule, seed);
    fam.name = "truncated_atoms";
    for (auto& f : fam.members)
        f = HoloFunction(truncate_atom(f.atoms().front(), degree).poly);
    return fam;
}

TestFamily mixed_family(int n, double atom_exponent, int count, uint64_t seed) {
    TestFamily fam;
    fam.name = "mixed";
    fam.seed = seed;
    TestFamily polys = random_polynomials(n, (count + 1) / 2, 6, seed);
    TestFamily atoms = kernel_atoms(n, atom_exponent,
                                    geometric_schedule(0.5, 0.05, count / 2), seed ^ 0x9e37ULL);
    for (size_t i = 0; i < polys.size(); ++i) {
        fam.members.push_back(polys.members[i]);
        fam.boundary_param.push_back(1.0);
    }
    for (size_t i = 0; i < atoms.size(); ++i) {
        fam.members.push_back(atoms.members[i]);
        fam.boundary_param.push_back(atoms.boundary_param[i]);
    }
    return fam;
}

std::vector<MixedPoly> random_conj_mixtures(int n, int count, int max_order, uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto indices = MultiIndex::up_to_order(n, max_order);
    std::vector<MixedPoly> out;
    for (int i = 0; i < count; ++i) {
        MixedPoly F(n);
        for (const auto& a : indices)
            for (const auto& b : indices)
                if (a.order() + b.order() <= max_order) F.add(a, b, random_unit_disk(rng));
        out.push_back(std::move(F));
    }
    return out;
}

}  // namespace tentlab
