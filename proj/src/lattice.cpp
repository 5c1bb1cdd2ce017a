#include "tentlab/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace tentlab {

namespace {

double artanh(double x) { return 0.5 * std::log((1.0 + x) / (1.0 - x)); }

}  // namespace

struct LatticeBuilder {
    static void add_point(Lattice& Z, std::initializer_list<Cx> cs) {
        for (const Cx& c : cs) Z.coords_.push_back(c);
        double s = 0;
        for (const Cx& c : cs) s += std::norm(c);
        Z.omz2_.push_back(1.0 - s);
    }
    static std::vector<Lattice::Ring>& rings(Lattice& Z) { return Z.rings_; }
    static const std::vector<Lattice::Ring>& rings(const Lattice& Z) { return Z.rings_; }
};

Lattice generate_lattice(int n, double r, double eps_trunc) {
    if (n != 1 && n != 2) throw std::invalid_argument("generate_lattice: n in {1,2}");
    if (!(r > 0.0 && r < 1.0))
        throw std::invalid_argument("generate_lattice: 0 < r < 1 required");
    if (!(eps_trunc > 0.0 && eps_trunc < 1.0))
        throw std::invalid_argument("generate_lattice: eps_trunc in (0,1) required");
    if (n == 2 && eps_trunc < 0.02)
        throw std::invalid_argument("generate_lattice: n=2 supports eps_trunc >= 0.02");

    Lattice Z;
    Z.n = n;
    Z.r = r;
    Z.eps_trunc = eps_trunc;

    const double u_max = artanh(1.0 - eps_trunc);

    if (n == 1) {
        // Staggered rings: radial pitch 1.2 r, in-ring pitch <= 1.4 r. The
        // hexagonal covering radius ~0.92 r leaves margin under r even
        // without stagger; separation stays >= 0.7 r.
        const double du = 1.2 * r;
        const double pitch = 1.4 * r;
        LatticeBuilder::add_point(Z, {Cx(0.0)});
        LatticeBuilder::rings(Z).push_back({0.0, 0.0, 0, 1, 0.0});
        for (int i = 1;; ++i) {
            double u = du * double(i);
            double rho = std::tanh(u);
            double circumference = kPi * std::sinh(2.0 * u);
            size_t cnt = size_t(std::max(1.0, std::ceil(circumference / pitch)));
            double offset = (i % 2 == 1) ? kPi / double(cnt) : 0.0;
            size_t start = Z.count();
            for (size_t j = 0; j < cnt; ++j) {
                double t = offset + 2.0 * kPi * double(j) / double(cnt);
                LatticeBuilder::add_point(Z, {rho * Cx(std::cos(t), std::sin(t))});
            }
            LatticeBuilder::rings(Z).push_back({u, rho, start, cnt, offset});
            if (u >= u_max) break;
        }
    } else {
        // Product shells with Bergman pitch ~0.7 r per direction: the phase
        // circle has length 2 pi rho/(1-rho^2), tangential directions scale
        // by sqrt(1-rho^2).
        const double pitch = 0.7 * r;
        LatticeBuilder::add_point(Z, {Cx(0.0), Cx(0.0)});
        LatticeBuilder::rings(Z).push_back({0.0, 0.0, 0, 1, 0.0});
        for (int i = 1;; ++i) {
            double u = pitch * double(i);
            double rho = std::tanh(u);
            double om = 1.0 - rho * rho;
            size_t start = Z.count();
            int n_eta = std::max(1, int(std::ceil((kPi / 2.0) * rho / std::sqrt(om) / pitch)));
            for (int ie = 0; ie < n_eta; ++ie) {
                double eta = (kPi / 2.0) * (double(ie) + 0.5) / double(n_eta);
                double ce = std::cos(eta), se = std::sin(eta);
                int n1 = std::max(1, int(std::ceil(2.0 * kPi * rho * ce *
                                                   std::sqrt(om + sq(rho * ce)) / om / pitch)));
                int n2 = std::max(1, int(std::ceil(2.0 * kPi * rho * se *
                                                   std::sqrt(om + sq(rho * se)) / om / pitch)));
                for (int j1 = 0; j1 < n1; ++j1) {
                    double t1 = 2.0 * kPi * (double(j1) + 0.5 * (i % 2)) / double(n1);
                    for (int j2 = 0; j2 < n2; ++j2) {
                        double t2 = 2.0 * kPi * (double(j2) + 0.5 * (ie % 2)) / double(n2);
                        LatticeBuilder::add_point(
                            Z, {rho * ce * Cx(std::cos(t1), std::sin(t1)),
                                rho * se * Cx(std::cos(t2), std::sin(t2))});
                    }
                }
            }
            LatticeBuilder::rings(Z).push_back({u, rho, start, Z.count() - start, 0.0});
            if (u >= u_max) break;
        }
    }

    LatticeCheck chk = verify_lattice(Z, 4000, 0x5eedULL);
    if (!chk.covering_ok) {
        std::ostringstream os;
        os << "generate_lattice: covering check failed (worst gap " << chk.worst_cover_gap
           << " >= r = " << r << ")";
        throw std::runtime_error(os.str());
    }
    if (!chk.separation_ok)
        throw std::runtime_error("generate_lattice: separation check failed");
    Z.n_obs = chk.n_obs;
    return Z;
}

size_t Lattice::cell_index(std::span<const Cx> z) const {
    double best = std::numeric_limits<double>::infinity();
    size_t arg = 0;
    const double uz = artanh(std::min(euclid_norm(z), 1.0 - 1e-15));
    for (const Ring& ring : rings_) {
        if (std::abs(ring.u - uz) >= best) continue;  // radial distance lower bound
        if (n == 1 && ring.count > 8) {
            // Angular window from |1-z conj(a)|^2 >= 4 rho_1 rho_2 sin^2(d/2).
            double rho_z = std::tanh(uz);
            if (ring.rho > 0.0 && rho_z > 0.0 && best < 50.0) {
                double tb = std::tanh(best);
                double lim = (1.0 / (1.0 - tb * tb)) * (1.0 - sq(ring.rho)) *
                             (1.0 - sq(rho_z)) / (4.0 * ring.rho * rho_z);
                if (lim < 1.0) {
                    double half = 2.0 * std::asin(std::sqrt(std::max(lim, 0.0)));
                    double tz = std::arg(z[0]);
                    double tpitch = 2.0 * kPi / double(ring.count);
                    long j0 = lround((tz - ring.offset) / tpitch);
                    long w = long(std::ceil(half / tpitch)) + 1;
                    for (long j = j0 - w; j <= j0 + w; ++j) {
                        size_t idx = ring.start +
                                     size_t((j % long(ring.count) + long(ring.count)) %
                                            long(ring.count));
                        double d = bergman_metric_raw(z, point(idx));
                        if (d < best) {
                            best = d;
                            arg = idx;
                        } else if (d == best && idx < arg) {
                            arg = idx;
                        }
                    }
                    continue;
                }
            }
        }
        for (size_t j = ring.start; j < ring.start + ring.count; ++j) {
            double d = bergman_metric_raw(z, point(j));
            if (d < best) {
                best = d;
                arg = j;
            } else if (d == best && j < arg) {
                arg = j;
            }
        }
    }
    return arg;
}

nlohmann::json Lattice::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["r"] = r;
    j["eps_trunc"] = eps_trunc;
    j["N_obs"] = n_obs;
    auto& pts = j["points"] = nlohmann::json::array();
    for (size_t k = 0; k < count(); ++k) {
        nlohmann::json p = nlohmann::json::array();
        for (const Cx& c : point(k)) p.push_back({c.real(), c.imag()});
        pts.push_back(std::move(p));
    }
    return j;
}

namespace {

// Half-angle window on a ring of Euclidean radius rho_a: points farther than
// `bound` in the metric from any z at radius rho_z are excluded by
// |1 - <z,a>|^2 >= 4 rho_a rho_z sin^2(delta/2). Returns pi when everything
// may qualify.
double ring_angular_window(double rho_a, double rho_z, double bound) {
    if (rho_a <= 0.0 || rho_z <= 0.0 || bound >= 20.0) return kPi;
    double tb = std::tanh(bound);
    double lim = (1.0 - rho_a * rho_a) * (1.0 - rho_z * rho_z) /
                 (4.0 * rho_a * rho_z * (1.0 - tb * tb));
    if (lim >= 1.0) return kPi;
    return 2.0 * std::asin(std::sqrt(std::max(lim, 0.0)));
}

}  // namespace

LatticeCheck verify_lattice(const Lattice& Z, size_t samples, uint64_t seed) {
    LatticeCheck out;
    out.samples = samples;
    const int n = Z.n;
    const double four_r = 4.0 * Z.r;
    const auto& rings = LatticeBuilder::rings(Z);

    // Separation. Cross-shell pairs are at least the radial pitch apart
    // (radial coordinate differences lower-bound the metric), so only
    // in-shell neighbors can approach r/2.
    double min_sep = std::numeric_limits<double>::infinity();
    for (size_t ri = 1; ri < rings.size(); ++ri)
        min_sep = std::min(min_sep, rings[ri].u - rings[ri - 1].u);
    for (const auto& ring : rings) {
        if (ring.count < 2) continue;
        if (n == 1) {
            // uniform ring: one consecutive pair represents them all
            min_sep = std::min(min_sep,
                               bergman_metric_raw(Z.point(ring.start), Z.point(ring.start + 1)));
        } else {
            // demo-scale shells: exact up to 2000 points, strided beyond
            size_t step = ring.count <= 2000 ? 1 : ring.count / 2000;
            for (size_t a = ring.start; a < ring.start + ring.count; a += step) {
                size_t hi = std::min(ring.start + ring.count, a + 64);
                for (size_t b = a + 1; b < hi; ++b)
                    min_sep = std::min(min_sep, bergman_metric_raw(Z.point(a), Z.point(b)));
            }
        }
    }
    out.min_separation = min_sep;
    out.separation_ok = min_sep >= Z.r / 2.0;

    // Independent samples: uniform in volume plus a boundary-graded batch so
    // the outer shells are exercised.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double R = 1.0 - Z.eps_trunc;
    long worst_mult = 0;
    double worst_gap = 0.0;
    bool covering = true;
    for (size_t s = 0; s < samples; ++s) {
        double rr;
        if (s % 3 == 2) {
            double g = std::pow(Z.eps_trunc, u01(rng));  // log-uniform gap in [eps,1]
            rr = std::min(R, 1.0 - g);
        } else {
            rr = R * std::pow(u01(rng), 1.0 / (2.0 * n));
        }
        CVec z(size_t(n), Cx(0.0));
        double t1 = 2.0 * kPi * u01(rng);
        if (n == 1) {
            z[0] = rr * Cx(std::cos(t1), std::sin(t1));
        } else {
            double x = u01(rng);
            double t2 = 2.0 * kPi * u01(rng);
            z[0] = rr * std::sqrt(1.0 - x) * Cx(std::cos(t1), std::sin(t1));
            z[1] = rr * std::sqrt(x) * Cx(std::cos(t2), std::sin(t2));
        }
        std::span<const Cx> zs{z.data(), z.size()};

        double nearest = std::numeric_limits<double>::infinity();
        long mult = 0;
        const double uz = artanh(rr);
        const double rho_z = rr;
        for (const auto& ring : rings) {
            double radial = std::abs(ring.u - uz);
            if (radial >= four_r && radial >= nearest) continue;
            if (n == 1 && ring.count > 16) {
                double half = ring_angular_window(ring.rho, rho_z,
                                                  std::max(four_r, std::min(nearest, 20.0)));
                if (half < kPi) {
                    double pitch = 2.0 * kPi / double(ring.count);
                    long j0 = std::lround((t1 - ring.offset) / pitch);
                    long wdw = long(std::ceil(half / pitch)) + 1;
                    for (long j = j0 - wdw; j <= j0 + wdw; ++j) {
                        size_t idx = ring.start +
                                     size_t((j % long(ring.count) + long(ring.count)) %
                                            long(ring.count));
                        double d = bergman_metric_raw(zs, Z.point(idx));
                        nearest = std::min(nearest, d);
                        if (d < four_r) ++mult;
                    }
                    continue;
                }
            }
            for (size_t k = ring.start; k < ring.start + ring.count; ++k) {
                double d = bergman_metric_raw(zs, Z.point(k));
                nearest = std::min(nearest, d);
                if (d < four_r) ++mult;
            }
        }
        worst_gap = std::max(worst_gap, nearest);
        worst_mult = std::max(worst_mult, mult);
        if (!(nearest < Z.r)) covering = false;
    }
    out.covering_ok = covering;
    out.worst_cover_gap = worst_gap;
    out.n_obs = worst_mult;
    return out;
}

SeqTent::SeqTent(const Lattice& Z, std::vector<Cx> v) : lattice(&Z), values(std::move(v)) {
    if (values.size() != Z.count())
        throw std::invalid_argument("SeqTent: length must match the lattice");
}

double seq_tent_norm(const SeqTent& c, double p, double q, const SphereRule& sphere,
                     const Aperture& gamma) {
    const Lattice& Z = *c.lattice;
    const auto& sw = sphere.weights();
    std::vector<double> terms(sphere.count());
    for (size_t s = 0; s < sphere.count(); ++s) {
        auto zeta = sphere.node(s);
        double acc = 0.0, best = 0.0;
        for (size_t k = 0; k < Z.count(); ++k) {
            if (!in_approach_region(zeta, gamma.gamma, Z.point(k), Z.one_minus_abs2(k)))
                continue;
            double a = std::abs(c.values[k]);
            if (q == kInf)
                best = std::max(best, a);
            else
                acc += std::pow(a, q);
        }
        terms[s] = sw[s] * (q == kInf ? std::pow(best, p) : std::pow(acc, p / q));
    }
    return std::pow(pairwise_sum(terms), 1.0 / p);
}

Cx seq_pairing(const SeqTent& c, const SeqTent& d) {
    if (c.lattice != d.lattice)
        throw std::invalid_argument("seq_pairing: sequences on different lattices");
    const Lattice& Z = *c.lattice;
    std::vector<Cx> terms(Z.count());
    for (size_t k = 0; k < Z.count(); ++k)
        terms[k] = c.values[k] * std::conj(d.values[k]) *
                   std::pow(Z.one_minus_abs2(k), double(Z.n));
    return pairwise_sum(terms);
}

HoloFunction atomic_synthesis(const SeqTent& c, double theta, const SpaceParams& sp) {
    const Lattice& Z = *c.lattice;
    const double bound =
        double(sp.n) * std::max({1.0, sp.q / sp.p, 1.0 / sp.p, 1.0 / sp.q});
    if (!(theta > bound))
        throw std::invalid_argument("atomic_synthesis: theta > n max(1,q/p,1/p,1/q) required");
    const double e = theta + (double(sp.n) + 1.0 + sp.alpha) / sp.q;
    TaylorPoly zero(sp.n);
    std::vector<KernelAtom> atoms;
    for (size_t k = 0; k < Z.count(); ++k) {
        if (c.values[k] == Cx(0.0)) continue;
        KernelAtom a;
        a.pole = CVec(Z.point(k).begin(), Z.point(k).end());
        a.e = e;
        a.c = c.values[k] * std::pow(Z.one_minus_abs2(k), theta);
        atoms.push_back(std::move(a));
    }
    return HoloFunction(std::move(zero), std::move(atoms));
}

namespace {

// Cell weights int_{D_k} (1-|z|^2)^{theta+alpha} dV by nearest-center
// restriction of the rule; starved cells fall back to a local box rule.
std::vector<double> cell_weights(const Lattice& Z, double exponent, const BallRule& rule) {
    std::vector<double> w(Z.count(), 0.0);
    std::vector<long> hits(Z.count(), 0);
    for (size_t i = 0; i < rule.count(); ++i) {
        size_t k = Z.cell_index(rule.point(i));
        w[k] += rule.weight(i) * std::pow(rule.one_minus_abs2(i), exponent);
        ++hits[k];
    }
    const int n = Z.n;
    const double ball_volume_norm = (n == 1) ? kPi : kPi * kPi / 2.0;
    for (size_t k = 0; k < Z.count(); ++k) {
        if (hits[k] > 0) continue;
        // Deterministic local box sample around the center, filtered back
        // through the cell assignment.
        const double t = std::tanh(Z.r);
        const double om = Z.one_minus_abs2(k);
        const double h = 1.5 * t * om / (1.0 - t * t * (1.0 - om));
        const int grid = 6;
        double acc = 0.0;
        CVec u(size_t(n), Cx(0.0));
        const double cellv = std::pow(2.0 * h, 2.0 * n) / ball_volume_norm /
                             std::pow(double(grid), 2.0 * n);
        std::vector<double> offs(size_t(grid), 0.0);
        for (int g = 0; g < grid; ++g)
            offs[size_t(g)] = -h + 2.0 * h * (double(g) + 0.5) / double(grid);
        std::vector<int> idx(size_t(2 * n), 0);
        while (true) {
            for (int d = 0; d < n; ++d)
                u[size_t(d)] = Z.point(k)[size_t(d)] +
                               Cx(offs[size_t(idx[size_t(2 * d)])],
                                  offs[size_t(idx[size_t(2 * d + 1)])]);
            double nz = norm_sq({u.data(), u.size()});
            if (nz < 1.0 && Z.cell_index({u.data(), u.size()}) == k)
                acc += cellv * std::pow(1.0 - nz, exponent);
            int d = 0;
            for (; d < 2 * n; ++d) {
                if (++idx[size_t(d)] < grid) break;
                idx[size_t(d)] = 0;
            }
            if (d == 2 * n) break;
        }
        w[k] = acc;
    }
    return w;
}

}  // namespace

SeqTent atomic_analysis(const HoloFunction& f, const Lattice& Z, double theta, double alpha,
                        const BallRule& rule) {
    const double cnst = ProjParams(theta + alpha, Z.n).constant();
    std::vector<double> w = cell_weights(Z, theta + alpha, rule);
    std::vector<Cx> c(Z.count());
    for (size_t k = 0; k < Z.count(); ++k)
        c[k] = cnst * w[k] * f.evaluate(Z.point(k)) *
               std::pow(Z.one_minus_abs2(k), -theta);
    return SeqTent(Z, std::move(c));
}

NeumannResult neumann_reconstruct(const HoloFunction& f, const Lattice& Z, double theta,
                                  double alpha, int max_iter, double tol,
                                  const BallRule& rule) {
    const int n = Z.n;
    const size_t K = Z.count();
    const double E = theta + double(n) + 1.0 + alpha;  // q = 1 atom exponent
    const double cnst = ProjParams(theta + alpha, n).constant();
    std::vector<double> w = cell_weights(Z, theta + alpha, rule);
    for (double& x : w) x *= cnst;

    // Evaluation grid for the sampled sup-norm residual on |z| <= 0.9.
    std::vector<CVec> samples;
    for (double rr : {0.0, 0.25, 0.5, 0.7, 0.85, 0.9}) {
        int na = rr == 0.0 ? 1 : 24;
        for (int j = 0; j < na; ++j) {
            double t = 2.0 * kPi * double(j) / double(na);
            CVec z(size_t(n), Cx(0.0));
            z[0] = rr * Cx(std::cos(t), std::sin(t));
            if (n == 2 && j % 2 == 1) std::swap(z[0], z[1]);
            samples.push_back(std::move(z));
        }
    }

    // G holds g_m at the lattice points; acc accumulates sum_m G_m, which
    // scales the fixed atom family in the final approximation.
    std::vector<Cx> G(K), acc(K, Cx(0.0));
    for (size_t k = 0; k < K; ++k) G[k] = f.evaluate(Z.point(k));

    auto kernel = [&](std::span<const Cx> z, size_t k) {
        Cx base = 1.0 - hermitian_inner(z, Z.point(k));
        return cpow(base, -E);
    };

    NeumannResult out;
    std::vector<Cx> STg(K);
    for (int it = 0; it < max_iter; ++it) {
        for (size_t k = 0; k < K; ++k) acc[k] += G[k];
        // residual of the accumulated approximation
        double res = 0.0;
        for (const CVec& z : samples) {
            Cx h = 0.0;
            for (size_t k = 0; k < K; ++k)
                h += w[k] * acc[k] * kernel({z.data(), z.size()}, k);
            res = std::max(res, std::abs(f.evaluate({z.data(), z.size()}) - h));
        }
        out.residuals.push_back(res);
        if (res < tol) break;
        if (out.residuals.size() > 3) {
            size_t m = out.residuals.size();
            if (out.residuals[m - 1] >= out.residuals[m - 2] &&
                out.residuals[m - 2] >= out.residuals[m - 3]) {
                out.diverged = true;
                break;
            }
        }
        // G_{m+1} = G_m - (S T) G_m evaluated on the lattice
        for (size_t j = 0; j < K; ++j) {
            Cx s = 0.0;
            for (size_t k = 0; k < K; ++k)
                s += w[k] * G[k] * kernel(Z.point(j), k);
            STg[j] = s;
        }
        for (size_t k = 0; k < K; ++k) G[k] -= STg[k];
    }

    TaylorPoly zero(n);
    std::vector<KernelAtom> atoms;
    for (size_t k = 0; k < K; ++k) {
        KernelAtom a;
        a.pole = CVec(Z.point(k).begin(), Z.point(k).end());
        a.e = E;
        a.c = w[k] * acc[k];
        atoms.push_back(std::move(a));
    }
    out.approximation = HoloFunction(std::move(zero), std::move(atoms));
    return out;
}

}  // namespace tentlab
