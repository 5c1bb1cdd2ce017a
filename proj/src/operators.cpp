#include "tentlab/operators.hpp"

namespace tentlab {

namespace {

bool is_negative_integer(double x) {
    double r = std::round(x);
    return r <= -1.0 + 1e-12 && std::abs(x - r) < 1e-9;
}

}  // namespace

FracParams::FracParams(double s_, double t_, int n_) : s(s_), t(t_), n(n_) {
    if (n < 1) throw std::invalid_argument("FracParams: n >= 1 required");
    if (is_negative_integer(n + s) || is_negative_integer(n + s + t))
        throw std::invalid_argument(
            "FracParams: n+s and n+s+t must not be negative integers");
}

double frac_multiplier(const FracParams& fp, int k) {
    double lam = 1.0;
    for (int j = 0; j < k; ++j)
        lam *= (fp.n + 1 + fp.s + fp.t + j) / (fp.n + 1 + fp.s + j);
    return lam;
}

std::vector<double> frac_multipliers(const FracParams& fp, int max_order) {
    std::vector<double> lam(size_t(max_order) + 1, 1.0);
    for (int k = 0; k < max_order; ++k)
        lam[size_t(k) + 1] = lam[size_t(k)] * (fp.n + 1 + fp.s + fp.t + k) /
                             (fp.n + 1 + fp.s + k);
    return lam;
}

FracResult apply_frac(const FracParams& fp, const HoloFunction& f, FracMode mode,
                      int trunc_degree) {
    if (f.dim() != fp.n) throw std::invalid_argument("apply_frac: dimension mismatch");
    FracResult out;

    // Matched exponent for exact atom handling: the derivative acts on
    // exponent n+1+s, the integral on n+1+s+t.
    const double matched =
        (mode == FracMode::derivative) ? fp.n + 1 + fp.s : fp.n + 1 + fp.s + fp.t;
    const double shift = (mode == FracMode::derivative) ? fp.t : -fp.t;

    TaylorPoly poly = f.poly();
    std::vector<KernelAtom> atoms;
    for (const KernelAtom& a : f.atoms()) {
        if (std::abs(a.e - matched) < 1e-12) {
            KernelAtom b = a;
            b.e += shift;
            atoms.push_back(std::move(b));
        } else {
            TruncationReport rep = truncate_atom(a, trunc_degree);
            poly += rep.poly;
            ++out.truncated_atoms;
            out.tail_bound += rep.tail_bound;
        }
    }

    auto lam = frac_multipliers(fp, std::max(poly.degree(), 0));
    poly.scale_by_order([&](int k) {
        double l = lam[size_t(k)];
        return Cx(mode == FracMode::derivative ? l : 1.0 / l);
    });

    out.f = HoloFunction(std::move(poly), std::move(atoms));
    return out;
}

double frac_integral_formula_check(const FracParams& fp, const TaylorPoly& f,
                                   const BallRule& rule, FracMode mode) {
    if (mode == FracMode::derivative) {
        if (!(fp.s > -1.0 && fp.t > 0.0))
            throw std::invalid_argument("formula check (derivative): s > -1, t > 0 required");
    } else {
        if (!(fp.t > 0.0 && fp.s + fp.t > -1.0))
            throw std::invalid_argument("formula check (integral): t > 0, s+t > -1 required");
    }
    const int n = fp.n;
    FracResult mr = apply_frac(fp, HoloFunction(f), mode);

    // Kernel-integral route at a grid of interior points.
    const double wexp = (mode == FracMode::derivative) ? fp.s : fp.s + fp.t;
    const double kexp = (mode == FracMode::derivative) ? 1 + n + fp.s + fp.t : 1 + n + fp.s;
    const double cst = ProjParams(wexp, n).constant();

    std::vector<BallPoint> zs;
    for (double r : {0.0, 0.2, 0.35, 0.5}) {
        if (r == 0.0) {
            zs.push_back(BallPoint::origin(n));
            continue;
        }
        for (int j = 0; j < 4; ++j) {
            double t = 2.0 * kPi * (double(j) + 0.3) / 4.0;
            CVec z(size_t(n), Cx(0.0));
            z[0] = r * Cx(std::cos(t), std::sin(t));
            if (n == 2) {
                z[0] *= std::sqrt(0.6);
                z[1] = r * std::sqrt(0.4) * Cx(std::cos(2 * t), std::sin(2 * t));
            }
            zs.push_back(BallPoint(std::move(z)));
        }
    }

    // First-order correction for the truncated radial tail: the integrand is
    // smooth in u for interior z, so the tail mass int_R^1 2n r^{2n-1}(1-r^2)^wexp dr
    // times the sphere average of the rest recovers an O(eps^2) bias.
    const double R = 1.0 - rule.eps_trunc();
    const double tail_mass =
        double(n) * std::pow(1.0 - R * R, wexp + 1.0) / (wexp + 1.0);
    SphereRule tail_sphere = SphereRule::make(n, n == 1 ? 64 : 12);

    double worst = 0.0;
    for (const BallPoint& z : zs) {
        auto zsp = z.span();
        Cx integral = cst * rule.integrate(wexp, [&](std::span<const Cx> u) {
            Cx base = 1.0 - hermitian_inner(zsp, u);
            return cpow(base, -kexp) * f.evaluate(u);
        });
        Cx rim = 0.0;
        CVec ru(size_t(n), Cx(0.0));
        tail_sphere.for_each([&](std::span<const Cx> zeta, double w) {
            for (int j = 0; j < n; ++j) ru[size_t(j)] = R * zeta[size_t(j)];
            Cx base = 1.0 - hermitian_inner(zsp, {ru.data(), ru.size()});
            rim += w * cpow(base, -kexp) * f.evaluate({ru.data(), ru.size()});
        });
        integral += cst * tail_mass * rim;
        worst = std::max(worst, std::abs(integral - mr.f.evaluate(zsp)));
    }
    return worst;
}

// --------------------------------------------------------------------------

ProjParams::ProjParams(double beta_, int n_) : beta(beta_), n(n_) {
    if (n < 1) throw std::invalid_argument("ProjParams: n >= 1 required");
    if (!(beta > -1.0)) throw std::invalid_argument("ProjParams: beta > -1 required");
}

void MixedPoly::add(const MultiIndex& a, const MultiIndex& b, Cx c) {
    if (a.dim() != n_ || b.dim() != n_)
        throw std::invalid_argument("MixedPoly: index dimension mismatch");
    auto key = std::make_pair(a, b);
    auto it = terms_.find(key);
    Cx v = (it == terms_.end() ? Cx(0.0) : it->second) + c;
    if (v == Cx(0.0)) {
        if (it != terms_.end()) terms_.erase(it);
    } else {
        terms_[key] = v;
    }
}

Cx MixedPoly::evaluate(std::span<const Cx> z) const {
    Cx s = 0.0;
    for (const auto& [ab, c] : terms_) {
        Cx t = c;
        for (int j = 0; j < n_; ++j) {
            t *= ipow(z[size_t(j)], ab.first.m[size_t(j)]);
            t *= ipow(std::conj(z[size_t(j)]), ab.second.m[size_t(j)]);
        }
        s += t;
    }
    return s;
}

MixedPoly MixedPoly::from_poly(const TaylorPoly& p) {
    MixedPoly F(p.dim());
    for (const auto& [m, c] : p.coefficients()) F.add(m, MultiIndex::zero(p.dim()), c);
    return F;
}

MixedPoly MixedPoly::conj_monomial(int n, const MultiIndex& b, Cx c) {
    MixedPoly F(n);
    F.add(MultiIndex::zero(n), b, c);
    return F;
}

double monomial_weighted_square_integral(int n, const MultiIndex& m, double beta) {
    const double c = ProjParams(beta, n).constant();
    return m.factorial() / (pochhammer(n + 1 + beta, m.order()) * c);
}

TaylorPoly project_poly(const ProjParams& pp, const MixedPoly& F) {
    const int n = F.dim();
    TaylorPoly out(n);
    for (const auto& [ab, c] : F.terms()) {
        const MultiIndex& a = ab.first;
        const MultiIndex& b = ab.second;
        bool ge = true;
        std::vector<int> diff(size_t(n), 0);
        for (int j = 0; j < n; ++j) {
            diff[size_t(j)] = a.m[size_t(j)] - b.m[size_t(j)];
            if (diff[size_t(j)] < 0) ge = false;
        }
        if (!ge) continue;  // orthogonal to the holomorphic monomials
        MultiIndex d(diff);
        // c(n,b) (n+1+b)_{|d|}/d! * int u^a conj(u)^a (1-|u|^2)^beta dV
        // collapses to a pure Pochhammer/factorial quotient.
        double scal = pochhammer(n + 1 + pp.beta, d.order()) * a.factorial() /
                      (d.factorial() * pochhammer(n + 1 + pp.beta, a.order()));
        out.add(d, c * scal);
    }
    return out;
}

Cx project_numeric(const ProjParams& pp, const std::function<Cx(std::span<const Cx>)>& F,
                   const BallPoint& z, const BallRule& rule) {
    if (1.0 - z.abs() < rule.eps_trunc())
        throw std::invalid_argument(
            "project_numeric: evaluation point inside the truncation shell");
    const double kexp = 1.0 + pp.n + pp.beta;
    auto zs = z.span();
    Cx v = rule.integrate(pp.beta, [&](std::span<const Cx> u) {
        Cx base = 1.0 - hermitian_inner(zs, u);
        return cpow(base, -kexp) * F(u);
    });
    return pp.constant() * v;
}

double project_maximal(const ProjParams& pp, double extra_t,
                       const std::function<Cx(std::span<const Cx>)>& F, const BallPoint& z,
                       const BallRule& rule) {
    if (extra_t < 0.0) throw std::invalid_argument("project_maximal: extra_t >= 0 required");
    if (1.0 - z.abs() < rule.eps_trunc())
        throw std::invalid_argument(
            "project_maximal: evaluation point inside the truncation shell");
    const double kexp = 1.0 + pp.n + pp.beta + extra_t;
    auto zs = z.span();
    double v = rule.integrate(pp.beta, [&](std::span<const Cx> u) {
        double base = std::abs(1.0 - hermitian_inner(zs, u));
        return std::pow(base, -kexp) * std::abs(F(u));
    });
    return pp.constant() * v;
}

}  // namespace tentlab
