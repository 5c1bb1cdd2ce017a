#include "tentlab/funcspace.hpp"

#include <algorithm>

namespace tentlab {

MultiIndex::MultiIndex(std::vector<int> e) : m(std::move(e)) {
    for (int v : m)
        if (v < 0) throw std::invalid_argument("MultiIndex: entries must be >= 0");
}

int MultiIndex::order() const {
    int s = 0;
    for (int v : m) s += v;
    return s;
}

double MultiIndex::factorial() const {
    double p = 1.0;
    for (int v : m) p *= tentlab::factorial(v);
    return p;
}

MultiIndex MultiIndex::unit(int n, int j) {
    std::vector<int> e(size_t(n), 0);
    e[size_t(j)] = 1;
    return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::zero(int n) { return MultiIndex(std::vector<int>(size_t(n), 0)); }

std::vector<MultiIndex> MultiIndex::up_to_order(int n, int max_order) {
    std::vector<MultiIndex> out;
    std::vector<int> cur(size_t(n), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n - 1) {
            for (int v = 0; v <= left; ++v) {
                cur[size_t(pos)] = v;
                out.emplace_back(cur);
            }
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[size_t(pos)] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, max_order);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// --------------------------------------------------------------------------

int TaylorPoly::degree() const {
    int d = 0;
    for (const auto& [m, c] : coef_) d = std::max(d, m.order());
    return d;
}

Cx TaylorPoly::coefficient(const MultiIndex& m) const {
    auto it = coef_.find(m);
    return it == coef_.end() ? Cx(0.0) : it->second;
}

void TaylorPoly::set(const MultiIndex& m, Cx c) {
    if (m.dim() != n_) throw std::invalid_argument("TaylorPoly: index dimension mismatch");
    if (c == Cx(0.0))
        coef_.erase(m);
    else
        coef_[m] = c;
}

void TaylorPoly::add(const MultiIndex& m, Cx c) { set(m, coefficient(m) + c); }

Cx TaylorPoly::evaluate(std::span<const Cx> z) const {
    Cx s = 0.0;
    for (const auto& [m, c] : coef_) {
        Cx t = c;
        for (int j = 0; j < n_; ++j) t *= ipow(z[size_t(j)], m.m[size_t(j)]);
        s += t;
    }
    return s;
}

CVec TaylorPoly::gradient(std::span<const Cx> z) const {
    CVec g(size_t(n_), Cx(0.0));
    for (const auto& [m, c] : coef_) {
        for (int j = 0; j < n_; ++j) {
            int mj = m.m[size_t(j)];
            if (mj == 0) continue;
            Cx t = c * double(mj) * ipow(z[size_t(j)], mj - 1);
            for (int k = 0; k < n_; ++k)
                if (k != j) t *= ipow(z[size_t(k)], m.m[size_t(k)]);
            g[size_t(j)] += t;
        }
    }
    return g;
}

TaylorPoly TaylorPoly::dilate(double r) const {
    TaylorPoly out(n_);
    for (const auto& [m, c] : coef_) out.set(m, c * std::pow(r, m.order()));
    return out;
}

TaylorPoly& TaylorPoly::operator+=(const TaylorPoly& o) {
    if (o.n_ != n_ && !o.coef_.empty())
        throw std::invalid_argument("TaylorPoly: dimension mismatch");
    for (const auto& [m, c] : o.coef_) add(m, c);
    return *this;
}

TaylorPoly& TaylorPoly::operator*=(Cx s) {
    if (s == Cx(0.0)) {
        coef_.clear();
        return *this;
    }
    for (auto& [m, c] : coef_) c *= s;
    return *this;
}

TaylorPoly operator-(TaylorPoly a, const TaylorPoly& b) {
    for (const auto& [m, c] : b.coef_) a.add(m, -c);
    return a;
}

void TaylorPoly::scale_by_order(const std::function<Cx(int)>& lambda) {
    std::map<MultiIndex, Cx> next;
    for (const auto& [m, c] : coef_) {
        Cx v = c * lambda(m.order());
        if (v != Cx(0.0)) next[m] = v;
    }
    coef_ = std::move(next);
}

TaylorPoly TaylorPoly::monomial(int n, const MultiIndex& m, Cx c) {
    TaylorPoly p(n);
    p.set(m, c);
    return p;
}

TaylorPoly TaylorPoly::constant(int n, Cx c) {
    return monomial(n, MultiIndex::zero(n), c);
}

// --------------------------------------------------------------------------

Cx KernelAtom::evaluate(std::span<const Cx> z) const {
    // Re(1 - <z,a>) > 0 on the ball, so the principal branch is unambiguous.
    Cx base = 1.0 - hermitian_inner(z, {pole.data(), pole.size()});
    return c * cpow(base, -e);
}

CVec KernelAtom::gradient(std::span<const Cx> z) const {
    Cx base = 1.0 - hermitian_inner(z, {pole.data(), pole.size()});
    Cx common = c * e * cpow(base, -e - 1.0);
    CVec g(pole.size());
    for (size_t j = 0; j < pole.size(); ++j) g[j] = common * std::conj(pole[j]);
    return g;
}

TruncationReport truncate_atom(const KernelAtom& atom, int degree) {
    if (degree < 0 || degree > 60)
        throw std::invalid_argument("truncate_atom: degree in [0, 60] required");
    const int n = atom.dim();
    TruncationReport rep;
    rep.poly = TaylorPoly(n);

    // (1-w)^{-e} = sum_k (e)_k / k! w^k with w = <z,a>; the multinomial
    // expansion of w^k gives the z^m coefficient (e)_{|m|} conj(a)^m / m!.
    std::vector<double> poch(size_t(degree) + 1, 1.0);
    for (int k = 0; k < degree; ++k) poch[size_t(k) + 1] = poch[size_t(k)] * (atom.e + k);

    for (const MultiIndex& m : MultiIndex::up_to_order(n, degree)) {
        Cx am = 1.0;
        for (int j = 0; j < n; ++j) am *= ipow(std::conj(atom.pole[size_t(j)]), m.m[size_t(j)]);
        if (am == Cx(0.0) && m.order() > 0) continue;
        Cx coeff = atom.c * poch[size_t(m.order())] / m.factorial() * am;
        if (coeff != Cx(0.0)) rep.poly.set(m, coeff);
    }

    // Tail bound: sum_{k>D} |(e)_k|/k! rho^k with rho = |a| (worst case over
    // |z| <= 1); consecutive term ratio tends to rho < 1.
    const double rho = euclid_norm({atom.pole.data(), atom.pole.size()});
    double t = std::abs(poch[size_t(degree)]) / factorial(degree) *
               std::abs(atom.e + degree) / double(degree + 1) * std::pow(rho, degree + 1);
    double q = rho * std::abs(atom.e + degree + 1) / double(degree + 2);
    if (q < 1.0) {
        rep.tail_bound = std::abs(atom.c) * t / (1.0 - q);
    } else {
        rep.tail_bound = std::numeric_limits<double>::infinity();
        rep.bound_valid = false;
    }
    return rep;
}

// --------------------------------------------------------------------------

HoloFunction::HoloFunction(TaylorPoly p) : n_(p.dim()), poly_(std::move(p)) {}

HoloFunction::HoloFunction(KernelAtom a) : n_(a.dim()), poly_(a.dim()) {
    atoms_.push_back(std::move(a));
}

HoloFunction::HoloFunction(TaylorPoly p, std::vector<KernelAtom> atoms)
    : n_(p.dim()), poly_(std::move(p)), atoms_(std::move(atoms)) {
    for (const auto& a : atoms_)
        if (a.dim() != n_) throw std::invalid_argument("HoloFunction: atom dimension mismatch");
}

Cx HoloFunction::evaluate(std::span<const Cx> z) const {
    Cx s = poly_.evaluate(z);
    for (const auto& a : atoms_) s += a.evaluate(z);
    return s;
}

CVec HoloFunction::gradient(std::span<const Cx> z) const {
    CVec g = poly_.gradient(z);
    if (g.size() != size_t(n_)) g.assign(size_t(n_), Cx(0.0));
    for (const auto& a : atoms_) {
        CVec ga = a.gradient(z);
        for (size_t j = 0; j < g.size(); ++j) g[j] += ga[j];
    }
    return g;
}

HoloFunction HoloFunction::dilate(double r) const {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("dilate: r in (0,1) required");
    HoloFunction out(poly_.dilate(r));
    out.n_ = n_;
    for (KernelAtom a : atoms_) {
        for (Cx& p : a.pole) p *= r;  // f(rz): <rz,a> = <z, r a> for real r
        out.atoms_.push_back(std::move(a));
    }
    return out;
}

HoloFunction& HoloFunction::operator+=(const HoloFunction& o) {
    poly_ += o.poly_;
    atoms_.insert(atoms_.end(), o.atoms_.begin(), o.atoms_.end());
    return *this;
}

HoloFunction& HoloFunction::operator*=(Cx s) {
    poly_ *= s;
    for (auto& a : atoms_) a.c *= s;
    return *this;
}

HoloFunction operator-(HoloFunction a, const HoloFunction& b) {
    HoloFunction nb = b;
    nb *= Cx(-1.0);
    a += nb;
    return a;
}

HoloFunction operator+(HoloFunction a, const HoloFunction& b) {
    a += b;
    return a;
}

std::vector<Cx> HoloFunction::evaluate_many(const std::vector<Cx>& coords,
                                            int n_per_point) const {
    const size_t count = coords.size() / size_t(n_per_point);
    std::vector<Cx> out(count);
    for (size_t i = 0; i < count; ++i)
        out[i] = evaluate({coords.data() + i * size_t(n_per_point), size_t(n_per_point)});
    return out;
}

nlohmann::json HoloFunction::to_json() const {
    nlohmann::json j;
    j["n"] = n_;
    auto& poly = j["poly"] = nlohmann::json::array();
    for (const auto& [m, c] : poly_.coefficients()) {
        poly.push_back({{"m", m.m}, {"c", {c.real(), c.imag()}}});
    }
    auto& atoms = j["atoms"] = nlohmann::json::array();
    for (const auto& a : atoms_) {
        nlohmann::json pl = nlohmann::json::array();
        for (const Cx& p : a.pole) pl.push_back({p.real(), p.imag()});
        atoms.push_back({{"pole", pl}, {"e", a.e}, {"c", {a.c.real(), a.c.imag()}}});
    }
    return j;
}

HoloFunction HoloFunction::from_json(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();
    TaylorPoly p(n);
    if (j.contains("poly")) {
        for (const auto& term : j.at("poly")) {
            MultiIndex m(term.at("m").get<std::vector<int>>());
            if (m.dim() != n) throw std::invalid_argument("HoloFunction: bad multi-index");
            auto c = term.at("c");
            p.add(m, Cx(c.at(0).get<double>(), c.at(1).get<double>()));
        }
    }
    std::vector<KernelAtom> atoms;
    if (j.contains("atoms")) {
        for (const auto& ja : j.at("atoms")) {
            KernelAtom a;
            for (const auto& pc : ja.at("pole"))
                a.pole.emplace_back(pc.at(0).get<double>(), pc.at(1).get<double>());
            if (int(a.pole.size()) != n)
                throw std::invalid_argument("HoloFunction: bad atom pole");
            a.e = ja.at("e").get<double>();
            auto c = ja.at("c");
            a.c = Cx(c.at(0).get<double>(), c.at(1).get<double>());
            atoms.push_back(std::move(a));
        }
    }
    return HoloFunction(std::move(p), std::move(atoms));
}

}  // namespace tentlab
