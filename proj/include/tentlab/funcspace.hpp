#pragma once

// Exact representations of holomorphic test functions: multi-index Taylor
// polynomials plus finite sums of kernel atoms c (1 - <z,a>)^{-e}. The class
// is closed under dilation, fractional coefficient multipliers, and the
// Bergman projection of polynomials, so most experiments reduce to exact
// coefficient arithmetic.

#include <functional>
#include <limits>
#include <map>

#include "tentlab/geometry.hpp"
#include "tentlab/util.hpp"

#include "json.hpp"

namespace tentlab {

struct MultiIndex {
    std::vector<int> m;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> e);

    int dim() const { return int(m.size()); }
    int order() const;         // |m|
    double factorial() const;  // m!
    bool operator<(const MultiIndex& o) const { return m < o.m; }
    bool operator==(const MultiIndex& o) const { return m == o.m; }

    static MultiIndex unit(int n, int j);
    static MultiIndex zero(int n);
    // All multi-indices of length n with |m| <= max_order, lexicographic.
    static std::vector<MultiIndex> up_to_order(int n, int max_order);
};

class TaylorPoly {
  public:
    TaylorPoly() = default;
    explicit TaylorPoly(int n) : n_(n) {}

    int dim() const { return n_; }
    int degree() const;
    bool empty() const { return coef_.empty(); }
    const std::map<MultiIndex, Cx>& coefficients() const { return coef_; }

    Cx coefficient(const MultiIndex& m) const;
    void set(const MultiIndex& m, Cx c);
    void add(const MultiIndex& m, Cx c);

    Cx evaluate(std::span<const Cx> z) const;
    CVec gradient(std::span<const Cx> z) const;
    TaylorPoly dilate(double r) const;

    TaylorPoly& operator+=(const TaylorPoly& o);
    TaylorPoly& operator*=(Cx s);
    friend TaylorPoly operator-(TaylorPoly a, const TaylorPoly& b);

    // In-place multiplier on homogeneous parts: coef_m *= lambda(|m|).
    void scale_by_order(const std::function<Cx(int)>& lambda);

    static TaylorPoly monomial(int n, const MultiIndex& m, Cx c = 1.0);
    static TaylorPoly constant(int n, Cx c);

  private:
    int n_ = 1;
    std::map<MultiIndex, Cx> coef_;
};

struct KernelAtom {
    CVec pole;      // |a| <= 1 - eps (boundary limits approached, not reached)
    double e = 1.0; // exponent; z -> c (1 - <z,a>)^{-e}, principal branch
    Cx c = 1.0;     // scale (any (1-|a|^2)^g prefactor is folded in here)

    int dim() const { return int(pole.size()); }
    Cx evaluate(std::span<const Cx> z) const;
    CVec gradient(std::span<const Cx> z) const;
};

struct TruncationReport {
    TaylorPoly poly;
    double tail_bound = 0.0;  // sup norm bound of the dropped tail on |z| <= 1
    bool bound_valid = true;  // false when the geometric tail estimate diverges
};

// Degree-D Taylor truncation of an atom via Pochhammer coefficients and the
// multinomial theorem. D <= 60 keeps coefficient magnitudes in range.
TruncationReport truncate_atom(const KernelAtom& atom, int degree);

class HoloFunction {
  public:
    HoloFunction() = default;
    explicit HoloFunction(int n) : n_(n) {}
    HoloFunction(TaylorPoly p);
    HoloFunction(KernelAtom a);
    HoloFunction(TaylorPoly p, std::vector<KernelAtom> atoms);

    int dim() const { return n_; }
    const TaylorPoly& poly() const { return poly_; }
    const std::vector<KernelAtom>& atoms() const { return atoms_; }
    bool is_polynomial() const { return atoms_.empty(); }

    Cx evaluate(std::span<const Cx> z) const;
    Cx evaluate(const BallPoint& z) const { return evaluate(z.span()); }
    CVec gradient(std::span<const Cx> z) const;
    HoloFunction dilate(double r) const;

    HoloFunction& operator+=(const HoloFunction& o);
    HoloFunction& operator*=(Cx s);
    friend HoloFunction operator-(HoloFunction a, const HoloFunction& b);
    friend HoloFunction operator+(HoloFunction a, const HoloFunction& b);

    // Batch evaluation in node order (the “fused” path used by norms).
    std::vector<Cx> evaluate_many(const std::vector<Cx>& coords, int n_per_point) const;

    nlohmann::json to_json() const;
    static HoloFunction from_json(const nlohmann::json& j);

  private:
    int n_ = 1;
    TaylorPoly poly_;
    std::vector<KernelAtom> atoms_;
};

}  // namespace tentlab
