#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tentlab {

using Cx = std::complex<double>;
using CVec = std::vector<Cx>;

constexpr double kPi = 3.14159265358979323846;

// Rising factorial (x)_k = x(x+1)...(x+k-1), by plain product so it stays
// valid for negative and non-integer x where Gamma quotients misbehave.
inline double pochhammer(double x, int k) {
    double p = 1.0;
    for (int j = 0; j < k; ++j) p *= (x + j);
    return p;
}

// Gamma(x+k)/Gamma(x) for integer k >= 0, same product route.
inline double gamma_ratio(double x, int k) { return pochhammer(x, k); }

inline double factorial(int k) {
    double p = 1.0;
    for (int j = 2; j <= k; ++j) p *= j;
    return p;
}

// z^k for integer k (repeated squaring); k may be negative.
inline Cx ipow(Cx z, long k) {
    if (k < 0) return 1.0 / ipow(z, -k);
    Cx r = 1.0, b = z;
    while (k > 0) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

// base^e (principal branch), with a fast path when e is an integer.
inline Cx cpow(Cx base, double e) {
    double er = std::round(e);
    if (std::abs(e - er) < 1e-12 && std::abs(er) <= 64.0)
        return ipow(base, static_cast<long>(er));
    return std::pow(base, e);
}

// Pairwise summation: accurate and independent of threading decisions.
template <typename T>
T pairwise_sum(std::span<const T> v) {
    const size_t m = v.size();
    if (m <= 8) {
        T s{};
        for (const T& x : v) s += x;
        return s;
    }
    const size_t h = m / 2;
    return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

template <typename T>
T pairwise_sum(const std::vector<T>& v) {
    return pairwise_sum(std::span<const T>(v));
}

inline double sq(double x) { return x * x; }

// Hermitian inner product <z,w> = sum z_j conj(w_j).
inline Cx hermitian_inner(std::span<const Cx> z, std::span<const Cx> w) {
    if (z.size() != w.size())
        throw std::invalid_argument("hermitian_inner: dimension mismatch");
    if (z.size() == 1) return z[0] * std::conj(w[0]);
    if (z.size() == 2) return z[0] * std::conj(w[0]) + z[1] * std::conj(w[1]);
    Cx s = 0.0;
    for (size_t j = 0; j < z.size(); ++j) s += z[j] * std::conj(w[j]);
    return s;
}

inline double norm_sq(std::span<const Cx> z) {
    double s = 0.0;
    for (const Cx& c : z) s += std::norm(c);
    return s;
}

inline double euclid_norm(std::span<const Cx> z) { return std::sqrt(norm_sq(z)); }

// Seeded uniform complex coefficient in the closed unit disk.
inline Cx random_unit_disk(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double r = std::sqrt(u(rng));
    double t = 2.0 * kPi * u(rng);
    return Cx(r * std::cos(t), r * std::sin(t));
}

// Least-squares slope of y against x.
inline double regression_slope(std::span<const double> x, std::span<const double> y) {
    const size_t m = x.size();
    if (m < 2 || y.size() != m) return 0.0;
    double mx = 0, my = 0;
    for (size_t i = 0; i < m; ++i) { mx += x[i]; my += y[i]; }
    mx /= double(m);
    my /= double(m);
    double num = 0, den = 0;
    for (size_t i = 0; i < m; ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += sq(x[i] - mx);
    }
    return den > 0 ? num / den : 0.0;
}

}  // namespace tentlab
