#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace ym {

/// Point in R^k. The dimension is carried by the containing object.
using Vec = std::vector<double>;

inline bool is_finite(const Vec& v) {
    for (double c : v) {
        if (!std::isfinite(c)) return false;
    }
    return true;
}

inline double squared_norm(const Vec& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return s;
}

inline double norm(const Vec& v) { return std::sqrt(squared_norm(v)); }

inline double dist(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Strict lexicographic order on coordinates; the canonical atom order.
inline bool lex_less(const Vec& a, const Vec& b) {
    const std::size_t n = a.size() < b.size() ? a.size() : b.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return a.size() < b.size();
}

inline Vec concat(const Vec& a, const Vec& b) {
    Vec r;
    r.reserve(a.size() + b.size());
    r.insert(r.end(), a.begin(), a.end());
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

/// Compensated (Kahan) accumulator; keeps mass and integral sums stable
/// at the tolerances the library promises.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

} // namespace ym
