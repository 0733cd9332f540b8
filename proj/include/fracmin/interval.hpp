#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace fracmin {

// Closed bounded interval [a, b] with a < b.
struct Interval {
    double a = 0.0;
    double b = 1.0;

    Interval() = default;
    Interval(double a_, double b_) : a(a_), b(b_) {
        if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
            throw std::invalid_argument("Interval: need finite endpoints with a < b");
    }

    double length() const { return b - a; }
    double midpoint() const { return a + 0.5 * (b - a); }
    bool contains(double x) const { return a <= x && x <= b; }
    Interval left_half() const { return {a, a + 0.5 * (b - a)}; }

    friend bool operator==(const Interval& x, const Interval& y) {
        return x.a == y.a && x.b == y.b;
    }
};

// Union of intervals as a sorted list of disjoint ones.  Adjacent pieces
// (shared endpoint) are merged.
inline std::vector<Interval> merge_intervals(std::vector<Interval> v) {
    if (v.empty()) return v;
    std::sort(v.begin(), v.end(), [](const Interval& x, const Interval& y) {
        return x.a < y.a || (x.a == y.a && x.b < y.b);
    });
    std::vector<Interval> out;
    out.push_back(v.front());
    for (size_t i = 1; i < v.size(); ++i) {
        if (v[i].a <= out.back().b)
            out.back().b = std::max(out.back().b, v[i].b);
        else
            out.push_back(v[i]);
    }
    return out;
}

inline double total_length(std::span<const Interval> v) {
    double s = 0.0;
    for (const auto& I : v) s += I.length();
    return s;
}

// True when J is covered by the union of (already merged, disjoint) pieces.
inline bool covered_by(const Interval& J, std::span<const Interval> merged) {
    double need = J.a;
    for (const auto& I : merged) {
        if (I.b < need) continue;
        if (I.a > need) return false;
        need = I.b;
        if (need >= J.b) return true;
    }
    return need >= J.b;
}

}  // namespace fracmin
