#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <stdexcept>

namespace fracmin {

// Nonnegative extended real in [0, +inf], the value type of step functions.
//
// Arithmetic follows the conventions fixed for integrals and averages:
//
//   c / inf = 0            (finite c >= 0)
//   c / 0   = inf          (c > 0), and 0 / 0 = 0
//   inf * c = inf          (c > 0)
//   inf * 0 = 0            a zero-length stretch of an infinite value
//                          contributes nothing to an integral; a positive
//                          stretch makes it infinite
class ExtReal {
public:
    ExtReal() = default;
    ExtReal(double v) : v_(v) {
        if (std::isnan(v) || v < 0.0)
            throw std::invalid_argument("ExtReal: value must be nonnegative");
    }

    static ExtReal inf() {
        ExtReal x;
        x.v_ = std::numeric_limits<double>::infinity();
        return x;
    }

    double value() const { return v_; }
    bool is_inf() const { return std::isinf(v_); }
    bool is_zero() const { return v_ == 0.0; }

    friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
    friend auto operator<=>(ExtReal a, ExtReal b) { return a.v_ <=> b.v_; }

private:
    double v_ = 0.0;
};

inline ExtReal operator+(ExtReal a, ExtReal b) {
    return ExtReal(a.value() + b.value());  // inf absorbs, per IEEE
}

inline ExtReal operator*(ExtReal a, ExtReal b) {
    if (a.is_zero() || b.is_zero()) return ExtReal(0.0);
    return ExtReal(a.value() * b.value());
}

inline ExtReal operator/(ExtReal a, ExtReal b) {
    if (b.is_inf()) return ExtReal(0.0);
    if (b.is_zero()) return a.is_zero() ? ExtReal(0.0) : ExtReal::inf();
    if (a.is_inf()) return ExtReal::inf();
    return ExtReal(a.value() / b.value());
}

// x^e for e != 0.  Limits at the endpoints: inf^e and 0^e follow the sign
// of e, so e.g. pow(0, -q) = inf and pow(inf, -q) = 0.
inline ExtReal pow(ExtReal x, double e) {
    if (e == 0.0 || std::isnan(e))
        throw std::invalid_argument("pow(ExtReal): exponent must be nonzero");
    if (x.is_inf()) return e > 0 ? ExtReal::inf() : ExtReal(0.0);
    if (x.is_zero()) return e > 0 ? ExtReal(0.0) : ExtReal::inf();
    return ExtReal(std::pow(x.value(), e));
}

inline ExtReal min(ExtReal a, ExtReal b) { return a < b ? a : b; }
inline ExtReal max(ExtReal a, ExtReal b) { return a < b ? b : a; }

}  // namespace fracmin
