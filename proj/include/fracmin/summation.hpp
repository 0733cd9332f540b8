#pragma once

#include <cmath>

namespace fracmin {

// Neumaier's compensated summation.  All integral accumulations in this
// library sum nonnegative terms, so there is no cancellation and the result
// is accurate to a few ulp regardless of term count.
class NeumaierSum {
public:
    void add(double x) {
        double t = s_ + x;
        if (std::abs(s_) >= std::abs(x))
            c_ += (s_ - t) + x;
        else
            c_ += (x - t) + s_;
        s_ = t;
    }
    double result() const { return s_ + c_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

}  // namespace fracmin
