#include "lvis/resonator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lvis {

double finesse(double t1, double t2, double loss1, double loss2) {
    const double a = t1 + loss1;
    const double b = t2 + loss2;
    const auto valid = [](double v) { return v >= 0.0 && v < 1.0; };
    if (!valid(t1) || !valid(t2) || !(loss1 >= 0.0) || !(loss2 >= 0.0) || !valid(a) || !valid(b)) {
        throw std::domain_error("finesse: transmissions and losses must lie in [0, 1)");
    }
    if (a == 0.0 && b == 0.0) throw std::domain_error("finesse: lossless cavity has unbounded finesse");
    // 1 - sqrt(p) rewritten as (1 - p) / (1 + sqrt(p)) to avoid cancellation.
    const double one_minus_p = a + b - a * b;
    const double p = (1.0 - a) * (1.0 - b);
    return std::numbers::pi * (1.0 + std::sqrt(p)) / one_minus_p;
}

double finesse(double t1, double t2) { return finesse(t1, t2, 0.0, 0.0); }

double finesse(const MirrorSpec& m1, const MirrorSpec& m2) {
    return finesse(m1.transmission, m2.transmission, m1.loss, m2.loss);
}

double output_fraction(double t1, double t2) {
    if (!(t1 >= 0.0) || !(t2 >= 0.0)) throw std::domain_error("output_fraction: transmissions must be non-negative");
    if (t1 + t2 == 0.0) throw std::domain_error("output_fraction: both transmissions are zero");
    return t2 / (t1 + t2);
}

}  // namespace lvis
