#include "jc/logspace.hpp"

#include <algorithm>
#include <string>

#include "jc/errors.hpp"

namespace jc {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// ln(1e-14): a sum whose magnitude drops this far below its largest term has
// cancelled away essentially all double-precision significance.
constexpr double kCancelFloor = -32.2361913019;
}  // namespace

double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    double hi = std::max(a, b);
    double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

SignedLog SignedLog::from_value(double v) {
    if (v == 0.0) return zero();
    return {std::log(std::abs(v)), v > 0 ? 1 : -1};
}

SignedLog signed_mul(SignedLog a, SignedLog b) {
    if (a.sign == 0 || b.sign == 0) return SignedLog::zero();
    return {a.log_mag + b.log_mag, a.sign * b.sign};
}

SignedLog signed_add(SignedLog a, SignedLog b) {
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    if (a.log_mag < b.log_mag) std::swap(a, b);
    double d = b.log_mag - a.log_mag;  // <= 0
    if (a.sign == b.sign) return {a.log_mag + std::log1p(std::exp(d)), a.sign};
    double rest = -std::expm1(d);  // 1 - e^d, in [0, 1]
    if (rest == 0.0) return SignedLog::zero();
    return {a.log_mag + std::log(rest), a.sign};
}

HermiteLogRecurrence::HermiteLogRecurrence(double x)
    : two_x_(SignedLog::from_value(2.0 * x)) {
    h_.push_back({0.0, 1});                      // H_0 = 1
    h_.push_back(SignedLog::from_value(2.0 * x));  // H_1 = 2x
}

SignedLog HermiteLogRecurrence::at(int n) {
    while (static_cast<int>(h_.size()) <= n) {
        int k = static_cast<int>(h_.size()) - 1;
        SignedLog t1 = signed_mul(two_x_, h_[static_cast<std::size_t>(k)]);
        SignedLog t2 =
            signed_mul({std::log(2.0 * k), -1}, h_[static_cast<std::size_t>(k - 1)]);
        SignedLog next = signed_add(t1, t2);
        double peak = std::max(t1.log_mag, t2.log_mag);
        bool cancelling = t1.sign != 0 && t2.sign != 0 && t1.sign != t2.sign;
        if (cancelling && (next.sign == 0 || next.log_mag - peak < kCancelFloor)) {
            throw NumericalInstability(
                "hermite recurrence lost all significance at n = " + std::to_string(k + 1),
                k + 1);
        }
        h_.push_back(next);
    }
    return h_[static_cast<std::size_t>(n)];
}

std::vector<SignedLog> hermite_log_sequence(int n, double x) {
    HermiteLogRecurrence rec(x);
    std::vector<SignedLog> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) out.push_back(rec.at(k));
    return out;
}

}  // namespace jc
