#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace jc {

/// log(e^a + e^b) without overflow; tolerates -inf on either side.
double log_add(double a, double b);

/// A real number stored as sign * exp(log_mag). sign == 0 encodes exact zero.
struct SignedLog {
    double log_mag;
    int sign;

    static SignedLog zero() { return {-std::numeric_limits<double>::infinity(), 0}; }
    static SignedLog from_value(double v);
    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_mag); }
};

SignedLog signed_mul(SignedLog a, SignedLog b);
SignedLog signed_add(SignedLog a, SignedLog b);

/// Hermite values H_n(x) at fixed x, carried as (log-magnitude, sign) through
/// the three-term recurrence H_{k+1} = 2x H_k - 2k H_{k-1} and extended on
/// demand.
///
/// Throws NumericalInstability when a step cancels more than ~14 decimal
/// digits (result magnitude below max-term * 1e-14): the value would carry no
/// significance. Genuine small values near polynomial roots stay far above
/// that floor for generic arguments.
class HermiteLogRecurrence {
public:
    explicit HermiteLogRecurrence(double x);
    SignedLog at(int n);

private:
    SignedLog two_x_;
    std::vector<SignedLog> h_;
};

/// Convenience wrapper: H_0(x) .. H_n(x).
std::vector<SignedLog> hermite_log_sequence(int n, double x);

}  // namespace jc
