#include "mra/signal.hpp"

#include <cmath>

#include "mra/error.hpp"

namespace mra {

ShiftIndex::ShiftIndex(long long ell, std::size_t length) : length_(length) {
    require(length >= 1, "ShiftIndex: length must be positive");
    const auto l = static_cast<long long>(length);
    ell_ = static_cast<std::size_t>(((ell % l) + l) % l);
}

ShiftIndex ShiftIndex::inverse() const {
    return ShiftIndex(static_cast<long long>((length_ - ell_) % length_), length_);
}

Signal apply_shift(std::span<const double> x, std::size_t ell) {
    const std::size_t n = x.size();
    Signal out(n);
    if (n == 0) {
        return out;
    }
    ell %= n;
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t src = j + ell;
        if (src >= n) {
            src -= n;
        }
        out[j] = x[src];
    }
    return out;
}

Signal apply_shift(const Signal& x, ShiftIndex ell) {
    require(ell.length() == x.size(), "apply_shift: shift length does not match signal length");
    return apply_shift(x.view(), ell.value());
}

Signal apply_inverse_shift(std::span<const double> y, std::size_t ell) {
    const std::size_t n = y.size();
    if (n == 0) {
        return Signal{};
    }
    return apply_shift(y, (n - ell % n) % n);
}

double dot(std::span<const double> a, std::span<const double> b) {
    require(a.size() == b.size(), "dot: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

double squared_norm(std::span<const double> a) {
    double acc = 0.0;
    for (double v : a) {
        acc += v * v;
    }
    return acc;
}

double norm(std::span<const double> a) { return std::sqrt(squared_norm(a)); }

} // namespace mra
