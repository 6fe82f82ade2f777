#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mra {

/// Real vector of fixed length L. Observations, templates and estimates all
/// share this representation.
class Signal {
public:
    Signal() = default;
    explicit Signal(std::size_t length) : values_(length, 0.0) {}
    explicit Signal(std::vector<double> values) : values_(std::move(values)) {}
    Signal(std::initializer_list<double> values) : values_(values) {}

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }

    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
    double& operator[](std::size_t i) noexcept { return values_[i]; }

    [[nodiscard]] std::span<const double> view() const noexcept { return values_; }
    [[nodiscard]] std::span<double> view() noexcept { return values_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }
    auto begin() noexcept { return values_.begin(); }
    auto end() noexcept { return values_.end(); }

    friend bool operator==(const Signal&, const Signal&) = default;

private:
    std::vector<double> values_;
};

/// Cyclic shift amount, always reduced mod L.
class ShiftIndex {
public:
    ShiftIndex() = default;
    ShiftIndex(long long ell, std::size_t length);

    [[nodiscard]] std::size_t value() const noexcept { return ell_; }
    [[nodiscard]] std::size_t length() const noexcept { return length_; }

    /// Shift whose action undoes this one: R_ell^{-1} = R_{(L - ell) mod L}.
    [[nodiscard]] ShiftIndex inverse() const;

    friend bool operator==(const ShiftIndex& a, const ShiftIndex& b) noexcept {
        return a.ell_ == b.ell_ && a.length_ == b.length_;
    }

private:
    std::size_t ell_ = 0;
    std::size_t length_ = 1;
};

// (R_ell x)_j = x_{(j + ell) mod L}
Signal apply_shift(std::span<const double> x, std::size_t ell);
Signal apply_shift(const Signal& x, ShiftIndex ell);

// R_ell^{-1} y, i.e. (R_ell^{-1} y)_j = y_{(j - ell) mod L}
Signal apply_inverse_shift(std::span<const double> y, std::size_t ell);

double dot(std::span<const double> a, std::span<const double> b);
double squared_norm(std::span<const double> a);
double norm(std::span<const double> a);

} // namespace mra
