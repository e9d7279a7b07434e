#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bergman {

/// Gauss-Legendre rule on [-1, 1]. Tables are computed once per order and cached.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendre& gauss_legendre(std::size_t order);

/// Neumaier (improved Kahan) running sum.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + comp_; }
    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double compensated_sum(std::span<const double> values) noexcept;

/// Pochhammer symbol (x)_n = x (x+1) ... (x+n-1).
double rising_factorial(double x, int n) noexcept;

/// Smallest positive value treated as a non-underflowed measure of a region.
inline constexpr double kUnderflowFloor = 1e-300;

}  // namespace bergman
