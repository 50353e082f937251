#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "entropic/errors.hpp"

namespace entropic {

/// Situation-space discretization. Either a uniform 1D/2D tensor-product grid
/// with trapezoid quadrature weights, or a finite discrete set with unit point
/// weights (for genuinely discrete situation spaces).
///
/// 2D grids are flattened row-major: flat index = i0 * n1 + i1.
class Grid {
public:
    static Grid uniform(double lo, double hi, std::size_t n);
    static Grid uniform2d(double lo0, double hi0, std::size_t n0,
                          double lo1, double hi1, std::size_t n1);
    static Grid discrete(std::vector<double> points);

    int dim() const { return static_cast<int>(axes_.size()); }
    bool is_discrete() const { return discrete_; }
    std::size_t size() const { return weights_.size(); }
    std::size_t axis_size(int axis) const { return axes_[axis].size(); }
    const std::vector<double>& axis(int a) const { return axes_[a]; }
    double spacing(int axis) const { return spacing_[axis]; }

    /// Coordinate of flat point i along the given axis.
    double point(std::size_t i, int axis) const;

    /// Quadrature weight per flat point (trapezoid rule; unit for discrete grids).
    const std::vector<double>& weights() const { return weights_; }
    double weight(std::size_t i) const { return weights_[i]; }

    /// Trapezoid-rule integral of f over the grid.
    double integrate(std::span<const double> f) const;

    bool same_as(const Grid& other, double tol = 1e-12) const;

private:
    Grid() = default;

    std::vector<std::vector<double>> axes_;
    std::vector<double> spacing_;
    std::vector<double> weights_;  // flat, row-major
    bool discrete_ = false;
};

}  // namespace entropic
