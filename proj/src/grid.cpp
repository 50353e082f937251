#include "entropic/grid.hpp"

#include <cmath>

namespace entropic {

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> x(n);
    const double h = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) x[i] = lo + h * static_cast<double>(i);
    x.back() = hi;
    return x;
}

std::vector<double> trapezoid_weights(std::size_t n, double h) {
    std::vector<double> w(n, h);
    w.front() = 0.5 * h;
    w.back() = 0.5 * h;
    return w;
}

}  // namespace

Grid Grid::uniform(double lo, double hi, std::size_t n) {
    if (n < 2) throw GridError("uniform grid needs at least 2 points per axis");
    if (!(hi > lo)) throw GridError("grid upper bound must exceed lower bound");
    Grid g;
    g.axes_.push_back(linspace(lo, hi, n));
    g.spacing_.push_back((hi - lo) / static_cast<double>(n - 1));
    g.weights_ = trapezoid_weights(n, g.spacing_[0]);
    return g;
}

Grid Grid::uniform2d(double lo0, double hi0, std::size_t n0,
                     double lo1, double hi1, std::size_t n1) {
    if (n0 < 2 || n1 < 2) throw GridError("uniform grid needs at least 2 points per axis");
    if (!(hi0 > lo0) || !(hi1 > lo1)) throw GridError("grid upper bound must exceed lower bound");
    Grid g;
    g.axes_.push_back(linspace(lo0, hi0, n0));
    g.axes_.push_back(linspace(lo1, hi1, n1));
    g.spacing_.push_back((hi0 - lo0) / static_cast<double>(n0 - 1));
    g.spacing_.push_back((hi1 - lo1) / static_cast<double>(n1 - 1));
    const auto w0 = trapezoid_weights(n0, g.spacing_[0]);
    const auto w1 = trapezoid_weights(n1, g.spacing_[1]);
    g.weights_.resize(n0 * n1);
    for (std::size_t i = 0; i < n0; ++i)
        for (std::size_t j = 0; j < n1; ++j) g.weights_[i * n1 + j] = w0[i] * w1[j];
    return g;
}

Grid Grid::discrete(std::vector<double> points) {
    if (points.size() < 2) throw GridError("discrete grid needs at least 2 points");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i] > points[i - 1]))
            throw GridError("grid points must be strictly increasing");
    Grid g;
    g.spacing_.push_back(1.0);
    g.weights_.assign(points.size(), 1.0);
    g.axes_.push_back(std::move(points));
    g.discrete_ = true;
    return g;
}

double Grid::point(std::size_t i, int axis) const {
    if (dim() == 1) return axes_[0][i];
    const std::size_t n1 = axes_[1].size();
    return axis == 0 ? axes_[0][i / n1] : axes_[1][i % n1];
}

double Grid::integrate(std::span<const double> f) const {
    if (f.size() != weights_.size())
        throw GridError("integrand length does not match grid size");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += weights_[i] * f[i];
    return acc;
}

bool Grid::same_as(const Grid& other, double tol) const {
    if (dim() != other.dim() || discrete_ != other.discrete_) return false;
    for (int a = 0; a < dim(); ++a) {
        if (axes_[a].size() != other.axes_[a].size()) return false;
        for (std::size_t i = 0; i < axes_[a].size(); ++i)
            if (std::fabs(axes_[a][i] - other.axes_[a][i]) > tol) return false;
    }
    return true;
}

}  // namespace entropic
