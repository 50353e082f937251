#include "entropic/density.hpp"

#include <cmath>
#include <numbers>

namespace entropic {

DiscreteDensity::DiscreteDensity(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw GridError("density values length does not match grid size");
    for (double v : values_)
        if (!(v >= 0.0)) throw Error("density values must be nonnegative and finite");
    const double z = grid_.integrate(values_);
    if (!(z > 0.0)) throw ZeroMassError("density has zero total mass");
    for (double& v : values_) v /= z;
}

double DiscreteDensity::mass() const { return grid_.integrate(values_); }

GaussianBelief::GaussianBelief(Eigen::VectorXd mean, Eigen::MatrixXd covariance)
    : mean_(std::move(mean)), cov_(std::move(covariance)) {
    if (mean_.size() < 1 || mean_.size() > 2)
        throw Error("GaussianBelief supports 1 or 2 dimensions");
    if (cov_.rows() != mean_.size() || cov_.cols() != mean_.size())
        throw Error("covariance shape does not match mean");
    if (!cov_.isApprox(cov_.transpose(), 1e-12))
        throw Error("covariance must be symmetric");
    chol_.compute(cov_);
    if (chol_.info() != Eigen::Success)
        throw Error("covariance must be positive definite");
    const double log_det = 2.0 * chol_.matrixL().toDenseMatrix().diagonal().array().log().sum();
    log_norm_ = -0.5 * (static_cast<double>(mean_.size()) * std::log(2.0 * std::numbers::pi) + log_det);
}

GaussianBelief GaussianBelief::scalar(double mean, double variance) {
    Eigen::VectorXd m(1);
    m << mean;
    Eigen::MatrixXd c(1, 1);
    c << variance;
    return GaussianBelief(std::move(m), std::move(c));
}

double GaussianBelief::pdf(const Eigen::VectorXd& s) const {
    const Eigen::VectorXd d = s - mean_;
    const double quad = d.dot(chol_.solve(d));
    return std::exp(log_norm_ - 0.5 * quad);
}

double GaussianBelief::pdf1d(double s) const {
    Eigen::VectorXd v(1);
    v << s;
    return pdf(v);
}

GaussianMixture::GaussianMixture(std::vector<Component> components)
    : components_(std::move(components)) {
    if (components_.empty()) throw Error("mixture needs at least one component");
    double total = 0.0;
    for (const auto& c : components_) {
        if (!(c.weight >= 0.0)) throw Error("mixture weights must be nonnegative");
        total += c.weight;
    }
    if (std::fabs(total - 1.0) > 1e-12) throw Error("mixture weights must sum to 1");
}

GaussianMixture GaussianMixture::symmetric_bimodal(double sigma2) {
    std::vector<Component> comps;
    comps.push_back({0.5, GaussianBelief::scalar(-1.0, sigma2)});
    comps.push_back({0.5, GaussianBelief::scalar(1.0, sigma2)});
    return GaussianMixture(std::move(comps));
}

double GaussianMixture::pdf(const Eigen::VectorXd& s) const {
    double acc = 0.0;
    for (const auto& c : components_) acc += c.weight * c.belief.pdf(s);
    return acc;
}

double GaussianMixture::pdf1d(double s) const {
    Eigen::VectorXd v(1);
    v << s;
    return pdf(v);
}

DiscreteDensity sample_on_grid(const Belief& belief, const Grid& grid) {
    const std::size_t n = grid.size();
    const int d = grid.dim();
    std::vector<double> values(n);
    Eigen::VectorXd s(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (int a = 0; a < d; ++a) s[a] = grid.point(i, a);
        values[i] = std::visit([&](const auto& b) { return b.pdf(s); }, belief);
    }
    const double z = grid.integrate(values);
    if (std::fabs(z - 1.0) > 1e-6)
        throw GridTooNarrowError("analytic mass outside grid exceeds 1e-6");
    return DiscreteDensity(grid, std::move(values));
}

Eigen::VectorXd moment(const DiscreteDensity& p, const Eigen::MatrixXd& f_values) {
    if (static_cast<std::size_t>(f_values.cols()) != p.size())
        throw GridError("moment: topic values do not match grid size");
    const auto& w = p.grid().weights();
    Eigen::VectorXd m = Eigen::VectorXd::Zero(f_values.rows());
    for (std::size_t i = 0; i < p.size(); ++i) m += w[i] * p[i] * f_values.col(i);
    return m;
}

double moment(const DiscreteDensity& p, std::span<const double> f_values) {
    if (f_values.size() != p.size())
        throw GridError("moment: function values do not match grid size");
    const auto& w = p.grid().weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += w[i] * p[i] * f_values[i];
    return acc;
}

Eigen::VectorXd mean_point(const DiscreteDensity& p) {
    const int d = p.grid().dim();
    Eigen::VectorXd m = Eigen::VectorXd::Zero(d);
    const auto& w = p.grid().weights();
    for (std::size_t i = 0; i < p.size(); ++i)
        for (int a = 0; a < d; ++a) m[a] += w[i] * p[i] * p.grid().point(i, a);
    return m;
}

DiscreteDensity marginal(const DiscreteDensity& p, int axis) {
    if (p.grid().dim() != 2) throw GridError("marginal requires a 2D grid");
    const Grid& g = p.grid();
    const std::size_t n0 = g.axis_size(0);
    const std::size_t n1 = g.axis_size(1);
    const int other = 1 - axis;
    const std::size_t n_keep = axis == 0 ? n0 : n1;
    std::vector<double> vals(n_keep, 0.0);
    // integrate out the other axis with its trapezoid weights
    for (std::size_t i = 0; i < n0; ++i) {
        for (std::size_t j = 0; j < n1; ++j) {
            const std::size_t flat = i * n1 + j;
            const std::size_t keep = axis == 0 ? i : j;
            const std::size_t drop = axis == 0 ? j : i;
            double w = g.spacing(other);
            if (drop == 0 || drop == g.axis_size(other) - 1) w *= 0.5;
            vals[keep] += w * p[flat];
        }
    }
    const auto& ax = g.axis(axis);
    Grid g1 = Grid::uniform(ax.front(), ax.back(), ax.size());
    return DiscreteDensity(std::move(g1), std::move(vals));
}

}  // namespace entropic
