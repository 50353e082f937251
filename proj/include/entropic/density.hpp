#pragma once

#include <Eigen/Dense>
#include <span>
#include <variant>
#include <vector>

#include "entropic/grid.hpp"

namespace entropic {

/// Nonnegative function values on a grid, quadrature-normalized to unit mass.
/// Represents knowledge states P(s|I) and attention functions alike.
class DiscreteDensity {
public:
    /// Normalizes on construction; the raw values only need to be nonnegative
    /// with positive total mass.
    DiscreteDensity(Grid grid, std::vector<double> values);

    const Grid& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }

    double mass() const;  // quadrature integral, ~1 by construction

private:
    Grid grid_;
    std::vector<double> values_;
};

/// Parametric Gaussian belief, 1D or 2D.
class GaussianBelief {
public:
    GaussianBelief(Eigen::VectorXd mean, Eigen::MatrixXd covariance);
    static GaussianBelief scalar(double mean, double variance);

    const Eigen::VectorXd& mean() const { return mean_; }
    const Eigen::MatrixXd& covariance() const { return cov_; }
    int dim() const { return static_cast<int>(mean_.size()); }

    double pdf(const Eigen::VectorXd& s) const;
    double pdf1d(double s) const;

private:
    Eigen::VectorXd mean_;
    Eigen::MatrixXd cov_;
    Eigen::LLT<Eigen::MatrixXd> chol_;
    double log_norm_ = 0.0;
};

/// Convex combination of Gaussian components; weights sum to one.
class GaussianMixture {
public:
    struct Component {
        double weight;
        GaussianBelief belief;
    };

    explicit GaussianMixture(std::vector<Component> components);

    /// Equal-weight pair of 1D Gaussians at means +-1 with common variance,
    /// the bimodal knowledge state of the worked attention example.
    static GaussianMixture symmetric_bimodal(double sigma2);

    const std::vector<Component>& components() const { return components_; }
    double pdf(const Eigen::VectorXd& s) const;
    double pdf1d(double s) const;

private:
    std::vector<Component> components_;
};

using Belief = std::variant<GaussianBelief, GaussianMixture>;

/// Evaluates the analytic pdf on the grid and normalizes. Throws
/// GridTooNarrowError if more than 1e-6 of the analytic mass falls outside.
DiscreteDensity sample_on_grid(const Belief& belief, const Grid& grid);

/// Componentwise expectation of f (rows of f_values) under p.
Eigen::VectorXd moment(const DiscreteDensity& p, const Eigen::MatrixXd& f_values);
double moment(const DiscreteDensity& p, std::span<const double> f_values);

/// Mean coordinate vector of p.
Eigen::VectorXd mean_point(const DiscreteDensity& p);

/// Marginal of a 2D density along the given axis (0 or 1).
DiscreteDensity marginal(const DiscreteDensity& p, int axis);

}  // namespace entropic
