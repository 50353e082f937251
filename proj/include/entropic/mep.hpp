#pragma once

#include <Eigen/Dense>

#include "entropic/density.hpp"

namespace entropic {

/// A topic f: S -> R^n sampled on the grid; one row per component.
class Topic {
public:
    Topic(Grid grid, Eigen::MatrixXd values);

    const Grid& grid() const { return grid_; }
    const Eigen::MatrixXd& values() const { return values_; }
    int dim() const { return static_cast<int>(values_.rows()); }

private:
    Grid grid_;
    Eigen::MatrixXd values_;  // n x gridpoints
};

/// A message (f, d): topic plus the communicated expectation value.
struct Message {
    Topic topic;
    Eigen::VectorXd data;

    Message(Topic t, Eigen::VectorXd d);
};

struct LogPartition {
    double ln_z;
    Eigen::VectorXd grad;  // <f> under the tilted density
    Eigen::MatrixXd hess;  // covariance of f under the tilted density
    bool rank_deficient = false;
};

/// ln Z(mu, f) = ln integral( prior * exp(mu^t f) ) with gradient and Hessian,
/// computed with the exponent shifted by its maximum.
LogPartition log_partition(const DiscreteDensity& prior, const Topic& topic,
                           const Eigen::VectorXd& mu);

/// The tilted density prior * exp(mu^t f) / Z.
DiscreteDensity tilted_density(const DiscreteDensity& prior, const Topic& topic,
                               const Eigen::VectorXd& mu);

struct MepSolution {
    DiscreteDensity posterior;
    Eigen::VectorXd mu;
    double log_partition;
    double residual;  // ||<f>_posterior - d||_inf
    int iterations;
    bool rank_deficient_topic = false;
};

/// Maximum-entropy update of the prior under the message's moment constraint.
/// Damped Newton on grad(ln Z) = d; throws InfeasibleMomentError when the data
/// lies outside the achievable moment set and ConvergenceError on stall.
MepSolution mep_update(const DiscreteDensity& prior, const Message& message,
                       double tol = 1e-10, int max_iter = 100);

/// The honest message on a topic: data = <f>_sender.
Message honest_message(const DiscreteDensity& p_sender, const Topic& topic);

/// Relative surprise topic f(s) = -ln(p_sender / prior). The honest message on
/// it carries d = relative_entropy(p_sender, prior) and decodes to the sender's
/// exact knowledge state with mu = -1.
Topic surprise_topic(const DiscreteDensity& p_sender, const DiscreteDensity& prior);

}  // namespace entropic
