#pragma once

#include <Eigen/Dense>
#include <functional>

namespace entropic {

/// Coarse scan over [lo, hi] followed by golden-section refinement.
/// f must be continuous; returns the located maximizer.
double maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                       int scan_points = 128, double tol = 1e-10);

/// Nelder-Mead simplex maximization for small dimensions.
Eigen::VectorXd maximize_simplex(const std::function<double(const Eigen::VectorXd&)>& f,
                                 Eigen::VectorXd x0, double initial_step = 0.25,
                                 double tol = 1e-12, int max_iter = 2000);

/// Entropy-mirror (exponentiated-gradient) minimization of a smooth score over
/// the probability simplex with quadrature weights omega; used as an
/// independent properness oracle. grad receives the current density values.
std::vector<double> minimize_over_simplex(
    const std::function<std::vector<double>(const std::vector<double>&)>& grad,
    const std::vector<double>& omega, std::vector<double> q0, double step = 0.5,
    int max_iter = 20000, double tol = 1e-12);

}  // namespace entropic
