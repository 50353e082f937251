#pragma once

#include "entropic/topic_opt.hpp"

namespace entropic {

struct RandomGameCase {
    CommunicationGame game;
    Topic topic;
};

/// Seeded small 1D game with quadratic per-situation utilities on a discrete
/// grid, plus a random topic of the given dimension.
RandomGameCase random_quadratic_game(unsigned seed, std::size_t n_points = 12,
                                     int topic_dim = 1);

/// Central finite differences of the sender's expected utility through the
/// full decode-act pipeline, perturbing one topic value at a time (delta
/// scaled by the quadrature weight).
Eigen::MatrixXd fd_topic_gradient(const CommunicationGame& game, const Topic& topic,
                                  double step = 1e-4);

/// Sup-norm relative deviation between the analytic and finite-difference
/// topic gradients.
double topic_gradient_max_rel_err(const CommunicationGame& game, const Topic& topic,
                                  double step = 1e-4);

}  // namespace entropic
