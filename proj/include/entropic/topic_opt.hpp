#pragma once

#include <functional>

#include "entropic/mep.hpp"

namespace entropic {

/// A player's utility u(s, a) with analytic action-gradient and action-Hessian.
/// s is the grid coordinate vector, a the action vector.
struct ActionUtility {
    std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)> value;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)> grad;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&, const Eigen::VectorXd&)> hess;
};

/// Sender/receiver game: knowledge states, utilities, action dimension.
/// The receiver's expected-utility Hessian must be negative definite at the
/// optimum; actions are then unique.
struct CommunicationGame {
    DiscreteDensity p_alice;
    DiscreteDensity p_bob_prior;
    ActionUtility u_alice;
    ActionUtility u_bob;
    int action_dim = 1;
};

/// The receiver's optimal action under a knowledge state: Newton on the
/// expected utility gradient, started at the state's mean coordinates.
Eigen::VectorXd optimal_action(const ActionUtility& u, const DiscreteDensity& belief,
                               int action_dim);

inline Eigen::VectorXd bob_action(const CommunicationGame& game,
                                  const DiscreteDensity& posterior) {
    return optimal_action(game.u_bob, posterior, game.action_dim);
}

inline Eigen::VectorXd alice_action(const CommunicationGame& game) {
    return optimal_action(game.u_alice, game.p_alice, game.action_dim);
}

/// The manipulation recipe: topic f(s) = g_B(s, a_A) + c with data c per
/// component. Decoding it steers the receiver to the sender's preferred action.
Message deceptive_message(const CommunicationGame& game, double c = 0.0);

/// Expected sender utility of the honest message on the topic:
/// decode via maximum entropy, let the receiver act, average the sender's
/// utility of that action over the sender's knowledge.
double alice_expected_utility_of_topic(const CommunicationGame& game, const Topic& topic);

/// Functional derivative of the sender's expected utility with respect to the
/// topic values, one row per topic component, one column per grid point.
/// Densities enter as quadrature densities, so finite differences must perturb
/// by delta/weight to compare.
Eigen::MatrixXd topic_gradient(const CommunicationGame& game, const Topic& topic);

struct TopicOptimum {
    Eigen::VectorXd theta;
    double utility;
};

/// Derivative-free maximization of alice_expected_utility_of_topic over a
/// parametrized topic family inside the box [lo, hi]. Verifies stationarity by
/// finite differences.
TopicOptimum optimize_topic_family(
    const CommunicationGame& game,
    const std::function<Topic(const Eigen::VectorXd&)>& family, const Eigen::VectorXd& theta0,
    const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);

}  // namespace entropic
