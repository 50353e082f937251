#pragma once

#include <Eigen/Dense>

#include "entropic/entropy.hpp"
#include "entropic/mep.hpp"

namespace entropic {

/// Curvatures of the receiver's utility maxima, one value per situation.
/// Only their relative sizes matter; they weight probabilities into attention.
using CurvatureWeights = WeightFunction;

/// Sender's belief about the receiver's optimal action b(s): homogeneous mean
/// b_bar with uncorrelated variance gamma2 per situation. v_const is the
/// expected peak utility, which never influences an argmax.
struct OptimumBeliefHomogeneous {
    double b_bar = 0.0;
    double gamma2 = 1.0;
    double v_const = 0.0;
};

/// General (possibly inhomogeneous and correlated) belief about b(s) on a grid:
/// mean b_mean and covariance D. G = b_mean b_mean^t + D; G_hat its diagonal.
class OptimumBeliefGeneral {
public:
    OptimumBeliefGeneral(Grid grid, Eigen::VectorXd b_mean, Eigen::MatrixXd D);

    /// Builds directly from the second-moment kernel G (symmetric, PSD).
    static OptimumBeliefGeneral from_second_moment(Grid grid, Eigen::MatrixXd G);

    const Grid& grid() const { return grid_; }
    const Eigen::MatrixXd& G() const { return g_; }
    const Eigen::VectorXd& G_hat() const { return g_hat_; }

private:
    Grid grid_;
    Eigen::MatrixXd g_;
    Eigen::VectorXd g_hat_;
};

/// Utility u(s,a) = v(s) - (1/2k) ((a - b(s))/sigma(s))^(2k).
struct PowerLossUtility {
    std::vector<double> b;      // optimal action per situation
    std::vector<double> sigma;  // tolerance > 0 per situation
    int k = 1;
    std::vector<double> v;      // peak utility (empty = 0)
};

/// w-weighted expectation <b w>/<w>; the receiver's optimal action under the
/// quadratic utility with curvatures w.
double weighted_action(const DiscreteDensity& belief, const CurvatureWeights& w,
                       std::span<const double> b);

struct UtilityTerms {
    double term_i;
    double term_ii;
    double term_iii;
};

/// The three attention sums of the marginalized quadratic utility on a
/// discrete situation set.
UtilityTerms expected_utility_terms(const AttentionDensity& a_alice,
                                    const AttentionDensity& a_bob,
                                    const OptimumBeliefHomogeneous& belief_b);

struct ExpectedUtility {
    double value;            // V - (w_mean gamma2 / 2) [sum (A_B - A_A)^2 + 1 - sum A_A^2]
    double value_via_terms;  // V - (w_mean / 2) (I - 2 II + III); equals value
};

/// Marginalized expected utility of the receiver's action, evaluated both via
/// the squared attention mismatch and via the terms I - 2 II + III.
ExpectedUtility expected_utility(const AttentionDensity& a_alice,
                                 const AttentionDensity& a_bob,
                                 const OptimumBeliefHomogeneous& belief_b, double w_mean);

struct OptimalAttention {
    AttentionDensity attention;
    bool rectified = false;        // negative values clipped and renormalized
    double correction_norm = 0.0;  // quadrature L2 norm of the bias correction
};

/// Utility-optimal attention to communicate when the second-moment belief G is
/// inhomogeneous: A_A plus the projected bias correction; clipped and
/// renormalized when the correction drives values negative.
OptimalAttention optimal_attention_continuous(const AttentionDensity& a_alice,
                                              const OptimumBeliefGeneral& belief_b);

/// Maximizer of the expected power-loss utility; the action gradient is an odd
/// polynomial in a, guaranteed a real root.
double power_loss_optimal_action(const DiscreteDensity& belief, const PowerLossUtility& u);

/// Expected power-loss utility of action a under the belief.
double power_loss_expected_utility(const DiscreteDensity& belief, const PowerLossUtility& u,
                                   double a);

/// The one-row topic f(s) = (a* - b(s))^(2k-1) / sigma(s)^(2k) whose honest
/// message lets any receiver reproduce the sender-optimal action.
Topic optimal_topic_power_loss(const DiscreteDensity& belief, const PowerLossUtility& u);

}  // namespace entropic
