#pragma once

#include <array>

#include "entropic/attention_utility.hpp"
#include "entropic/topic_opt.hpp"

namespace entropic {

/// Bimodal sender knowledge: equal-weight Gaussians at +-1 with variance
/// sigma_a2, communicated to a single-Gaussian receiver under exponential
/// importance weights exp(lambda s).
struct BimodalScenario {
    double sigma_a2 = 0.25;
};

struct BimodalClosedForms {
    double m;          // receiver mean fitted under attention relative entropy
    double sigma_b2;   // receiver variance, attention fit
    double m_re;       // receiver mean fitted under weighted relative entropy
    double sigma_re2;  // receiver variance, weighted-RE fit
};

BimodalClosedForms bimodal_closed_forms(const BimodalScenario& scn, double lambda);

/// Grid wide enough for the exponentially shifted attention mass.
Grid bimodal_grid(const BimodalScenario& scn, double lambda);

enum class BimodalObjective { attention_entropy, weighted_re };

/// Independent 2-parameter numeric fit of a single Gaussian to the bimodal
/// state under the chosen objective. Certified against the closed forms for
/// |lambda| <= 8.
std::pair<double, double> bimodal_numeric(const BimodalScenario& scn, double lambda,
                                          BimodalObjective objective);

struct BimodalAttentions {
    AttentionDensity a_alice;
    AttentionDensity a_bob;
};

/// Closed-form attention functions of sender and fitted receiver, sampled on
/// the scenario grid. The sender's is a two-Gaussian mixture with weights
/// exp(+-lambda)/(2 cosh lambda) shifted by lambda sigma_a2; the receiver's a
/// Gaussian at m + lambda sigma_b2.
BimodalAttentions bimodal_attentions(const BimodalScenario& scn, double lambda, double m,
                                     double sigma_b2);

/// 2D rotated-interest game: sender mean (1,0), covariance S_A < 1; receiver
/// prior standard normal; receiver matches the situation, sender prefers the
/// situation rotated by phi.
struct MisalignedScenario {
    double phi = 0.0;
    Eigen::Matrix2d s_a = 0.25 * Eigen::Matrix2d::Identity();

    Eigen::Vector2d s_bar_a() const { return {1.0, 0.0}; }
};

struct MisalignedResult {
    double d;                     // message data cos(alpha)
    Eigen::Vector2d a_b;          // receiver action d tau
    double u_alice;               // sender's expected utility, closed form
    double u_bob_under_alice;     // receiver's utility averaged over sender knowledge
    double mep_mean_error = 0.0;  // |grid-decoded posterior mean - d tau|_inf
};

/// Closed-form run of the game at topic angle alpha; optionally verifies the
/// Gaussian posterior against the grid decoder.
MisalignedResult misaligned_run(const MisalignedScenario& scn, double alpha,
                                bool verify_mep = false);

/// arctan[(-cos phi + 1)/sin phi], the stationary angle of the closed-form
/// sender utility (phi/2 on (0, pi)); phi = 0 maps to 0.
double misaligned_alpha_star(double phi);

/// Numeric maximization of the closed-form sender utility over alpha.
double misaligned_alpha_star_numeric(const MisalignedScenario& scn);

/// The game on a shared 2D grid for the decoding/gradient machinery.
CommunicationGame misaligned_game(const MisalignedScenario& scn, std::size_t n_per_axis = 41,
                                  double half_width = 8.0);

/// The linear topic along direction (cos alpha, sin alpha) on the grid.
Topic misaligned_topic(const Grid& grid, double alpha);

enum class WeatherVariant { should_be, might_be, is_going_to_be };

struct WeatherResult {
    std::array<double, 3> probabilities;  // bad, alright, good
    Eigen::VectorXd mu;
    bool boundary = false;  // zero-variance constraint, limiting point mass
};

/// Three-point weather forecast decoding: situations {-1, 0, 1}, uniform
/// prior, topic (s, s^2), data (0, d2) with d2 in {1/4, 1/2, 0} per variant.
WeatherResult weather_run(WeatherVariant variant);

/// Exact knowledge transfer through the surprise topic; verifies mu = -1 and
/// that the decoded state reproduces the sender's, then returns the solution.
MepSolution accurate_transfer_demo(const DiscreteDensity& p_alice,
                                   const DiscreteDensity& p_bob0);

}  // namespace entropic
