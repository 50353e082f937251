#include "entropic/scenarios.hpp"

#include <cmath>

#include "entropic/optim.hpp"

namespace entropic {

namespace {

constexpr double kHuge = 1e30;

double gauss1d(double s, double mean, double var) {
    const double z = s - mean;
    return std::exp(-0.5 * z * z / var) / std::sqrt(2.0 * M_PI * var);
}

}  // namespace

BimodalClosedForms bimodal_closed_forms(const BimodalScenario& scn, double lambda) {
    const double th = std::tanh(lambda);
    const double ch = std::cosh(lambda);
    BimodalClosedForms out;
    out.m = th - lambda / (ch * ch);
    out.sigma_b2 = scn.sigma_a2 + 1.0 - th * th;
    out.m_re = lambda * scn.sigma_a2 + th;
    // the weighted-RE fit moment-matches the sender's attention function, so
    // its variance coincides with the attention fit's
    out.sigma_re2 = scn.sigma_a2 + 1.0 - th * th;
    return out;
}

Grid bimodal_grid(const BimodalScenario& scn, double lambda) {
    const double margin = 6.0 * std::sqrt(scn.sigma_a2 + 1.0);
    const double shift = lambda * (scn.sigma_a2 + 1.0);
    const double lo = -1.0 - margin + std::min(0.0, shift);
    const double hi = 1.0 + margin + std::max(0.0, shift);
    const std::size_t n = static_cast<std::size_t>(std::ceil((hi - lo) / 0.01)) + 1;
    return Grid::uniform(lo, hi, n);
}

std::pair<double, double> bimodal_numeric(const BimodalScenario& scn, double lambda,
                                          BimodalObjective objective) {
    const Grid grid = bimodal_grid(scn, lambda);
    const DiscreteDensity p = sample_on_grid(GaussianMixture::symmetric_bimodal(scn.sigma_a2), grid);
    const WeightFunction w = WeightFunction::exponential(grid, lambda);

    const auto fit_cost = [&](double m, double sigma2) {
        if (!(sigma2 > 1e-6) || sigma2 > 1e4) return kHuge;
        std::vector<double> q(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            q[i] = gauss1d(grid.point(i, 0), m, sigma2);
        try {
            const DiscreteDensity qd(grid, std::move(q));
            return objective == BimodalObjective::attention_entropy
                       ? relative_attention_entropy(p, qd, w)
                       : weighted_relative_entropy(p, qd, w);
        } catch (const Error&) {
            return kHuge;
        }
    };

    // start from the moments of the sender's attention function
    const AttentionDensity ap = attention(p, w);
    const auto& gw = grid.weights();
    double m0 = 0.0, v0 = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) m0 += gw[i] * ap[i] * grid.point(i, 0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double z = grid.point(i, 0) - m0;
        v0 += gw[i] * ap[i] * z * z;
    }
    // the attention of a Gaussian fit sits at m + lambda sigma^2; undo the
    // shift for the attention objective's starting point
    if (objective == BimodalObjective::attention_entropy) m0 -= lambda * v0;

    const auto objective_vec = [&](const Eigen::VectorXd& t) {
        return -fit_cost(t[0], std::exp(t[1]));
    };
    Eigen::VectorXd t0(2);
    t0 << m0, std::log(std::max(v0, 1e-3));
    Eigen::VectorXd t = maximize_simplex(objective_vec, t0, 0.5, 1e-15, 4000);
    for (int round = 0; round < 3; ++round) {
        t[0] = maximize_scalar(
            [&](double x) {
                Eigen::VectorXd u = t;
                u[0] = x;
                return objective_vec(u);
            },
            t[0] - 0.05, t[0] + 0.05, 32, 1e-11);
        t[1] = maximize_scalar(
            [&](double x) {
                Eigen::VectorXd u = t;
                u[1] = x;
                return objective_vec(u);
            },
            t[1] - 0.05, t[1] + 0.05, 32, 1e-11);
    }
    return {t[0], std::exp(t[1])};
}

BimodalAttentions bimodal_attentions(const BimodalScenario& scn, double lambda, double m,
                                     double sigma_b2) {
    const Grid grid = bimodal_grid(scn, lambda);
    const double shift = lambda * scn.sigma_a2;
    const double w_right = std::exp(lambda) / (2.0 * std::cosh(lambda));

    std::vector<double> a_vals(grid.size()), b_vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double s = grid.point(i, 0);
        a_vals[i] = w_right * gauss1d(s, 1.0 + shift, scn.sigma_a2) +
                    (1.0 - w_right) * gauss1d(s, -1.0 + shift, scn.sigma_a2);
        b_vals[i] = gauss1d(s, m + lambda * sigma_b2, sigma_b2);
    }
    return {AttentionDensity(grid, std::move(a_vals)), AttentionDensity(grid, std::move(b_vals))};
}

MisalignedResult misaligned_run(const MisalignedScenario& scn, double alpha, bool verify_mep) {
    const double phi = scn.phi;
    const Eigen::Vector2d tau(std::cos(alpha), std::sin(alpha));
    MisalignedResult out;
    out.d = std::cos(alpha);
    out.a_b = out.d * tau;
    out.u_alice = -scn.s_a.trace() +
                  2.0 * std::cos(alpha) *
                      (std::cos(alpha) * std::cos(phi) + std::sin(alpha) * std::sin(phi));
    out.u_bob_under_alice =
        -(scn.s_a.trace() + (scn.s_bar_a() - out.a_b).squaredNorm());
    if (verify_mep) {
        const CommunicationGame game = misaligned_game(scn);
        const Topic topic = misaligned_topic(game.p_bob_prior.grid(), alpha);
        const MepSolution sol = mep_update(game.p_bob_prior, honest_message(game.p_alice, topic));
        out.mep_mean_error = (mean_point(sol.posterior) - out.a_b).lpNorm<Eigen::Infinity>();
    }
    return out;
}

double misaligned_alpha_star(double phi) {
    if (std::fabs(std::sin(phi)) < 1e-15) return phi == 0.0 ? 0.0 : M_PI / 2.0;
    return std::atan((-std::cos(phi) + 1.0) / std::sin(phi));
}

double misaligned_alpha_star_numeric(const MisalignedScenario& scn) {
    return maximize_scalar(
        [&](double a) { return misaligned_run(scn, a).u_alice; }, -M_PI / 2.0, M_PI / 2.0, 512,
        1e-12);
}

CommunicationGame misaligned_game(const MisalignedScenario& scn, std::size_t n_per_axis,
                                  double half_width) {
    const Grid grid = Grid::uniform2d(-half_width, half_width, n_per_axis, -half_width,
                                      half_width, n_per_axis);
    const GaussianBelief alice(scn.s_bar_a(), scn.s_a);
    const GaussianBelief bob(Eigen::Vector2d::Zero(), Eigen::Matrix2d::Identity());
    Eigen::Matrix2d rot;
    rot << std::cos(scn.phi), -std::sin(scn.phi), std::sin(scn.phi), std::cos(scn.phi);

    ActionUtility u_bob;
    u_bob.value = [](const Eigen::VectorXd& s, const Eigen::VectorXd& a) {
        return -(s - a).squaredNorm();
    };
    u_bob.grad = [](const Eigen::VectorXd& s, const Eigen::VectorXd& a) {
        return Eigen::VectorXd(2.0 * (s - a));
    };
    u_bob.hess = [](const Eigen::VectorXd&, const Eigen::VectorXd& a) {
        return Eigen::MatrixXd(-2.0 * Eigen::MatrixXd::Identity(a.size(), a.size()));
    };

    ActionUtility u_alice;
    u_alice.value = [rot](const Eigen::VectorXd& s, const Eigen::VectorXd& a) {
        return -(rot * s - a).squaredNorm();
    };
    u_alice.grad = [rot](const Eigen::VectorXd& s, const Eigen::VectorXd& a) {
        return Eigen::VectorXd(2.0 * (rot * s - a));
    };
    u_alice.hess = [](const Eigen::VectorXd&, const Eigen::VectorXd& a) {
        return Eigen::MatrixXd(-2.0 * Eigen::MatrixXd::Identity(a.size(), a.size()));
    };

    return {sample_on_grid(alice, grid), sample_on_grid(bob, grid), u_alice, u_bob, 2};
}

Topic misaligned_topic(const Grid& grid, double alpha) {
    Eigen::MatrixXd f(1, grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        f(0, i) = std::cos(alpha) * grid.point(i, 0) + std::sin(alpha) * grid.point(i, 1);
    return Topic(grid, std::move(f));
}

WeatherResult weather_run(WeatherVariant variant) {
    const Grid grid = Grid::discrete({-1.0, 0.0, 1.0});
    const DiscreteDensity prior(grid, {1.0, 1.0, 1.0});
    Eigen::MatrixXd f(2, 3);
    f << -1.0, 0.0, 1.0, 1.0, 0.0, 1.0;  // s and s^2
    const Topic topic(grid, std::move(f));

    double d2 = 0.0;
    switch (variant) {
        case WeatherVariant::should_be: d2 = 0.25; break;
        case WeatherVariant::might_be: d2 = 0.5; break;
        case WeatherVariant::is_going_to_be: d2 = 0.0; break;
    }

    WeatherResult out;
    if (d2 <= 0.0) {
        // zero variance sits on the moment-set boundary; the exact solution is
        // the limiting point mass at s = 0 with the second multiplier at -inf
        out.probabilities = {0.0, 1.0, 0.0};
        out.mu = Eigen::Vector2d(0.0, -std::numeric_limits<double>::infinity());
        out.boundary = true;
        return out;
    }
    Eigen::VectorXd d(2);
    d << 0.0, d2;
    const MepSolution sol = mep_update(prior, Message(topic, d));
    out.probabilities = {sol.posterior[0], sol.posterior[1], sol.posterior[2]};
    out.mu = sol.mu;
    return out;
}

MepSolution accurate_transfer_demo(const DiscreteDensity& p_alice,
                                   const DiscreteDensity& p_bob0) {
    const Topic topic = surprise_topic(p_alice, p_bob0);
    MepSolution sol = mep_update(p_bob0, honest_message(p_alice, topic));
    if (std::fabs(sol.mu[0] + 1.0) > 1e-8)
        throw ConvergenceError("accurate_transfer_demo: multiplier deviates from -1");
    const auto& gw = p_alice.grid().weights();
    double tv = 0.0;
    for (std::size_t i = 0; i < p_alice.size(); ++i)
        tv += gw[i] * std::fabs(sol.posterior[i] - p_alice[i]);
    if (0.5 * tv > 1e-8)
        throw ConvergenceError("accurate_transfer_demo: decoded state deviates from sender's");
    return sol;
}

}  // namespace entropic
