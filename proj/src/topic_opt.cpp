#include "entropic/topic_opt.hpp"

#include <algorithm>
#include <cmath>

#include "entropic/log.hpp"
#include "entropic/optim.hpp"

namespace entropic {

namespace {

Eigen::VectorXd coords(const Grid& grid, std::size_t i) {
    Eigen::VectorXd s(grid.dim());
    for (int axis = 0; axis < grid.dim(); ++axis) s[axis] = grid.point(i, axis);
    return s;
}

// symmetric pseudo-inverse with relative eigenvalue cutoff
Eigen::MatrixXd pinv_sym(const Eigen::MatrixXd& m, bool* truncated) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double cutoff = 1e-12 * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
    *truncated = false;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (std::fabs(ev[i]) > cutoff)
            inv[i] = 1.0 / ev[i];
        else
            *truncated = true;
    }
    return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

Eigen::VectorXd optimal_action(const ActionUtility& u, const DiscreteDensity& belief,
                               int action_dim) {
    const Grid& grid = belief.grid();
    const auto& gw = grid.weights();
    const std::size_t n = belief.size();

    Eigen::VectorXd a = Eigen::VectorXd::Zero(action_dim);
    const Eigen::VectorXd mp = mean_point(belief);
    for (int j = 0; j < std::min<int>(action_dim, grid.dim()); ++j) a[j] = mp[j];

    for (int iter = 0; iter < 50; ++iter) {
        Eigen::VectorXd f = Eigen::VectorXd::Zero(action_dim);
        Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(action_dim, action_dim);
        for (std::size_t i = 0; i < n; ++i) {
            if (belief[i] <= 0.0) continue;
            const double m = gw[i] * belief[i];
            const Eigen::VectorXd s = coords(grid, i);
            f += m * u.grad(s, a);
            jac += m * u.hess(s, a);
        }
        if (f.lpNorm<Eigen::Infinity>() < 1e-10) return a;
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
        if (es.eigenvalues().maxCoeff() >= 0.0)
            throw Error("optimal_action: expected-utility Hessian is not negative definite");
        a -= jac.ldlt().solve(f);
    }
    throw ConvergenceError("optimal_action: Newton did not converge");
}

Message deceptive_message(const CommunicationGame& game, double c) {
    const Eigen::VectorXd a_pref = alice_action(game);
    const Grid& grid = game.p_bob_prior.grid();
    const std::size_t n = grid.size();
    Eigen::MatrixXd f(game.action_dim, n);
    for (std::size_t i = 0; i < n; ++i)
        f.col(i) = game.u_bob.grad(coords(grid, i), a_pref).array() + c;
    return Message(Topic(grid, std::move(f)),
                   Eigen::VectorXd::Constant(game.action_dim, c));
}

double alice_expected_utility_of_topic(const CommunicationGame& game, const Topic& topic) {
    const MepSolution sol = mep_update(game.p_bob_prior, honest_message(game.p_alice, topic));
    const Eigen::VectorXd a = bob_action(game, sol.posterior);
    const Grid& grid = game.p_alice.grid();
    const auto& gw = grid.weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < game.p_alice.size(); ++i) {
        if (game.p_alice[i] <= 0.0) continue;
        acc += gw[i] * game.p_alice[i] * game.u_alice.value(coords(grid, i), a);
    }
    return acc;
}

Eigen::MatrixXd topic_gradient(const CommunicationGame& game, const Topic& topic) {
    const int n_f = topic.dim();
    const int adim = game.action_dim;
    const Grid& grid = game.p_alice.grid();
    const auto& gw = grid.weights();
    const std::size_t n = grid.size();

    const MepSolution sol = mep_update(game.p_bob_prior, honest_message(game.p_alice, topic));
    const DiscreteDensity& p_b = sol.posterior;
    const Eigen::VectorXd a = bob_action(game, p_b);

    Eigen::VectorXd g_a_mean = Eigen::VectorXd::Zero(adim);
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(adim, adim);
    const Eigen::VectorXd f_mean_b = moment(p_b, topic.values());
    Eigen::MatrixXd g_df = Eigen::MatrixXd::Zero(adim, n_f);   // <g_B delta-f^t>_B
    Eigen::MatrixXd df_cov = Eigen::MatrixXd::Zero(n_f, n_f);  // <delta-f delta-f^t>_B
    std::vector<Eigen::VectorXd> g_b(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::VectorXd s = coords(grid, i);
        g_b[i] = game.u_bob.grad(s, a);
        if (game.p_alice[i] > 0.0)
            g_a_mean += gw[i] * game.p_alice[i] * game.u_alice.grad(s, a);
        if (p_b[i] > 0.0) {
            const double m = gw[i] * p_b[i];
            hess += m * game.u_bob.hess(s, a);
            const Eigen::VectorXd df = topic.values().col(i) - f_mean_b;
            g_df += m * (g_b[i] * df.transpose());
            df_cov += m * (df * df.transpose());
        }
    }

    bool truncated = false;
    const Eigen::MatrixXd df_cov_inv = pinv_sym(df_cov, &truncated);
    if (truncated)
        log_info("topic_gradient: singular topic covariance, using pseudo-inverse");

    const Eigen::VectorXd v = hess.ldlt().solve(g_a_mean);  // H^-1 <g_A>_A
    const Eigen::RowVectorXd k = (v.transpose() * g_df) * df_cov_inv;

    // The multiplier responds to a topic perturbation both through the
    // communicated moment and through the explicit exp(mu^t f) factor of the
    // decoded state; the latter contributes the k.delta-f term below.
    Eigen::MatrixXd out(n_f, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double scalar = v.dot(g_b[i]) * p_b[i];
        const double dp = p_b[i] - game.p_alice[i];
        const double k_df = k.dot(topic.values().col(i) - f_mean_b);
        for (int j = 0; j < n_f; ++j)
            out(j, i) = -(scalar * sol.mu[j] - k[j] * dp - k_df * sol.mu[j] * p_b[i]);
    }
    return out;
}

TopicOptimum optimize_topic_family(
    const CommunicationGame& game,
    const std::function<Topic(const Eigen::VectorXd&)>& family, const Eigen::VectorXd& theta0,
    const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
    const auto dim = theta0.size();
    const auto clamp = [&](Eigen::VectorXd t) {
        for (Eigen::Index i = 0; i < t.size(); ++i) t[i] = std::clamp(t[i], lo[i], hi[i]);
        return t;
    };
    const auto objective = [&](const Eigen::VectorXd& t) {
        return alice_expected_utility_of_topic(game, family(clamp(t)));
    };

    Eigen::VectorXd theta = theta0;
    if (dim == 1) {
        theta[0] = maximize_scalar([&](double x) { return objective(Eigen::VectorXd::Constant(1, x)); },
                                   lo[0], hi[0], 256, 1e-10);
    } else {
        theta = clamp(maximize_simplex(objective, theta, 0.25, 1e-14));
        // coordinate polish
        for (int round = 0; round < 2; ++round)
            for (Eigen::Index j = 0; j < dim; ++j) {
                const double span = (hi[j] - lo[j]) / 16.0;
                theta[j] = maximize_scalar(
                    [&](double x) {
                        Eigen::VectorXd t = theta;
                        t[j] = x;
                        return objective(t);
                    },
                    std::max(lo[j], theta[j] - span), std::min(hi[j], theta[j] + span), 32,
                    1e-10);
            }
    }

    const double u_star = objective(theta);
    // finite-difference stationarity check
    const double h = 1e-4;
    double grad_norm2 = 0.0;
    for (Eigen::Index j = 0; j < dim; ++j) {
        Eigen::VectorXd tp = theta, tm = theta;
        tp[j] += h;
        tm[j] -= h;
        const double g = (objective(tp) - objective(tm)) / (2.0 * h);
        grad_norm2 += g * g;
    }
    if (std::sqrt(grad_norm2) > 1e-6)
        throw ConvergenceError("optimize_topic_family: finite-difference gradient " +
                               std::to_string(std::sqrt(grad_norm2)) +
                               " exceeds stationarity tolerance at located optimum");
    return {theta, u_star};
}

}  // namespace entropic
