#include "entropic/gradcheck.hpp"

#include <cmath>
#include <random>

namespace entropic {

RandomGameCase random_quadratic_game(unsigned seed, std::size_t n_points, int topic_dim) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);

    std::vector<double> points(n_points);
    for (std::size_t i = 0; i < n_points; ++i)
        points[i] = -2.0 + 4.0 * (static_cast<double>(i) + 0.5 * unit(rng)) /
                               static_cast<double>(n_points);
    Grid grid = Grid::discrete(points);

    std::vector<double> pa(n_points), pb(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        pa[i] = 0.2 + unit(rng);
        pb[i] = 0.2 + unit(rng);
    }
    DiscreteDensity p_alice(grid, std::move(pa));
    DiscreteDensity p_bob(std::move(grid), std::move(pb));

    // per-situation quadratic utility -c(s) (a - b(s))^2 with smooth random
    // target and curvature profiles
    const auto make_utility = [&rng, &sym]() {
        const double b0 = sym(rng), b1 = sym(rng), b2 = sym(rng);
        const double c1 = 0.4 * sym(rng), cp = M_PI * sym(rng);
        const auto b = [b0, b1, b2](double s) { return b0 + b1 * s + b2 * std::sin(s); };
        const auto c = [c1, cp](double s) { return 1.0 + c1 * std::sin(s + cp); };
        ActionUtility u;
        u.value = [b, c](const Eigen::VectorXd& s, const Eigen::VectorXd& a) {
            const double z = a[0] - b(s[0]);
            return -c(s[0]) * z * z;
        };
        u.grad = [b, c](const Eigen::VectorXd& s, const Eigen::VectorXd& a) {
            return Eigen::VectorXd::Constant(1, -2.0 * c(s[0]) * (a[0] - b(s[0])));
        };
        u.hess = [c](const Eigen::VectorXd& s, const Eigen::VectorXd&) {
            return Eigen::MatrixXd::Constant(1, 1, -2.0 * c(s[0]));
        };
        return u;
    };

    Eigen::MatrixXd f(topic_dim, n_points);
    for (int j = 0; j < topic_dim; ++j) {
        const double f0 = sym(rng), f1 = sym(rng), f2 = sym(rng);
        for (std::size_t i = 0; i < n_points; ++i) {
            const double s = p_alice.grid().point(i, 0);
            f(j, i) = f0 * s + f1 * s * s + f2 * std::sin(2.0 * s) + 0.1 * sym(rng);
        }
    }
    Topic topic(p_alice.grid(), std::move(f));

    CommunicationGame game{std::move(p_alice), std::move(p_bob), make_utility(), make_utility(),
                           1};
    return {std::move(game), std::move(topic)};
}

Eigen::MatrixXd fd_topic_gradient(const CommunicationGame& game, const Topic& topic,
                                  double step) {
    const auto& gw = topic.grid().weights();
    Eigen::MatrixXd out(topic.dim(), topic.grid().size());
    for (int j = 0; j < topic.dim(); ++j)
        for (std::size_t i = 0; i < topic.grid().size(); ++i) {
            Eigen::MatrixXd up = topic.values(), down = topic.values();
            up(j, i) += step;
            down(j, i) -= step;
            const double u_up =
                alice_expected_utility_of_topic(game, Topic(topic.grid(), std::move(up)));
            const double u_down =
                alice_expected_utility_of_topic(game, Topic(topic.grid(), std::move(down)));
            out(j, i) = (u_up - u_down) / (2.0 * step * gw[i]);
        }
    return out;
}

double topic_gradient_max_rel_err(const CommunicationGame& game, const Topic& topic,
                                  double step) {
    const Eigen::MatrixXd analytic = topic_gradient(game, topic);
    const Eigen::MatrixXd fd = fd_topic_gradient(game, topic, step);
    const double scale = std::max(analytic.cwiseAbs().maxCoeff(), 1e-12);
    return (analytic - fd).cwiseAbs().maxCoeff() / scale;
}

}  // namespace entropic
