#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "entropic/attention_utility.hpp"
#include "entropic/gradcheck.hpp"
#include "entropic/scenarios.hpp"
#include "entropic/topic_opt.hpp"

using namespace entropic;

namespace {

DiscreteDensity random_density(const Grid& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(g.size());
    for (auto& x : v) x = 0.1 + u(rng);
    return DiscreteDensity(g, std::move(v));
}

ActionUtility quadratic_tracking() {
    ActionUtility u;
    u.value = [](const Eigen::VectorXd& s, const Eigen::VectorXd& a) {
        return -(s.head(a.size()) - a).squaredNorm();
    };
    u.grad = [](const Eigen::VectorXd& s, const Eigen::VectorXd& a) {
        return Eigen::VectorXd(2.0 * (s.head(a.size()) - a));
    };
    u.hess = [](const Eigen::VectorXd&, const Eigen::VectorXd& a) {
        return Eigen::MatrixXd(-2.0 * Eigen::MatrixXd::Identity(a.size(), a.size()));
    };
    return u;
}

}  // namespace

TEST_CASE("quadratic utility optimal action is the belief mean") {
    const Grid g = Grid::uniform(-4.0, 4.0, 81);
    const DiscreteDensity p = random_density(g, 1);
    const Eigen::VectorXd a = optimal_action(quadratic_tracking(), p, 1);
    CHECK(a[0] == doctest::Approx(mean_point(p)[0]).epsilon(1e-10));
}

TEST_CASE("quartic utility action agrees with the power-loss solver") {
    const Grid g = Grid::uniform(-1.0, 1.0, 41);
    const DiscreteDensity p = random_density(g, 2);
    PowerLossUtility pl;
    pl.b.resize(g.size());
    pl.sigma.assign(g.size(), 1.0);
    for (std::size_t i = 0; i < g.size(); ++i) pl.b[i] = std::sin(2.0 * g.point(i, 0));
    pl.k = 2;
    const double a_ref = power_loss_optimal_action(p, pl);

    ActionUtility u;
    u.value = [&g, &pl](const Eigen::VectorXd& s, const Eigen::VectorXd& a) {
        const double z = a[0] - std::sin(2.0 * s[0]);
        (void)g;
        (void)pl;
        return -0.25 * z * z * z * z;
    };
    u.grad = [](const Eigen::VectorXd& s, const Eigen::VectorXd& a) {
        const double z = a[0] - std::sin(2.0 * s[0]);
        return Eigen::VectorXd(Eigen::VectorXd::Constant(1, -z * z * z));
    };
    u.hess = [](const Eigen::VectorXd& s, const Eigen::VectorXd& a) {
        const double z = a[0] - std::sin(2.0 * s[0]);
        return Eigen::MatrixXd(Eigen::MatrixXd::Constant(1, 1, -3.0 * z * z));
    };
    const Eigen::VectorXd a = optimal_action(u, p, 1);
    CHECK(a[0] == doctest::Approx(a_ref).epsilon(1e-8));
}

TEST_CASE("deceptive message steers the receiver to the sender's action") {
    const MisalignedScenario scn{M_PI / 3.0};
    const CommunicationGame game = misaligned_game(scn, 33, 8.0);
    const Eigen::VectorXd a_pref = alice_action(game);

    for (double c : {0.0, 7.0}) {
        const Message msg = deceptive_message(game, c);
        const MepSolution sol = mep_update(game.p_bob_prior, msg);
        const Eigen::VectorXd a_bob = bob_action(game, sol.posterior);
        CHECK((a_bob - a_pref).lpNorm<Eigen::Infinity>() < 1e-6);
        // steered receiver sits at the sender's preferred stationary point
        const auto& g = game.p_bob_prior.grid();
        Eigen::VectorXd gmean = Eigen::VectorXd::Zero(2);
        for (std::size_t i = 0; i < g.size(); ++i) {
            Eigen::VectorXd s(2);
            s << g.point(i, 0), g.point(i, 1);
            gmean += g.weight(i) * sol.posterior[i] * game.u_bob.grad(s, a_pref);
        }
        CHECK(gmean.lpNorm<Eigen::Infinity>() < 1e-8);
    }
}

TEST_CASE("topic gradient vanishes at exact transfer with aligned interests") {
    const Grid g = Grid::uniform(-2.0, 2.0, 33);
    const DiscreteDensity p_alice = random_density(g, 3);
    const DiscreteDensity p_bob = random_density(g, 4);
    const ActionUtility u = quadratic_tracking();
    const CommunicationGame game{p_alice, p_bob, u, u, 1};
    const Topic topic = surprise_topic(p_alice, p_bob);
    const Eigen::MatrixXd grad = topic_gradient(game, topic);
    CHECK(grad.lpNorm<Eigen::Infinity>() < 1e-8);
}

TEST_CASE("analytic topic gradient matches finite differences") {
    for (unsigned seed : {1u, 2u, 3u, 4u}) {
        const RandomGameCase c = random_quadratic_game(seed, 12, seed % 2 ? 1 : 2);
        CHECK(topic_gradient_max_rel_err(c.game, c.topic) < 1e-6);
    }
}

TEST_CASE("gradient columns scale like functional derivatives") {
    // perturbing one topic value changes the utility by weight * gradient
    const RandomGameCase c = random_quadratic_game(5, 10, 1);
    const Eigen::MatrixXd an = topic_gradient(c.game, c.topic);
    const double u0 = alice_expected_utility_of_topic(c.game, c.topic);
    const double h = 1e-5;
    const std::size_t i = 4;
    Eigen::MatrixXd pert = c.topic.values();
    pert(0, i) += h / c.game.p_alice.grid().weight(i);
    const double u1 =
        alice_expected_utility_of_topic(c.game, Topic(c.game.p_alice.grid(), pert));
    CHECK((u1 - u0) / h == doctest::Approx(an(0, i)).epsilon(1e-4));
}

TEST_CASE("aligned game prefers the aligned topic direction") {
    // phi = 0: sender and receiver interests coincide, best angle is 0
    const MisalignedScenario scn{0.0};
    const CommunicationGame game = misaligned_game(scn, 33, 8.0);
    const auto family = [&](const Eigen::VectorXd& t) {
        return misaligned_topic(game.p_bob_prior.grid(), t[0]);
    };
    const TopicOptimum opt = optimize_topic_family(
        game, family, Eigen::VectorXd::Zero(1), Eigen::VectorXd::Constant(1, -1.2),
        Eigen::VectorXd::Constant(1, 1.2));
    CHECK(std::fabs(opt.theta[0]) < 1e-4);
    // utility at the optimum dominates off-angles
    CHECK(opt.utility > alice_expected_utility_of_topic(game, family(Eigen::VectorXd::Constant(1, 0.5))));
}

TEST_CASE("opposed game prefers the orthogonal compromise") {
    // phi = pi: interests fully opposed; communicating the orthogonal
    // direction is the least harmful choice
    const MisalignedScenario scn{M_PI};
    const CommunicationGame game = misaligned_game(scn, 33, 8.0);
    const auto family = [&](const Eigen::VectorXd& t) {
        return misaligned_topic(game.p_bob_prior.grid(), t[0]);
    };
    const TopicOptimum opt = optimize_topic_family(
        game, family, Eigen::VectorXd::Constant(1, 1.0), Eigen::VectorXd::Constant(1, 0.3),
        Eigen::VectorXd::Constant(1, M_PI - 0.3));
    CHECK(opt.theta[0] == doctest::Approx(M_PI / 2.0).epsilon(1e-3));
}

TEST_CASE("non-concave receiver objective is rejected") {
    const Grid g = Grid::uniform(-1.0, 1.0, 17);
    const DiscreteDensity p = random_density(g, 6);
    ActionUtility bad;
    bad.value = [](const Eigen::VectorXd&, const Eigen::VectorXd& a) {
        return a.squaredNorm();
    };
    bad.grad = [](const Eigen::VectorXd&, const Eigen::VectorXd& a) {
        return Eigen::VectorXd(2.0 * a);
    };
    bad.hess = [](const Eigen::VectorXd&, const Eigen::VectorXd& a) {
        return Eigen::MatrixXd(2.0 * Eigen::MatrixXd::Identity(a.size(), a.size()));
    };
    CHECK_THROWS_AS(optimal_action(bad, p, 1), Error);
}
