#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "entropic/entropy.hpp"
#include "entropic/optim.hpp"

using namespace entropic;

namespace {

Grid wide_grid() { return Grid::uniform(-10.0, 10.0, 1001); }

DiscreteDensity gaussian_on(const Grid& g, double mean, double var) {
    return sample_on_grid(GaussianBelief::scalar(mean, var), g);
}

// closed-form KL divergence between two 1D Gaussians
double gauss_kl(double m1, double v1, double m2, double v2) {
    return 0.5 * (std::log(v2 / v1) + (v1 + (m1 - m2) * (m1 - m2)) / v2 - 1.0);
}

}  // namespace

TEST_CASE("relative entropy of gaussians matches the closed form") {
    const Grid g = wide_grid();
    const DiscreteDensity p = gaussian_on(g, 0.0, 1.0);
    const DiscreteDensity q = gaussian_on(g, 0.5, 1.5);
    CHECK(relative_entropy(p, q) == doctest::Approx(gauss_kl(0.0, 1.0, 0.5, 1.5)).epsilon(1e-7));
    CHECK(relative_entropy(p, p) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(relative_entropy(p, q) > 0.0);
}

TEST_CASE("absolute continuity is enforced") {
    const Grid g = Grid::discrete({0.0, 1.0, 2.0});
    const DiscreteDensity p(g, {0.5, 0.5, 0.0});
    const DiscreteDensity q(g, {1.0, 0.0, 0.0});
    CHECK_THROWS_AS(relative_entropy(p, q), AbsoluteContinuityError);
    // 0 ln 0 = 0 on the other side
    CHECK(std::isfinite(relative_entropy(q, p)));
}

TEST_CASE("attention formation and inversion") {
    const Grid g = wide_grid();
    const DiscreteDensity p = gaussian_on(g, 0.0, 1.0);

    const AttentionDensity a_const = attention(p, WeightFunction::constant(g, 3.0));
    for (std::size_t i = 0; i < p.size(); i += 37)
        CHECK(a_const[i] == doctest::Approx(p[i]).epsilon(1e-12));

    const WeightFunction w = WeightFunction::exponential(g, 1.5);
    const AttentionDensity a = attention(p, w);
    // exponential tilt of a Gaussian is a shifted Gaussian
    const DiscreteDensity shifted = gaussian_on(g, 1.5, 1.0);
    for (std::size_t i = 0; i < p.size(); i += 37)
        CHECK(a[i] == doctest::Approx(shifted[i]).epsilon(1e-9));

    const DiscreteDensity back = probability_from_attention(a, w);
    for (std::size_t i = 0; i < p.size(); i += 37)
        CHECK(back[i] == doctest::Approx(p[i]).epsilon(1e-9));
}

TEST_CASE("log-space attention survives large exponents") {
    const Grid g = wide_grid();
    const DiscreteDensity p = gaussian_on(g, 0.0, 1.0);
    const WeightFunction w = WeightFunction::exponential(g, 30.0);
    // naive exp(30 * 10) overflows; the shifted path must stay finite
    const AttentionDensity a = attention(p, w);
    CHECK(std::isfinite(a.mass()));
    CHECK(a.mass() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("decomposition of relative attention entropy") {
    const Grid g = wide_grid();
    const DiscreteDensity p = gaussian_on(g, -0.3, 0.8);
    const DiscreteDensity q = gaussian_on(g, 0.4, 1.2);
    for (double lambda : {0.0, 0.7, 2.0, -1.3}) {
        const WeightFunction w = WeightFunction::exponential(g, lambda);
        const auto [lhs, rhs] = attention_entropy_decomposition(p, q, w);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
    // invariance under rescaling the weights
    std::vector<double> wv(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) wv[i] = 1.0 + 0.5 * std::sin(g.point(i, 0));
    std::vector<double> wv5 = wv;
    for (double& v : wv5) v *= 5.0;
    const auto d1 = attention_entropy_decomposition(p, q, WeightFunction(g, wv));
    const auto d5 = attention_entropy_decomposition(p, q, WeightFunction(g, wv5));
    CHECK(d1.first == doctest::Approx(d5.first).epsilon(1e-12));
    CHECK(d1.second == doctest::Approx(d5.second).epsilon(1e-9));
}

TEST_CASE("score forms reproduce the entropies") {
    const Grid g = wide_grid();
    const DiscreteDensity p = gaussian_on(g, 0.2, 1.0);
    const DiscreteDensity q = gaussian_on(g, -0.1, 0.6);
    const WeightFunction w = WeightFunction::exponential(g, 0.9);
    const ScoreForms s = score_forms(p, q, w);
    CHECK(s.weighted_re_score ==
          doctest::Approx(weighted_relative_entropy(p, q, w)).epsilon(1e-9));
    CHECK(s.attention_score ==
          doctest::Approx(relative_attention_entropy(p, q, w)).epsilon(1e-9));
}

TEST_CASE("information metric approximates nearby attention divergence") {
    const Grid g = wide_grid();
    const DiscreteDensity p = gaussian_on(g, 0.0, 1.0);
    const WeightFunction w = WeightFunction::exponential(g, 0.5);
    const AttentionDensity ap = attention(p, w);

    // perturb until the attention deviation peaks near 1e-3
    double eps = 1e-3;
    for (int pass = 0; pass < 2; ++pass) {
        std::vector<double> qv(g.size());
        for (std::size_t i = 0; i < g.size(); ++i)
            qv[i] = p[i] * (1.0 + eps * std::sin(g.point(i, 0)));
        const DiscreteDensity q(g, qv);
        const AttentionDensity aq = attention(q, w);
        double max_diff = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            max_diff = std::max(max_diff, std::fabs(aq[i] - ap[i]));
        if (pass == 0) {
            eps *= 1e-3 / max_diff;
            continue;
        }
        const double d = relative_attention_entropy(p, q, w);
        const double im = information_metric(p, q, w);
        CHECK(std::fabs(d - im) < 0.01 * d);
    }
}

TEST_CASE("relative attention entropy is proper") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Grid g = Grid::uniform(-1.0, 1.0, 24);
    for (int inst = 0; inst < 3; ++inst) {
        std::vector<double> pv(g.size()), wv(g.size()), q0(g.size(), 1.0);
        for (auto& v : pv) v = 0.2 + u(rng);
        for (auto& v : wv) v = 0.2 + u(rng);
        const DiscreteDensity p(g, pv);
        const WeightFunction w(g, wv);
        const AttentionDensity ap = attention(p, w);

        const auto grad = [&](const std::vector<double>& q) {
            double zq = 0.0;
            for (std::size_t i = 0; i < q.size(); ++i) zq += g.weight(i) * wv[i] * q[i];
            std::vector<double> out(q.size());
            for (std::size_t i = 0; i < q.size(); ++i) out[i] = wv[i] / zq - ap[i] / q[i];
            return out;
        };
        const std::vector<double> q_min = minimize_over_simplex(grad, g.weights(), q0);
        double err = 0.0;
        for (std::size_t i = 0; i < q_min.size(); ++i)
            err = std::max(err, std::fabs(q_min[i] - p[i]));
        CHECK(err < 1e-6);
    }
}

TEST_CASE("weighted relative entropy is improper") {
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Grid g = Grid::uniform(-1.0, 1.0, 24);
    std::vector<double> pv(g.size()), wv(g.size()), q0(g.size(), 1.0);
    for (auto& v : pv) v = 0.2 + u(rng);
    for (std::size_t i = 0; i < g.size(); ++i) wv[i] = std::exp(1.5 * g.point(i, 0));
    const DiscreteDensity p(g, pv);
    const WeightFunction w(g, wv);
    const AttentionDensity ap = attention(p, w);

    const auto grad = [&](const std::vector<double>& q) {
        std::vector<double> out(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) out[i] = -wv[i] * p[i] / q[i];
        return out;
    };
    const std::vector<double> q_min = minimize_over_simplex(grad, g.weights(), q0);
    double err_att = 0.0, err_p = 0.0;
    for (std::size_t i = 0; i < q_min.size(); ++i) {
        err_att = std::max(err_att, std::fabs(q_min[i] - ap[i]));
        err_p = std::max(err_p, std::fabs(q_min[i] - p[i]));
    }
    // the minimizer is the attention function, not the sender's state
    CHECK(err_att < 1e-6);
    CHECK(err_p > 0.01);
}

TEST_CASE("combined proper score") {
    const Grid g = wide_grid();
    const DiscreteDensity p = gaussian_on(g, 0.1, 1.0);
    const DiscreteDensity q = gaussian_on(g, -0.2, 1.3);
    const WeightFunction w = WeightFunction::exponential(g, 1.0);
    Eigen::VectorXd c0 = Eigen::VectorXd::Zero(1);
    CHECK(combined_proper_score(p, q, w, c0) ==
          doctest::Approx(relative_attention_entropy(p, q, w)).epsilon(1e-12));
    Eigen::VectorXd c2 = Eigen::VectorXd::Constant(1, 2.0);
    CHECK(combined_proper_score(p, q, w, c2) ==
          doctest::Approx(relative_attention_entropy(p, q, w) +
                          2.0 * relative_entropy(p, q))
              .epsilon(1e-12));
    Eigen::VectorXd cneg = Eigen::VectorXd::Constant(1, -1.0);
    CHECK_THROWS_AS(combined_proper_score(p, q, w, cneg), Error);
}
