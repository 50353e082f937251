#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "entropic/scenarios.hpp"

using namespace entropic;

TEST_CASE("bimodal closed forms at special points") {
    const BimodalScenario scn;  // sigma_a2 = 0.25

    const BimodalClosedForms z = bimodal_closed_forms(scn, 0.0);
    CHECK(z.m == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(z.m_re == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(z.sigma_b2 == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(z.sigma_re2 == doctest::Approx(1.25).epsilon(1e-15));

    // strong weighting: attention fit collapses onto the favored mode
    const BimodalClosedForms big = bimodal_closed_forms(scn, 32.0);
    CHECK(big.m == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(big.sigma_b2 == doctest::Approx(0.25).epsilon(1e-12));
    // while the weighted-RE mean runs away linearly in lambda
    CHECK(big.m_re == doctest::Approx(32.0 * 0.25 + 1.0).epsilon(1e-12));
}

TEST_CASE("weighted-RE fit detaches from the knowledge state") {
    const BimodalScenario scn;
    const BimodalClosedForms f = bimodal_closed_forms(scn, 8.0);
    CHECK(std::fabs(f.m_re - f.m) > 1.0);
}

TEST_CASE("numeric fits confirm the closed forms") {
    const BimodalScenario scn;
    for (double lambda : {0.0, 1.0, 4.0}) {
        const BimodalClosedForms cf = bimodal_closed_forms(scn, lambda);
        const auto [m_a, v_a] = bimodal_numeric(scn, lambda, BimodalObjective::attention_entropy);
        CHECK(m_a == doctest::Approx(cf.m).epsilon(1e-3));
        CHECK(v_a == doctest::Approx(cf.sigma_b2).epsilon(1e-3));
        const auto [m_w, v_w] = bimodal_numeric(scn, lambda, BimodalObjective::weighted_re);
        CHECK(m_w == doctest::Approx(cf.m_re).epsilon(1e-3));
        CHECK(v_w == doctest::Approx(cf.sigma_re2).epsilon(1e-3));
    }
}

TEST_CASE("closed-form attentions match the entropy machinery") {
    const BimodalScenario scn;
    const double lambda = 1.5;
    const BimodalClosedForms cf = bimodal_closed_forms(scn, lambda);
    const BimodalAttentions at = bimodal_attentions(scn, lambda, cf.m, cf.sigma_b2);
    const Grid& g = at.a_alice.grid();

    // sender side: attention() applied to the sampled bimodal state
    const DiscreteDensity p =
        sample_on_grid(GaussianMixture::symmetric_bimodal(scn.sigma_a2), g);
    const AttentionDensity ap = attention(p, WeightFunction::exponential(g, lambda));
    for (std::size_t i = 0; i < g.size(); i += 97)
        CHECK(at.a_alice[i] == doctest::Approx(ap[i]).epsilon(1e-8));

    // attention moments: mean tanh(lambda) + lambda sigma_a2, the variance one
    // tanh-width below the unweighted spread
    double mean = 0.0, var = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) mean += g.weight(i) * at.a_alice[i] * g.point(i, 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double z = g.point(i, 0) - mean;
        var += g.weight(i) * at.a_alice[i] * z * z;
    }
    const double th = std::tanh(lambda);
    CHECK(mean == doctest::Approx(th + lambda * scn.sigma_a2).epsilon(1e-6));
    CHECK(var == doctest::Approx(scn.sigma_a2 + 1.0 - th * th).epsilon(1e-6));

    // receiver side: a Gaussian fit's attention is the shifted Gaussian
    double mean_b = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        mean_b += g.weight(i) * at.a_bob[i] * g.point(i, 0);
    CHECK(mean_b == doctest::Approx(cf.m + lambda * cf.sigma_b2).epsilon(1e-6));
    // the two attentions share mean and variance: the fit moment-matches
    CHECK(mean_b == doctest::Approx(mean).epsilon(1e-6));
}

TEST_CASE("misaligned game closed forms") {
    const MisalignedScenario scn{M_PI / 2.0};

    const MisalignedResult r = misaligned_run(scn, M_PI / 4.0, true);
    CHECK(r.d == doctest::Approx(std::cos(M_PI / 4.0)).epsilon(1e-14));
    CHECK(r.a_b[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.a_b[1] == doctest::Approx(0.5).epsilon(1e-12));
    // grid decoding reproduces the Gaussian posterior mean
    CHECK(r.mep_mean_error < 1e-6);
    // receiver acting on a partial message loses against full knowledge
    CHECK(r.u_bob_under_alice < -scn.s_a.trace());

    // the stationary angle of the closed-form utility
    for (double phi : {0.1, M_PI / 4.0, M_PI / 2.0, 3.0}) {
        const MisalignedScenario s{phi};
        CHECK(misaligned_alpha_star_numeric(s) ==
              doctest::Approx(misaligned_alpha_star(phi)).epsilon(1e-6));
        CHECK(misaligned_alpha_star(phi) == doctest::Approx(phi / 2.0).epsilon(1e-12));
    }
    CHECK(misaligned_alpha_star(0.0) == 0.0);
}

TEST_CASE("weather decoding") {
    const WeatherResult should_be = weather_run(WeatherVariant::should_be);
    CHECK(should_be.probabilities[0] == doctest::Approx(0.125).epsilon(1e-9));
    CHECK(should_be.probabilities[1] == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(should_be.probabilities[2] == doctest::Approx(0.125).epsilon(1e-9));
    CHECK(should_be.mu[1] == doctest::Approx(-std::log(6.0)).epsilon(1e-9));
    CHECK_FALSE(should_be.boundary);

    const WeatherResult might_be = weather_run(WeatherVariant::might_be);
    CHECK(might_be.probabilities[0] == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(might_be.probabilities[1] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(might_be.probabilities[2] == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(might_be.mu[1] == doctest::Approx(-std::log(2.0)).epsilon(1e-9));

    const WeatherResult certain = weather_run(WeatherVariant::is_going_to_be);
    CHECK(certain.boundary);
    CHECK(certain.probabilities[1] == 1.0);
    CHECK(certain.mu[1] == -std::numeric_limits<double>::infinity());
}

TEST_CASE("accurate transfer demo") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Grid g = Grid::uniform(-4.0, 4.0, 64);
    for (int inst = 0; inst < 3; ++inst) {
        std::vector<double> pv(g.size()), qv(g.size());
        for (auto& v : pv) v = 0.1 + u(rng);
        for (auto& v : qv) v = 0.1 + u(rng);
        const DiscreteDensity p(g, pv), q(g, qv);
        const MepSolution sol = accurate_transfer_demo(p, q);
        CHECK(sol.mu[0] == doctest::Approx(-1.0).epsilon(1e-9));
    }
}
