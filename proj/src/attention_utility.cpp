#include "entropic/attention_utility.hpp"

#include <algorithm>
#include <cmath>

namespace entropic {

namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

}  // namespace

OptimumBeliefGeneral::OptimumBeliefGeneral(Grid grid, Eigen::VectorXd b_mean, Eigen::MatrixXd D)
    : grid_(std::move(grid)) {
    const auto n = static_cast<Eigen::Index>(grid_.size());
    if (b_mean.size() != n || D.rows() != n || D.cols() != n)
        throw GridError("OptimumBeliefGeneral: shape mismatch with grid");
    if (!D.isApprox(D.transpose(), 1e-10)) throw Error("D must be symmetric");
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D);
    if (es.eigenvalues().minCoeff() < -1e-10 * std::max(1.0, es.eigenvalues().maxCoeff()))
        throw Error("D must be positive semi-definite");
    g_ = b_mean * b_mean.transpose() + D;
    g_hat_ = g_.diagonal();
}

OptimumBeliefGeneral OptimumBeliefGeneral::from_second_moment(Grid grid, Eigen::MatrixXd G) {
    const auto n = static_cast<Eigen::Index>(grid.size());
    if (G.rows() != n || G.cols() != n)
        throw GridError("from_second_moment: shape mismatch with grid");
    return OptimumBeliefGeneral(std::move(grid), Eigen::VectorXd::Zero(n), std::move(G));
}

double weighted_action(const DiscreteDensity& belief, const CurvatureWeights& w,
                       std::span<const double> b) {
    if (b.size() != belief.size())
        throw GridError("weighted_action: b values do not match grid");
    const auto& gw = belief.grid().weights();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < belief.size(); ++i) {
        const double m = gw[i] * w[i] * belief[i];
        num += m * b[i];
        den += m;
    }
    if (den <= 1e-300) throw ZeroMassError("weighted_action: zero total weight");
    return num / den;
}

UtilityTerms expected_utility_terms(const AttentionDensity& a_alice,
                                    const AttentionDensity& a_bob,
                                    const OptimumBeliefHomogeneous& belief_b) {
    if (!a_alice.grid().same_as(a_bob.grid()))
        throw GridError("expected_utility_terms: grids differ");
    const auto& gw = a_alice.grid().weights();
    double bb = 0.0, ab = 0.0;
    for (std::size_t i = 0; i < a_alice.size(); ++i) {
        bb += gw[i] * a_bob[i] * a_bob[i];
        ab += gw[i] * a_alice[i] * a_bob[i];
    }
    const double b2 = belief_b.b_bar * belief_b.b_bar;
    return {b2 + belief_b.gamma2 * bb, b2 + belief_b.gamma2 * ab, b2 + belief_b.gamma2};
}

ExpectedUtility expected_utility(const AttentionDensity& a_alice,
                                 const AttentionDensity& a_bob,
                                 const OptimumBeliefHomogeneous& belief_b, double w_mean) {
    const UtilityTerms t = expected_utility_terms(a_alice, a_bob, belief_b);
    const auto& gw = a_alice.grid().weights();
    double sq_diff = 0.0, aa = 0.0;
    for (std::size_t i = 0; i < a_alice.size(); ++i) {
        const double diff = a_bob[i] - a_alice[i];
        sq_diff += gw[i] * diff * diff;
        aa += gw[i] * a_alice[i] * a_alice[i];
    }
    ExpectedUtility out;
    out.value = belief_b.v_const -
                0.5 * w_mean * belief_b.gamma2 * (sq_diff + 1.0 - aa);
    out.value_via_terms =
        belief_b.v_const - 0.5 * w_mean * (t.term_i - 2.0 * t.term_ii + t.term_iii);
    return out;
}

OptimalAttention optimal_attention_continuous(const AttentionDensity& a_alice,
                                              const OptimumBeliefGeneral& belief_b) {
    if (!a_alice.grid().same_as(belief_b.grid()))
        throw GridError("optimal_attention_continuous: grids differ");
    const auto n = static_cast<Eigen::Index>(a_alice.size());
    const auto& gw = a_alice.grid().weights();

    Eigen::MatrixXd g = belief_b.G();
    g.diagonal().array() += 1e-10 * g.trace() / static_cast<double>(n);
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(g);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
        throw SingularMatrixError("optimal_attention_continuous: G not invertible");
    const Eigen::VectorXd x = ldlt.solve(belief_b.G_hat());

    // (1 1^t / 1^t 1 - I) x with quadrature-weighted inner products
    double wx = 0.0, wtot = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        wx += gw[i] * x[i];
        wtot += gw[i];
    }
    const double avg = wx / wtot;

    OptimalAttention out{a_alice, false, 0.0};
    std::vector<double> vals(static_cast<std::size_t>(n));
    double norm2 = 0.0;
    bool negative = false;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double corr = avg - x[i];
        norm2 += gw[i] * corr * corr;
        double v = a_alice[static_cast<std::size_t>(i)] + corr;
        if (v < -1e-12) negative = true;
        vals[static_cast<std::size_t>(i)] = v;
    }
    out.correction_norm = std::sqrt(norm2);
    for (double& v : vals) v = std::max(v, 0.0);  // clears tiny negative round-off too
    out.rectified = negative;
    out.attention = AttentionDensity(a_alice.grid(), std::move(vals));
    return out;
}

double power_loss_expected_utility(const DiscreteDensity& belief, const PowerLossUtility& u,
                                   double a) {
    const auto& gw = belief.grid().weights();
    double acc = 0.0;
    const double inv2k = 1.0 / (2.0 * static_cast<double>(u.k));
    for (std::size_t i = 0; i < belief.size(); ++i) {
        const double v = u.v.empty() ? 0.0 : u.v[i];
        const double z = (a - u.b[i]) / u.sigma[i];
        acc += gw[i] * belief[i] * (v - inv2k * std::pow(z * z, u.k));
    }
    return acc;
}

double power_loss_optimal_action(const DiscreteDensity& belief, const PowerLossUtility& u) {
    if (u.b.size() != belief.size() || u.sigma.size() != belief.size())
        throw GridError("power_loss: b/sigma values do not match grid");
    if (u.k < 1) throw Error("power_loss: k must be >= 1");
    for (double s : u.sigma)
        if (!(s > 0.0)) throw Error("power_loss: sigma must be positive");

    const auto& gw = belief.grid().weights();
    if (u.k == 1) {
        // quadratic loss: a* = <b/sigma^2> / <1/sigma^2>
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < belief.size(); ++i) {
            const double inv = 1.0 / (u.sigma[i] * u.sigma[i]);
            num += gw[i] * belief[i] * u.b[i] * inv;
            den += gw[i] * belief[i] * inv;
        }
        return num / den;
    }

    if (u.k <= 3) {
        // odd polynomial gradient: coefficients of sum_n c_n a^n, n = 0..2k-1
        const int deg = 2 * u.k - 1;
        Eigen::VectorXd coeff = Eigen::VectorXd::Zero(deg + 1);
        for (int m = 0; m <= deg; ++m) {
            // moment of (-b)^(deg-n) / sigma^(2k) for a^n term
            double mom = 0.0;
            for (std::size_t i = 0; i < belief.size(); ++i)
                mom += gw[i] * belief[i] * std::pow(-u.b[i], deg - m) /
                       std::pow(u.sigma[i], 2 * u.k);
            coeff[m] = binomial(deg, m) * mom;
        }
        // companion matrix of the monic polynomial
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
        for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
        for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -coeff[i] / coeff[deg];
        const Eigen::VectorXcd roots = Eigen::EigenSolver<Eigen::MatrixXd>(comp).eigenvalues();
        double best_a = 0.0, best_u = -std::numeric_limits<double>::infinity();
        for (Eigen::Index r = 0; r < roots.size(); ++r) {
            if (std::fabs(roots[r].imag()) > 1e-8 * (1.0 + std::fabs(roots[r].real()))) continue;
            const double a = roots[r].real();
            const double val = power_loss_expected_utility(belief, u, a);
            if (val > best_u) {
                best_u = val;
                best_a = a;
            }
        }
        return best_a;
    }

    // k > 3: guarded scan plus golden-section refinement
    const auto [bmin_it, bmax_it] = std::minmax_element(u.b.begin(), u.b.end());
    double lo = *bmin_it, hi = *bmax_it;
    const double pad = std::max(1.0, hi - lo);
    lo -= pad;
    hi += pad;
    double best_a = lo, best_u = -std::numeric_limits<double>::infinity();
    const int scan = 256;
    for (int i = 0; i <= scan; ++i) {
        const double a = lo + (hi - lo) * static_cast<double>(i) / scan;
        const double val = power_loss_expected_utility(belief, u, a);
        if (val > best_u) {
            best_u = val;
            best_a = a;
        }
    }
    double a1 = best_a - (hi - lo) / scan, a2 = best_a + (hi - lo) / scan;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = a2 - phi * (a2 - a1), x2 = a1 + phi * (a2 - a1);
    double f1 = power_loss_expected_utility(belief, u, x1);
    double f2 = power_loss_expected_utility(belief, u, x2);
    while (a2 - a1 > 1e-12) {
        if (f1 < f2) {
            a1 = x1;
            x1 = x2;
            f1 = f2;
            x2 = a1 + phi * (a2 - a1);
            f2 = power_loss_expected_utility(belief, u, x2);
        } else {
            a2 = x2;
            x2 = x1;
            f2 = f1;
            x1 = a2 - phi * (a2 - a1);
            f1 = power_loss_expected_utility(belief, u, x1);
        }
    }
    return 0.5 * (a1 + a2);
}

Topic optimal_topic_power_loss(const DiscreteDensity& belief, const PowerLossUtility& u) {
    const double a_star = power_loss_optimal_action(belief, u);
    const std::size_t n = belief.size();
    Eigen::MatrixXd f(1, n);
    for (std::size_t i = 0; i < n; ++i)
        f(0, i) = std::pow(a_star - u.b[i], 2 * u.k - 1) / std::pow(u.sigma[i], 2 * u.k);
    return Topic(belief.grid(), std::move(f));
}

}  // namespace entropic
