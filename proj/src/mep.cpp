#include "entropic/mep.hpp"

#include <cmath>
#include <limits>

namespace entropic {

namespace {
constexpr double kTiny = 1e-300;
constexpr double kMuDivergenceNorm = 1e6;
}  // namespace

Topic::Topic(Grid grid, Eigen::MatrixXd values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (static_cast<std::size_t>(values_.cols()) != grid_.size())
        throw GridError("topic values do not match grid size");
    if (!values_.allFinite()) throw Error("topic values must be finite");
}

Message::Message(Topic t, Eigen::VectorXd d) : topic(std::move(t)), data(std::move(d)) {
    if (data.size() != topic.dim()) throw Error("message data length must equal topic dimension");
    if (!data.allFinite()) throw Error("message data must be finite");
}

LogPartition log_partition(const DiscreteDensity& prior, const Topic& topic,
                           const Eigen::VectorXd& mu) {
    if (!topic.grid().same_as(prior.grid()))
        throw GridError("log_partition: topic and prior grids differ");
    if (mu.size() != topic.dim()) throw Error("log_partition: mu length mismatch");

    const std::size_t n = prior.size();
    const auto& gw = prior.grid().weights();
    const Eigen::MatrixXd& f = topic.values();

    // shifted exponent: t_i = mu^t f_i, restricted to the prior support
    Eigen::VectorXd t = f.transpose() * mu;
    double shift = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        if (prior[i] >= kTiny) shift = std::max(shift, t[i]);
    if (!std::isfinite(shift)) throw ZeroMassError("log_partition: empty prior support");

    double z_shifted = 0.0;
    Eigen::VectorXd first = Eigen::VectorXd::Zero(topic.dim());
    Eigen::MatrixXd second = Eigen::MatrixXd::Zero(topic.dim(), topic.dim());
    for (std::size_t i = 0; i < n; ++i) {
        if (prior[i] < kTiny) continue;
        const double m = gw[i] * prior[i] * std::exp(t[i] - shift);
        z_shifted += m;
        first += m * f.col(i);
        second += m * (f.col(i) * f.col(i).transpose());
    }

    LogPartition out;
    out.ln_z = shift + std::log(z_shifted);
    out.grad = first / z_shifted;
    out.hess = second / z_shifted - out.grad * out.grad.transpose();
    out.hess = 0.5 * (out.hess + out.hess.transpose());

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.hess);
    const double max_eig = es.eigenvalues().maxCoeff();
    out.rank_deficient = es.eigenvalues().minCoeff() < 1e-12 * std::max(max_eig, 1.0);
    return out;
}

DiscreteDensity tilted_density(const DiscreteDensity& prior, const Topic& topic,
                               const Eigen::VectorXd& mu) {
    const std::size_t n = prior.size();
    Eigen::VectorXd t = topic.values().transpose() * mu;
    double shift = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        if (prior[i] >= kTiny) shift = std::max(shift, t[i]);
    std::vector<double> vals(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        if (prior[i] >= kTiny) vals[i] = prior[i] * std::exp(t[i] - shift);
    return DiscreteDensity(prior.grid(), std::move(vals));
}

MepSolution mep_update(const DiscreteDensity& prior, const Message& message,
                       double tol, int max_iter) {
    const Topic& topic = message.topic;
    const Eigen::VectorXd& d = message.data;
    const int dim = topic.dim();

    Eigen::VectorXd mu = Eigen::VectorXd::Zero(dim);
    LogPartition lp = log_partition(prior, topic, mu);
    double res = (lp.grad - d).lpNorm<Eigen::Infinity>();
    bool rank_deficient_seen = lp.rank_deficient;

    int iter = 0;
    while (res > tol && iter < max_iter) {
        ++iter;
        Eigen::MatrixXd h = lp.hess;
        h.diagonal().array() += 1e-12;
        Eigen::VectorXd step = -h.ldlt().solve(lp.grad - d);
        if (!step.allFinite())
            throw InfeasibleMomentError("mep_update: Newton step not finite");

        // backtracking line search on the residual norm
        const double res_norm = (lp.grad - d).norm();
        double alpha = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            const Eigen::VectorXd trial = mu + alpha * step;
            const LogPartition lp_trial = log_partition(prior, topic, trial);
            if ((lp_trial.grad - d).norm() < (1.0 - 1e-4 * alpha) * res_norm) {
                mu = trial;
                lp = lp_trial;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted)
            throw InfeasibleMomentError(
                "mep_update: line search stalled, data outside achievable moment set");
        if (mu.norm() > kMuDivergenceNorm)
            throw InfeasibleMomentError(
                "mep_update: multiplier diverging, data on or outside the moment boundary");
        rank_deficient_seen = rank_deficient_seen || lp.rank_deficient;
        res = (lp.grad - d).lpNorm<Eigen::Infinity>();
    }
    if (res > tol)
        throw ConvergenceError("mep_update: no convergence within max_iter");

    MepSolution sol{tilted_density(prior, topic, mu), mu, lp.ln_z, res, iter,
                    rank_deficient_seen};
    return sol;
}

Message honest_message(const DiscreteDensity& p_sender, const Topic& topic) {
    return Message(topic, moment(p_sender, topic.values()));
}

Topic surprise_topic(const DiscreteDensity& p_sender, const DiscreteDensity& prior) {
    if (!p_sender.grid().same_as(prior.grid()))
        throw GridError("surprise_topic: grids differ");
    const std::size_t n = p_sender.size();
    Eigen::MatrixXd f(1, n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool ps = p_sender[i] >= kTiny;
        const bool pr = prior[i] >= kTiny;
        if (ps != pr)
            throw AbsoluteContinuityError("surprise_topic: supports differ");
        f(0, i) = ps ? -std::log(p_sender[i] / prior[i]) : 0.0;
    }
    return Topic(p_sender.grid(), std::move(f));
}

}  // namespace entropic
