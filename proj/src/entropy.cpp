#include "entropic/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entropic {

namespace {

constexpr double kTiny = 1e-300;

void check_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (!a.same_as(b)) throw GridError(std::string(what) + ": grids differ");
}

}  // namespace

WeightFunction::WeightFunction(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw GridError("weight values length does not match grid size");
    strictly_positive_ = true;
    for (double v : values_) {
        if (!(v >= 0.0)) throw Error("weights must be nonnegative and finite");
        if (v == 0.0) strictly_positive_ = false;
    }
}

WeightFunction WeightFunction::exponential(const Grid& grid, double lambda) {
    const std::size_t n = grid.size();
    std::vector<double> logs(n);
    double max_log = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        logs[i] = lambda * grid.point(i, 0);
        max_log = std::max(max_log, logs[i]);
    }
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) {
        logs[i] -= max_log;
        vals[i] = std::exp(logs[i]);
    }
    WeightFunction w(grid, std::move(vals));
    w.log_values_ = std::move(logs);
    w.strictly_positive_ = true;  // positive analytically, even where exp underflows
    return w;
}

WeightFunction WeightFunction::constant(const Grid& grid, double value) {
    return WeightFunction(grid, std::vector<double>(grid.size(), value));
}

double relative_entropy(const DiscreteDensity& p, const DiscreteDensity& q) {
    check_same_grid(p.grid(), q.grid(), "relative_entropy");
    const auto& w = p.grid().weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < kTiny) continue;  // 0 ln 0 = 0
        if (q[i] < kTiny)
            throw AbsoluteContinuityError("relative_entropy: p > 0 where q = 0");
        acc += w[i] * p[i] * std::log(p[i] / q[i]);
    }
    return acc;
}

double weighted_relative_entropy(const DiscreteDensity& p, const DiscreteDensity& q,
                                 const WeightFunction& wf) {
    check_same_grid(p.grid(), q.grid(), "weighted_relative_entropy");
    check_same_grid(p.grid(), wf.grid(), "weighted_relative_entropy");
    const auto& w = p.grid().weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < kTiny || wf[i] == 0.0) continue;
        if (q[i] < kTiny)
            throw AbsoluteContinuityError("weighted_relative_entropy: p > 0 where q = 0");
        acc += w[i] * wf[i] * p[i] * std::log(p[i] / q[i]);
    }
    return acc;
}

AttentionDensity attention(const DiscreteDensity& p, const WeightFunction& wf) {
    check_same_grid(p.grid(), wf.grid(), "attention");
    const std::size_t n = p.size();
    std::vector<double> vals(n);
    if (wf.has_log_values()) {
        // log-space path, shifted by the maximum exponent
        const auto lw = wf.log_values();
        double max_log = -std::numeric_limits<double>::infinity();
        std::vector<double> logs(n, -std::numeric_limits<double>::infinity());
        for (std::size_t i = 0; i < n; ++i) {
            if (p[i] < kTiny) continue;
            logs[i] = lw[i] + std::log(p[i]);
            max_log = std::max(max_log, logs[i]);
        }
        if (!std::isfinite(max_log)) throw ZeroMassError("attention: zero weighted mass");
        for (std::size_t i = 0; i < n; ++i)
            vals[i] = std::isfinite(logs[i]) ? std::exp(logs[i] - max_log) : 0.0;
    } else {
        for (std::size_t i = 0; i < n; ++i) vals[i] = wf[i] * p[i];
    }
    if (p.grid().integrate(vals) <= kTiny)
        throw ZeroMassError("attention: zero weighted mass");
    return AttentionDensity(p.grid(), std::move(vals));
}

DiscreteDensity probability_from_attention(const AttentionDensity& a, const WeightFunction& wf) {
    check_same_grid(a.grid(), wf.grid(), "probability_from_attention");
    if (!wf.strictly_positive())
        throw Error("probability_from_attention requires strictly positive weights");
    const std::size_t n = a.size();
    std::vector<double> vals(n);
    if (wf.has_log_values()) {
        const auto lw = wf.log_values();
        double max_log = -std::numeric_limits<double>::infinity();
        std::vector<double> logs(n, -std::numeric_limits<double>::infinity());
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] < kTiny) continue;
            logs[i] = std::log(a[i]) - lw[i];
            max_log = std::max(max_log, logs[i]);
        }
        if (!std::isfinite(max_log)) throw ZeroMassError("probability_from_attention: zero mass");
        for (std::size_t i = 0; i < n; ++i)
            vals[i] = std::isfinite(logs[i]) ? std::exp(logs[i] - max_log) : 0.0;
    } else {
        for (std::size_t i = 0; i < n; ++i) vals[i] = a[i] / wf[i];
    }
    return DiscreteDensity(a.grid(), std::move(vals));
}

double relative_attention_entropy(const DiscreteDensity& p, const DiscreteDensity& q,
                                  const WeightFunction& w) {
    return relative_entropy(attention(p, w), attention(q, w));
}

std::pair<double, double> attention_entropy_decomposition(const DiscreteDensity& p,
                                                          const DiscreteDensity& q,
                                                          const WeightFunction& wf) {
    const double lhs = relative_attention_entropy(p, q, wf);
    // A direct expansion of the attention relative entropy gives
    //   D^(w) = W / Z_p - ln(Z_p / Z_q),   Z_x := integral(w x),
    // which is invariant under rescaling w (the stored exponential weights
    // carry an arbitrary shift).
    const auto& gw = p.grid().weights();
    double zp = 0.0, zq = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        zp += gw[i] * wf[i] * p[i];
        zq += gw[i] * wf[i] * q[i];
    }
    const double wre = weighted_relative_entropy(p, q, wf);
    const double rhs = wre / zp - std::log(zp / zq);
    return {lhs, rhs};
}

double information_metric(const DiscreteDensity& p, const DiscreteDensity& q,
                          const WeightFunction& w) {
    const AttentionDensity ap = attention(p, w);
    const AttentionDensity aq = attention(q, w);
    const auto& gw = p.grid().weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < ap.size(); ++i) {
        const double diff = aq[i] - ap[i];
        if (ap[i] < kTiny) {
            if (std::fabs(diff) > kTiny)
                throw AbsoluteContinuityError("information_metric: A_q > 0 where A_p = 0");
            continue;
        }
        acc += gw[i] * diff * diff / ap[i];
    }
    return 0.5 * acc;
}

double combined_proper_score(const DiscreteDensity& p, const DiscreteDensity& q,
                             const WeightFunction& w, const Eigen::VectorXd& c) {
    if (c.size() != p.grid().dim())
        throw Error("combined_proper_score: c length must equal grid dimension");
    for (int i = 0; i < c.size(); ++i)
        if (c[i] < 0.0) throw Error("combined_proper_score: c must be nonnegative");
    double score = relative_attention_entropy(p, q, w);
    for (int axis = 0; axis < c.size(); ++axis) {
        if (c[axis] == 0.0) continue;
        if (p.grid().dim() == 1)
            score += c[axis] * relative_entropy(p, q);
        else
            score += c[axis] * relative_entropy(marginal(p, axis), marginal(q, axis));
    }
    return score;
}

ScoreForms score_forms(const DiscreteDensity& p, const DiscreteDensity& q,
                       const WeightFunction& wf) {
    check_same_grid(p.grid(), q.grid(), "score_forms");
    check_same_grid(p.grid(), wf.grid(), "score_forms");
    const auto& gw = p.grid().weights();

    // weighted RE as a scoring rule: L = -w ln q, a = 1, b = integral(w p ln p)
    double expected_loss = 0.0, b_term = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < kTiny || wf[i] == 0.0) continue;
        if (q[i] < kTiny)
            throw AbsoluteContinuityError("score_forms: p > 0 where q = 0");
        expected_loss += gw[i] * p[i] * (-wf[i] * std::log(q[i]));
        b_term += gw[i] * wf[i] * p[i] * std::log(p[i]);
    }
    ScoreForms out;
    out.weighted_re_score = expected_loss + b_term;

    // attention entropy as a scoring rule: L = -w ln A_q, a = 1/integral(w p),
    // b = integral(A_p ln A_p)
    const AttentionDensity ap = attention(p, wf);
    const AttentionDensity aq = attention(q, wf);
    double zp = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) zp += gw[i] * wf[i] * p[i];
    double att_loss = 0.0, att_b = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (ap[i] >= kTiny) att_b += gw[i] * ap[i] * std::log(ap[i]);
        if (p[i] < kTiny || wf[i] == 0.0) continue;
        if (aq[i] < kTiny)
            throw AbsoluteContinuityError("score_forms: A_p > 0 where A_q = 0");
        att_loss += gw[i] * p[i] * (-wf[i] * std::log(aq[i]));
    }
    out.attention_score = att_loss / zp + att_b;
    return out;
}

}  // namespace entropic
