#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "entropic/density.hpp"

namespace entropic {

/// Importance weights w(s) >= 0 on a grid. Exponential weights carry their
/// log-values so that attention formation stays in log-space for large
/// exponents.
class WeightFunction {
public:
    WeightFunction(Grid grid, std::vector<double> values);

    /// w(s) = exp(lambda * s), stored shifted by the maximum exponent so the
    /// values stay representable for any |lambda| <= 40 on desk-scale grids.
    static WeightFunction exponential(const Grid& grid, double lambda);

    static WeightFunction constant(const Grid& grid, double value = 1.0);

    const Grid& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    bool strictly_positive() const { return strictly_positive_; }
    bool has_log_values() const { return log_values_.has_value(); }
    std::span<const double> log_values() const { return *log_values_; }

private:
    Grid grid_;
    std::vector<double> values_;
    std::optional<std::vector<double>> log_values_;
    bool strictly_positive_ = false;
};

/// Attention functions share the density representation.
using AttentionDensity = DiscreteDensity;

/// Integral p ln(p/q) in nits, with 0 ln 0 := 0. Throws
/// AbsoluteContinuityError where p > 0 but q = 0.
double relative_entropy(const DiscreteDensity& p, const DiscreteDensity& q);

/// Integral w p ln(p/q).
double weighted_relative_entropy(const DiscreteDensity& p, const DiscreteDensity& q,
                                 const WeightFunction& w);

/// w p / integral(w p), the weighted and re-normalized knowledge state.
AttentionDensity attention(const DiscreteDensity& p, const WeightFunction& w);

/// Inverse of attention formation; requires strictly positive weights.
DiscreteDensity probability_from_attention(const AttentionDensity& a, const WeightFunction& w);

/// Relative entropy between the two attention functions.
double relative_attention_entropy(const DiscreteDensity& p, const DiscreteDensity& q,
                                  const WeightFunction& w);

/// Both sides of the decomposition of relative attention entropy into
/// weighted relative entropy, the log-ratio of the attention normalizations,
/// and the 1/integral(w p) rescaling. lhs and rhs agree to ~1e-9.
std::pair<double, double> attention_entropy_decomposition(const DiscreteDensity& p,
                                                          const DiscreteDensity& q,
                                                          const WeightFunction& w);

/// Half the integral of (A_q - A_p)^2 / A_p, the quadratic (information
/// metric) approximation of relative attention entropy for nearby attentions.
double information_metric(const DiscreteDensity& p, const DiscreteDensity& q,
                          const WeightFunction& w);

/// Relative attention entropy plus c_i-weighted relative entropies of the
/// per-axis marginals; proper for any c >= 0.
double combined_proper_score(const DiscreteDensity& p, const DiscreteDensity& q,
                             const WeightFunction& w, const Eigen::VectorXd& c);

struct ScoreForms {
    double weighted_re_score;  // a(I_A) * <L> + b(I_A) with L = -w ln q
    double attention_score;    // same with L = -w ln A_q
};

/// Evaluates both entropies through their scoring-rule forms
/// S' = a(I_A) * integral(p L) + b(I_A). Each equals the corresponding
/// entropy evaluated directly.
ScoreForms score_forms(const DiscreteDensity& p, const DiscreteDensity& q,
                       const WeightFunction& w);

}  // namespace entropic
