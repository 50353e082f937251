#include "entropic/optim.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace entropic {

double maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                       int scan_points, double tol) {
    double best_x = lo, best_f = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= scan_points; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / scan_points;
        const double v = f(x);
        if (v > best_f) {
            best_f = v;
            best_x = x;
        }
    }
    const double h = (hi - lo) / scan_points;
    double a = std::max(lo, best_x - h), b = std::min(hi, best_x + h);
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

Eigen::VectorXd maximize_simplex(const std::function<double(const Eigen::VectorXd&)>& f,
                                 Eigen::VectorXd x0, double initial_step, double tol,
                                 int max_iter) {
    const auto n = x0.size();
    // minimize -f with the standard Nelder-Mead moves
    const auto cost = [&f](const Eigen::VectorXd& x) { return -f(x); };
    std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(n) + 1, x0);
    std::vector<double> vals(static_cast<std::size_t>(n) + 1);
    for (Eigen::Index i = 0; i < n; ++i) pts[static_cast<std::size_t>(i) + 1][i] += initial_step;
    for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = cost(pts[i]);

    for (int iter = 0; iter < max_iter; ++iter) {
        std::vector<std::size_t> order(pts.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&vals](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front(), worst = order.back(),
                          second = order[order.size() - 2];
        if (std::fabs(vals[worst] - vals[best]) < tol) break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (i != worst) centroid += pts[i];
        centroid /= static_cast<double>(n);

        const Eigen::VectorXd refl = centroid + (centroid - pts[worst]);
        const double f_refl = cost(refl);
        if (f_refl < vals[best]) {
            const Eigen::VectorXd exp_pt = centroid + 2.0 * (centroid - pts[worst]);
            const double f_exp = cost(exp_pt);
            if (f_exp < f_refl) {
                pts[worst] = exp_pt;
                vals[worst] = f_exp;
            } else {
                pts[worst] = refl;
                vals[worst] = f_refl;
            }
        } else if (f_refl < vals[second]) {
            pts[worst] = refl;
            vals[worst] = f_refl;
        } else {
            const Eigen::VectorXd contr = centroid + 0.5 * (pts[worst] - centroid);
            const double f_contr = cost(contr);
            if (f_contr < vals[worst]) {
                pts[worst] = contr;
                vals[worst] = f_contr;
            } else {
                for (std::size_t i = 0; i < pts.size(); ++i) {
                    if (i == best) continue;
                    pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
                    vals[i] = cost(pts[i]);
                }
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (vals[i] < vals[best]) best = i;
    return pts[best];
}

std::vector<double> minimize_over_simplex(
    const std::function<std::vector<double>(const std::vector<double>&)>& grad,
    const std::vector<double>& omega, std::vector<double> q0, double step, int max_iter,
    double tol) {
    std::vector<double> q = std::move(q0);
    const std::size_t n = q.size();
    for (int iter = 0; iter < max_iter; ++iter) {
        const std::vector<double> g = grad(q);
        double gmax = 0.0;
        for (double v : g) gmax = std::max(gmax, std::fabs(v));
        const double eta = step / std::max(gmax, 1.0);
        double mass = 0.0, delta = 0.0;
        std::vector<double> next(n);
        for (std::size_t i = 0; i < n; ++i) {
            next[i] = q[i] * std::exp(-eta * g[i]);
            mass += omega[i] * next[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            next[i] /= mass;
            delta = std::max(delta, std::fabs(next[i] - q[i]));
        }
        q = std::move(next);
        if (delta < tol) break;
    }
    return q;
}

}  // namespace entropic
