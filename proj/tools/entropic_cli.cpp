// Command-line front end: scenario runs, solver primitives, and oracle checks
// with deterministic CSV/JSON output.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "entropic/gradcheck.hpp"
#include "entropic/log.hpp"
#include "entropic/scenarios.hpp"

namespace {

using entropic::Error;
using json = nlohmann::json;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

/// Input-file problems are usage errors (exit 2), not run failures.
struct ParseFileError : Error {
    using Error::Error;
};

double gauss_pdf(double s, double mean, double var) {
    const double z = s - mean;
    return std::exp(-0.5 * z * z / var) / std::sqrt(2.0 * M_PI * var);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// One output row: ordered named values plus a pass flag.
struct Record {
    std::string scenario;
    std::vector<std::pair<std::string, double>> values;
    bool pass = true;

    void add(const std::string& key, double v) { values.emplace_back(key, v); }
};

void write_records(const std::vector<Record>& records, const std::string& path,
                   const std::string& format) {
    std::ostringstream out;
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : records) {
            json obj;
            obj["scenario"] = r.scenario;
            for (const auto& [k, v] : r.values) obj[k] = v;
            obj["pass"] = r.pass;
            arr.push_back(obj);
        }
        out << arr.dump(2) << "\n";
    } else {
        out << "scenario";
        if (!records.empty())
            for (const auto& [k, v] : records.front().values) out << "," << k;
        out << ",pass\n";
        for (const auto& r : records) {
            out << r.scenario;
            for (const auto& [k, v] : r.values) out << "," << fmt(v);
            out << "," << (r.pass ? 1 : 0) << "\n";
        }
    }
    if (path.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream f(path);
        if (!f) throw Error("cannot open output file: " + path);
        f << out.str();
    }
}

bool all_pass(const std::vector<Record>& records) {
    for (const auto& r : records)
        if (!r.pass) return false;
    return true;
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    if (out.empty()) throw CLI::ValidationError("empty numeric list");
    return out;
}

/// CSV table: header row naming columns, numeric rows below.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

Table read_table(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseFileError("cannot open input file: " + path);
    Table t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        if (t.columns.empty()) {
            while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
            continue;
        }
        std::vector<double> row;
        std::size_t field = 0;
        while (std::getline(ss, cell, ',')) {
            ++field;
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ParseFileError("parse error at line " + std::to_string(line_no) + ", field " +
                            t.columns[std::min(field - 1, t.columns.size() - 1)]);
            }
        }
        if (row.size() != t.columns.size())
            throw ParseFileError("wrong field count at line " + std::to_string(line_no));
        t.rows.push_back(std::move(row));
    }
    if (t.rows.empty()) throw ParseFileError("no data rows in " + path);
    return t;
}

/// 1D grid from a sorted coordinate column; must be uniform within 1e-9.
entropic::Grid grid_from_column(const std::vector<double>& s) {
    if (s.size() < 2) throw ParseFileError("need at least two grid points");
    const double h = s[1] - s[0];
    for (std::size_t i = 1; i < s.size(); ++i)
        if (std::fabs(s[i] - s[i - 1] - h) > 1e-9)
            throw ParseFileError("grid not uniform within 1e-9 near s = " + fmt(s[i]));
    return entropic::Grid::uniform(s.front(), s.back(), s.size());
}

int cmd_bimodal(double sigma_a2, const std::vector<double>& lambdas,
                const std::string& objective, const std::string& out,
                const std::string& format, const std::string& curves_out) {
    using namespace entropic;
    const BimodalScenario scn{sigma_a2};
    std::vector<Record> records;
    std::ostringstream curves;
    curves << "lambda,s,p_bob,a_alice,a_bob\n";
    for (double lambda : lambdas) {
        const BimodalClosedForms cf = bimodal_closed_forms(scn, lambda);
        Record r;
        r.scenario = "bimodal";
        r.add("lambda", lambda);
        r.add("m", cf.m);
        r.add("sigma_b2", cf.sigma_b2);
        r.add("m_re", cf.m_re);
        r.add("sigma_re2", cf.sigma_re2);
        double err = 0.0;
        if (std::fabs(lambda) <= 8.0) {
            const bool want_attention = objective != "weighted_re";
            const bool want_wre = objective != "attention_entropy";
            if (want_attention) {
                const auto [m, s2] = bimodal_numeric(scn, lambda, BimodalObjective::attention_entropy);
                r.add("numeric_m", m);
                r.add("numeric_sigma_b2", s2);
                err = std::max({err, std::fabs(m - cf.m), std::fabs(s2 - cf.sigma_b2)});
            } else {
                r.add("numeric_m", std::nan(""));
                r.add("numeric_sigma_b2", std::nan(""));
            }
            if (want_wre) {
                const auto [m, s2] = bimodal_numeric(scn, lambda, BimodalObjective::weighted_re);
                r.add("numeric_m_re", m);
                r.add("numeric_sigma_re2", s2);
                err = std::max({err, std::fabs(m - cf.m_re), std::fabs(s2 - cf.sigma_re2)});
            } else {
                r.add("numeric_m_re", std::nan(""));
                r.add("numeric_sigma_re2", std::nan(""));
            }
        } else {
            r.add("numeric_m", std::nan(""));
            r.add("numeric_sigma_b2", std::nan(""));
            r.add("numeric_m_re", std::nan(""));
            r.add("numeric_sigma_re2", std::nan(""));
        }
        r.add("numeric_error", err);
        r.pass = err <= 1e-3;
        records.push_back(std::move(r));

        if (!curves_out.empty()) {
            const auto [a_alice, a_bob] = bimodal_attentions(scn, lambda, cf.m, cf.sigma_b2);
            const Grid& grid = a_alice.grid();
            for (std::size_t i = 0; i < grid.size(); ++i)
                curves << fmt(lambda) << "," << fmt(grid.point(i, 0)) << ","
                       << fmt(gauss_pdf(grid.point(i, 0), cf.m, cf.sigma_b2)) << ","
                       << fmt(a_alice[i])
                       << "," << fmt(a_bob[i]) << "\n";
        }
    }
    write_records(records, out, format);
    if (!curves_out.empty()) {
        std::ofstream f(curves_out);
        if (!f) throw Error("cannot open output file: " + curves_out);
        f << curves.str();
    }
    return all_pass(records) ? 0 : kExitFail;
}

int cmd_misaligned(double phi, const std::string& sweep, const std::string& out,
                   const std::string& format, const std::string& field_out) {
    using namespace entropic;
    MisalignedScenario scn;
    scn.phi = phi;
    const double a_star = misaligned_alpha_star(phi);
    const double a_star_num = misaligned_alpha_star_numeric(scn);

    const std::vector<double> triple = parse_list(sweep);
    if (triple.size() != 3 || triple[2] < 2) throw CLI::ValidationError("sweep must be lo,hi,count");
    std::vector<Record> records;
    const auto n = static_cast<std::size_t>(triple[2]);
    for (std::size_t i = 0; i < n; ++i) {
        const double alpha = triple[0] + (triple[1] - triple[0]) * static_cast<double>(i) /
                                            static_cast<double>(n - 1);
        const MisalignedResult res = misaligned_run(scn, alpha);
        Record r;
        r.scenario = "misaligned";
        r.add("phi", phi);
        r.add("alpha", alpha);
        r.add("d", res.d);
        r.add("a_b1", res.a_b[0]);
        r.add("a_b2", res.a_b[1]);
        r.add("u_alice", res.u_alice);
        r.add("u_bob_under_alice", res.u_bob_under_alice);
        r.add("alpha_star", a_star);
        r.add("alpha_star_numeric", a_star_num);
        r.pass = std::fabs(a_star_num - a_star) <= 1e-6;
        records.push_back(std::move(r));
    }
    write_records(records, out, format);

    if (!field_out.empty()) {
        const CommunicationGame game = misaligned_game(scn, 21);
        const Grid& grid = game.p_alice.grid();
        const Eigen::MatrixXd g = topic_gradient(game, misaligned_topic(grid, a_star));
        std::ofstream f(field_out);
        if (!f) throw Error("cannot open output file: " + field_out);
        f << "s1,s2,gradient\n";
        for (std::size_t i = 0; i < grid.size(); ++i)
            f << fmt(grid.point(i, 0)) << "," << fmt(grid.point(i, 1)) << "," << fmt(g(0, i))
              << "\n";
    }
    return all_pass(records) ? 0 : kExitFail;
}

int cmd_weather(const std::string& variant, const std::string& out, const std::string& format) {
    using namespace entropic;
    WeatherVariant v;
    std::array<double, 3> oracle{};
    bool has_oracle = true;
    if (variant == "should") {
        v = WeatherVariant::should_be;
        oracle = {0.125, 0.75, 0.125};
    } else if (variant == "might") {
        v = WeatherVariant::might_be;
        oracle = {0.25, 0.5, 0.25};
    } else if (variant == "is_going_to") {
        v = WeatherVariant::is_going_to_be;
        oracle = {0.0, 1.0, 0.0};
    } else {
        throw CLI::ValidationError("unknown variant: " + variant);
    }
    const WeatherResult res = weather_run(v);
    Record r;
    r.scenario = "weather_" + variant;
    double err = 0.0;
    const char* names[3] = {"p_bad", "p_alright", "p_good"};
    for (int i = 0; i < 3; ++i) {
        r.add(names[i], res.probabilities[i]);
        if (has_oracle) err = std::max(err, std::fabs(res.probabilities[i] - oracle[i]));
    }
    r.add("mu_1", res.mu[0]);
    r.add("mu_2", res.mu[1]);
    r.add("boundary", res.boundary ? 1.0 : 0.0);
    r.add("error", err);
    r.pass = err <= 1e-9;
    std::cout << fmt(res.probabilities[0]) << " " << fmt(res.probabilities[1]) << " "
              << fmt(res.probabilities[2]) << "\n";
    write_records({r}, out, format);
    return r.pass ? 0 : kExitFail;
}

int cmd_mep(const std::string& prior_file, const std::string& topic_file,
            const std::string& data, const std::string& out, const std::string& format) {
    using namespace entropic;
    const Table prior_t = read_table(prior_file);
    if (prior_t.columns.size() != 2 || prior_t.columns[0] != "s")
        throw ParseFileError("prior file must have columns s,value");
    std::vector<double> s_col, p_col;
    for (const auto& row : prior_t.rows) {
        s_col.push_back(row[0]);
        p_col.push_back(row[1]);
    }
    const Grid grid = grid_from_column(s_col);
    const DiscreteDensity prior(grid, std::move(p_col));

    const Table topic_t = read_table(topic_file);
    if (topic_t.columns.size() < 2 || topic_t.columns[0] != "s")
        throw ParseFileError("topic file must have columns s,f1[,f2,...]");
    if (topic_t.rows.size() != grid.size()) throw ParseFileError("topic rows do not match prior grid");
    const int n_f = static_cast<int>(topic_t.columns.size()) - 1;
    Eigen::MatrixXd f(n_f, grid.size());
    for (std::size_t i = 0; i < topic_t.rows.size(); ++i) {
        if (std::fabs(topic_t.rows[i][0] - grid.point(i, 0)) > 1e-9)
            throw ParseFileError("topic grid differs from prior grid at line " + std::to_string(i + 2));
        for (int j = 0; j < n_f; ++j) f(j, i) = topic_t.rows[i][j + 1];
    }
    const std::vector<double> d_list = parse_list(data);
    if (static_cast<int>(d_list.size()) != n_f)
        throw ParseFileError("data length does not match topic dimension");
    Eigen::VectorXd d(n_f);
    for (int j = 0; j < n_f; ++j) d[j] = d_list[j];

    const MepSolution sol = mep_update(prior, Message(Topic(grid, std::move(f)), d));
    Record r;
    r.scenario = "mep";
    for (int j = 0; j < n_f; ++j) r.add("mu_" + std::to_string(j + 1), sol.mu[j]);
    r.add("log_partition", sol.log_partition);
    r.add("residual", sol.residual);
    r.add("iterations", sol.iterations);
    r.pass = sol.residual <= 1e-10;
    std::cout << "mu =";
    for (int j = 0; j < n_f; ++j) std::cout << " " << fmt(sol.mu[j]);
    std::cout << "\nresidual = " << fmt(sol.residual) << "\n";
    write_records({r}, out, format);
    if (!out.empty()) {
        std::ofstream pf(out + ".posterior.csv");
        pf << "s,posterior\n";
        for (std::size_t i = 0; i < grid.size(); ++i)
            pf << fmt(grid.point(i, 0)) << "," << fmt(sol.posterior[i]) << "\n";
    }
    return r.pass ? 0 : kExitFail;
}

int cmd_gradcheck(unsigned seed, int cases, const std::string& out, const std::string& format) {
    using namespace entropic;
    std::vector<Record> records;
    double max_err = 0.0;
    for (int c = 0; c < cases; ++c) {
        const RandomGameCase rgc = random_quadratic_game(seed + static_cast<unsigned>(c), 12,
                                                         1 + (c % 2));
        const double err = topic_gradient_max_rel_err(rgc.game, rgc.topic);
        max_err = std::max(max_err, err);
        Record r;
        r.scenario = "gradcheck";
        r.add("case", c);
        r.add("seed", seed + c);
        r.add("rel_err", err);
        r.pass = err < 1e-3;
        records.push_back(std::move(r));
    }
    std::cout << "max_rel_err = " << fmt(max_err) << (max_err < 1e-3 ? ": PASS" : ": FAIL")
              << "\n";
    write_records(records, out, format);
    return all_pass(records) ? 0 : kExitFail;
}

int cmd_attention_opt(const std::string& g_file, const std::string& attention_file,
                      const std::string& out, const std::string& format) {
    using namespace entropic;
    const Table g_t = read_table(g_file);
    if (g_t.columns.size() < 2 || g_t.columns[0] != "s")
        throw ParseFileError("G file must have columns s,g1,...,gN (one row per grid point)");
    const std::size_t n = g_t.rows.size();
    if (g_t.columns.size() != n + 1) throw ParseFileError("G must be square: rows and g-columns differ");
    std::vector<double> s_col;
    Eigen::MatrixXd g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        s_col.push_back(g_t.rows[i][0]);
        for (std::size_t j = 0; j < n; ++j) g(i, j) = g_t.rows[i][j + 1];
    }
    const Grid grid = grid_from_column(s_col);

    std::vector<double> a_vals(n, 1.0);
    if (!attention_file.empty()) {
        const Table a_t = read_table(attention_file);
        if (a_t.columns.size() != 2 || a_t.rows.size() != n)
            throw ParseFileError("attention file must have columns s,value matching the G grid");
        for (std::size_t i = 0; i < n; ++i) a_vals[i] = a_t.rows[i][1];
    }
    const AttentionDensity a_alice(grid, std::move(a_vals));
    const OptimalAttention res =
        optimal_attention_continuous(a_alice, OptimumBeliefGeneral::from_second_moment(grid, g));
    Record r;
    r.scenario = "attention_opt";
    r.add("correction_norm", res.correction_norm);
    r.add("rectified", res.rectified ? 1.0 : 0.0);
    std::cout << "correction_norm = " << fmt(res.correction_norm)
              << (res.rectified ? " (rectified)" : "") << "\n";
    write_records({r}, out, format);
    if (!out.empty()) {
        std::ofstream f(out + ".attention.csv");
        f << "s,attention\n";
        for (std::size_t i = 0; i < grid.size(); ++i)
            f << fmt(grid.point(i, 0)) << "," << fmt(res.attention[i]) << "\n";
    }
    return 0;
}

int cmd_transfer_demo(unsigned seed, const std::string& out, const std::string& format) {
    using namespace entropic;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    const Grid grid = Grid::uniform(-4.0, 4.0, 64);
    std::vector<double> pa(grid.size()), pb(grid.size());
    for (auto& v : pa) v = unit(rng);
    for (auto& v : pb) v = unit(rng);
    const DiscreteDensity p_alice(grid, std::move(pa));
    const DiscreteDensity p_bob(grid, std::move(pb));
    const MepSolution sol = accurate_transfer_demo(p_alice, p_bob);
    const auto& gw = grid.weights();
    double tv = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        tv += gw[i] * std::fabs(sol.posterior[i] - p_alice[i]);
    Record r;
    r.scenario = "transfer_demo";
    r.add("seed", seed);
    r.add("mu", sol.mu[0]);
    r.add("total_variation", 0.5 * tv);
    r.pass = std::fabs(sol.mu[0] + 1.0) <= 1e-8 && 0.5 * tv <= 1e-8;
    std::cout << "mu = " << fmt(sol.mu[0]) << ", total_variation = " << fmt(0.5 * tv) << "\n";
    write_records({r}, out, format);
    return r.pass ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropic communication toolkit"};
    app.require_subcommand(1);

    std::string out, format = "csv";
    app.add_option("--out", out, "output file (default stdout)");
    app.add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* bimodal = app.add_subcommand("bimodal", "bimodal sender, exponential weights");
    double sigma_a2 = 0.25;
    std::string lambdas = "0,1,2,4,8,16,32";
    std::string objective = "both", curves_out;
    bimodal->add_option("--sigma-a2", sigma_a2);
    bimodal->add_option("--lambdas", lambdas, "comma-separated weight exponents");
    bimodal->add_option("--objective", objective)
        ->check(CLI::IsMember({"attention_entropy", "weighted_re", "both"}));
    bimodal->add_option("--curves-out", curves_out, "per-point curve data file");

    auto* misaligned = app.add_subcommand("misaligned", "2D rotated-interest game");
    double phi = M_PI / 2.0;
    std::string sweep = "-1.5707963267948966,1.5707963267948966,181";
    std::string field_out;
    misaligned->add_option("--phi", phi)->check(CLI::Range(-M_PI, M_PI));
    misaligned->add_option("--alpha-sweep", sweep, "lo,hi,count");
    misaligned->add_option("--field-out", field_out, "topic-gradient field data file");

    auto* weather = app.add_subcommand("weather", "three-point forecast decoding");
    std::string variant = "should";
    weather->add_option("--variant", variant)
        ->check(CLI::IsMember({"should", "might", "is_going_to"}));

    auto* mep = app.add_subcommand("mep", "decode a moment message");
    std::string prior_file, topic_file, data;
    mep->add_option("--prior-file", prior_file)->required();
    mep->add_option("--topic-file", topic_file)->required();
    mep->add_option("--data", data, "comma-separated moments")->required();

    auto* gradcheck = app.add_subcommand("gradcheck", "topic-gradient oracle check");
    unsigned seed = 0;
    int cases = 20;
    gradcheck->add_option("--seed", seed);
    gradcheck->add_option("--cases", cases)->check(CLI::PositiveNumber);

    auto* attention_opt = app.add_subcommand("attention-opt", "bias-corrected attention");
    std::string g_file, attention_file;
    attention_opt->add_option("--g-file", g_file)->required();
    attention_opt->add_option("--attention-file", attention_file);

    auto* transfer = app.add_subcommand("transfer-demo", "exact knowledge transfer");
    unsigned t_seed = 0;
    transfer->add_option("--seed", t_seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : kExitUsage;
    }

    try {
        if (bimodal->parsed())
            return cmd_bimodal(sigma_a2, parse_list(lambdas), objective, out, format, curves_out);
        if (misaligned->parsed()) return cmd_misaligned(phi, sweep, out, format, field_out);
        if (weather->parsed()) return cmd_weather(variant, out, format);
        if (mep->parsed()) return cmd_mep(prior_file, topic_file, data, out, format);
        if (gradcheck->parsed()) return cmd_gradcheck(seed, cases, out, format);
        if (attention_opt->parsed()) return cmd_attention_opt(g_file, attention_file, out, format);
        if (transfer->parsed()) return cmd_transfer_demo(t_seed, out, format);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseFileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
