#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsl2r/qsl2r.hpp"

using namespace qsl2r;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CheckFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command, suite;
    std::string family = "principal";
    double q = 2.0, t = 1.0;
    int epsilon = 1, sigma = 1, n = 0, sign = 1;
    std::string lambda = "0,1";
    std::string lambda_exp = "i";
    std::string tgrid = "1e-1:1e-4", dqgrid;
    std::string algebra = "qreduced";
    int N = 60, margin = 4, n_max = 10, res = 721;
    double tol = 0.0;
    unsigned long long seed = 0;
    int samples = 0, threads = 0;
    bool snap = true;
    std::string out;

    ojson to_json() const {
        ojson j;
        j["command"] = command;
        j["suite"] = suite;
        j["family"] = family;
        j["q"] = q;
        j["t"] = t;
        j["epsilon"] = epsilon;
        j["sigma"] = sigma;
        j["n"] = n;
        j["sign"] = sign;
        j["lambda"] = lambda;
        j["lambda_exp"] = lambda_exp;
        j["tgrid"] = tgrid;
        j["dqgrid"] = dqgrid;
        j["algebra"] = algebra;
        j["N"] = N;
        j["margin"] = margin;
        j["nmax"] = n_max;
        j["res"] = res;
        j["tol"] = tol;
        j["seed"] = seed;
        j["samples"] = samples;
        j["snap"] = snap;
        return j;
    }
};

std::vector<double> parse_numbers(const std::string& s, char sep) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            throw DomainError("cli: cannot parse number '" + item + "'");
        }
        if (used != item.size()) throw DomainError("cli: cannot parse number '" + item + "'");
        v.push_back(x);
    }
    return v;
}

// "re,im", "x", "i", "2.5i"
cplx parse_complex(const std::string& s) {
    if (!s.empty() && s.back() == 'i' && s.find(',') == std::string::npos) {
        const std::string head = s.substr(0, s.size() - 1);
        return {0.0, head.empty() ? 1.0 : parse_numbers(head, ',').at(0)};
    }
    const auto v = parse_numbers(s, ',');
    if (v.size() == 1) return {v[0], 0.0};
    if (v.size() == 2) return {v[0], v[1]};
    throw DomainError("cli: complex numbers are written re,im");
}

// "start:stop:count", endpoints included
std::vector<double> parse_linear_grid(const std::string& s) {
    const auto v = parse_numbers(s, ':');
    if (v.size() != 3 || v[2] < 1 || v[2] != std::floor(v[2])) throw DomainError("cli: grids are start:stop:count");
    const int c = int(v[2]);
    std::vector<double> g;
    for (int i = 0; i < c; ++i) g.push_back(c == 1 ? v[0] : v[0] + (v[1] - v[0]) * i / (c - 1));
    return g;
}

// "a:b" decades from a to b, or "a:b:count" log-spaced
std::vector<double> parse_log_grid(const std::string& s) {
    const auto v = parse_numbers(s, ':');
    if (v.size() < 2 || v.size() > 3 || v[0] <= 0 || v[1] <= 0) throw DomainError("cli: bad step grid '" + s + "'");
    const double la = std::log10(v[0]), lb = std::log10(v[1]);
    int c = v.size() == 3 ? int(v[2]) : int(std::lround(std::abs(lb - la))) + 1;
    if (c < 2) throw DomainError("cli: step grids need at least two points");
    std::vector<double> g;
    for (int i = 0; i < c; ++i) g.push_back(std::pow(10.0, la + (lb - la) * i / (c - 1)));
    return g;
}

bool on_circle(const std::string& family) { return family == "principal" || family == "groupoid"; }

// single values as given; grids are angles on the upper half circle for the
// q-families and nu with lambda = i nu for the classical ones
std::vector<cplx> lambda_list(const RunConfig& c) {
    std::vector<cplx> out;
    if (c.lambda.find(':') != std::string::npos) {
        for (double x : parse_linear_grid(c.lambda))
            out.push_back(on_circle(c.family) ? std::polar(1.0, x) : cplx(0.0, x));
    } else {
        cplx l = parse_complex(c.lambda);
        // rounded unit-circle input such as 0.5,0.866
        if (c.snap && on_circle(c.family) && std::abs(std::abs(l) - 1.0) < 1e-3) l /= std::abs(l);
        out.push_back(l);
    }
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> angle(0.0, kPi), nu(-10.0, 10.0);
    for (int i = 0; i < c.samples; ++i)
        out.push_back(on_circle(c.family) ? std::polar(1.0, angle(rng)) : cplx(0.0, nu(rng)));
    return out;
}

TruncatedModule build_module(const RunConfig& c, cplx lambda) {
    if (c.family == "principal") return build_principal_q(make_point(c.q, c.t), c.epsilon, lambda, c.N);
    if (c.family == "discrete") return build_discrete_q(make_point(c.q, c.t), c.sigma, c.n, c.sign, c.N);
    if (c.family == "classical") return build_classical_principal(lambda, c.epsilon, c.N, c.t);
    if (c.family == "motion") return build_motion(lambda, c.epsilon, c.N);
    if (c.family == "groupoid") return build_groupoid(lambda, c.epsilon, c.N, c.q);
    throw DomainError("cli: unknown family '" + c.family + "'");
}

bool limit_family(const TruncatedModule& m) {
    return m.family == Family::ClassicalPrincipal || m.family == Family::Motion || m.family == Family::Groupoid;
}

std::string fmt(double x) {
    char b[32];
    std::snprintf(b, sizeof b, "%.6e", x);
    return b;
}

std::string fmt_lambda(cplx l) { return fmt(l.real()) + "," + fmt(l.imag()); }

class Output {
   public:
    explicit Output(const RunConfig& c) : cfg_(c.to_json()) {
        if (!c.out.empty()) {
            file_.open(c.out);
            if (!file_) throw DomainError("cli: cannot open output '" + c.out + "'");
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }
    void csv(const std::string& header) { os() << "# config: " << cfg_.dump() << "\n" << header << "\n"; }
    void json(ojson body) {
        ojson j;
        j["config"] = cfg_;
        for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
        os() << j.dump(2) << "\n";
    }

   private:
    ojson cfg_;
    std::ofstream file_;
};

void fail_if(bool bad, const std::string& what) {
    if (bad) throw CheckFailed(what);
}

void validate(const RunConfig& c) {
    if (c.N <= 2 * c.margin) throw DomainError("cli: N must exceed 2*margin");
    if (c.margin < 0) throw DomainError("cli: margin must be nonnegative");
    if (c.tol < 0.0) throw DomainError("cli: tolerances must be positive");
    if (c.n_max < 0 || c.res < 2) throw DomainError("cli: nmax >= 0 and res >= 2 required");
    if (c.samples < 0) throw DomainError("cli: samples must be nonnegative");
}

double tol_or(const RunConfig& c, double d) { return c.tol > 0.0 ? c.tol : d; }

void run_build(RunConfig& c) {
    const auto ls = lambda_list(c);
    if (ls.size() != 1) throw DomainError("cli: build takes a single lambda");
    Output o(c);
    o.os() << module_to_json(build_module(c, ls[0]), c.to_json()) << "\n";
}

void run_verify(RunConfig& c) {
    const bool unitarity = c.suite == "unitarity";
    if (c.suite == "relations" || unitarity) {
        const auto ls = lambda_list(c);
        const auto rows = parallel_map(
            ls,
            [&](cplx l) {
                const auto m = build_module(c, l);
                std::vector<ResidualReport> r;
                if (unitarity)
                    r.push_back(check_unitarity(m, tol_or(c, 1e-10), c.margin));
                else if (limit_family(m))
                    r = check_relations_limit(m, tol_or(c, 1e-12), c.margin);
                else
                    r = check_relations_uq(m, tol_or(c, 1e-10), c.margin);
                return r;
            },
            c.threads);
        Output o(c);
        o.csv("lambda_re,lambda_im,relation_id,residual,row,col,interior_size");
        const ResidualReport* bad = nullptr;
        cplx bad_l;
        for (size_t i = 0; i < ls.size(); ++i)
            for (const auto& r : rows[i]) {
                o.os() << fmt_lambda(ls[i]) << "," << to_csv_row(r) << "\n";
                if (!r.pass && (!bad || r.max_abs_residual > bad->max_abs_residual)) {
                    bad = &r;
                    bad_l = ls[i];
                }
            }
        if (bad)
            throw CheckFailed(std::string("algcheck.") + (unitarity ? "check_unitarity" : "check_relations") + ": " +
                              bad->relation + " residual " + fmt(bad->max_abs_residual) + " at row " +
                              std::to_string(bad->row_ktype) + " col " + std::to_string(bad->col_ktype) +
                              " lambda " + fmt_lambda(bad_l));
    } else if (c.suite == "weights") {
        const double tol = tol_or(c, 1e-12);
        const double qt = make_point(c.q, c.t).qt;
        Output o(c);
        o.csv("n,sign,max_rel_err,pass");
        double worst = 0.0;
        std::string where;
        for (int n = 0; n <= c.n_max; ++n)
            for (int sign : {1, -1}) {
                const double e = discrete_weight_discrepancy(qt, n, sign, c.N);
                o.os() << n << "," << sign << "," << fmt(e) << "," << (e < tol) << "\n";
                if (e > worst) worst = e, where = "n " + std::to_string(n) + " sign " + std::to_string(sign);
            }
        fail_if(worst >= tol, "algcheck.discrete_weight_oracle: relative error " + fmt(worst) + " at " + where);
    } else if (c.suite == "submodules") {
        const double tol = tol_or(c, 1e-12);
        Output o(c);
        o.csv("sigma,n,leak_plus,leak_minus,windows_match,pass");
        std::string bad;
        for (int sigma : {1, -1})
            for (int n = 0; n <= c.n_max; ++n) {
                const auto r = check_submodules(make_point(c.q, c.t), sigma, n, c.N, tol);
                o.os() << sigma << "," << n << "," << fmt(r.leak_plus) << "," << fmt(r.leak_minus) << ","
                       << r.windows_match << "," << r.pass << "\n";
                if (!r.pass && bad.empty())
                    bad = "modgen.detect_submodules: sigma " + std::to_string(sigma) + " n " + std::to_string(n) +
                          " leakage " + fmt(std::max(r.leak_plus, r.leak_minus));
            }
        fail_if(!bad.empty(), bad);
    } else if (c.suite == "specialization") {
        const auto lam = AnalyticLambda::power_tau(parse_complex(c.lambda_exp));
        const std::vector<std::pair<double, double>> grid{{c.q, c.t}, {c.q, 0.0}, {1.0, c.t}, {1.0, 0.0}};
        Output o(c);
        o.csv(specialization_csv_header());
        std::string bad;
        for (int eps : {1, -1})
            for (const auto& r : verify_specialization(lam, eps, grid, c.N, tol_or(c, 1e-10), c.margin)) {
                o.os() << to_csv_row(r) << "\n";
                if (!r.pass && bad.empty())
                    bad = "afield.verify_specialization: " + r.family + " kappa error " + fmt(r.max_kappa_err) +
                          " relation residual " + fmt(r.max_relation_residual);
            }
        fail_if(!bad.empty(), bad);
    } else {
        throw DomainError("cli: unknown verify suite '" + c.suite + "'");
    }
}

void run_sweep(RunConfig& c) {
    if (c.suite != "specialization") throw DomainError("cli: unknown sweep '" + c.suite + "'");
    const cplx ce = parse_complex(c.lambda_exp);
    const auto lam = AnalyticLambda::power_tau(ce);
    qsl2r::validate(lam);
    struct Task {
        bool in_t;
        int eps;
    };
    std::vector<Task> tasks;
    for (int eps : {1, -1}) {
        if (!c.tgrid.empty()) tasks.push_back({true, eps});
        if (!c.dqgrid.empty()) tasks.push_back({false, eps});
    }
    const auto ts = c.tgrid.empty() ? std::vector<double>{} : parse_log_grid(c.tgrid);
    const auto dqs = c.dqgrid.empty() ? std::vector<double>{} : parse_log_grid(c.dqgrid);
    const int N = c.N;
    const auto rows = parallel_map(
        tasks,
        [&](const Task& k) {
            return k.in_t ? convergence_in_t(c.q, k.eps, lam, ts, N, c.margin)
                          : convergence_in_q(c.t, k.eps, lam, dqs, N, c.margin);
        },
        c.threads);
    Output o(c);
    o.csv("study,lambda,epsilon,fixed,step,error,slope,pass");
    std::string bad;
    for (const auto& r : rows) {
        for (size_t i = 0; i < r.steps.size(); ++i)
            o.os() << r.study << "," << r.lambda_name << "," << r.epsilon << "," << fmt(r.fixed) << ","
                   << fmt(r.steps[i]) << "," << fmt(r.errors[i]) << "," << fmt(r.slope) << "," << r.pass << "\n";
        if (!r.pass && bad.empty())
            bad = "afield.convergence: " + r.study + " epsilon " + std::to_string(r.epsilon) + " slope " +
                  fmt(r.slope);
    }
    fail_if(!bad.empty(), bad);
}

void run_field(RunConfig& c) {
    Output o(c);
    std::string bad;
    if (c.suite == "paths") {
        o.csv("path,step,max_jump,slope,pass");
        for (const auto& r : reference_paths(c.N)) {
            for (size_t i = 0; i < r.steps.size(); ++i)
                o.os() << r.name << "," << fmt(r.steps[i]) << "," << fmt(r.max_jumps[i]) << "," << fmt(r.slope)
                       << "," << r.pass << "\n";
            if (!r.pass && bad.empty()) bad = "fieldsec.refine_continuity: path " + r.name + " slope " + fmt(r.slope);
        }
    } else if (c.suite == "vanishing") {
        o.csv("section,checked,supported,max_abs,pass");
        for (const auto& r : vanishing_suite(c.q, c.t, c.n_max)) {
            o.os() << r.section << "," << r.checked << "," << r.supported << "," << fmt(r.max_abs) << "," << r.pass
                   << "\n";
            if (!r.pass && bad.empty()) bad = "fieldsec.check_vanishing: " + r.section + " max " + fmt(r.max_abs);
        }
    } else if (c.suite == "J") {
        o.csv("section,pairs,max_residual,tol,pass");
        for (const auto& r : J_suite(c.q, c.n_max, tol_or(c, 1e-12))) {
            o.os() << r.section << "," << r.pairs << "," << fmt(r.max_residual) << "," << fmt(r.tol) << "," << r.pass
                   << "\n";
            if (!r.pass && bad.empty())
                bad = "fieldsec.check_J_equivariance: " + r.section + " residual " + fmt(r.max_residual);
        }
    } else if (c.suite == "blocks") {
        const auto r = check_block_diagonal({{c.q, c.t}, {1.0 / c.q, c.t}}, c.n_max, tol_or(c, 1e-12));
        o.csv("points,max_residual,tol,pass");
        o.os() << r.points << "," << fmt(r.max_residual) << "," << fmt(r.tol) << "," << r.pass << "\n";
        if (!r.pass) bad = "fieldsec.check_block_diagonal: residual " + fmt(r.max_residual);
    } else {
        throw DomainError("cli: unknown field suite '" + c.suite + "'");
    }
    fail_if(!bad.empty(), bad);
}

Algebra parse_algebra(const std::string& s) {
    if (s == "qreduced") return Algebra::QReduced;
    if (s == "groupoid") return Algebra::Groupoid;
    throw DomainError("cli: algebra is qreduced or groupoid");
}

void run_mackey(RunConfig& c) {
    Output o(c);
    if (c.suite == "mu-table") {
        const auto t = mu_table(c.q, c.res, c.n_max);
        o.json({{"count", t.rows.size()}, {"table", ojson::parse(t.to_json())}});
    } else if (c.suite == "verify") {
        const auto r = verify_mu(c.q, c.n_max, c.res);
        o.os() << "# config: " << c.to_json().dump() << "\n" << r.to_csv();
        for (const auto& k : r.checks) fail_if(!k.pass, "mackey.verify_mu: check " + k.id + ": " + k.detail);
    } else if (c.suite == "closure") {
        const auto g = closure_graph(parse_algebra(c.algebra), c.q, c.algebra == "groupoid" ? 0.0 : 1.0, c.n_max,
                                     c.res);
        o.json({{"graph", ojson::parse(g.to_json())}});
    } else {
        throw DomainError("cli: unknown mackey operation '" + c.suite + "'");
    }
}

void run_ktheory(RunConfig& c) {
    Output o(c);
    if (c.suite == "ledger") {
        const auto L = stratify(c.q, c.n_max, c.res);
        o.os() << "# config: " << c.to_json().dump() << "\n" << L.to_csv();
        fail_if(!L.pass(), "ktheory.stratify: " + std::to_string(L.mu_violations) + " mu violations, onto " +
                               std::to_string(L.strata_onto));
    } else if (c.suite == "rank") {
        const auto r = check_rank_claim(stratify(c.q, c.n_max, c.res));
        o.csv("pairs,failures,pass");
        o.os() << r.pairs << "," << r.failures << "," << r.pass() << "\n";
        fail_if(!r.pass(), "ktheory.check_rank_claim: " + std::to_string(r.failures) + " failures");
    } else if (c.suite == "monotonicity") {
        const auto r = check_monotonicity(c.q, c.n_max, c.res);
        o.csv("edges,violations,pass");
        o.os() << r.edges << "," << r.violations << "," << r.pass() << "\n";
        fail_if(!r.pass(), "ktheory.check_monotonicity: " + std::to_string(r.violations) + " violations");
    } else if (c.suite == "summary") {
        const auto k = k_summary(c.q, c.n_max, c.res);
        o.json({{"summary", ojson::parse(k.to_json())}});
        fail_if(!k.consistent, "ktheory.k_summary: counts inconsistent");
    } else {
        throw DomainError("cli: unknown ktheory operation '" + c.suite + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig c;
    CLI::App app{"qsl2r: truncated matrix models of the deformed SL(2,R) family"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* s) {
        s->add_option("--q", c.q, "deformation parameter q > 0");
        s->add_option("--t", c.t, "exponent t");
        s->add_option("--N", c.N, "window bound");
        s->add_option("--margin", c.margin, "interior margin");
        s->add_option("--tol", c.tol, "tolerance (0 keeps the suite default)");
        s->add_option("--seed", c.seed, "seed for random samples");
        s->add_option("--threads", c.threads, "worker pool size");
        s->add_option("--out,-o", c.out, "output file (default stdout)");
    };
    auto module_opts = [&](CLI::App* s) {
        s->add_option("--family", c.family, "principal|discrete|classical|motion|groupoid");
        s->add_option("--epsilon", c.epsilon, "parity");
        s->add_option("--sigma", c.sigma, "sign sigma of a discrete module");
        s->add_option("--n", c.n, "order of a discrete module");
        s->add_option("--sign", c.sign, "+1 or -1");
        s->add_option("--lambda", c.lambda, "re,im or start:stop:count");
        s->add_option("--samples", c.samples, "extra random lambdas drawn with --seed");
        s->add_flag("!--no-snap", c.snap, "keep a single lambda within 1e-3 of the unit circle as given");
    };

    auto* build = app.add_subcommand("build", "build a truncated module and print it as JSON");
    common(build);
    module_opts(build);

    auto* verify = app.add_subcommand("verify", "relations|unitarity|weights|submodules|specialization");
    verify->add_option("suite", c.suite)->required();
    common(verify);
    module_opts(verify);
    verify->add_option("--nmax", c.n_max, "largest discrete order");
    verify->add_option("--lambda-exp", c.lambda_exp, "c in lambda = q^(c t)");

    auto* sweep = app.add_subcommand("sweep", "specialization convergence sweeps");
    sweep->add_option("suite", c.suite)->required();
    common(sweep);
    sweep->add_option("--lambda-exp", c.lambda_exp, "c in lambda = q^(c t)");
    sweep->add_option("--tgrid", c.tgrid, "t steps a:b (decades) or a:b:count");
    sweep->add_option("--dqgrid", c.dqgrid, "q-1 steps a:b or a:b:count");

    auto* field = app.add_subcommand("field", "paths|vanishing|J|blocks");
    field->add_option("suite", c.suite)->required();
    common(field);
    field->add_option("--nmax", c.n_max, "largest K-type");

    auto* mackey = app.add_subcommand("mackey", "mu-table|verify|closure");
    mackey->add_option("suite", c.suite)->required();
    common(mackey);
    mackey->add_option("--nmax", c.n_max, "largest discrete order");
    mackey->add_option("--res", c.res, "lambda grid size");
    mackey->add_option("--algebra", c.algebra, "qreduced|groupoid");

    auto* kt = app.add_subcommand("ktheory", "ledger|rank|monotonicity|summary");
    kt->add_option("suite", c.suite)->required();
    common(kt);
    kt->add_option("--nmax", c.n_max, "largest discrete order");
    kt->add_option("--res", c.res, "lambda grid size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        c.command = app.get_subcommands().front()->get_name();
        if (c.command == "sweep" && sweep->count("--N") == 0) c.N = 16;
        validate(c);
        if (c.command == "build") run_build(c);
        else if (c.command == "verify") run_verify(c);
        else if (c.command == "sweep") run_sweep(c);
        else if (c.command == "field") run_field(c);
        else if (c.command == "mackey") run_mackey(c);
        else run_ktheory(c);
    } catch (const CheckFailed& e) {
        std::cerr << "FAIL " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 2;
    } catch (const FamilyError& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
