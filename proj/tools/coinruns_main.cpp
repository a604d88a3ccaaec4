// coinruns: exact distributions, moments, and asymptotic approximations for
// head runs in i.i.d. coin tossing. CSV is the primary output; see
// docs/formats.md for every schema.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "coinruns/geo.hpp"
#include "coinruns/json_io.hpp"
#include "coinruns/longest.hpp"
#include "coinruns/moments.hpp"
#include "coinruns/oracle.hpp"
#include "coinruns/run_distribution.hpp"
#include "svg.hpp"

namespace {

using namespace coinruns;
using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Output {
    std::string format = "csv";  // csv | json
    int precision = 15;
    std::string path;  // empty = stdout

    void emit(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(path);
            if (!f) throw std::runtime_error("cannot open output file " + path);
            f << text;
        }
    }
};

std::string fmt(double v, int prec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    return buf;
}

// Bias or weight argument: "a/b" keeps an exact rational alongside the double.
struct Prob {
    double value = 0.0;
    std::optional<Rational> exact;
};

Prob parse_prob(const std::string& text, const char* what) {
    Prob out;
    try {
        if (text.find('/') != std::string::npos) {
            out.exact = parse_rational(text);
            out.value = to_double(*out.exact);
        } else {
            std::size_t used = 0;
            out.value = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument("trailing characters");
        }
    } catch (const std::exception&) {
        throw UsageError(std::string(what) + ": cannot parse \"" + text + "\"");
    }
    if (!(out.value > 0.0 && out.value < 1.0))
        throw UsageError(std::string(what) + " must lie strictly in (0,1), got " + text);
    return out;
}

// "7" | "5,7,10" | "5..20" | "5..20:5", combinable by commas.
std::vector<long long> parse_int_list(const std::string& text, const char* what) {
    std::vector<long long> out;
    std::stringstream ss(text);
    std::string token;
    try {
        while (std::getline(ss, token, ',')) {
            if (token.empty()) throw std::invalid_argument("empty token");
            const auto dots = token.find("..");
            if (dots == std::string::npos) {
                out.push_back(std::stoll(token));
                continue;
            }
            long long step = 1;
            std::string rest = token.substr(dots + 2);
            const auto colon = rest.find(':');
            if (colon != std::string::npos) {
                step = std::stoll(rest.substr(colon + 1));
                rest = rest.substr(0, colon);
            }
            const long long lo = std::stoll(token.substr(0, dots));
            const long long hi = std::stoll(rest);
            if (step < 1 || hi < lo) throw std::invalid_argument("bad range");
            for (long long v = lo; v <= hi; v += step) out.push_back(v);
        }
    } catch (const std::exception&) {
        throw UsageError(std::string(what) + ": cannot parse list \"" + text + "\"");
    }
    if (out.empty()) throw UsageError(std::string(what) + ": empty list");
    return out;
}

std::string csv_escape_none(const std::string& s) { return s; }  // fields never need quoting here

// ---------------------------------------------------------------- longest --

struct LongestArgs {
    std::string n_list, ell_list, p_text;
    std::string methods = "exact,poisson,root";
};

void cmd_longest(const LongestArgs& a, const Output& out) {
    const auto ns = parse_int_list(a.n_list, "--n");
    const auto ells = parse_int_list(a.ell_list, "--ell");
    const Prob p = parse_prob(a.p_text, "--p");
    bool want_exact = false, want_poisson = false, want_root = false;
    {
        std::stringstream ss(a.methods);
        std::string m;
        while (std::getline(ss, m, ',')) {
            if (m == "exact")
                want_exact = true;
            else if (m == "poisson")
                want_poisson = true;
            else if (m == "root")
                want_root = true;
            else
                throw UsageError("--methods: unknown method \"" + m +
                                 "\" (choose from exact,poisson,root)");
        }
        if (!(want_exact || want_poisson || want_root)) throw UsageError("--methods: empty");
    }
    for (long long n : ns)
        if (n < 0) throw UsageError("--n: values must be >= 0");
    for (long long ell : ells)
        if (ell < 1) throw UsageError("--ell: values must be >= 1");

    json rows = json::array();
    std::ostringstream csv;
    csv << "n,ell";
    if (want_exact) csv << ",exact";
    if (want_poisson) csv << ",poisson";
    if (want_poisson && want_exact) csv << ",poisson_err_pct";
    if (want_root) csv << ",root";
    if (want_root && want_exact) csv << ",root_err_pct";
    csv << "\n";
    for (long long n : ns) {
        for (long long ell : ells) {
            json row{{"n", n}, {"ell", ell}};
            double exact = 0.0;
            if (want_exact) exact = longest::tail_exact(n, static_cast<int>(ell), p.value);
            std::optional<double> poisson, root;
            if (want_poisson && ell <= n)
                poisson = 1.0 - longest::poisson_approx(n, static_cast<int>(ell), p.value).value;
            if (want_root)
                root = 1.0 - longest::second_approx(n, static_cast<int>(ell), p.value).value;
            csv << n << ',' << ell;
            if (want_exact) {
                csv << ',' << fmt(exact, out.precision);
                row["exact"] = exact;
            }
            auto emit_approx = [&](std::optional<double> v, const char* key) {
                csv << ',' << (v ? fmt(*v, out.precision) : "");
                if (v) row[key] = *v;
                if (want_exact) {
                    if (v && exact != 0.0) {
                        const double pct = std::fabs(*v - exact) / exact * 100.0;
                        csv << ',' << fmt(pct, 4);
                        row[std::string(key) + "_err_pct"] = pct;
                    } else {
                        csv << ',';
                    }
                }
            };
            if (want_poisson) emit_approx(poisson, "poisson");
            if (want_root) emit_approx(root, "root");
            csv << "\n";
            rows.push_back(std::move(row));
        }
    }
    if (out.format == "json")
        out.emit(json{{"p", p.value}, {"rows", rows}}.dump(2) + "\n");
    else
        out.emit(csv.str());
}

// ----------------------------------------------------------------- figure --

struct FigureArgs {
    int fig = 1;
    std::string svg_path;
};

void cmd_figure(const FigureArgs& a, const Output& out) {
    std::ostringstream csv;
    json jout;
    std::vector<tools::SvgSeries> series;
    std::vector<double> markers;
    if (a.fig == 1) {
        // tail curves ell -> P(L(n) >= ell) for n in {10,100,1000} at p = 1/2,
        // with the log2(n) cutoff markers
        csv << "kind,n,x,y\n";
        json curves = json::array();
        for (long long n : {10LL, 100LL, 1000LL}) {
            tools::SvgSeries s{"n=" + std::to_string(n), {}};
            json curve{{"n", n}, {"points", json::array()}};
            for (int ell = 1; ell <= 30; ++ell) {
                const double tail = longest::tail_exact(n, ell, 0.5);
                csv << "curve," << n << ',' << ell << ',' << fmt(tail, out.precision) << "\n";
                curve["points"].push_back({{"ell", ell}, {"tail", tail}});
                s.points.emplace_back(ell, tail);
            }
            const double marker = std::log2(static_cast<double>(n));
            csv << "marker," << n << ',' << fmt(marker, out.precision) << ",\n";
            curve["marker"] = marker;
            markers.push_back(marker);
            curves.push_back(std::move(curve));
            series.push_back(std::move(s));
        }
        jout = json{{"fig", 1}, {"p", 0.5}, {"curves", curves}};
        if (!a.svg_path.empty())
            tools::write_svg(a.svg_path, "P(L(n) >= ell), p = 1/2", series, markers);
    } else if (a.fig == 2) {
        // exact tails vs the exponential approximation at n = 1000
        const long long n = 1000;
        csv << "p,ell,exact,poisson\n";
        json curves = json::array();
        for (double p : {0.25, 0.5, 0.75}) {
            tools::SvgSeries se{"exact p=" + fmt(p, 3), {}};
            tools::SvgSeries sa{"approx p=" + fmt(p, 3), {}};
            json curve{{"p", p}, {"points", json::array()}};
            for (int ell = 1; ell <= 40; ++ell) {
                const double exact = longest::tail_exact(n, ell, p);
                const double approx = 1.0 - longest::poisson_approx(n, ell, p).value;
                csv << fmt(p, out.precision) << ',' << ell << ',' << fmt(exact, out.precision)
                    << ',' << fmt(approx, out.precision) << "\n";
                curve["points"].push_back({{"ell", ell}, {"exact", exact}, {"poisson", approx}});
                se.points.emplace_back(ell, exact);
                sa.points.emplace_back(ell, approx);
            }
            curves.push_back(std::move(curve));
            series.push_back(std::move(se));
            series.push_back(std::move(sa));
        }
        jout = json{{"fig", 2}, {"n", n}, {"curves", curves}};
        if (!a.svg_path.empty())
            tools::write_svg(a.svg_path, "P(L(1000) >= ell), exact vs approximation", series);
    } else {
        throw UsageError("--fig must be 1 or 2");
    }
    out.emit(out.format == "json" ? jout.dump(2) + "\n" : csv.str());
}

// ------------------------------------------------------------------- dist --

struct DistArgs {
    long long n = 0;
    std::string p_text, target = "R";
    long long ell = 0;
};

void cmd_dist(const DistArgs& a, const Output& out) {
    const Prob p = parse_prob(a.p_text, "--p");
    if (a.n < 0) throw UsageError("--n must be >= 0");
    if (a.target == "R" || a.target == "G") {
        auto dist = a.target == "R"
                        ? portmanteau::run_distribution(static_cast<int>(a.n), p.value)
                        : portmanteau::g_distribution(static_cast<int>(a.n), p.value);
        if (out.format == "json") {
            out.emit(portmanteau::to_json(dist).dump(2) + "\n");
            return;
        }
        std::vector<std::pair<std::string, double>> rows;
        for (const auto& [x, w] : dist.atoms()) rows.emplace_back(x.to_text(), w);
        std::sort(rows.begin(), rows.end());
        std::ostringstream csv;
        csv << "x,w\n";
        for (const auto& [text, w] : rows)
            csv << csv_escape_none(text) << ',' << fmt(w, out.precision) << "\n";
        out.emit(csv.str());
    } else if (a.target == "Gell") {
        if (a.ell < 1) throw UsageError("--ell must be >= 1 for target Gell");
        const long long xmax = (a.n + 1) / (a.ell + 1);
        std::ostringstream csv;
        csv << "x,w\n";
        json atoms = json::array();
        for (long long x = 0; x <= xmax; ++x) {
            const double w = moments::pmf_g(a.n, static_cast<int>(a.ell), x, p.value);
            csv << x << ',' << fmt(w, out.precision) << "\n";
            atoms.push_back({{"x", std::to_string(x)}, {"w", w}});
        }
        if (out.format == "json")
            out.emit(json{{"n", a.n},
                          {"p", p.value},
                          {"target", "G_ell"},
                          {"ell", a.ell},
                          {"atoms", atoms}}
                         .dump(2) +
                     "\n");
        else
            out.emit(csv.str());
    } else {
        throw UsageError("--target must be R, G, or Gell");
    }
}

// ---------------------------------------------------------------- moments --

struct MomentsArgs {
    long long n = 0;
    std::string p_text, ell_list, r_list, target = "G";
};

void cmd_moments(const MomentsArgs& a, const Output& out) {
    const Prob p = parse_prob(a.p_text, "--p");
    const auto ells = parse_int_list(a.ell_list, "--ell");
    const auto rs = parse_int_list(a.r_list, "--r");
    if (a.n < 0) throw UsageError("--n must be >= 0");
    for (long long e : ells)
        if (e < 1) throw UsageError("--ell: values must be >= 1");
    for (long long r : rs)
        if (r < 0) throw UsageError("--r: values must be >= 0");

    double value = 0.0;
    std::optional<Rational> exact;
    if (a.target == "G") {
        if (ells.size() != 1 || rs.size() != 1)
            throw UsageError("--target G takes exactly one ell and one r");
        value = moments::binom_moment_g(a.n, static_cast<int>(ells[0]),
                                        static_cast<int>(rs[0]), p.value);
        if (p.exact)
            exact = moments::binom_moment_g(a.n, static_cast<int>(ells[0]),
                                            static_cast<int>(rs[0]), *p.exact);
    } else if (a.target == "R") {
        if (ells.size() != rs.size()) throw UsageError("--ell and --r must have equal length");
        std::vector<int> ei, ri;
        for (long long e : ells) ei.push_back(static_cast<int>(e));
        for (long long r : rs) ri.push_back(static_cast<int>(r));
        value = moments::joint_binom_moment_r(a.n, ei, ri, p.value);
        if (p.exact) exact = moments::joint_binom_moment_r(a.n, ei, ri, *p.exact);
    } else {
        throw UsageError("--target must be G (binomial moment of G_ell) or R (joint over R_ell)");
    }
    if (exact) value = to_double(*exact);
    if (out.format == "json") {
        json j{{"value", value}};
        if (exact) j["exact"] = exact->str();
        out.emit(j.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        csv << "value,exact\n"
            << fmt(value, out.precision) << ',' << (exact ? exact->str() : "") << "\n";
        out.emit(csv.str());
    }
}

// ---------------------------------------------------------------- stopped --

struct StoppedArgs {
    std::string p_text, w_text, query;
};

void cmd_stopped(const StoppedArgs& a, const Output& out) {
    const Prob p = parse_prob(a.p_text, "--p");
    const Prob w = parse_prob(a.w_text, "--w");
    const bool rational = p.exact.has_value() && w.exact.has_value();
    Params ps(p.value, w.value);
    std::optional<ParamsQ> psq;
    if (rational) psq.emplace(*p.exact, *w.exact);

    auto parse_ell = [](const std::string& s, std::size_t pos) {
        try {
            std::size_t used = 0;
            const int ell = std::stoi(s.substr(pos), &used);
            if (pos + used != s.size() || ell < 1) throw std::invalid_argument("bad ell");
            return ell;
        } catch (const std::exception&) {
            throw UsageError("--query: cannot parse run length in \"" + s + "\"");
        }
    };

    const std::string& q = a.query;
    double value = 0.0;
    std::optional<Rational> exact;
    std::optional<std::pair<geo::GeoLaw, std::optional<geo::GeoLawQ>>> law;
    std::string kind;
    if (q.rfind("L*<", 0) == 0) {
        const int ell = parse_ell(q, 3);
        value = geo::l_star_cdf(ell, ps);
        if (psq) exact = geo::l_star_cdf(ell, *psq);
        kind = "scalar";
    } else if (q.rfind("shortest*>=", 0) == 0) {
        const int ell = parse_ell(q, 11);
        value = geo::shortest_star_tail(ell, ps);
        if (psq) exact = geo::shortest_star_tail(ell, *psq);
        kind = "scalar";
    } else if (q == "shortest*=inf") {
        value = geo::shortest_star_defect(ps);
        if (psq) exact = geo::shortest_star_defect(*psq);
        kind = "scalar";
    } else if (q.rfind("R*_", 0) == 0 || q.rfind("G*_", 0) == 0) {
        const bool is_r = q[0] == 'R';
        const auto at = q.find('@');
        const std::string ell_part = at == std::string::npos ? q.substr(3) : q.substr(3, at - 3);
        int ell = 0;
        try {
            ell = std::stoi(ell_part);
            if (ell < 1) throw std::invalid_argument("bad ell");
        } catch (const std::exception&) {
            throw UsageError("--query: cannot parse run length in \"" + q + "\"");
        }
        geo::GeoLaw lw = is_r ? geo::r_star_law(ell, ps) : geo::g_star_law(ell, ps);
        std::optional<geo::GeoLawQ> lwq;
        if (psq) lwq = is_r ? geo::r_star_law(ell, *psq) : geo::g_star_law(ell, *psq);
        if (at == std::string::npos) {
            law.emplace(lw, lwq);
            kind = "law";
        } else {
            long long k = 0;
            try {
                k = std::stoll(q.substr(at + 1));
                if (k < 0) throw std::invalid_argument("bad k");
            } catch (const std::exception&) {
                throw UsageError("--query: cannot parse pmf index in \"" + q + "\"");
            }
            value = geo::geo_pmf(lw, k);
            if (lwq) exact = geo::geo_pmf(*lwq, k);
            kind = "scalar";
        }
    } else {
        throw UsageError(
            "--query: unknown query \"" + q +
            "\"; grammar: L*<ell | R*_ell | R*_ell@k | G*_ell | G*_ell@k | shortest*>=ell | "
            "shortest*=inf");
    }

    if (kind == "law") {
        const auto& [lw, lwq] = *law;
        const double mean = geo::geo_mean(lw);
        if (out.format == "json") {
            json j{{"alpha0", lw.alpha0}, {"beta0", lw.beta0}, {"mean", mean}};
            if (lwq) {
                j["alpha0_exact"] = lwq->alpha0.str();
                j["beta0_exact"] = lwq->beta0.str();
                j["mean_exact"] = geo::geo_mean(*lwq).str();
            }
            out.emit(j.dump(2) + "\n");
        } else {
            std::ostringstream csv;
            csv << "alpha0,beta0,mean\n"
                << fmt(lw.alpha0, out.precision) << ',' << fmt(lw.beta0, out.precision) << ','
                << fmt(mean, out.precision) << "\n";
            out.emit(csv.str());
        }
        return;
    }
    if (exact) value = to_double(*exact);
    if (out.format == "json") {
        json j{{"value", value}};
        if (exact) j["exact"] = exact->str();
        out.emit(j.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        csv << "value,exact\n"
            << fmt(value, out.precision) << ',' << (exact ? exact->str() : "") << "\n";
        out.emit(csv.str());
    }
}

// --------------------------------------------------------------- simulate --

struct SimulateArgs {
    long long n = 0, trials = 100000;
    std::string p_text, functional = "head_count";
    int workers = 1;
};

portmanteau::Functional functional_by_name(const std::string& name) {
    static const char* registry =
        "longest<ell | total_runs | head_count | R_ell | G_ell";
    try {
        if (name == "total_runs") return oracle::total_runs_functional();
        if (name == "head_count") return oracle::head_count_functional();
        if (name.rfind("longest<", 0) == 0) return oracle::indicator_longest_lt(std::stoi(name.substr(8)));
        if (name.rfind("R_", 0) == 0) return oracle::r_count(std::stoi(name.substr(2)));
        if (name.rfind("G_", 0) == 0) return oracle::g_count(std::stoi(name.substr(2)));
    } catch (const std::exception&) {
        // fall through to the registry message
    }
    throw UsageError("--functional: unknown name \"" + name + "\"; registry: " + registry);
}

void cmd_simulate(const SimulateArgs& a, std::uint64_t seed, const Output& out) {
    const Prob p = parse_prob(a.p_text, "--p");
    if (a.n < 0) throw UsageError("--n must be >= 0");
    if (a.trials < 1) throw UsageError("--trials must be >= 1");
    if (a.workers < 1) throw UsageError("--workers must be >= 1");
    auto h = functional_by_name(a.functional);
    oracle::SimConfig cfg;
    cfg.n = static_cast<int>(a.n);
    cfg.p = p.value;
    cfg.trials = a.trials;
    cfg.seed = seed;
    cfg.workers = a.workers;
    const auto res = oracle::simulate(cfg, h);
    if (out.format == "json") {
        out.emit(json{{"functional", h.name},
                      {"n", a.n},
                      {"p", p.value},
                      {"trials", a.trials},
                      {"seed", seed},
                      {"workers", a.workers},
                      {"mean", res.mean[0]},
                      {"std_error", res.std_error[0]}}
                     .dump(2) +
                 "\n");
    } else {
        std::ostringstream csv;
        csv << "functional,n,p,trials,seed,workers,mean,std_error\n";
        csv << h.name << ',' << a.n << ',' << fmt(p.value, out.precision) << ',' << a.trials
            << ',' << seed << ',' << a.workers << ',' << fmt(res.mean[0], out.precision) << ','
            << fmt(res.std_error[0], out.precision) << "\n";
        out.emit(csv.str());
    }
}

// ------------------------------------------------------------------ roots --

struct RootsArgs {
    long long ell = 0;
    std::string p_text;
    bool all = false;
};

void cmd_roots(const RootsArgs& a, const Output& out) {
    const Prob p = parse_prob(a.p_text, "--p");
    if (a.ell < 1) throw UsageError("--ell must be >= 1");
    const auto info = longest::root_w0(static_cast<int>(a.ell), p.value);
    if (a.all) {
        const auto roots = longest::all_roots(static_cast<int>(a.ell), p.value);
        std::ostringstream csv;
        csv << "re,im,modulus,label\n";
        json jroots = json::array();
        for (const auto& r : roots) {
            std::string label = "other";
            if (std::abs(r - std::complex<double>(info.w0, 0.0)) < 1e-8)
                label = "w0";
            else if (std::abs(r - std::complex<double>(1.0 / p.value, 0.0)) < 1e-8)
                label = "1/p";
            csv << fmt(r.real(), out.precision) << ',' << fmt(r.imag(), out.precision) << ','
                << fmt(std::abs(r), out.precision) << ',' << label << "\n";
            jroots.push_back({{"re", r.real()},
                              {"im", r.imag()},
                              {"modulus", std::abs(r)},
                              {"label", label}});
        }
        out.emit(out.format == "json" ? json{{"ell", a.ell}, {"p", p.value}, {"roots", jroots}}
                                            .dump(2) +
                                            "\n"
                                      : csv.str());
        return;
    }
    if (out.format == "json") {
        out.emit(json{{"ell", a.ell},
                      {"p", p.value},
                      {"w0", info.w0},
                      {"degenerate", info.degenerate},
                      {"residual", info.residual},
                      {"bracket_lo", info.bracket_lo},
                      {"bracket_hi", info.bracket_hi}}
                     .dump(2) +
                 "\n");
    } else {
        std::ostringstream csv;
        csv << "ell,p,w0,degenerate,residual,bracket_lo,bracket_hi\n";
        csv << a.ell << ',' << fmt(p.value, out.precision) << ',' << fmt(info.w0, out.precision)
            << ',' << (info.degenerate ? 1 : 0) << ',' << fmt(info.residual, 3) << ','
            << fmt(info.bracket_lo, out.precision) << ',' << fmt(info.bracket_hi, out.precision)
            << "\n";
        out.emit(csv.str());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coinruns: run statistics of i.i.d. coin tossing (exact, stopped, asymptotic)"};
    app.require_subcommand(1);

    Output out;
    std::uint64_t seed = 12345;
    app.add_option("--format", out.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--precision", out.precision, "Significant digits for probabilities")
        ->check(CLI::Range(1, 17));
    app.add_option("--out", out.path, "Write output to this path instead of stdout");
    app.add_option("--seed", seed, "Seed for the simulate subcommand");

    LongestArgs longest_args;
    auto* sc_longest = app.add_subcommand(
        "longest", "Tail P(L(n) >= ell) by exact recursion and approximations");
    sc_longest->add_option("--n", longest_args.n_list, "Toss counts (list/range)")->required();
    sc_longest->add_option("--ell", longest_args.ell_list, "Run lengths (list/range)")->required();
    sc_longest->add_option("--p", longest_args.p_text, "Heads bias (decimal or a/b)")->required();
    sc_longest->add_option("--methods", longest_args.methods,
                           "Comma subset of exact,poisson,root");

    FigureArgs figure_args;
    auto* sc_figure = app.add_subcommand("figure", "Curve data for the two standard figures");
    sc_figure->add_option("--fig", figure_args.fig, "Figure number (1 or 2)")->required();
    sc_figure->add_option("--svg", figure_args.svg_path, "Also write an SVG plot to this path");

    DistArgs dist_args;
    auto* sc_dist = app.add_subcommand("dist", "Exact law of R(n), G(n), or G_ell(n)");
    sc_dist->add_option("--n", dist_args.n, "Toss count")->required();
    sc_dist->add_option("--p", dist_args.p_text, "Heads bias")->required();
    sc_dist->add_option("--target", dist_args.target, "R, G, or Gell");
    sc_dist->add_option("--ell", dist_args.ell, "Run length (target Gell)");

    MomentsArgs moments_args;
    auto* sc_moments =
        app.add_subcommand("moments", "Binomial moments of G_ell(n) or joint over R_ell(n)");
    sc_moments->add_option("--n", moments_args.n, "Toss count")->required();
    sc_moments->add_option("--p", moments_args.p_text, "Heads bias")->required();
    sc_moments->add_option("--ell", moments_args.ell_list, "Run length(s)")->required();
    sc_moments->add_option("--r", moments_args.r_list, "Moment order(s)")->required();
    sc_moments->add_option("--target", moments_args.target, "G (default) or R");

    StoppedArgs stopped_args;
    auto* sc_stopped =
        app.add_subcommand("stopped", "Closed-form laws at an independent geometric time");
    sc_stopped->add_option("--p", stopped_args.p_text, "Heads bias")->required();
    sc_stopped->add_option("--w", stopped_args.w_text, "Geometric weight")->required();
    sc_stopped->add_option("--query", stopped_args.query, "e.g. L*<3, R*_2, G*_1@0")->required();

    SimulateArgs simulate_args;
    auto* sc_simulate = app.add_subcommand("simulate", "Seeded Monte Carlo for a functional");
    sc_simulate->add_option("--n", simulate_args.n, "Toss count per trial")->required();
    sc_simulate->add_option("--p", simulate_args.p_text, "Heads bias")->required();
    sc_simulate->add_option("--trials", simulate_args.trials, "Number of trials");
    sc_simulate->add_option("--workers", simulate_args.workers, "Worker threads");
    sc_simulate->add_option("--functional", simulate_args.functional,
                            "longest<ell | total_runs | head_count | R_ell | G_ell");

    RootsArgs roots_args;
    auto* sc_roots = app.add_subcommand("roots", "Dominant root w0 and the full root set");
    sc_roots->add_option("--ell", roots_args.ell, "Run length")->required();
    sc_roots->add_option("--p", roots_args.p_text, "Heads bias")->required();
    sc_roots->add_flag("--all", roots_args.all, "List all roots with moduli");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (sc_longest->parsed()) cmd_longest(longest_args, out);
        if (sc_figure->parsed()) cmd_figure(figure_args, out);
        if (sc_dist->parsed()) cmd_dist(dist_args, out);
        if (sc_moments->parsed()) cmd_moments(moments_args, out);
        if (sc_stopped->parsed()) cmd_stopped(stopped_args, out);
        if (sc_simulate->parsed()) cmd_simulate(simulate_args, seed, out);
        if (sc_roots->parsed()) cmd_roots(roots_args, out);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
