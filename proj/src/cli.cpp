#include "msum/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "msum/ansatz.hpp"
#include "msum/dalembert.hpp"
#include "msum/hypergeom.hpp"
#include "msum/printing.hpp"
#include "msum/roots.hpp"
#include "msum/solvers.hpp"

namespace msum {

namespace {

using nlohmann::json;

struct CliError : std::runtime_error {
    int code;
    CliError(int c, const std::string& m) : std::runtime_error(m), code(c) {}
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError(2, "cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string strip_comments(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string ln;
    while (std::getline(in, ln)) {
        auto h = ln.find('#');
        if (h != std::string::npos) ln.erase(h);
        out << ln << '\n';
    }
    return out.str();
}

/// Expression arguments may be a file path or a literal expression.
std::string expr_text(const std::string& arg) {
    if (std::ifstream probe(arg); probe) return strip_comments(slurp(arg));
    return arg;
}

std::pair<long, long> parse_range(const std::string& s) {
    auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            long v = std::stol(s);
            return {v, v};
        }
        long a = std::stol(s.substr(0, dots));
        long b = std::stol(s.substr(dots + 2));
        if (b < a) throw CliError(2, "empty range: " + s);
        return {a, b};
    } catch (const std::logic_error&) {
        throw CliError(2, "expected a range a..b, got: " + s);
    }
}

std::map<std::string, EExpr> load_defines(const std::vector<std::string>& defs,
                                          const std::string& var,
                                          std::optional<long> eps_order) {
    std::map<std::string, EExpr> out;
    for (const auto& d : defs) {
        auto eq = d.find('=');
        if (eq == std::string::npos || eq == 0)
            throw CliError(2, "--define expects NAME=FILE-or-expression, got: " + d);
        LowerCtx ctx{var, eps_order, {}};
        out[d.substr(0, eq)] = lower(parse_expr_text(expr_text(d.substr(eq + 1))), ctx);
    }
    return out;
}

/// `N: <expr>` lines, exact constant values in Q[zeta]; # comments allowed.
InitialConditions read_ics_file(const std::string& path) {
    InitialConditions ics;
    std::istringstream in(strip_comments(slurp(path)));
    std::string ln;
    int lno = 0;
    while (std::getline(in, ln)) {
        ++lno;
        if (ln.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto colon = ln.find(':');
        if (colon == std::string::npos)
            throw CliError(2, path + ":" + std::to_string(lno) + ": expected 'N: <expr>'");
        long at;
        try {
            at = std::stol(ln.substr(0, colon));
        } catch (const std::logic_error&) {
            throw CliError(2, path + ":" + std::to_string(lno) + ": bad point");
        }
        LowerCtx ctx{"N", {}, {}};
        EExpr v = lower(parse_expr_text(ln.substr(colon + 1)), ctx);
        if (v.is_zero()) {
            ics[at] = ZetaValue();
        } else {
            if (!v.is_exact() || v.lead() != 0 || v.high() != 0)
                throw CliError(2, path + ":" + std::to_string(lno) + ": value must be eps-free");
            ics[at] = v.coeff(0).eval(at);
        }
    }
    return ics;
}

bool eexpr_finite_at(const EExpr& e, long N) {
    if (e.is_zero()) return true;
    try {
        for (long t = e.lead(); t <= e.high(); ++t) (void)e.coeff(t).eval(N);
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

/// Smallest window [lo, lo+n-1] with every shifted evaluation finite.
std::pair<long, long> verify_window(const Recurrence& rec, const EExpr& cand, long n) {
    long bad = 0; // last point where something is singular
    for (long N = 1 - rec.order; N <= 200; ++N) {
        bool ok = eexpr_finite_at(cand, N) && eexpr_finite_at(rec.rhs, N);
        for (int i = 0; ok && i <= rec.order; ++i)
            ok = eexpr_finite_at(rec.coeffs[(std::size_t)i], N);
        if (!ok) bad = N;
        if (N - bad >= rec.order + n) break;
    }
    long lo = bad + rec.order + 1;
    return {lo, lo + n - 1};
}

struct Flags {
    std::string strategy = "ansatz";
    int weight = 6;
    std::string poles = "-3..1";
    int pole_degree = 3;
    bool alt = true;
    std::string zeta = "3,5";
    std::optional<long> eps_order;
    std::optional<long> max_degree;
    std::string range;
    bool use_json = false;
    std::string ics_path;
    std::vector<std::string> defines;
    std::string klass = "auto"; // telescope: rational | harmonic | auto
    std::string at;
    std::string var;
    std::string file, file2;

    // which envelope flags the user actually set (file header < defaults < flags)
    bool weight_set = false, poles_set = false, pdeg_set = false, zeta_set = false;
};

AnsatzConfig make_config(const Flags& fl) {
    AnsatzConfig cfg;
    cfg.basis.max_weight = fl.weight;
    auto [a, b] = parse_range(fl.poles);
    cfg.basis.pole_lo = a;
    cfg.basis.pole_hi = b;
    cfg.basis.pole_degree = fl.pole_degree;
    cfg.basis.use_alt = fl.alt;
    std::vector<int> gens;
    std::istringstream zs(fl.zeta);
    std::string tok;
    while (std::getline(zs, tok, ','))
        if (!tok.empty()) {
            try {
                gens.push_back(std::stoi(tok));
            } catch (const std::logic_error&) {
                throw CliError(2, "--zeta expects a comma list of integers >= 2");
            }
        }
    if (!gens.empty()) cfg.basis.zetas = zeta_monomials(gens, fl.weight);
    cfg.eps_order = fl.eps_order;
    return cfg;
}

struct Report {
    std::string command;
    std::string status = "error";
    int exit_code = 3;
    json extra = json::object();
    std::vector<std::string> lines; // human-readable body
    long time_ms = 0;
};

void emit(const Report& r, const Flags& fl, std::ostream& out) {
    if (fl.use_json) {
        json j{{"command", r.command},
               {"status", r.status},
               {"exit_code", r.exit_code},
               {"time_ms", r.time_ms}};
        for (auto& [k, v] : r.extra.items()) j[k] = v;
        out << j.dump(2) << "\n";
        return;
    }
    out << "status: " << r.status << "\n";
    for (const auto& ln : r.lines) out << ln << "\n";
    out << "time: " << r.time_ms << " ms\n";
}

json residual_json(const ResidualReport& rep, long lo, long hi) {
    json j{{"from", lo}, {"to", hi}, {"pass", rep.pass}};
    if (rep.first_failure) j["first_failure"] = *rep.first_failure;
    return j;
}

int cmd_solve(const Flags& fl, std::ostream& out) {
    Report rep;
    rep.command = "solve";
    auto t0 = std::chrono::steady_clock::now();
    auto done = [&]() {
        rep.time_ms = (long)std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        emit(rep, fl, out);
        return rep.exit_code;
    };

    auto defines = load_defines(fl.defines, "N", fl.eps_order);
    if (std::ifstream probe(fl.file); !probe) throw CliError(2, "cannot open file: " + fl.file);
    RecurrenceFile rf = read_recurrence_file(fl.file, defines);
    if (!rf.rec.rhs_resolved) {
        std::string syms;
        for (const auto& s : rf.rec.rhs_externals) syms += (syms.empty() ? "" : ", ") + s;
        throw CliError(2, "right-hand side references undefined sequences: " + syms +
                              " (supply --define NAME=FILE)");
    }
    InitialConditions ics = rf.ics;
    if (!fl.ics_path.empty())
        for (auto& [k, v] : read_ics_file(fl.ics_path)) ics[k] = v;

    rep.extra["config"] = {{"strategy", fl.strategy}, {"weight", fl.weight},
                           {"poles", fl.poles},       {"pole_degree", fl.pole_degree},
                           {"alt", fl.alt},           {"zeta", fl.zeta}};

    if (fl.strategy == "ansatz") {
        AnsatzResult res = solve_ansatz(rf.rec, make_config(fl), ics);
        if (!res.solved()) {
            rep.status = res.status == AnsatzStatus::Underdetermined ? "underdetermined"
                         : res.status == AnsatzStatus::InconsistentIcs
                             ? "inconsistent-initial-conditions"
                             : "no-solution-in-class";
            rep.exit_code = 1;
            if (!res.message.empty()) rep.lines.push_back("diagnosis: " + res.message);
            for (const auto& u : res.unmatched) rep.lines.push_back("unmatched key: " + u);
            for (const auto& h : res.hints) rep.lines.push_back("hint: " + h);
            rep.extra["message"] = res.message;
            rep.extra["unmatched"] = res.unmatched;
            rep.extra["hints"] = res.hints;
            return done();
        }
        auto [lo, hi] = verify_window(rf.rec, res.solution, 30);
        if (!fl.range.empty()) std::tie(lo, hi) = parse_range(fl.range);
        ResidualReport vr = verify_solution(rf.rec, res.solution, ics, lo, hi);
        if (!vr.pass)
            throw std::logic_error("solver returned a candidate failing verification: " +
                                   vr.message);
        rep.status = "solved";
        rep.exit_code = 0;
        std::string sol = eexpr_str(res.solution, rf.rec.var);
        rep.lines.push_back("solution: " + sol);
        rep.lines.push_back("verified: residuals zero for " + rf.rec.var + "=" +
                            std::to_string(lo) + ".." + std::to_string(hi));
        rep.extra["solution"] = sol;
        rep.extra["residual"] = residual_json(vr, lo, hi);
        return done();
    }

    if (fl.strategy == "rational") {
        RationalSolutions rs = solve_rational(rf.rec, fl.max_degree);
        if (!rf.rec.rhs.is_zero() && !rs.particular) {
            rep.status = "no-solution-in-class";
            rep.exit_code = 1;
            rep.lines.push_back("diagnosis: no rational particular solution");
            return done();
        }
        RatFuncQ cand = rs.particular ? *rs.particular : RatFuncQ(0);
        if (!ics.empty()) {
            LinearSystem<Rat> sys;
            for (const auto& [at, val] : ics) {
                if (!val.is_rational()) {
                    rep.status = "no-solution-in-class";
                    rep.exit_code = 1;
                    rep.lines.push_back(
                        "diagnosis: zeta-valued initial condition outside the rational class");
                    return done();
                }
                std::vector<Rat> row;
                try {
                    for (const auto& h : rs.homogeneous) row.push_back(h.eval(Rat(at)));
                    sys.add_row(std::move(row), val.rational_part() - cand.eval(Rat(at)));
                } catch (const std::exception&) {
                    throw CliError(2, "initial condition at a singular point " +
                                          std::to_string(at));
                }
            }
            if (rs.homogeneous.empty() && sys.rows() == 0) sys.add_row({}, Rat(0));
            auto ls = solve_linear(sys);
            if (!ls.consistent) {
                rep.status = "inconsistent-initial-conditions";
                rep.exit_code = 1;
                return done();
            }
            if (!ls.nullspace.empty()) {
                rep.status = "underdetermined";
                rep.exit_code = 1;
                rep.lines.push_back("diagnosis: initial conditions leave free constants");
                return done();
            }
            for (std::size_t i = 0; i < rs.homogeneous.size(); ++i)
                cand = cand + rs.homogeneous[i] * RatFuncQ(PolyQ(ls.particular[i]));
        } else if (!rs.homogeneous.empty()) {
            rep.status = "underdetermined";
            rep.exit_code = 1;
            for (const auto& h : rs.homogeneous)
                rep.lines.push_back("kernel element: " + ratfunc_str(h, rf.rec.var));
            rep.lines.push_back("diagnosis: supply ics to pin the free constants");
            if (rs.particular)
                rep.lines.push_back("particular: " + ratfunc_str(*rs.particular, rf.rec.var));
            return done();
        }
        EExpr sol{HExpr::rational(cand)};
        auto [lo, hi] = verify_window(rf.rec, sol, 30);
        if (!fl.range.empty()) std::tie(lo, hi) = parse_range(fl.range);
        ResidualReport vr = verify_solution(rf.rec, sol, ics, lo, hi);
        if (!vr.pass) {
            rep.status = "no-solution-in-class";
            rep.exit_code = 1;
            rep.lines.push_back("diagnosis: " + vr.message);
            return done();
        }
        rep.status = "solved";
        rep.exit_code = 0;
        std::string s = ratfunc_str(cand, rf.rec.var);
        rep.lines.push_back("solution: " + s);
        rep.lines.push_back("verified: residuals zero for " + rf.rec.var + "=" +
                            std::to_string(lo) + ".." + std::to_string(hi));
        rep.extra["solution"] = s;
        rep.extra["residual"] = residual_json(vr, lo, hi);
        return done();
    }

    if (fl.strategy == "hypergeom") {
        auto certs = solve_hypergeometric(rf.rec);
        rep.extra["certificates"] = json::array();
        for (const auto& c : certs) {
            rep.lines.push_back("product solution: y(j+1)/y(j) = " + ratfunc_str(c.ratio, "j"));
            rep.extra["certificates"].push_back(ratfunc_str(c.ratio, "j"));
        }
        rep.lines.push_back("note: j = " + rf.rec.var + " - " + std::to_string(rf.rec.order) +
                            " (ascending form)");
        rep.status = certs.empty() ? "no-solution-in-class" : "solved";
        rep.exit_code = certs.empty() ? 1 : 0;
        return done();
    }

    if (fl.strategy == "dalembert") {
        DalembertSolutions sol = solve_dalembertian(rf.rec);
        AscendingForm af = ascending_form(rf.rec);
        rep.extra["basis"] = json::array();
        for (std::size_t i = 0; i < sol.basis.size(); ++i) {
            // pointwise check of the basis element against the ascending form
            long checked = 0;
            for (long k = 0; checked < 30 && k < 200; ++k) {
                try {
                    Rat acc(0);
                    for (std::size_t j = 0; j < af.p.size(); ++j)
                        acc = acc + af.p[j].eval(Rat(k)) * sol.basis[i].eval(k + (long)j);
                    if (!acc.is_zero())
                        throw std::logic_error("nested-sum basis element fails the recurrence");
                    ++checked;
                } catch (const std::domain_error&) {
                    continue; // singular point of the ratio chain
                }
            }
            std::string ln = "basis: " + sol.basis[i].str("j");
            if (sol.closed[i]) ln += "  =  " + sol.closed[i]->str("j");
            rep.lines.push_back(ln);
            rep.extra["basis"].push_back(
                json{{"nested", sol.basis[i].str("j")},
                     {"closed", sol.closed[i] ? sol.closed[i]->str("j") : ""}});
        }
        if (sol.particular)
            rep.lines.push_back("particular: " + sol.particular->str("j"));
        if (!sol.complete)
            rep.lines.push_back("diagnosis: left factor of order " +
                                std::to_string((long)sol.remaining.size() - 1) +
                                " has no product solution");
        rep.lines.push_back("note: j = " + rf.rec.var + " - " + std::to_string(rf.rec.order) +
                            " (ascending form)");
        rep.status = sol.complete ? "solved" : "no-solution-in-class";
        rep.exit_code = sol.complete ? 0 : 1;
        rep.extra["complete"] = sol.complete;
        return done();
    }

    throw CliError(2, "unknown strategy: " + fl.strategy);
}

int cmd_verify(const Flags& fl, std::ostream& out) {
    Report rep;
    rep.command = "verify";
    auto t0 = std::chrono::steady_clock::now();
    auto defines = load_defines(fl.defines, "N", fl.eps_order);
    if (std::ifstream probe(fl.file); !probe) throw CliError(2, "cannot open file: " + fl.file);
    RecurrenceFile rf = read_recurrence_file(fl.file, defines);
    if (!rf.rec.rhs_resolved) {
        std::string syms;
        for (const auto& s : rf.rec.rhs_externals) syms += (syms.empty() ? "" : ", ") + s;
        throw CliError(2, "right-hand side references undefined sequences: " + syms +
                              " (supply --define NAME=FILE)");
    }
    LowerCtx ctx{rf.rec.var, rf.rec.eps_order, defines};
    EExpr cand = lower(parse_expr_text(expr_text(fl.file2)), ctx);
    InitialConditions ics = rf.ics;
    if (!fl.ics_path.empty())
        for (auto& [k, v] : read_ics_file(fl.ics_path)) ics[k] = v;

    auto [lo, hi] = verify_window(rf.rec, cand, 30);
    if (!fl.range.empty()) std::tie(lo, hi) = parse_range(fl.range);
    ResidualReport vr = verify_solution(rf.rec, cand, ics, lo, hi);
    rep.status = vr.pass ? "pass" : "fail";
    rep.exit_code = vr.pass ? 0 : 1;
    rep.lines.push_back("residuals checked for " + rf.rec.var + "=" + std::to_string(lo) +
                        ".." + std::to_string(hi));
    if (!vr.pass) rep.lines.push_back(vr.message);
    rep.extra["residual"] = residual_json(vr, lo, hi);
    rep.extra["message"] = vr.message;
    rep.time_ms = (long)std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    emit(rep, fl, out);
    return rep.exit_code;
}

int cmd_telescope(const Flags& fl, std::ostream& out) {
    Report rep;
    rep.command = "telescope";
    auto t0 = std::chrono::steady_clock::now();
    std::string var = fl.var.empty() ? "k" : fl.var;
    HExpr f = parse_hexpr(expr_text(fl.file), var);
    auto done = [&]() {
        rep.time_ms = (long)std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        emit(rep, fl, out);
        return rep.exit_code;
    };

    auto finish_with = [&](const HExpr& g) {
        // delta-check certificate before output
        HExpr resid = g.shifted(1) - g - f;
        long checked = 0;
        for (long k = 1; checked < 20 && k <= 200; ++k) {
            try {
                if (!resid.eval(k).is_zero())
                    throw std::logic_error("telescoping certificate fails the delta check");
                ++checked;
            } catch (const PoleError&) {
                continue;
            }
        }
        rep.status = "solved";
        rep.exit_code = 0;
        std::string s = g.str(var);
        rep.lines.push_back("g = " + s);
        rep.lines.push_back("certificate: g(" + var + "+1) - g(" + var + ") = f, checked at " +
                            std::to_string(checked) + " points");
        rep.extra["certificate"] = s;
        return done();
    };

    auto fr = f.as_rational();
    if (fl.klass != "harmonic" && fr) {
        // rational (Gosper-style) class is the default for rational summands;
        // the harmonic class must be requested explicitly
        if (auto g = telescope_rational(*fr, fl.max_degree))
            return finish_with(HExpr::rational(*g));
        rep.status = "no-solution-in-class";
        rep.exit_code = 1;
        rep.lines.push_back("diagnosis: no rational antidifference");
        std::vector<std::string> hints;
        for (long r : integer_roots(fr->den())) {
            int p = root_multiplicity(fr->den(), Rat(r));
            hints.push_back("adjoin S[" + std::to_string(p) + "]");
        }
        for (const auto& h : hints) rep.lines.push_back("hint: " + h + " (--class harmonic)");
        rep.extra["hints"] = hints;
        return done();
    }
    if (fl.klass == "rational") {
        rep.status = "no-solution-in-class";
        rep.exit_code = 1;
        rep.lines.push_back("diagnosis: summand is not rational");
        return done();
    }
    std::optional<AnsatzConfig> cfg;
    if (fl.weight_set || fl.poles_set || fl.pdeg_set || fl.zeta_set) {
        cfg = make_config(fl);
        cfg->zero_free_constants = true;
    }
    HarmonicTelescope ht = telescope_harmonic(f, cfg);
    if (ht.solved) return finish_with(ht.g);
    rep.status = "no-solution-in-class";
    rep.exit_code = 1;
    if (!ht.message.empty()) rep.lines.push_back("diagnosis: " + ht.message);
    for (const auto& h : ht.hints) rep.lines.push_back("hint: " + h);
    rep.extra["hints"] = ht.hints;
    return done();
}

int cmd_eval(const Flags& fl, std::ostream& out) {
    Report rep;
    rep.command = "eval";
    auto t0 = std::chrono::steady_clock::now();
    std::string var = fl.var.empty() ? "N" : fl.var;
    HExpr e = parse_hexpr(expr_text(fl.file), var);
    std::vector<long> points;
    if (!fl.at.empty()) {
        std::string v = fl.at;
        if (auto eq = v.find('='); eq != std::string::npos) v = v.substr(eq + 1);
        try {
            points.push_back(std::stol(v));
        } catch (const std::logic_error&) {
            throw CliError(2, "--at expects " + var + "=<integer>");
        }
    }
    if (!fl.range.empty()) {
        auto [a, b] = parse_range(fl.range);
        for (long N = a; N <= b; ++N) points.push_back(N);
    }
    if (points.empty()) throw CliError(2, "eval needs --at or --range");
    rep.extra["values"] = json::array();
    for (long N : points) {
        ZetaValue v;
        try {
            v = e.eval(N);
        } catch (const PoleError& pe) {
            throw CliError(2, "pole at " + var + "=" + std::to_string(N) + ": " + pe.what());
        }
        rep.lines.push_back(var + "=" + std::to_string(N) + ": " + v.str());
        rep.extra["values"].push_back(json{{"at", N}, {"value", v.str()}});
    }
    rep.status = "ok";
    rep.exit_code = 0;
    rep.time_ms = (long)std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    emit(rep, fl, out);
    return rep.exit_code;
}

int cmd_simplify(const Flags& fl, std::ostream& out) {
    std::string var = fl.var.empty() ? "N" : fl.var;
    HExpr e = parse_hexpr(expr_text(fl.file), var);
    if (fl.use_json) {
        json j{{"command", "simplify"}, {"status", "ok"}, {"exit_code", 0},
               {"canonical", e.str(var)}};
        out << j.dump(2) << "\n";
    } else {
        out << e.str(var) << "\n";
    }
    return 0;
}

} // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Flags fl;
    CLI::App app{"Symbolic solver for linear difference equations whose solutions live in "
                 "the algebra of harmonic sums, (-1)^N and zeta values"};
    app.require_subcommand(1);

    auto add_envelope = [&fl](CLI::App* c) {
        fl.weight_set = fl.poles_set = fl.pdeg_set = fl.zeta_set = false;
        c->add_option("--weight", fl.weight, "maximum basis weight")
            ->each([&fl](const std::string&) { fl.weight_set = true; });
        c->add_option("--poles", fl.poles, "denominator offset window a..b")
            ->each([&fl](const std::string&) { fl.poles_set = true; });
        c->add_option("--pole-degree", fl.pole_degree, "maximum power per pole factor")
            ->each([&fl](const std::string&) { fl.pdeg_set = true; });
        c->add_flag("--alt,!--no-alt", fl.alt, "include (-1)^N terms");
        c->add_option("--zeta", fl.zeta, "zeta generators, e.g. 3,5")
            ->each([&fl](const std::string&) { fl.zeta_set = true; });
        c->add_option("--eps-order", fl.eps_order, "eps truncation order override");
        c->add_option("--max-degree", fl.max_degree, "numerator degree-bound override");
    };

    CLI::App* solve = app.add_subcommand("solve", "solve a recurrence file");
    solve->add_option("file", fl.file, "recurrence file")->required();
    solve->add_option("--strategy", fl.strategy, "ansatz | rational | hypergeom | dalembert")
        ->check(CLI::IsMember({"ansatz", "rational", "hypergeom", "dalembert"}));
    add_envelope(solve);
    solve->add_option("--range", fl.range, "verification range a..b");
    solve->add_option("--ics", fl.ics_path, "initial-condition file (N: expr lines)");
    solve->add_option("--define", fl.defines, "external sequence NAME=FILE-or-expression");
    solve->add_flag("--json", fl.use_json, "machine-readable report");

    CLI::App* verify = app.add_subcommand("verify", "check a candidate against a recurrence");
    verify->add_option("file", fl.file, "recurrence file")->required();
    verify->add_option("solution", fl.file2, "solution expression file")->required();
    verify->add_option("--range", fl.range, "check range a..b");
    verify->add_option("--ics", fl.ics_path, "initial-condition file");
    verify->add_option("--define", fl.defines, "external sequence NAME=FILE-or-expression");
    verify->add_option("--eps-order", fl.eps_order, "eps truncation order override");
    verify->add_flag("--json", fl.use_json, "machine-readable report");

    CLI::App* tele = app.add_subcommand("telescope", "antidifference of a summand");
    tele->add_option("expr", fl.file, "summand file or expression")->required();
    tele->add_option("--class", fl.klass, "rational | harmonic | auto")
        ->check(CLI::IsMember({"rational", "harmonic", "auto"}));
    tele->add_option("--var", fl.var, "summation variable (default k)");
    add_envelope(tele);
    tele->add_flag("--json", fl.use_json, "machine-readable report");

    CLI::App* ev = app.add_subcommand("eval", "exact evaluation in Q[zeta]");
    ev->add_option("expr", fl.file, "expression file or expression")->required();
    ev->add_option("--at", fl.at, "point, e.g. N=3");
    ev->add_option("--range", fl.range, "points a..b");
    ev->add_option("--var", fl.var, "expression variable (default N)");
    ev->add_flag("--json", fl.use_json, "machine-readable report");

    CLI::App* simp = app.add_subcommand("simplify", "canonical form of an expression");
    simp->add_option("expr", fl.file, "expression file or expression")->required();
    simp->add_option("--var", fl.var, "expression variable (default N)");
    simp->add_flag("--json", fl.use_json, "machine-readable report");

    std::vector<const char*> argv{"msum"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse((int)argv.size(), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(solve)) return cmd_solve(fl, out);
        if (app.got_subcommand(verify)) return cmd_verify(fl, out);
        if (app.got_subcommand(tele)) return cmd_telescope(fl, out);
        if (app.got_subcommand(ev)) return cmd_eval(fl, out);
        if (app.got_subcommand(simp)) return cmd_simplify(fl, out);
        err << "usage error: missing command\n";
        return 2;
    } catch (const CliError& e) {
        err << "error: " << e.what() << "\n";
        return e.code;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const LowerError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace msum
