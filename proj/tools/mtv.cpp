// mtv: command-line front end
#include "mtv/closedform.hpp"
#include "mtv/motivic.hpp"
#include "mtv/numoracle.hpp"
#include "mtv/regularize.hpp"
#include "mtv/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

using namespace mtv;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "head(args;param)"
struct Expr {
    std::string head;
    std::string args;
    std::optional<std::string> param;
    std::size_t args_at = 0;  // offset of args in the original text
};

// parse a rebuilt string and report positions against the original text
template <class F>
auto reparse(const Expr& e, std::size_t prefix, F f) {
    try {
        return f();
    } catch (const ParseError& err) {
        std::size_t p = err.pos >= prefix ? err.pos - prefix + e.args_at : e.args_at;
        std::string msg = err.what();
        msg = msg.substr(0, msg.rfind(" at position "));
        throw ParseError(msg, p);
    }
}

Expr split_expr(const std::string& s) {
    auto open = s.find('(');
    auto close = s.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw ParseError("expected head(...)", open == std::string::npos ? 0 : s.size());
    Expr e;
    e.head = s.substr(0, open);
    while (!e.head.empty() && e.head.back() == ' ') e.head.pop_back();
    e.head.erase(0, e.head.find_first_not_of(' '));
    std::string inner = s.substr(open + 1, close - open - 1);
    if (auto semi = inner.find(';'); semi != std::string::npos) {
        e.param = inner.substr(semi + 1);
        inner = inner.substr(0, semi);
    }
    e.args = inner;
    e.args_at = open + 1;
    if (close + 1 != s.size()) throw ParseError("trailing input after ')'", close + 1);
    return e;
}

Index expr_index(const Expr& e) {
    return reparse(e, 1, [&] { return parse_index("(" + e.args + ")"); });
}

std::string format_tpoly(const TPoly& p) {
    if (p.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : p) {
        std::string cs = c.str();
        bool simple = c.terms().size() == 1;
        bool neg = simple && cs[0] == '-';
        if (!first) out += neg ? " - " : " + ";
        else if (neg) out += "-";
        first = false;
        if (neg) cs = cs.substr(1);
        std::string base = k.empty() ? "" : format_index(k);
        if (base.empty())
            out += simple ? cs : "(" + cs + ")";
        else if (cs == "1")
            out += base;
        else
            out += (simple ? cs : "(" + cs + ")") + "*" + base;
    }
    return out;
}

template <class B, class F>
std::string format_comb(const LinComb<B, Rat>& c, F fmt) {
    if (c.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [b, q] : c) {
        bool neg = q < 0;
        Rat a = neg ? Rat(-q) : q;
        if (!first) out += neg ? " - " : " + ";
        else if (neg) out += "-";
        first = false;
        out += (a == 1 ? "" : rat_str(a) + "*") + fmt(b);
    }
    return out;
}

// closed-form evaluation; nullopt when no family applies
std::optional<SymPoly> closed_form(const Expr& e) {
    const std::string& h = e.head;
    if (h == "z") {
        SignedIndex s = reparse(e, 2, [&] { return parse_signed("z(" + e.args + ")"); });
        if (e.param) throw UsageError("z(...) takes no parameter");
        if (s.all_plus()) {
            Index k = s.unsigned_index();
            if (auto a = match_2a(k); a && *a >= 1) return eval_z22(*a);
            if (auto p = match_2x2(k); p && p->mid == 3) return eval_z2232(p->a, p->b);
            if (k.depth() == 1 && k.parts[0] >= 2) return SymPoly::zeta(k.parts[0]);
            return std::nullopt;
        }
        if (s.depth() == 1) return zbar_reduce(s.parts[0].k);
        return std::nullopt;
    }
    Index k = expr_index(e);
    bool star = h == "t*" || h == "tt*";
    bool sh = h == "tsh";
    bool tilde = h == "tt" || h == "tt*";
    if (!(h == "t" || star || sh || tilde)) throw UsageError("unknown head '" + h + "' (t, t*, tsh, tt, tt*, z)");
    if (e.param && !(star || sh)) throw UsageError("a parameter needs t*(...;V) or tsh(...;W)");
    SymPoly scale = tilde ? SymPoly(pow2(k.weight())) : SymPoly(1);
    SymPoly P = e.param ? parse_sympoly(*e.param) : SymPoly::var(star ? VAR_V : VAR_W);
    if (auto a = match_2a(k); a && *a >= 1) return scale * eval_t22(*a);
    auto p = match_2x2(k);
    if (!p) return std::nullopt;
    if (p->mid == 3) return scale * eval_t2232(p->a, p->b);
    if (sh) return scale * eval_t2212_sh(p->a, p->b, P);
    if (p->b == 0 && !star) throw UsageError(format_index(k) + " diverges; use t*(...;V) or tsh(...;W)");
    return scale * eval_t2212_star(p->a, p->b, P);
}

void emit(const std::string& format, const json& j, const std::string& text) {
    if (format == "json")
        std::cout << j.dump(1) << "\n";
    else
        std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

std::string matrix_text(const FiltMatrix& m, const std::optional<Rat>& lambda) {
    std::vector<std::vector<std::string>> cells;
    std::size_t wcol = 0, wrow = 0;
    for (const auto& r : m.rows) wrow = std::max(wrow, r.size());
    std::vector<std::string> head;
    for (const auto& c : m.cols) head.push_back(c);
    cells.push_back(head);
    for (const auto& row : m.entries) {
        std::vector<std::string> r;
        for (const auto& e : row) r.push_back(lambda ? rat_str(e.at(*lambda)) : e.str());
        cells.push_back(r);
    }
    for (const auto& r : cells)
        for (const auto& c : r) wcol = std::max(wcol, c.size());
    std::ostringstream os;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        std::string lab = i == 0 ? "" : m.rows[i - 1];
        os << lab << std::string(wrow - lab.size(), ' ') << " |";
        for (const auto& c : cells[i]) os << " " << std::string(wcol - c.size(), ' ') << c;
        os << "\n";
    }
    return os.str();
}

std::string mpf_json_str(const MPFloat& v) { return v.value.str(40, std::ios_base::scientific); }

std::string sci(double x) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3) << x;
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mtv: multiple zeta and multiple t values, exact and numeric"};
    app.require_subcommand(1);
    std::string format = "text";
    NumEnv env = NumEnv::from_environment();
    auto common = [&](CLI::App* c) {
        c->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    };
    auto numeric = [&](CLI::App* c) {
        c->add_option("--prec", env.prec_bits, "working precision in bits")->check(CLI::Range(32u, 4096u));
        c->add_option("--cutoff", env.cutoff, "outer summation bound")->check(CLI::Range(100L, 1000000000L));
    };

    std::string expr, expr2, scheme = "stuffle", param = "0", suite, identity, kind_s, family, which;
    int r = 1, N = 0, level = 0, a = 0, b = 0, max_weight = 8;
    bool star = false, reduced = false, failures_only = false;
    std::optional<std::string> lambda_s;
    std::optional<int> level_opt;

    auto* c_eval = app.add_subcommand("eval", "closed-form evaluation, e.g. \"t(2,1,2)\", \"t*(2,1;V)\", \"z(2,3)\"");
    c_eval->add_option("expr", expr)->required();
    common(c_eval);

    auto* c_reg = app.add_subcommand("reg", "regularised value of a divergent index");
    c_reg->add_option("expr", expr)->required();
    c_reg->add_option("--scheme", scheme)->check(CLI::IsMember({"stuffle", "shuffle"}));
    c_reg->add_option("--param", param, "parameter: a polynomial such as 0, T, W, log2");
    common(c_reg);

    auto* c_st = app.add_subcommand("stuffle", "stuffle product of two indices");
    c_st->add_option("u", expr)->required();
    c_st->add_option("v", expr2)->required();
    common(c_st);

    auto* c_sh = app.add_subcommand("shuffle", "shuffle product of two words (\"0,1,-1\") or signed indices");
    c_sh->add_option("u", expr)->required();
    c_sh->add_option("v", expr2)->required();
    common(c_sh);

    auto* c_dr = app.add_subcommand("dr", "motivic derivation D_r of t~(k)");
    c_dr->add_option("expr", expr)->required();
    c_dr->add_option("--r", r)->required();
    c_dr->add_flag("--star", star, "stuffle-regularised t~^{*,V}, V = lambda log2");
    c_dr->add_flag("--reduced", reduced, "reduce left factors to log and odd zetas");
    common(c_dr);

    auto* c_mat = app.add_subcommand("matrix", "level-graded matrix M_{kind,N,level}");
    auto* c_det = app.add_subcommand("det", "determinant and mod-2 structure");
    for (auto* c : {c_mat, c_det}) {
        c->add_option("--kind", kind_s)->required()->check(CLI::IsMember({"S", "H", "Hstar"}));
        c->add_option("--N", N)->required()->check(CLI::PositiveNumber);
        c->add_option("--level", level)->required()->check(CLI::PositiveNumber);
        c->add_option("--lambda", lambda_s, "substitute lambda (Hstar)");
        common(c);
    }

    auto* c_sl = app.add_subcommand("singular-lambda", "lambda at which M_{H,*,N,1} is singular");
    c_sl->add_option("--N", N)->required()->check(CLI::PositiveNumber);
    common(c_sl);

    auto* c_en = app.add_subcommand("enumerate", "Saha or Hoffman words of weight N");
    c_en->add_option("--kind", kind_s)->required()->check(CLI::IsMember({"S", "H"}));
    c_en->add_option("--N", N)->required()->check(CLI::PositiveNumber);
    c_en->add_option("--level", level_opt);
    common(c_en);

    auto* c_num = app.add_subcommand("num", "numerical value with an error bound");
    c_num->add_option("expr", expr)->required();
    common(c_num);
    numeric(c_num);

    auto* c_ver = app.add_subcommand("verify", "run verification suites or a single identity");
    auto* o_suite = c_ver->add_option("--suite", suite);
    auto* o_id = c_ver->add_option("--identity", identity);
    o_suite->excludes(o_id);
    c_ver->add_option("--a", a)->check(CLI::NonNegativeNumber);
    c_ver->add_option("--b", b)->check(CLI::NonNegativeNumber);
    c_ver->add_option("--max-weight", max_weight)->check(CLI::Range(1, 12));
    c_ver->add_flag("--failures-only", failures_only);
    common(c_ver);
    numeric(c_ver);

    auto* c_rep = app.add_subcommand("report", "structured verification report");
    c_rep->add_option("--suite", suite)->required();
    c_rep->add_option("--max-weight", max_weight)->check(CLI::Range(1, 12));
    common(c_rep);
    numeric(c_rep);

    auto* c_co = app.add_subcommand("coeff", "Lie coefficients: c or d with family 2a1, 2a12b, 2a3, 2a32b");
    c_co->add_option("which", which)->required()->check(CLI::IsMember({"c", "d"}));
    c_co->add_option("family", family)->required()->check(CLI::IsMember({"2a1", "2a12b", "2a3", "2a32b"}));
    c_co->add_option("--a", a)->check(CLI::NonNegativeNumber);
    c_co->add_option("--b", b)->check(CLI::NonNegativeNumber);
    common(c_co);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_eval->parsed()) {
            Expr e = split_expr(expr);
            auto v = closed_form(e);
            if (!v) throw UsageError("no closed form known for " + expr);
            emit(format, {{"input", expr}, {"value", v->str()}}, v->str());
        } else if (c_reg->parsed()) {
            Expr e = split_expr(expr);
            SymPoly P = parse_sympoly(param);
            std::string out;
            if (e.head == "t") {
                Index k = expr_index(e);
                if (scheme == "stuffle")
                    out = format_tpoly(t_stuffle_reg(k, P));
                else if (P.is_zero())
                    out = format_regpoly(t_shuffle0_to_zeta(k));
                else
                    throw UsageError("shuffle-regularised t values are available at --param 0 only");
            } else if (e.head == "z" || e.head.rfind("z_", 0) == 0) {
                SignedIndex s = parse_signed(expr);
                if (scheme == "stuffle" && s.lead_zeros > 0) throw UsageError("z_l(...) needs --scheme shuffle");
                out = format_regpoly(scheme == "stuffle" ? stuffle_reg(s, P) : shuffle_reg(s, P));
            } else {
                throw UsageError("reg expects t(...) or z(...)");
            }
            emit(format, {{"input", expr}, {"scheme", scheme}, {"param", P.str()}, {"value", out}}, out);
        } else if (c_st->parsed()) {
            std::string out;
            if (expr.rfind("t(", 0) == 0 && expr2.rfind("t(", 0) == 0)
                out = format_comb(stuffle(parse_index(expr), parse_index(expr2)), [](const Index& k) { return format_index(k); });
            else
                out = format_comb(stuffle(parse_signed(expr), parse_signed(expr2)), [](const SignedIndex& s) { return format_signed(s); });
            emit(format, {{"u", expr}, {"v", expr2}, {"value", out}}, out);
        } else if (c_sh->parsed()) {
            auto word = [](const std::string& s) { return s.rfind("z", 0) == 0 ? to_int_word(parse_signed(s)) : parse_int_word(s); };
            std::string out = format_comb(shuffle(word(expr), word(expr2)), [](const IntWord& w) { return format_int_word(w); });
            emit(format, {{"u", expr}, {"v", expr2}, {"value", out}}, out);
        } else if (c_dr->parsed()) {
            Index k = expr_index(split_expr(expr));
            DerivResult d = star ? deriv_D_star(r, k) : deriv_D(r, k);
            if (reduced) d = reduce_result(d);
            std::string out = format_deriv(d);
            emit(format, {{"input", expr}, {"r", r}, {"normalisation", "t~"}, {"value", out}}, out);
        } else if (c_mat->parsed() || c_det->parsed()) {
            Kind kind = parse_kind(kind_s);
            FiltMatrix m = build_matrix(kind, N, level);
            std::optional<Rat> lam;
            if (lambda_s) lam = parse_rat(*lambda_s);
            if (c_mat->parsed()) {
                json j = matrix_json(m);
                if (lam) {
                    for (std::size_t i = 0; i < m.rows.size(); ++i)
                        for (std::size_t c = 0; c < m.cols.size(); ++c) j["entries"][i][c] = rat_str(m.entries[i][c].at(*lam));
                    j["lambda"] = rat_str(*lam);
                }
                emit(format, j, matrix_text(m, lam));
            } else {
                Aff d = det_exact(m);
                Rat at = lam ? *lam : Rat(1, 2);
                Mod2Report rep = det_mod2_structure(m, at);
                json j = {{"kind", kind_s}, {"N", N}, {"level", level}, {"det", d.str()},
                          {"mod2", {{"lambda", rat_str(at)}, {"ok", rep.ok}, {"pattern", rep.pattern}, {"det", rat_str(rep.det)}, {"notes", rep.notes}}}};
                std::string text = "det = " + d.str() + (lam ? " (at lambda = " + *lambda_s + ": " + rat_str(d.at(*lam)) + ")" : "") +
                                   "\nmod 2: " + (rep.ok ? "ok" : "FAILED") + ", " + rep.pattern;
                for (const auto& n : rep.notes) text += "\n  " + n;
                emit(format, j, text);
                if (!rep.ok) return 1;
            }
        } else if (c_sl->parsed()) {
            Rat l = singular_lambda(N);
            emit(format, {{"N", N}, {"lambda", rat_str(l)}}, rat_str(l));
        } else if (c_en->parsed()) {
            Kind kind = parse_kind(kind_s);
            std::vector<Word> ws = level_opt ? (kind == Kind::S ? enumerate_saha_level(N, *level_opt) : enumerate_hoffman_level(N, *level_opt))
                                             : (kind == Kind::S ? enumerate_saha(N) : enumerate_hoffman(N));
            emit(format, {{"kind", kind_s}, {"N", N}, {"words", ws}, {"count", ws.size()}}, join(ws, "\n"));
        } else if (c_num->parsed()) {
            PrecisionScope ps(env);
            Expr e = split_expr(expr);
            MPFloat v;
            if (e.head == "t")
                v = t_num(expr_index(e), env);
            else if (e.head == "z")
                v = altz_num(parse_signed(expr), env);
            else
                throw UsageError("num expects t(...) or z(...)");
            json j = {{"input", expr}, {"value", mpf_json_str(v)}, {"bound", v.bound}, {"prec", env.prec_bits}, {"cutoff", env.cutoff}};
            std::string text = expr + " = " + v.str(30);
            std::optional<SymPoly> cf;
            try {
                cf = closed_form(e);
            } catch (const UsageError&) {
            }
            if (cf) {
                MPFloat c = eval_num(*cf, env);
                double res = abs(c.value - v.value).convert_to<double>();
                bool ok = res <= v.bound + c.bound + std::ldexp(1.0, -(int)env.prec_bits + 16);
                j["closed_form"] = {{"value", cf->str()}, {"numeric", mpf_json_str(c)}, {"residual", res}, {"status", ok ? "pass" : "fail"}};
                text += "\nclosed form " + cf->str() + " = " + c.str(30) + "\nresidual " + sci(res) + (ok ? "  pass" : "  FAIL");
                emit(format, j, text);
                return ok ? 0 : 1;
            }
            emit(format, j, text);
        } else if (c_ver->parsed() || c_rep->parsed()) {
            if (c_ver->parsed() && !identity.empty()) {
                IdentityCheck ic = verify_identity(identity, a, b, env);
                json j = {{"identity", identity}, {"a", a}, {"b", b}, {"closed_form", ic.closed_form},
                          {"lhs", mpf_json_str(ic.lhs)}, {"lhs_bound", ic.lhs.bound}, {"rhs", mpf_json_str(ic.rhs)},
                          {"rhs_bound", ic.rhs.bound}, {"residual", ic.residual}, {"tol", ic.tol}, {"status", ic.pass ? "pass" : "fail"}};
                std::string text = ic.closed_form + "\nclosed form " + ic.lhs.str(25) +
                                   "\ndirect      " + ic.rhs.str(25) + "\nresidual " + sci(ic.residual) + " (tol " + sci(ic.tol) + ")" + (ic.pass ? "  pass" : "  FAIL");
                emit(format, j, text);
                return ic.pass ? 0 : 1;
            }
            if (suite.empty()) throw UsageError("--suite must name a suite: all, " + join(suite_names(), ", "));
            SuiteOptions opt;
            opt.max_weight = max_weight;
            opt.env = env;
            std::vector<SuiteReport> reps;
            try {
                reps = run_suites(suite, opt);
            } catch (const std::invalid_argument& e) {
                throw UsageError(std::string(e.what()) + " (all, " + join(suite_names(), ", ") + ")");
            }
            int fails = 0, total = 0;
            json arr = json::array();
            std::string text;
            for (const auto& rep : reps) {
                fails += rep.failures();
                total += (int)rep.checks.size();
                arr.push_back(to_json(rep));
                text += format_report(rep, failures_only || c_ver->parsed());
            }
            text += "summary: " + std::to_string(total - fails) + "/" + std::to_string(total) + " checks passed, " +
                    std::to_string(fails) + " failures";
            std::string fmt = c_rep->parsed() && format == "text" && !c_rep->get_option("--format")->count() ? "json" : format;
            emit(fmt, {{"suites", arr}, {"failures", fails}, {"total", total}}, text);
            return fails == 0 ? 0 : 1;
        } else if (c_co->parsed()) {
            Rat v;
            if (family == "2a1" || family == "2a3") b = 0;
            char mid = family.find('1') != std::string::npos ? '1' : '3';
            if (which == "c" && mid == '1' && b > 0)
                v = coeff_by_name("c" + std::string(a, '2') + mid + std::string(b, '2'));
            else if (which == "c")
                v = mid == '1' ? coeff_c_21(a) : coeff_c_232(a, b);
            else
                v = mid == '1' ? coeff_d_212(a, b) : coeff_d_232(a, b);
            emit(format, {{"which", which}, {"family", family}, {"a", a}, {"b", b}, {"value", rat_str(v)}}, rat_str(v));
        }
    } catch (const UsageError& e) {
        std::cerr << "mtv: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "mtv: parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "mtv: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "mtv: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
