#include "mtv/regularize.hpp"

#include <functional>
#include <map>
#include <stdexcept>

namespace mtv {

namespace {

template <class B>
LinComb<B, SymPoly> scaled(const LinComb<B, SymPoly>& p, const SymPoly& s) {
    LinComb<B, SymPoly> out;
    for (auto& [b, c] : p) out.add(b, c * s);
    return out;
}

template <class B>
void add_scaled(LinComb<B, SymPoly>& out, const LinComb<B, SymPoly>& p, const SymPoly& s) {
    for (auto& [b, c] : p) out.add(b, c * s);
}

SignedIndex drop_last(const SignedIndex& s, int n) {
    SignedIndex t = s;
    t.parts.resize(t.parts.size() - n);
    return t;
}

SignedIndex with_ones(const SignedIndex& prefix, int n) {
    SignedIndex t = prefix;
    for (int i = 0; i < n; ++i) t.parts.push_back({1, 1});
    return t;
}

// power series exp(b), b_0 = 0, up to order n
std::vector<SymPoly> series_exp(const std::vector<SymPoly>& b, int n) {
    std::vector<SymPoly> a(n + 1);
    a[0] = SymPoly(1);
    for (int m = 1; m <= n; ++m) {
        SymPoly s;
        for (int k = 1; k <= m && k < (int)b.size(); ++k) s += SymPoly(Rat(k)) * b[k] * a[m - k];
        a[m] = s * SymPoly(Rat(1, m));
    }
    return a;
}

// b_n = (-1)^n zeta(n) / n for n >= 2
std::vector<SymPoly> log_gamma_like(int n) {
    std::vector<SymPoly> b(n + 1);
    for (int m = 2; m <= n; ++m) b[m] = SymPoly::zeta(m) * SymPoly(Rat(sign_pow(m), m));
    return b;
}

RegPoly words_to_regpoly(const WPoly& w) {
    RegPoly out;
    for (auto& [x, c] : w) {
        if (x.empty()) {
            out.add(SignedIndex(), c);
            continue;
        }
        SignedIndex s = from_int_word(x);
        out.add(s, s.depth() % 2 ? -c : c);
    }
    return out;
}

// a regularised value carries at most one free parameter
void check_single_param(const SymPoly& P, const char* who) {
    int seen = -1;
    for (const auto& [m, c] : P.terms())
        for (const auto& [g, e] : m.exps()) {
            if (!is_indeterminate(g)) continue;
            if (seen >= 0 && seen != g) throw std::invalid_argument(std::string(who) + ": parameter mixes indeterminates");
            seen = g;
        }
}

}  // namespace

int trailing_plus_ones(const SignedIndex& s) {
    int n = 0;
    for (auto it = s.parts.rbegin(); it != s.parts.rend() && it->k == 1 && it->eps == 1; ++it) ++n;
    return n;
}

RegPoly stuffle_reg(const SignedIndex& s, const SymPoly& P) {
    if (s.lead_zeros) throw std::invalid_argument("stuffle_reg: leading zeros");
    check_single_param(P, "stuffle_reg");
    std::map<SignedIndex, RegPoly> memo;
    const SignedIndex one = SignedIndex::from_ints({1});
    std::function<RegPoly(const SignedIndex&)> rec = [&](const SignedIndex& x) -> RegPoly {
        if (x.convergent()) return RegPoly(x, SymPoly(1));
        if (auto it = memo.find(x); it != memo.end()) return it->second;
        SignedIndex base = drop_last(x, 1);
        ZComb prod = stuffle(base, one);
        Rat cx = prod.coeff(x);
        RegPoly res = scaled(rec(base), P);
        for (auto& [t, c] : prod)
            if (!(t == x)) add_scaled(res, rec(t), SymPoly(Rat(-c)));
        res = scaled(res, SymPoly(Rat(1) / cx));
        memo[x] = res;
        return res;
    };
    return rec(s);
}

TPoly t_stuffle_reg(const Index& k, const SymPoly& V) {
    std::map<Index, TPoly> memo;
    const Index one{1};
    std::function<TPoly(const Index&)> rec = [&](const Index& x) -> TPoly {
        if (x.empty() || x.parts.back() != 1) return TPoly(x, SymPoly(1));
        if (auto it = memo.find(x); it != memo.end()) return it->second;
        Index base = x.sub(1, x.depth() - 1);
        IComb prod = stuffle(base, one);
        Rat cx = prod.coeff(x);
        TPoly res = scaled(rec(base), V);
        for (auto& [t, c] : prod)
            if (!(t == x)) add_scaled(res, rec(t), SymPoly(Rat(-c)));
        res = scaled(res, SymPoly(Rat(1) / cx));
        memo[x] = res;
        return res;
    };
    return rec(k);
}

WPoly shuffle_reg_word(const IntWord& w, const SymPoly& P, bool trailing_first) {
    check_single_param(P, "shuffle_reg");
    std::map<IntWord, WPoly> memo;
    const SymPoly minusP = -P;
    std::function<WPoly(const IntWord&)> rec = [&](const IntWord& x) -> WPoly {
        bool trail = !x.empty() && x.letters.back() == 1;
        bool lead = !x.empty() && x.letters.front() == 0;
        if (!trail && !lead) return WPoly(x, SymPoly(1));
        if (auto it = memo.find(x); it != memo.end()) return it->second;
        bool do_trail = trail && (trailing_first || !lead);
        IntWord base, letter;
        if (do_trail) {
            base.letters.assign(x.letters.begin(), x.letters.end() - 1);
            letter = IntWord{1};
        } else {
            base.letters.assign(x.letters.begin() + 1, x.letters.end());
            letter = IntWord{0};
        }
        WComb prod = shuffle(base, letter);
        Rat cx = prod.coeff(x);
        WPoly res = scaled(rec(base), minusP);
        for (auto& [t, c] : prod)
            if (!(t == x)) add_scaled(res, rec(t), SymPoly(Rat(-c)));
        res = scaled(res, SymPoly(Rat(1) / cx));
        memo[x] = res;
        return res;
    };
    return rec(w);
}

RegPoly shuffle_reg(const SignedIndex& s, const SymPoly& P, bool trailing_first) {
    if (s.parts.empty()) {
        if (s.lead_zeros) throw std::invalid_argument("shuffle_reg: zeta_l of the empty index");
        return RegPoly(SignedIndex(), SymPoly(1));
    }
    WPoly w = shuffle_reg_word(to_int_word(s), P, trailing_first);
    RegPoly r = words_to_regpoly(w);
    return s.depth() % 2 ? scaled(r, SymPoly(-1)) : r;
}

ZComb unshuffle_zeros(const SignedIndex& s) {
    if (s.lead_zeros == 0) return ZComb(s, 1);
    if (s.parts.empty()) throw std::invalid_argument("unshuffle_zeros: empty index with leading zeros");
    ZComb out;
    int d = s.depth(), l = s.lead_zeros;
    std::vector<int> inc(d, 0);
    std::function<void(int, int)> go = [&](int j, int left) {
        if (j == d - 1) {
            inc[j] = left;
            SignedIndex t;
            Rat c = sign_pow(l);
            for (int q = 0; q < d; ++q) {
                t.parts.push_back({s.parts[q].k + inc[q], s.parts[q].eps});
                c *= Rat(binom(s.parts[q].k + inc[q] - 1, inc[q]));
            }
            out.add(t, c);
            return;
        }
        for (int i = 0; i <= left; ++i) {
            inc[j] = i;
            go(j + 1, left - i);
        }
    };
    go(0, l);
    return out;
}

RegPoly shift_param(const SignedIndex& s, Regime regime, const SymPoly& from, const SymPoly& to) {
    if (s.lead_zeros) throw std::invalid_argument("shift_param: leading zeros");
    int a = trailing_plus_ones(s);
    SignedIndex prefix = drop_last(s, a);
    RegPoly out;
    SymPoly delta = to - from;
    Rat fact = 1;
    for (int i = 0; i <= a; ++i) {
        if (i) fact *= i;
        SignedIndex t = with_ones(prefix, a - i);
        RegPoly r = regime == Regime::Stuffle ? stuffle_reg(t, from) : shuffle_reg(t, from);
        add_scaled(out, r, delta.pow(i) * SymPoly(Rat(1) / fact));
    }
    return out;
}

RegPoly shift_param(const RegPoly& p, int var, const SymPoly& to) {
    RegPoly out;
    for (auto& [s, c] : p) out.add(s, c.substitute({{var, to}}));
    return out;
}

SymPoly rho_apply(const SymPoly& p, int var) {
    int K = p.degree_in(var);
    auto a = series_exp(log_gamma_like(K), K);
    SymPoly out;
    for (int k = 0; k <= K; ++k) {
        SymPoly ck = p.coeff_of(var, k);
        if (ck.is_zero()) continue;
        SymPoly img;
        for (int j = 0; j <= k; ++j) {
            Rat f = Rat(factorial(k)) / Rat(factorial(k - j));
            img += a[j] * SymPoly::var(var).pow(k - j) * SymPoly(f);
        }
        out += ck * img;
    }
    return out;
}

RegPoly rho_apply(const RegPoly& p, int var) {
    RegPoly out;
    for (auto& [s, c] : p) out.add(s, rho_apply(c, var));
    return out;
}

RegPoly sh_from_st(const SignedIndex& s, const SymPoly& T) {
    // T must be a bare indeterminate
    if (T.terms().size() != 1 || T.terms().begin()->second != 1 || T.terms().begin()->first.exps().size() != 1 ||
        T.terms().begin()->first.exps()[0].second != 1 || !is_indeterminate(T.terms().begin()->first.exps()[0].first))
        throw std::invalid_argument("sh_from_st: parameter must be an indeterminate");
    int var = T.terms().begin()->first.exps()[0].first;
    return rho_apply(stuffle_reg(s, T), var);
}

SymPoly zeta_ones(int i, const SymPoly& P) {
    if (i < 0) throw std::invalid_argument("zeta_ones: negative count");
    auto b = log_gamma_like(std::max(i, 1));
    for (auto& x : b) x = -x;
    if (b.size() < 2) b.resize(2);
    b[1] = P;
    return series_exp(b, i)[i];
}

RegPoly st_via_sh0(const SignedIndex& s, const SymPoly& T) {
    int a = trailing_plus_ones(s);
    SignedIndex prefix = drop_last(s, a);
    RegPoly out;
    for (int i = 0; i <= a; ++i) add_scaled(out, shuffle_reg(with_ones(prefix, a - i), SymPoly()), zeta_ones(i, T));
    return out;
}

RegPoly t_shuffle0_to_zeta(const Index& k) {
    RegPoly out;
    for (auto& [s, c] : t_to_zeta(k)) add_scaled(out, shuffle_reg(s, SymPoly()), SymPoly(c));
    return out;
}

TPoly t_st_from_sh(const Index& k, const SymPoly& V) {
    int a = 0;
    while (a < k.depth() && k.parts[k.depth() - 1 - a] == 1) ++a;
    Index prefix = k.sub(1, k.depth() - a);
    SymPoly U = SymPoly(2) * V - SymPoly::log2();
    TPoly out;
    for (int i = 0; i <= a; ++i) {
        Index t = prefix;
        for (int j = 0; j < a - i; ++j) t.parts.push_back(1);
        out.add(t, zeta_ones(i, U) * SymPoly(pow2(-i)));
    }
    return out;
}

RegPoly tpoly_shuffle0_to_zeta(const TPoly& t) {
    RegPoly out;
    for (auto& [k, c] : t) add_scaled(out, t_shuffle0_to_zeta(k), c);
    return out;
}

RegPoly tpoly_to_zeta(const TPoly& t) {
    RegPoly out;
    for (auto& [k, c] : t) {
        if (!k.empty() && k.parts.back() == 1) throw std::invalid_argument("tpoly_to_zeta: divergent t value");
        for (auto& [s, q] : t_to_zeta(k)) out.add(s, c * SymPoly(q));
    }
    return out;
}

DistributionSides distribution_sides(const Index& k, int alpha, int ell, const SymPoly& W) {
    if (!k.empty() && k.parts.back() == 1) throw std::invalid_argument("check_distribution: k_d must not be 1");
    if (k.empty() && alpha == 0) throw std::invalid_argument("check_distribution: empty index");
    SymPoly P = ell > 0 ? SymPoly() : W;
    int d = k.depth();
    int n = d + alpha;
    DistributionSides out;
    Rat scale = pow2(k.weight() + ell - d);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        SignedIndex s = SignedIndex::plus(k, ell);
        for (int j = 0; j < alpha; ++j) s.parts.push_back({1, 1});
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) s.parts[i].eps = -1;
        add_scaled(out.lhs, shuffle_reg(s, P), SymPoly(scale));
    }
    auto zl = [&](int ones) {
        SignedIndex s = SignedIndex::plus(k, ell);
        for (int j = 0; j < ones; ++j) s.parts.push_back({1, 1});
        return shuffle_reg(s, P);
    };
    add_scaled(out.lhs, zl(alpha), SymPoly(-1));
    Rat fact = 1;
    for (int i = 1; i <= alpha; ++i) {
        fact *= i;
        add_scaled(out.rhs, zl(alpha - i), (-SymPoly::log2()).pow(i) * SymPoly(Rat(1) / fact));
    }
    return out;
}

bool check_distribution(const Index& k, int alpha, int ell) {
    auto sides = distribution_sides(k, alpha, ell, SymPoly::var(VAR_W));
    return MzvReducer::instance().equal(sides.lhs, sides.rhs);
}

std::string format_regpoly(const RegPoly& p) {
    if (p.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [s, c] : p) {
        std::string cs = c.str();
        bool simple = c.terms().size() == 1;
        bool neg = simple && cs[0] == '-';
        if (!first) out += neg ? " - " : " + ";
        else if (neg) out += "-";
        first = false;
        if (neg) cs = cs.substr(1);
        if (s.parts.empty()) {
            out += simple ? cs : "(" + cs + ")";
            continue;
        }
        if (cs == "1")
            out += format_signed(s);
        else
            out += (simple ? cs : "(" + cs + ")") + "*" + format_signed(s);
    }
    return out;
}

}  // namespace mtv
