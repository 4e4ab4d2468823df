#include "mtv/symring.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <stdexcept>

namespace mtv {

int gen_weight(int g) {
    if (g == PI2) return 2;
    if (g == VAR_LAMBDA) return 0;
    if (is_zeta_gen(g)) return g - ZBASE;
    return 1;
}

std::string gen_name(int g) {
    switch (g) {
        case PI2: return "pi2";
        case LOG2: return "log2";
        case VAR_V: return "V";
        case VAR_U: return "U";
        case VAR_W: return "W";
        case VAR_T: return "T";
        case VAR_S: return "S";
        case VAR_LAMBDA: return "lambda";
        default: return "z" + std::to_string(g - ZBASE);
    }
}

std::optional<int> gen_from_name(const std::string& s) {
    static const std::map<std::string, int> fixed = {
        {"pi2", PI2}, {"log2", LOG2}, {"V", VAR_V}, {"U", VAR_U}, {"W", VAR_W},
        {"T", VAR_T}, {"S", VAR_S}, {"lambda", VAR_LAMBDA}};
    if (auto it = fixed.find(s); it != fixed.end()) return it->second;
    if (s.size() >= 2 && s[0] == 'z' &&
        std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit((unsigned char)c); })) {
        int m = std::stoi(s.substr(1));
        if (m >= 3 && m % 2 == 1) return zgen(m);
    }
    return std::nullopt;
}

SymMonomial::SymMonomial(int g, int e) {
    if (e > 0) e_.push_back({g, e});
}

int SymMonomial::exponent(int g) const {
    for (auto& [h, e] : e_)
        if (h == g) return e;
    return 0;
}

int SymMonomial::weight() const {
    int w = 0;
    for (auto& [g, e] : e_) w += gen_weight(g) * e;
    return w;
}

SymMonomial SymMonomial::without(int g) const {
    SymMonomial m;
    for (auto& p : e_)
        if (p.first != g) m.e_.push_back(p);
    return m;
}

bool SymMonomial::has_indeterminate() const {
    return std::any_of(e_.begin(), e_.end(), [](auto& p) { return is_indeterminate(p.first); });
}

SymMonomial operator*(const SymMonomial& a, const SymMonomial& b) {
    SymMonomial r;
    auto i = a.e_.begin(), j = b.e_.begin();
    while (i != a.e_.end() || j != b.e_.end()) {
        if (j == b.e_.end() || (i != a.e_.end() && i->first < j->first)) {
            r.e_.push_back(*i++);
        } else if (i == a.e_.end() || j->first < i->first) {
            r.e_.push_back(*j++);
        } else {
            r.e_.push_back({i->first, i->second + j->second});
            ++i;
            ++j;
        }
    }
    return r;
}

SymPoly::SymPoly(const Rat& c) { t_.add(SymMonomial(), c); }
SymPoly::SymPoly(const SymMonomial& m, const Rat& c) { t_.add(m, c); }

SymPoly SymPoly::zeta(int m) {
    if (m < 2) throw std::invalid_argument("zeta(m) needs m >= 2");
    if (m % 2 == 0) return even_zeta(m);
    return gen(zgen(m));
}

bool SymPoly::is_rational() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_unit());
}

std::optional<int> SymPoly::weight() const {
    std::optional<int> w;
    for (auto& [m, c] : t_) {
        int mw = m.weight();
        if (w && *w != mw) return std::nullopt;
        w = mw;
    }
    return w ? w : 0;
}

int SymPoly::degree_in(int g) const {
    int d = 0;
    for (auto& [m, c] : t_) d = std::max(d, m.exponent(g));
    return d;
}

SymPoly SymPoly::coeff_of(int g, int n) const {
    SymPoly r;
    for (auto& [m, c] : t_)
        if (m.exponent(g) == n) r.t_.add(m.without(g), c);
    return r;
}

bool SymPoly::has_indeterminates() const {
    return std::any_of(t_.begin(), t_.end(), [](auto& kv) { return kv.first.has_indeterminate(); });
}

SymPoly SymPoly::substitute(const std::map<int, SymPoly>& bindings) const {
    for (auto& [g, v] : bindings)
        if (!is_indeterminate(g)) throw std::invalid_argument("substitute: only V,U,W,T,S,lambda may be bound");
    SymPoly out;
    for (auto& [m, c] : t_) {
        SymPoly term(c);
        SymMonomial rest;
        for (auto& [g, e] : m.exps()) {
            auto it = bindings.find(g);
            if (it == bindings.end())
                rest = rest * SymMonomial(g, e);
            else
                term *= it->second.pow(e);
        }
        out += term * SymPoly(rest);
    }
    return out;
}

SymPoly SymPoly::pow(unsigned e) const {
    SymPoly r(1), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

SymPoly& SymPoly::operator+=(const SymPoly& o) {
    t_ += o.t_;
    return *this;
}
SymPoly& SymPoly::operator-=(const SymPoly& o) {
    t_ -= o.t_;
    return *this;
}
SymPoly SymPoly::operator-() const {
    SymPoly r = *this;
    r.t_ *= Rat(-1);
    return r;
}
SymPoly operator*(const SymPoly& a, const SymPoly& b) {
    SymPoly r;
    for (auto& [ma, ca] : a.t_)
        for (auto& [mb, cb] : b.t_) r.t_.add(ma * mb, ca * cb);
    return r;
}
SymPoly& SymPoly::operator*=(const SymPoly& o) { return *this = *this * o; }

std::string SymPoly::str() const {
    if (t_.empty()) return "0";
    // higher weight first, then monomial order
    std::vector<std::pair<SymMonomial, Rat>> v(t_.begin(), t_.end());
    std::stable_sort(v.begin(), v.end(), [](auto& x, auto& y) { return x.first.weight() > y.first.weight(); });
    std::string s;
    bool first = true;
    for (auto& [m, c] : v) {
        Rat a = abs(c);
        if (first)
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        first = false;
        std::string mono;
        for (auto& [g, e] : m.exps()) {
            if (!mono.empty()) mono += "*";
            mono += gen_name(g);
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty())
            s += rat_str(a);
        else if (a == 1)
            s += mono;
        else
            s += rat_str(a) + "*" + mono;
    }
    return s;
}

namespace {

struct PolyParser {
    const std::string& s;
    std::size_t i = 0;

    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("sympoly parse: expected " + what + " at position " + std::to_string(i));
    }
    void ws() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    SymPoly factor() {
        ws();
        if (i < s.size() && s[i] == '(') {
            ++i;
            SymPoly p = expr();
            ws();
            if (i >= s.size() || s[i] != ')') fail("')'");
            ++i;
            return power(p);
        }
        if (i < s.size() && std::isdigit((unsigned char)s[i])) {
            std::size_t st = i;
            while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
            std::string num = s.substr(st, i - st);
            if (i < s.size() && s[i] == '/') {
                ++i;
                std::size_t d0 = i;
                while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
                if (d0 == i) fail("denominator");
                num += "/" + s.substr(d0, i - d0);
            }
            return SymPoly(parse_rat(num));
        }
        std::size_t st = i;
        while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_')) ++i;
        if (st == i) fail("number, generator or '('");
        auto g = gen_from_name(s.substr(st, i - st));
        if (!g) {
            i = st;
            fail("known generator (pi2, log2, z<odd>, V, U, W, T, S, lambda)");
        }
        return power(SymPoly::gen(*g));
    }
    SymPoly power(const SymPoly& b) {
        ws();
        if (i < s.size() && s[i] == '^') {
            ++i;
            ws();
            std::size_t st = i;
            while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
            if (st == i) fail("exponent");
            return b.pow((unsigned)std::stoul(s.substr(st, i - st)));
        }
        return b;
    }
    SymPoly term() {
        SymPoly p = factor();
        for (;;) {
            ws();
            if (i < s.size() && s[i] == '*') {
                ++i;
                p *= factor();
            } else {
                return p;
            }
        }
    }
    SymPoly expr() {
        ws();
        SymPoly p;
        bool neg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
        p = neg ? -term() : term();
        for (;;) {
            ws();
            if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
                bool m = s[i++] == '-';
                SymPoly t = term();
                p += m ? -t : t;
            } else {
                return p;
            }
        }
    }
};

}  // namespace

SymPoly parse_sympoly(const std::string& s) {
    PolyParser p{s};
    SymPoly r = p.expr();
    p.ws();
    if (p.i != s.size()) p.fail("end of input");
    return r;
}

Rat bernoulli(int n) {
    static std::mutex mu;
    static std::vector<Rat> B{Rat(1)};
    std::lock_guard<std::mutex> lock(mu);
    // sum_{k<=m} C(m+1,k) B_k = 0
    while ((int)B.size() <= n) {
        int m = (int)B.size();
        Rat s = 0;
        for (int k = 0; k < m; ++k) s += Rat(binom(m + 1, k)) * B[k];
        B.push_back(-s / Rat(m + 1));
    }
    return B[n];
}

Rat even_zeta_coeff(int two_n) {
    if (two_n <= 0 || two_n % 2 != 0) throw std::invalid_argument("even_zeta needs a positive even argument");
    Rat b = abs(bernoulli(two_n));
    Rat r = b * pow2(two_n - 1) / Rat(factorial(two_n));
    r.canonicalize();
    return r;
}

SymPoly even_zeta(int two_n) {
    return SymPoly(SymMonomial(PI2, two_n / 2), even_zeta_coeff(two_n));
}

}  // namespace mtv
