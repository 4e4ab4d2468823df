#pragma once

#include "mtv/lincomb.hpp"
#include "mtv/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mtv {

// Generator ids. Odd zeta values are Z(m) = ZBASE + m.
enum Gen : int {
    PI2 = 0,
    LOG2 = 1,
    VAR_V = 2,
    VAR_U = 3,
    VAR_W = 4,
    VAR_T = 5,
    VAR_S = 6,
    VAR_LAMBDA = 7,
    ZBASE = 100,
};

inline int zgen(int m) { return ZBASE + m; }
inline bool is_zeta_gen(int g) { return g > ZBASE; }
inline bool is_indeterminate(int g) { return g >= VAR_V && g <= VAR_LAMBDA; }
int gen_weight(int g);
std::string gen_name(int g);
// inverse of gen_name; nullopt if unknown
std::optional<int> gen_from_name(const std::string& s);

class SymMonomial {
public:
    SymMonomial() = default;
    explicit SymMonomial(int g, int e = 1);

    int exponent(int g) const;
    int weight() const;
    bool is_unit() const { return e_.empty(); }
    const std::vector<std::pair<int, int>>& exps() const { return e_; }
    SymMonomial without(int g) const;
    bool has_indeterminate() const;

    friend SymMonomial operator*(const SymMonomial& a, const SymMonomial& b);
    auto operator<=>(const SymMonomial&) const = default;
    bool operator==(const SymMonomial&) const = default;

private:
    std::vector<std::pair<int, int>> e_;  // sorted by generator, exponents > 0
};

class SymPoly {
public:
    SymPoly() = default;
    SymPoly(int c) : SymPoly(Rat(c)) {}
    SymPoly(const Rat& c);
    SymPoly(const SymMonomial& m, const Rat& c = 1);
    static SymPoly gen(int g, int e = 1) { return SymPoly(SymMonomial(g, e)); }
    static SymPoly pi2() { return gen(PI2); }
    static SymPoly log2() { return gen(LOG2); }
    static SymPoly zeta(int m);  // odd m >= 3, or even m via even_zeta
    static SymPoly var(int g) { return gen(g); }

    bool is_zero() const { return t_.empty(); }
    bool is_rational() const;
    Rat constant_term() const { return t_.coeff(SymMonomial()); }
    // weight if homogeneous; nullopt if inhomogeneous (0 is weight 0)
    std::optional<int> weight() const;
    int degree_in(int g) const;
    // coefficient of g^n, as a polynomial free of g
    SymPoly coeff_of(int g, int n) const;
    SymPoly substitute(const std::map<int, SymPoly>& bindings) const;
    bool has_indeterminates() const;
    SymPoly pow(unsigned e) const;

    const LinComb<SymMonomial, Rat>& terms() const { return t_; }
    void add_term(const SymMonomial& m, const Rat& c) { t_.add(m, c); }

    SymPoly& operator+=(const SymPoly& o);
    SymPoly& operator-=(const SymPoly& o);
    SymPoly& operator*=(const SymPoly& o);
    SymPoly operator-() const;
    friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
    friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
    friend SymPoly operator*(const SymPoly& a, const SymPoly& b);
    friend bool operator==(const SymPoly& a, const SymPoly& b) { return a.t_ == b.t_; }

    std::string str() const;

private:
    LinComb<SymMonomial, Rat> t_;
};

inline bool lincomb_is_zero(const SymPoly& p) { return p.is_zero(); }

// throws ParseError-like std::invalid_argument
SymPoly parse_sympoly(const std::string& s);

Rat bernoulli(int n);
// zeta(2n) as a rational multiple of pi2^n
SymPoly even_zeta(int two_n);
Rat even_zeta_coeff(int two_n);

}  // namespace mtv
