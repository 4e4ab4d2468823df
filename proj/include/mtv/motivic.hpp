#pragma once

#include "mtv/indexcore.hpp"
#include "mtv/lincomb.hpp"
#include "mtv/rational.hpp"
#include "mtv/wordalg.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mtv {

// c0 + c1*lambda
struct Aff {
    Rat c0, c1;

    Aff() = default;
    Aff(int c) : c0(c) {}
    Aff(const Rat& c) : c0(c) {}
    Aff(const Rat& a, const Rat& b) : c0(a), c1(b) {}

    bool is_const() const { return c1 == 0; }
    Rat at(const Rat& lambda) const { return c0 + c1 * lambda; }
    std::string str() const;

    Aff& operator+=(const Aff& o) { c0 += o.c0; c1 += o.c1; return *this; }
    Aff& operator-=(const Aff& o) { c0 -= o.c0; c1 -= o.c1; return *this; }
    Aff operator-() const { return Aff(Rat(-c0), Rat(-c1)); }
    friend Aff operator+(Aff a, const Aff& b) { return a += b; }
    friend Aff operator-(Aff a, const Aff& b) { return a -= b; }
    // throws std::domain_error if the product is not affine
    friend Aff operator*(const Aff& a, const Aff& b);
    friend bool operator==(const Aff& a, const Aff& b) { return a.c0 == b.c0 && a.c1 == b.c1; }
};

inline bool lincomb_is_zero(const Aff& a) { return a.c0 == 0 && a.c1 == 0; }

// Left tensor factor of D_r. Log and Zeta are reduced generators of the Lie
// coalgebra; the other kinds are formal and go through reduce_lie.
struct LieFactor {
    enum class Kind { Log, Zeta, TTilde, ZetaL, OnesStar };
    Kind kind = Kind::Log;
    int n = 0;  // Zeta: the argument m; ZetaL: leading zeros s; OnesStar: r
    Index idx;

    static LieFactor log2() { return {Kind::Log, 0, {}}; }
    static LieFactor zeta(int m) { return {Kind::Zeta, m, {}}; }
    static LieFactor ttilde(const Index& k) { return {Kind::TTilde, 0, k}; }
    static LieFactor zetal(int s, const Index& k) { return {Kind::ZetaL, s, k}; }
    static LieFactor ones_star(int r) { return {Kind::OnesStar, r, {}}; }

    int weight() const;
    std::string str() const;
    auto operator<=>(const LieFactor&) const = default;
    bool operator==(const LieFactor&) const = default;
};

using DerivTerm = std::pair<LieFactor, Index>;
using DerivResult = LinComb<DerivTerm, Aff>;

// generator 1 = log^l(2), m >= 3 odd = zeta^l(m)
using LieComb = LinComb<int, Aff>;

// D_r t~^m(k); throws std::invalid_argument for even or non-positive r
DerivResult deriv_D(int r, const Index& k);
// D_r t~^{m,*,V}(k) with V = lambda log 2
DerivResult deriv_D_star(int r, const Index& k);
// 2 log ⊗ t~(k_2..) [k_1 = 1]  -  log ⊗ t~(..k_{d-1}) [k_d = 1]
DerivResult deriv_D1_fast(const Index& k);

// nullopt when no closed form applies
std::optional<LieComb> reduce_lie(const LieFactor& f);
// every left factor reduced to Log/Zeta; throws std::logic_error if one is irreducible
DerivResult reduce_result(const DerivResult& d);
// log ↦ 1/2, zeta(2r+1) ↦ 2^{2r-1}
Aff pi_tilde(const LieComb& c);

std::string format_deriv(const DerivResult& d);

// ---- level-graded maps and matrices
struct FiltMatrix {
    Kind kind = Kind::S;
    int N = 0, level = 0;
    std::vector<Word> rows, cols;
    std::vector<std::vector<Aff>> entries;

    bool symbolic() const;
    std::vector<std::vector<Rat>> at(const Rat& lambda) const;
};

std::vector<Aff> graded_partial(Kind kind, int N, int level, const Word& w);
FiltMatrix build_matrix(Kind kind, int N, int level);

// fraction-free elimination after clearing row denominators
Rat det_rat(const std::vector<std::vector<Rat>>& m);
// affine in lambda; for numeric matrices c1 = 0.
// throws std::logic_error if the determinant is not affine in lambda
Aff det_exact(const FiltMatrix& m);

struct Mod2Report {
    bool ok = false;
    std::string pattern;
    Rat det;
    std::vector<std::string> notes;
};
// Hstar matrices are examined at the given lambda
Mod2Report det_mod2_structure(const FiltMatrix& m, const Rat& lambda = Rat(1, 2));

// root of det M_{H,*,N,1}(lambda); throws std::logic_error if the determinant is constant
Rat singular_lambda(int N);

// every right factor of D_r(w) with a nonzero reduced left factor is a class word
// of level <= level(w) - 1
bool check_saha_level(const Word& w, int r);
bool check_hoffman_level(const Word& w, int r);

// ---- D_1 on products of t values, alternating zetas and log 2
struct HFactor {
    enum class Kind { Log2, T, Z };
    Kind kind = Kind::Log2;
    Index t;
    SignedIndex z;

    static HFactor log2() { return {Kind::Log2, {}, {}}; }
    static HFactor tv(const Index& k) { return {Kind::T, k, {}}; }
    static HFactor zv(const SignedIndex& s) { return {Kind::Z, {}, s}; }

    int weight() const;
    std::string str() const;
    auto operator<=>(const HFactor&) const = default;
    bool operator==(const HFactor&) const = default;
};
using HMonomial = std::vector<HFactor>;  // sorted
using HExpr = LinComb<HMonomial, Rat>;

HMonomial hmono(std::vector<HFactor> fs);
std::string format_hexpr(const HExpr& e);

struct HIdentity {
    HExpr lhs, rhs;
};

// coefficient of log^l(2) in D_1 of a convergent factor, a monomial, an expression
HExpr d1_log_factor(const HFactor& f);
HExpr d1_log(const HExpr& e);
// D_1 on both sides, then log^l(2) ↦ 1
HIdentity hoffman_log_derivation(const HIdentity& id);
// t(1,3,2) in terms of t(6), t(3)^2, t(2) zeta(1,-3), zeta(1,-5), t(5) log2, t(2) t(3) log2
HIdentity hoffman_t132_identity();
// both sides expanded in alternating zetas and reduced; weight <= 7
bool hexpr_equal_exact(const HExpr& a, const HExpr& b);

}  // namespace mtv
