#pragma once

#include "mtv/indexcore.hpp"
#include "mtv/mzvreduce.hpp"
#include "mtv/symring.hpp"
#include "mtv/wordalg.hpp"

namespace mtv {

// A regularised value: convergent signed zetas with coefficients polynomial
// in the regularisation parameter (and possibly constants).
using RegPoly = ZPoly;
using WPoly = LinComb<IntWord, SymPoly>;
using TPoly = LinComb<Index, SymPoly>;

enum class Regime { Stuffle, Shuffle };

// zeta^{*,P}(s) with zeta^{*,P}(1) = P
RegPoly stuffle_reg(const SignedIndex& s, const SymPoly& P);
// t^{*,V}(k) with t^{*,V}(1) = V, in convergent t values
TPoly t_stuffle_reg(const Index& k, const SymPoly& V);

// I(0; w; 1) with I(0;1;1) = I(0;0;1) = -P, so that zeta^{sh,P}(1) = P
WPoly shuffle_reg_word(const IntWord& w, const SymPoly& P, bool trailing_first = true);
// zeta_l^{sh,P}(s)
RegPoly shuffle_reg(const SignedIndex& s, const SymPoly& P, bool trailing_first = true);

// zeta_l(s) at P = 0 as (possibly divergent) depth-preserving zetas without leading zeros
ZComb unshuffle_zeros(const SignedIndex& s);

// sum_i reg(k, 1^{a-i}; from) (to - from)^i / i!
RegPoly shift_param(const SignedIndex& s, Regime regime, const SymPoly& from, const SymPoly& to);
// substitution of the parameter inside an already expanded value
RegPoly shift_param(const RegPoly& p, int var, const SymPoly& to);

// rho(T^k) = k! [u^k] exp(sum_{n>=2} (-1)^n zeta(n) u^n / n) e^{Tu}
SymPoly rho_apply(const SymPoly& p, int var = VAR_T);
RegPoly rho_apply(const RegPoly& p, int var = VAR_T);
RegPoly sh_from_st(const SignedIndex& s, const SymPoly& T);

// [u^i] exp(P u - sum_{n>=2} (-1)^n zeta(n) u^n / n)
SymPoly zeta_ones(int i, const SymPoly& P);
// sum_i zeta^{sh,0}(k, 1^{a-i}) zeta^{*,T}(1^i)
RegPoly st_via_sh0(const SignedIndex& s, const SymPoly& T);

// t^{sh,0}(k) expanded in signed zetas
RegPoly t_shuffle0_to_zeta(const Index& k);
// sum_i t^{sh,0}(k, 1^{a-i}) 2^{-i} zeta^{*,2V-log2}(1^i), as formal t terms
TPoly t_st_from_sh(const Index& k, const SymPoly& V);
RegPoly tpoly_shuffle0_to_zeta(const TPoly& t);
RegPoly tpoly_to_zeta(const TPoly& t);  // convergent t terms only

// both sides of the regularised distribution relation, zeta_l at W = 0 when l > 0
struct DistributionSides {
    RegPoly lhs, rhs;
};
DistributionSides distribution_sides(const Index& k, int alpha, int ell, const SymPoly& W);
bool check_distribution(const Index& k, int alpha, int ell);

int trailing_plus_ones(const SignedIndex& s);
std::string format_regpoly(const RegPoly& p);

}  // namespace mtv
