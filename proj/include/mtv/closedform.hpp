#pragma once

#include "mtv/indexcore.hpp"
#include "mtv/rational.hpp"
#include "mtv/symring.hpp"

#include <optional>

namespace mtv {

// coefficients of the zeta(2^a,3,2^b) reduction
Rat coeff_A(int r, int a);  // binom(2r, 2a+2)
Rat coeff_B(int r, int b);  // (1 - 2^{-2r}) binom(2r, 2b+1)

Rat coeff_c_232(int a, int b);  // zeta^l(2^a,3,2^b) / zeta^l(2a+2b+3)
Rat coeff_c_21(int a);          // zeta^l(2^a,1) / zeta^l(2a+1), c_1 = 0
Rat coeff_d_212(int a, int b);  // t~^l(2^a,1,2^b) / zeta^l(2a+2b+1), d_1 = 2
Rat coeff_d_232(int a, int b);  // t~^l(2^a,3,2^b) / zeta^l(2a+2b+3)

// t(2^a) = pi^{2a} / (2^{2a} (2a)!)
SymPoly eval_t22(int a);
// zeta(2^a) = pi^{2a} / (2a+1)!
SymPoly eval_z22(int a);
// zeta(m bar) without bars; zeta(1bar) = -log2
SymPoly zbar_reduce(int m);

SymPoly eval_t2212_star(int a, int b, const SymPoly& V);
SymPoly eval_t2212_sh(int a, int b, const SymPoly& W);
SymPoly eval_t12n(int n);
// t~(2^a,3,2^b) and its plain t value
SymPoly eval_tt2232(int a, int b);
SymPoly eval_t2232(int a, int b);
SymPoly eval_z2232(int a, int b);

// 2^a 1 2^b / 2^a 3 2^b pattern matching on an index
struct Pattern212 {
    int a = 0, b = 0;
    int mid = 1;  // 1 or 3
};
std::optional<Pattern212> match_2x2(const Index& k);
std::optional<int> match_2a(const Index& k);  // k = 2^a

}  // namespace mtv
