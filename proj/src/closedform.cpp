#include "mtv/closedform.hpp"

#include <stdexcept>

namespace mtv {

Rat coeff_A(int r, int a) { return Rat(binom(2 * r, 2 * a + 2)); }
Rat coeff_B(int r, int b) { return (1 - pow2(-2 * r)) * Rat(binom(2 * r, 2 * b + 1)); }

Rat coeff_c_232(int a, int b) {
    int n = 2 * a + 2 * b + 2;
    Rat v = -Rat(binom(n, 2 * a + 2)) + (1 - pow2(-n)) * Rat(binom(n, 2 * b + 1));
    return 2 * sign_pow(a + b) * v;
}

Rat coeff_c_21(int a) { return a == 0 ? Rat(0) : Rat(2 * sign_pow(a)); }

Rat coeff_d_212(int a, int b) {
    if (a == 0 && b == 0) return 2;
    int n = 2 * a + 2 * b;
    return 4 * sign_pow(a + b) * (1 - pow2(-n - 1)) * Rat(binom(n, 2 * a));
}

Rat coeff_d_232(int a, int b) {
    int n = 2 * a + 2 * b + 2;
    return 4 * sign_pow(a + b) * (1 - pow2(-n - 1)) * Rat(binom(n, 2 * a + 1));
}

SymPoly eval_t22(int a) {
    if (a < 0) throw std::invalid_argument("eval_t22: negative a");
    return SymPoly(SymMonomial(PI2, a), Rat(1) / (pow2(2 * a) * Rat(factorial(2 * a))));
}

SymPoly eval_z22(int a) {
    if (a < 0) throw std::invalid_argument("eval_z22: negative a");
    return SymPoly(SymMonomial(PI2, a), Rat(1) / Rat(factorial(2 * a + 1)));
}

SymPoly zbar_reduce(int m) {
    if (m < 1) throw std::invalid_argument("zbar_reduce: m >= 1 required");
    if (m == 1) return -SymPoly::log2();
    return SymPoly::zeta(m) * SymPoly(-(1 - pow2(1 - m)));
}

SymPoly eval_t2212_star(int a, int b, const SymPoly& V) {
    if (a < 0 || b < 0) throw std::invalid_argument("eval_t2212_star: negative exponent");
    SymPoly out;
    for (int r = 1; r <= a + b; ++r) {
        Rat q = pow2(2 * r);
        Rat br = Rat(binom(2 * r, 2 * a)) + q / (q - 1) * Rat(binom(2 * r, 2 * b));
        Rat c = -sign_pow(r) * pow2(-2 * r) * br;
        out += SymPoly(c) * zbar_reduce(2 * r + 1) * eval_t22(a + b - r);
    }
    if (a == 0) out += SymPoly::log2() * eval_t22(b);
    if (b == 0) out += (V - SymPoly::log2()) * eval_t22(a);
    return out;
}

SymPoly eval_t2212_sh(int a, int b, const SymPoly& W) {
    SymPoly V = (W + SymPoly::log2()) * SymPoly(Rat(1, 2));
    return eval_t2212_star(a, b, V);
}

SymPoly eval_t12n(int n) {
    if (n < 1) throw std::invalid_argument("eval_t12n: n >= 1 required (t(1) diverges)");
    SymPoly s;
    for (int r = 0; r < n; ++r) {
        SymPoly pw(SymMonomial(PI2, n - r), Rat(1) / Rat(factorial(2 * (n - r))));
        s += SymPoly(Rat(sign_pow(r))) * (-zbar_reduce(2 * r + 1)) * pw;
    }
    s += SymPoly(Rat(sign_pow(n)) * 2 * (1 - pow2(-2 * n - 1))) * SymPoly::zeta(2 * n + 1);
    return s * SymPoly(pow2(-2 * n));
}

SymPoly eval_tt2232(int a, int b) {
    SymPoly out;
    int top = a + b + 1;
    for (int r = 1; r <= top; ++r) {
        Rat c = Rat(sign_pow(r + 1) * 2) *
                (Rat(binom(2 * r, 2 * a + 1)) + (1 - pow2(-2 * r)) * Rat(binom(2 * r, 2 * b + 1)));
        // t~(2^j) = 2^{2j} t(2^j)
        int j = top - r;
        out += SymPoly(c * pow2(2 * j)) * SymPoly::zeta(2 * r + 1) * eval_t22(j);
    }
    return out;
}

SymPoly eval_t2232(int a, int b) { return eval_tt2232(a, b) * SymPoly(pow2(-(2 * a + 2 * b + 3))); }

SymPoly eval_z2232(int a, int b) {
    SymPoly out;
    int top = a + b + 1;
    for (int r = 1; r <= top; ++r) {
        Rat c = 2 * sign_pow(r) * (coeff_A(r, a) - coeff_B(r, b));
        out += SymPoly(c) * SymPoly::zeta(2 * r + 1) * eval_z22(top - r);
    }
    return out;
}

std::optional<Pattern212> match_2x2(const Index& k) {
    Pattern212 p;
    int i = 0, d = k.depth();
    while (i < d && k.parts[i] == 2) ++i;
    if (i == d || (k.parts[i] != 1 && k.parts[i] != 3)) return std::nullopt;
    p.a = i;
    p.mid = k.parts[i];
    for (int j = i + 1; j < d; ++j)
        if (k.parts[j] != 2) return std::nullopt;
    p.b = d - i - 1;
    return p;
}

std::optional<int> match_2a(const Index& k) {
    for (int x : k.parts)
        if (x != 2) return std::nullopt;
    return k.depth();
}

}  // namespace mtv
