#include "mtv/regularize.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace mtv;

namespace {

SignedIndex S(std::vector<int> k, int l = 0) { return SignedIndex::from_ints(k, l); }
const SymPoly U = SymPoly::var(VAR_U), T = SymPoly::var(VAR_T), W = SymPoly::var(VAR_W), V = SymPoly::var(VAR_V);
SymPoly q(long a, long b = 1) { return SymPoly(Rat(a, b)); }

RegPoly R(std::initializer_list<std::pair<std::vector<int>, SymPoly>> terms) {
    RegPoly out;
    for (const auto& [k, c] : terms) out.add(k.empty() ? SignedIndex() : S(k), c);
    return out;
}

MzvReducer& red() { return MzvReducer::instance(); }

std::vector<SignedIndex> signed_of_weight(int w) {
    std::vector<SignedIndex> out;
    std::vector<int> cur;
    std::function<void(int)> go = [&](int left) {
        if (!left) {
            for (unsigned m = 0; m < (1u << cur.size()); ++m) {
                std::vector<int> k = cur;
                for (std::size_t i = 0; i < k.size(); ++i)
                    if (m & (1u << i)) k[i] = -k[i];
                out.push_back(S(k));
            }
            return;
        }
        for (int p = 1; p <= left; ++p) {
            cur.push_back(p);
            go(left - p);
            cur.pop_back();
        }
    };
    go(w);
    return out;
}

// product of two regularised values: zetas stuffle, coefficients multiply
RegPoly reg_mul(const RegPoly& a, const RegPoly& b) {
    RegPoly out;
    for (const auto& [s, c] : a)
        for (const auto& [t, d] : b)
            for (const auto& [u, e] : stuffle(s, t)) out.add(u, c * d * SymPoly(e));
    return out;
}

}  // namespace

TEST(StuffleReg, DepthTwoFormula) {
    for (int a = 2; a <= 5; ++a)
        EXPECT_EQ(stuffle_reg(S({a, 1}), U), R({{{a}, U}, {{1, a}, q(-1)}, {{a + 1}, q(-1)}})) << a;
}

TEST(StuffleReg, DepthThreeFormula) {
    for (int a = 2; a <= 4; ++a) {
        RegPoly want = R({{{a}, q(1, 2) * U.pow(2)},
                          {{a + 1}, -U},
                          {{1, a}, -U},
                          {{a + 2}, q(1, 2)},
                          {{1, a + 1}, q(1)},
                          {{2, a}, q(1, 2)},
                          {{a, 2}, q(-1, 2)},
                          {{1, 1, a}, q(1)}});
        EXPECT_TRUE(red().equal(stuffle_reg(S({a, 1, 1}), U), want)) << a;
    }
}

TEST(StuffleReg, ConvergentIsItself) { EXPECT_EQ(stuffle_reg(S({3}), U), R({{{3}, q(1)}})); }

TEST(StuffleReg, OnesAreZetaOnes) {
    EXPECT_EQ(stuffle_reg(S({1}), T), R({{{}, T}}));
    for (int i = 1; i <= 5; ++i) {
        std::vector<int> ones(i, 1);
        EXPECT_TRUE(red().equal(stuffle_reg(S(ones), T), red().linearize(zeta_ones(i, T)))) << i;
    }
}

TEST(StuffleReg, Multiplicative) {
    // stuffle_reg(a * b) = stuffle_reg(a) stuffle_reg(b), weight <= 6
    std::vector<SignedIndex> xs;
    for (int w = 1; w <= 3; ++w)
        for (const auto& s : signed_of_weight(w)) xs.push_back(s);
    int n = 0;
    for (const auto& a : xs)
        for (const auto& b : xs) {
            if (a.weight() + b.weight() > 6 || a > b) continue;
            RegPoly lhs;
            for (const auto& [u, c] : stuffle(a, b))
                for (const auto& [s, d] : stuffle_reg(u, T)) lhs.add(s, d * SymPoly(c));
            ASSERT_TRUE(red().equal(lhs, reg_mul(stuffle_reg(a, T), stuffle_reg(b, T)))) << format_signed(a) << format_signed(b);
            ++n;
        }
    EXPECT_GT(n, 100);
}

TEST(ShuffleReg, TwoOneOne) {
    EXPECT_EQ(shuffle_reg(S({2, 1, 1}), W), R({{{2}, q(1, 2) * W.pow(2)}, {{1, 2}, q(-2) * W}, {{1, 1, 2}, q(3)}}));
}

TEST(ShuffleReg, LeadingZeroTwoOneOne) {
    RegPoly want = R({{{2}, q(-1, 2) * W.pow(3)},
                      {{3}, -W.pow(2)},
                      {{1, 2}, q(2) * W.pow(2)},
                      {{1, 3}, q(4) * W},
                      {{2, 2}, W},
                      {{1, 1, 2}, q(-3) * W},
                      {{1, 1, 3}, q(-6)},
                      {{1, 2, 2}, q(-2)},
                      {{2, 1, 2}, q(-1)}});
    EXPECT_EQ(shuffle_reg(S({2, 1, 1}, 1), W), want);
}

TEST(ShuffleReg, ConvergentIsItself) { EXPECT_EQ(shuffle_reg(S({2, -1}), W), R({{{2, -1}, q(1)}})); }

TEST(ShuffleReg, OneIsParameter) {
    EXPECT_EQ(shuffle_reg(S({1}), W), R({{{}, W}}));
    EXPECT_EQ(stuffle_reg(S({1}), W), R({{{}, W}}));
}

TEST(ShuffleReg, StripOrderIndependent) {
    for (int w = 1; w <= 5; ++w)
        for (auto s : signed_of_weight(w))
            for (int l = 1; l <= 2; ++l) {
                s.lead_zeros = l;
                ASSERT_EQ(shuffle_reg(s, W, true), shuffle_reg(s, W, false)) << format_signed(s);
            }
}

TEST(ShuffleReg, RejectsMixedParameters) {
    EXPECT_THROW(shuffle_reg(S({2, 1}), W + T), std::invalid_argument);
    EXPECT_THROW(stuffle_reg(S({2, 1}), U * V), std::invalid_argument);
    EXPECT_NO_THROW(stuffle_reg(S({2, 1}), q(2) * V - SymPoly::log2()));
}

TEST(Unshuffle, DepthOne) {
    for (int k = 1; k <= 6; ++k) EXPECT_EQ(unshuffle_zeros(SignedIndex::plus(Index{k}, 1)), ZComb(S({k + 1}), Rat(-k))) << k;
    EXPECT_EQ(unshuffle_zeros(S({2}, 2)), ZComb(S({4}), 3));
}

TEST(ShiftParam, RoundTrip) {
    const SymPoly Sv = SymPoly::var(VAR_S);
    for (const auto& s : {S({2, 1}), S({3, 1, 1}), S({-2, 1, 1}), S({1, 1})}) {
        RegPoly p = stuffle_reg(s, T);
        EXPECT_EQ(shift_param(shift_param(p, VAR_T, Sv), VAR_S, T), p);
        // regenerating from the value at 0
        EXPECT_EQ(shift_param(s, Regime::Stuffle, SymPoly(), T), p) << format_signed(s);
        EXPECT_EQ(shift_param(s, Regime::Shuffle, SymPoly(), W), shuffle_reg(s, W)) << format_signed(s);
    }
    // T coefficient of zeta^{*,T}(2,1) is zeta(2)
    RegPoly p = shift_param(S({2, 1}), Regime::Stuffle, SymPoly(), T);
    EXPECT_EQ(p.coeff(S({2})), T);
    EXPECT_EQ(shift_param(S({2, 1, 1}), Regime::Stuffle, SymPoly(), T), stuffle_reg(S({2, 1, 1}), T));
}

TEST(Rho, Examples) {
    EXPECT_EQ(rho_apply(T), T);
    EXPECT_EQ(rho_apply(SymPoly(1)), SymPoly(1));
    EXPECT_EQ(rho_apply(T.pow(2)), T.pow(2) + even_zeta(2));
    EXPECT_EQ(rho_apply(T.pow(3)), T.pow(3) + q(3) * even_zeta(2) * T - q(2) * SymPoly::zeta(3));
}

TEST(Rho, DepthOneTrailingEqual) {
    // rho(T) = T: equal as values, not term by term
    for (int a = 2; a <= 5; ++a) EXPECT_TRUE(red().equal(shuffle_reg(S({a, 1}), T), stuffle_reg(S({a, 1}), T))) << a;
}

TEST(Rho, PipelinesAgree) {
    EXPECT_TRUE(red().equal(sh_from_st(S({2, 1, 1}), T), shuffle_reg(S({2, 1, 1}), T)));
    int n = 0;
    for (int w = 1; w <= 6; ++w)
        for (const auto& s : signed_of_weight(w)) {
            ASSERT_TRUE(red().equal(sh_from_st(s, T), shuffle_reg(s, T))) << format_signed(s);
            ++n;
        }
    EXPECT_EQ(n, 728);
    EXPECT_THROW(sh_from_st(S({2, 1}), q(2) * T), std::invalid_argument);
}

TEST(ZetaOnes, LowOrders) {
    const SymPoly P = SymPoly::var(VAR_U);
    EXPECT_EQ(zeta_ones(0, P), SymPoly(1));
    EXPECT_EQ(zeta_ones(1, P), P);
    EXPECT_EQ(zeta_ones(2, P), q(1, 2) * P.pow(2) - q(1, 12) * SymPoly::pi2());
    EXPECT_EQ(zeta_ones(3, P), q(1, 6) * P.pow(3) - q(1, 12) * SymPoly::pi2() * P + q(1, 3) * SymPoly::zeta(3));
}

TEST(ZetaOnes, InverseSeries) {
    // (sum_i zeta_ones(i,T) u^i) * exp(-T u + sum_{n>=2} (-1)^n zeta(n) u^n / n) = 1 to order 6
    const int K = 6;
    std::vector<SymPoly> g(K + 1);
    g[1] = -T;
    for (int n = 2; n <= K; ++n) g[n] = q(sign_pow(n), n) * SymPoly::zeta(n);
    // exp by e' = g' e
    std::vector<SymPoly> e(K + 1);
    e[0] = SymPoly(1);
    for (int n = 1; n <= K; ++n) {
        SymPoly s;
        for (int k = 1; k <= n; ++k) s += q(k) * g[k] * e[n - k];
        e[n] = s * q(1, n);
    }
    for (int n = 0; n <= K; ++n) {
        SymPoly c;
        for (int i = 0; i <= n; ++i) c += zeta_ones(i, T) * e[n - i];
        EXPECT_EQ(c, n == 0 ? SymPoly(1) : SymPoly()) << n;
    }
}

TEST(StViaSh0, Examples) {
    EXPECT_EQ(st_via_sh0(S({3}), T), shuffle_reg(S({3}), SymPoly()));
    RegPoly sh0 = shuffle_reg(S({2, 1}), SymPoly());
    EXPECT_TRUE(red().equal(sh0, R({{{1, 2}, q(-1)}, {{3}, q(-1)}})));
    RegPoly want = sh0;
    want.add(S({2}), T);
    EXPECT_TRUE(red().equal(stuffle_reg(S({2, 1}), T), want));
    EXPECT_TRUE(red().equal(st_via_sh0(S({2, 1, 1}), T), stuffle_reg(S({2, 1, 1}), T)));
    for (int w = 1; w <= 6; ++w)
        for (const auto& s : signed_of_weight(w)) ASSERT_TRUE(red().equal(st_via_sh0(s, T), stuffle_reg(s, T))) << format_signed(s);
}

TEST(TStar, OneIsV) {
    TPoly p = t_st_from_sh(Index{1}, V);
    RegPoly z = tpoly_shuffle0_to_zeta(p);
    EXPECT_TRUE(red().equal(z, R({{{}, V}})));
    EXPECT_EQ(t_stuffle_reg(Index{1}, V), TPoly(Index{}, V));
    // t^{sh,0}(1) = 1/2 log2
    EXPECT_TRUE(red().equal(t_shuffle0_to_zeta(Index{1}), red().linearize(q(1, 2) * SymPoly::log2())));
}

TEST(TStar, TwoOne) {
    TPoly p = t_st_from_sh(Index{2, 1}, V);
    TPoly want(Index{2, 1}, SymPoly(1));
    want.add(Index{2}, q(1, 2) * (q(2) * V - SymPoly::log2()));
    EXPECT_EQ(p, want);
}

TEST(TStar, ExpansionMatchesDirect) {
    int n = 0;
    for (int w = 1; w <= 5; ++w)
        for (const auto& s : signed_of_weight(w)) {
            if (!s.all_plus()) continue;
            Index k = s.unsigned_index();
            ASSERT_TRUE(red().equal(tpoly_shuffle0_to_zeta(t_st_from_sh(k, V)), tpoly_to_zeta(t_stuffle_reg(k, V))))
                << format_index(k);
            ++n;
        }
    EXPECT_EQ(n, 31);
}

TEST(Distribution, WeightOne) {
    // zeta^{sh,W}(1) + zeta^{sh,W}(1bar) - zeta^{sh,W}(1) = -log2
    auto sides = distribution_sides(Index{}, 1, 0, W);
    EXPECT_TRUE(red().equal(sides.lhs, red().linearize(-SymPoly::log2())));
    EXPECT_TRUE(red().equal(sides.lhs, sides.rhs));
}

TEST(Distribution, PlainDepthOne) {
    // 2 (zeta(2) + zeta(2bar)) = zeta(2)
    RegPoly lhs = R({{{2}, q(2)}, {{-2}, q(2)}});
    EXPECT_TRUE(red().equal(lhs, R({{{2}, q(1)}})));
    EXPECT_TRUE(check_distribution(Index{2}, 0, 0));
}

TEST(Distribution, Sweep) {
    int n = 0;
    std::function<void(std::vector<int>&, int)> go = [&](std::vector<int>& k, int left) {
        if (k.empty() || k.back() != 1)
            for (int a = 0; a <= 2; ++a)
                for (int l = 0; l <= 1; ++l) {
                    if (k.empty() && (a == 0 || l > 0)) continue;
                    ASSERT_TRUE(check_distribution(Index(k), a, l)) << format_index(Index(k)) << " a=" << a << " l=" << l;
                    ++n;
                }
        for (int p = 1; p <= left; ++p) {
            k.push_back(p);
            go(k, left - p);
            k.pop_back();
        }
    };
    std::vector<int> k;
    go(k, 4);
    EXPECT_EQ(n, 44);
}

TEST(Reducer, KnownDimensions) {
    // alternating MZV dimensions are Fibonacci: 1, 2, 3, 5, 8
    for (int w = 1; w <= 5; ++w) EXPECT_EQ(red().dimension(w), (int)fibonacci_table(w + 1)[w + 1]) << w;
    EXPECT_TRUE(red().equal(R({{{1, 2}, q(1)}}), R({{{3}, q(1)}})));
    EXPECT_FALSE(red().is_zero(R({{{3}, q(1)}})));
    EXPECT_FALSE(red().equal(R({{{3}, q(1)}}), R({{{2, -1}, q(1)}})));
}
