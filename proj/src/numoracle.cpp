#include "mtv/numoracle.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace mtv {

namespace {

unsigned digits_for(unsigned bits) { return (unsigned)std::ceil(bits * 0.30103) + 2; }

mpfr_ptr raw(Real& r) { return r.backend().data(); }
mpfr_srcptr raw(const Real& r) { return r.backend().data(); }

Real from_rat(const Rat& q) {
    Real r;
    mpfr_set_q(raw(r), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

double to_double(const Real& r) { return mpfr_get_d(raw(r), MPFR_RNDU); }

// relative rounding slack for a handful of operations at the given precision
double ulp(unsigned bits) { return std::ldexp(1.0, -(int)bits + 8); }

struct SumSpec {
    int s = 1;  // 1: denominators n, 2: denominators 2n-1
    std::vector<int> k, eps;
    auto operator<=>(const SumSpec&) const = default;
};

using Poly = std::vector<double>;  // coefficients of powers of log u

void poly_add(Poly& a, const Poly& b, double scale = 1) {
    if (a.size() < b.size()) a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += scale * b[i];
}

// sum_{n > M} (log u)^q (s n - s + 1)^{-k}, u = (s n - s + 1)/B, B = s M - s + 1
double tail_integral(int q, int k, double B, int s) {
    double fact = std::tgamma(q + 1.0);
    double main = std::pow(B, 1.0 - k) * fact / (s * std::pow(k - 1.0, q + 1));
    double peak = (q == 0 ? 1.0 : std::pow(q / (double)k, q) * std::exp(-q)) * std::pow(B, -(double)k);
    return main + peak;
}

// bound on |P_j(n-1) - P_j(M)| for n > M as a polynomial in log u
Poly drift_bound(const SumSpec& sp, int j, const std::vector<double>& pabs, double B) {
    Poly out;
    for (int i = 1; i <= j; ++i) {
        Poly prod{pabs[i - 1]};
        for (int l = i; l <= j; ++l) {
            int kl = sp.k[l - 1];
            if (kl >= 2) {
                double c = std::pow(B, 1.0 - kl) / (sp.s * (kl - 1.0));
                for (auto& x : prod) x *= c;
            } else {
                Poly sh(prod.size() + 1, 0.0);
                for (std::size_t q = 0; q < prod.size(); ++q) sh[q + 1] = prod[q] / sp.s;
                prod = sh;
            }
        }
        poly_add(out, prod);
    }
    return out;
}

double poly_tail(const Poly& p, int k, double B, int s) {
    double t = 0;
    for (std::size_t q = 0; q < p.size(); ++q)
        if (p[q] != 0) t += p[q] * tail_integral((int)q, k, B, s);
    return t;
}

struct Memo {
    std::mutex mu;
    std::map<std::tuple<SumSpec, long, unsigned>, MPFloat> m;
};
Memo& memo() {
    static Memo mm;
    return mm;
}

MPFloat nested_sum(const SumSpec& sp, long M, unsigned bits) {
    auto key = std::make_tuple(sp, M, bits);
    {
        std::lock_guard<std::mutex> g(memo().mu);
        auto it = memo().m.find(key);
        if (it != memo().m.end()) return it->second;
    }
    int d = (int)sp.k.size();
    int kmax = *std::max_element(sp.k.begin(), sp.k.end());
    bool alt = std::any_of(sp.eps.begin(), sp.eps.end(), [](int e) { return e < 0; });

    std::vector<__mpfr_struct> P(d + 1), A(d + 1), pw(kmax + 1);
    mpfr_t h1, tmp;
    for (auto* v : {&P, &A})
        for (auto& x : *v) mpfr_init2(&x, bits), mpfr_set_ui(&x, 0, MPFR_RNDN);
    for (auto& x : pw) mpfr_init2(&x, bits);
    mpfr_init2(h1, bits);
    mpfr_init2(tmp, bits);
    mpfr_set_ui(&P[0], 1, MPFR_RNDN);
    mpfr_set_ui(&A[0], 1, MPFR_RNDN);
    mpfr_set_ui(h1, 0, MPFR_RNDN);

    for (long n = 1; n <= M; ++n) {
        unsigned long den = (unsigned long)(sp.s * n - sp.s + 1);
        mpfr_set_ui(&pw[1], den, MPFR_RNDN);
        mpfr_ui_div(&pw[1], 1, &pw[1], MPFR_RNDN);
        for (int e = 2; e <= kmax; ++e) mpfr_mul(&pw[e], &pw[e - 1], &pw[1], MPFR_RNDN);
        bool odd = n & 1;
        for (int j = d; j >= 1; --j) {
            int kj = sp.k[j - 1];
            bool neg = sp.eps[j - 1] < 0 && odd;
            mpfr_mul(tmp, &P[j - 1], &pw[kj], MPFR_RNDN);
            if (neg) mpfr_sub(&P[j], &P[j], tmp, MPFR_RNDN);
            else mpfr_add(&P[j], &P[j], tmp, MPFR_RNDN);
            if (alt) {
                mpfr_mul(tmp, &A[j - 1], &pw[kj], MPFR_RNDN);
                mpfr_add(&A[j], &A[j], tmp, MPFR_RNDN);
            }
        }
        int kd = sp.k[d - 1];
        if (sp.eps[d - 1] < 0 && odd) mpfr_sub(h1, h1, &pw[kd], MPFR_RNDN);
        else mpfr_add(h1, h1, &pw[kd], MPFR_RNDN);
    }
    if (!alt)
        for (int j = 0; j <= d; ++j) mpfr_set(&A[j], &P[j], MPFR_RNDN);

    Real head, prev, H1;
    mpfr_set(raw(head), &P[d], MPFR_RNDN);
    mpfr_set(raw(prev), &P[d - 1], MPFR_RNDN);
    mpfr_set(raw(H1), h1, MPFR_RNDN);
    std::vector<double> pabs(d + 1);
    for (int j = 0; j <= d; ++j) pabs[j] = mpfr_get_d(&A[j], MPFR_RNDU);

    for (auto* v : {&P, &A})
        for (auto& x : *v) mpfr_clear(&x);
    for (auto& x : pw) mpfr_clear(&x);
    mpfr_clear(h1);
    mpfr_clear(tmp);

    // frozen tail: P_{d-1}(M) * sum_{n > M} x_d(n), from the depth-one closed form
    int kd = sp.k[d - 1], ed = sp.eps[d - 1];
    Real full;
    if (ed > 0) {
        mpfr_zeta_ui(raw(full), kd, MPFR_RNDN);
        if (sp.s == 2) full *= Real(1) - from_rat(pow2(-kd));
    } else if (kd == 1) {
        mpfr_const_log2(raw(full), MPFR_RNDN);
        full = -full;
    } else {
        mpfr_zeta_ui(raw(full), kd, MPFR_RNDN);
        full *= from_rat(pow2(1 - kd)) - Real(1);
    }
    Real tail1 = full - H1;

    MPFloat out;
    out.value = head + prev * tail1;
    double B = sp.s == 1 ? (double)M : 2.0 * M - 1.0;
    double rem = 0;
    if (d >= 2) {
        Poly drift = drift_bound(sp, d - 1, pabs, B);
        if (ed > 0) {
            rem = poly_tail(drift, kd, B, sp.s);
        } else {
            // pair n, n+1: D(n)(n^-k - (n+1)^-k) + (D(n+1) - D(n)) (n+1)^-k
            rem = kd * poly_tail(drift, kd + 1, B, sp.s);
            Poly step{pabs[d - 2]};
            if (d >= 3) poly_add(step, drift_bound(sp, d - 2, pabs, B));
            rem += poly_tail(step, sp.k[d - 2] + kd, B, sp.s);
        }
    }
    double rounding = (double)M * (kmax + 3 * d) * ulp(bits) * (pabs[d] + pabs[d - 1] + 1.0);
    out.bound = rem * (1 + 1e-12) + rounding;

    std::lock_guard<std::mutex> g(memo().mu);
    memo().m.emplace(key, out);
    return out;
}

long even_cutoff(long M) { return M % 2 ? M + 1 : M; }

}  // namespace

// ---- env / MPFloat

NumEnv NumEnv::from_environment() {
    NumEnv e;
    if (const char* p = std::getenv("MTV_PREC")) e.prec_bits = (unsigned)std::max(53L, std::atol(p));
    if (const char* c = std::getenv("MTV_CUTOFF")) e.cutoff = std::max(2L, std::atol(c));
    return e;
}

PrecisionScope::PrecisionScope(const NumEnv& env) : saved_(Real::default_precision()) {
    Real::default_precision(digits_for(env.prec_bits));
}
PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

std::string MPFloat::str(int digits) const {
    std::ostringstream os;
    os << value.str(digits, std::ios_base::scientific) << " +- " << bound;
    return os.str();
}

MPFloat operator+(const MPFloat& a, const MPFloat& b) {
    MPFloat r{Real(a.value + b.value), a.bound + b.bound};
    return r;
}
MPFloat operator-(const MPFloat& a, const MPFloat& b) {
    MPFloat r{Real(a.value - b.value), a.bound + b.bound};
    return r;
}
MPFloat operator*(const MPFloat& a, const MPFloat& b) {
    double x = std::fabs(to_double(a.value)), y = std::fabs(to_double(b.value));
    MPFloat r{Real(a.value * b.value), x * b.bound + y * a.bound + a.bound * b.bound};
    return r;
}
MPFloat operator*(const MPFloat& a, const Real& s) {
    MPFloat r{Real(a.value * s), a.bound * std::fabs(to_double(s))};
    return r;
}

// ---- constants

Real const_pi(const NumEnv& env) {
    PrecisionScope ps(env);
    Real r;
    mpfr_const_pi(raw(r), MPFR_RNDN);
    return r;
}

Real const_log2(const NumEnv& env) {
    PrecisionScope ps(env);
    Real r;
    mpfr_const_log2(raw(r), MPFR_RNDN);
    return r;
}

Real const_zeta(int m, const NumEnv& env) {
    if (m < 2) throw std::invalid_argument("const_zeta needs m >= 2");
    PrecisionScope ps(env);
    Real r;
    mpfr_zeta_ui(raw(r), (unsigned long)m, MPFR_RNDN);
    return r;
}

// ---- nested sums

MPFloat t_num(const Index& k, const NumEnv& env) {
    if (k.empty()) {
        PrecisionScope ps(env);
        return MPFloat{Real(1), 0};
    }
    if (k.parts.back() < 2) throw std::invalid_argument("t_num: divergent index " + format_index(k));
    for (int p : k.parts)
        if (p < 1) throw std::invalid_argument("t_num: entries must be positive");
    PrecisionScope ps(env);
    SumSpec sp{2, k.parts, std::vector<int>(k.parts.size(), 1)};
    return nested_sum(sp, even_cutoff(env.cutoff), env.prec_bits);
}

MPFloat altz_num(const SignedIndex& s, const NumEnv& env) {
    if (s.lead_zeros) throw std::invalid_argument("altz_num: leading zeros");
    if (s.parts.empty()) {
        PrecisionScope ps(env);
        return MPFloat{Real(1), 0};
    }
    if (!s.convergent()) throw std::invalid_argument("altz_num: divergent " + format_signed(s));
    PrecisionScope ps(env);
    SumSpec sp;
    sp.s = 1;
    for (auto& p : s.parts) {
        sp.k.push_back(p.k);
        sp.eps.push_back(p.eps);
    }
    return nested_sum(sp, even_cutoff(env.cutoff), env.prec_bits);
}

// ---- digamma side

Real digamma_A_psi(const Real& z, const NumEnv& env) {
    PrecisionScope ps(env);
    Real one(1), p1, pa, pb, zp(one + z), zm(one - z);
    mpfr_digamma(raw(p1), raw(one), MPFR_RNDN);
    mpfr_digamma(raw(pa), raw(zp), MPFR_RNDN);
    mpfr_digamma(raw(pb), raw(zm), MPFR_RNDN);
    return Real(p1 - (pa + pb) / 2);
}

MPFloat digamma_A_series(const Real& z, const NumEnv& env) {
    PrecisionScope ps(env);
    Real z2 = z * z;
    double az2 = to_double(z2);
    if (az2 >= 1) throw std::invalid_argument("A(z) needs |z| < 1");
    Real sum(0), pw(1);
    double target = std::ldexp(1.0, -(int)env.prec_bits);
    double zeta3 = 1.2020569031595942854;
    int R = 0;
    for (int r = 1; r < 100000; ++r) {
        pw *= z2;
        sum += const_zeta(2 * r + 1, env) * pw;
        R = r;
        double tail = zeta3 * std::pow(az2, R + 1) / (1 - az2);
        if (tail < target || az2 == 0) break;
    }
    MPFloat out{sum, zeta3 * std::pow(az2, R + 1) / (1 - az2) + R * ulp(env.prec_bits)};
    return out;
}

MPFloat digamma_A(const Real& z, const NumEnv& env) {
    PrecisionScope ps(env);
    if (std::fabs(to_double(z)) >= 1) throw std::invalid_argument("A(z) needs |z| < 1");
    MPFloat ser = digamma_A_series(z, env);
    Real psi = digamma_A_psi(z, env);
    double diff = std::fabs(to_double(Real(psi - ser.value)));
    double tol = ser.bound + 64 * ulp(env.prec_bits);
    if (diff > tol) throw std::runtime_error("A(z): digamma and series paths disagree by " + std::to_string(diff));
    return MPFloat{psi, std::max(diff, ulp(env.prec_bits)) + ser.bound};
}

MPFloat digamma_B(const Real& z, const NumEnv& env) {
    PrecisionScope ps(env);
    return digamma_A(z, env) - digamma_A(Real(z / 2), env);
}

// ---- symbolic evaluation

MPFloat eval_num(const SymPoly& p, const std::map<int, Real>& bindings, const NumEnv& env) {
    PrecisionScope ps(env);
    MPFloat out{Real(0), 0};
    Real pi = const_pi(env);
    for (const auto& [mono, c] : p.terms()) {
        Real term = from_rat(c);
        for (auto [g, e] : mono.exps()) {
            Real base;
            if (g == PI2) base = pi * pi;
            else if (g == LOG2) base = const_log2(env);
            else if (is_zeta_gen(g)) base = const_zeta(g - ZBASE, env);
            else {
                auto it = bindings.find(g);
                if (it == bindings.end()) throw std::invalid_argument("eval_num: unbound " + gen_name(g));
                base = it->second;
            }
            for (int i = 0; i < e; ++i) term *= base;
        }
        out.value += term;
        out.bound += std::fabs(to_double(term)) * ulp(env.prec_bits);
    }
    return out;
}

MPFloat eval_num(const SymPoly& p, const NumEnv& env) { return eval_num(p, {}, env); }

// ---- generating series

namespace {

Index twos_mid_twos(int a, int mid, int b) {
    Index k;
    for (int i = 0; i < a; ++i) k.parts.push_back(2);
    k.parts.push_back(mid);
    for (int i = 0; i < b; ++i) k.parts.push_back(2);
    return k;
}

NumEnv scaled_env(const NumEnv& env, double weight) {
    // terms multiplied by a tiny weight need far fewer outer terms
    NumEnv e = env;
    if (weight < 1e-4) e.cutoff = even_cutoff(std::max(2000L, (long)(env.cutoff * weight * 1e4)));
    return e;
}

}  // namespace

MPFloat t_star_2a1_num(int a, const Real& V, const NumEnv& env) {
    PrecisionScope ps(env);
    MPFloat out = t_num(Index(std::vector<int>(a, 2)), env) * V;
    for (int i = 0; i < a; ++i) {
        out = out - t_num(twos_mid_twos(i, 1, a - i), env);
        out = out - t_num(twos_mid_twos(i, 3, a - 1 - i), env);
    }
    return out;
}

GenSeriesResult genseries(const Real& x, const Real& y, const Real& V, int A_max, const NumEnv& env) {
    PrecisionScope ps(env);
    double dx = std::fabs(to_double(x)), dy = std::fabs(to_double(y));
    if (dx + dy >= 1) throw std::invalid_argument("genseries needs |x| + |y| < 1");
    Real X = 4 * x * x, Y = 4 * y * y;
    GenSeriesResult res;
    res.lhs = MPFloat{Real(0), 0};
    for (int a = 0; a <= A_max; ++a) {
        for (int b = 0; a + b <= A_max; ++b) {
            Real w = pow(X, a) * pow(Y, b);
            if ((a + b) % 2) w = -w;
            NumEnv e = scaled_env(env, std::fabs(to_double(w)));
            MPFloat t = b >= 1 ? t_num(twos_mid_twos(a, 1, b), e) : t_star_2a1_num(a, V, e);
            res.lhs = res.lhs + t * w;
        }
    }
    // |t^{*,V}(2^a,1,2^b)| <= 2 (1 + |V|) (crude), geometric remainder
    double q = std::max(4 * dx * dx, 4 * dy * dy);
    double trunc = 0;
    if (q > 0) {
        for (int n = A_max + 1; n < A_max + 400; ++n) trunc += (n + 1) * std::pow(q, n);
        trunc *= 2 * (1 + std::fabs(to_double(V)));
    }
    res.truncation = trunc;

    Real pi = const_pi(env), l2 = const_log2(env);
    Real xm = x - y, xp = x + y;
    MPFloat Am = digamma_A(xm, env), Ap = digamma_A(xp, env);
    MPFloat Bm = digamma_B(xm, env), Bp = digamma_B(xp, env);
    Real cx = cos(pi * x) / 2, cy = cos(pi * y) / 2;
    MPFloat c1 = Am + Ap + MPFloat{Real(2 * (V - l2)), 0};
    MPFloat c2 = Bm + Bp + MPFloat{Real(2 * l2), 0};
    res.rhs = c1 * cx + c2 * cy;
    res.residual = abs(res.lhs.value - res.rhs.value);
    return res;
}

Real genseries_residual(const Real& x, const Real& y, const Real& V, int A_max, const NumEnv& env) {
    return genseries(x, y, V, A_max, env).residual;
}

// ---- products

MPFloat hexpr_num(const HExpr& e, const NumEnv& env) {
    PrecisionScope ps(env);
    MPFloat out{Real(0), 0};
    for (const auto& [mono, c] : e) {
        MPFloat term{from_rat(c), 0};
        for (auto& f : mono) {
            switch (f.kind) {
                case HFactor::Kind::Log2: term = term * MPFloat{const_log2(env), ulp(env.prec_bits)}; break;
                case HFactor::Kind::T: term = term * t_num(f.t, env); break;
                case HFactor::Kind::Z: term = term * altz_num(f.z, env); break;
            }
        }
        out = out + term;
    }
    return out;
}

}  // namespace mtv
