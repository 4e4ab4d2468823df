#pragma once

#include "mtv/indexcore.hpp"
#include "mtv/motivic.hpp"
#include "mtv/symring.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <map>
#include <string>

namespace mtv {

using Real = boost::multiprecision::mpfr_float;

struct NumEnv {
    unsigned prec_bits = 128;
    long cutoff = 1000000;  // outermost summation bound; kept even

    // MTV_PREC / MTV_CUTOFF override the defaults when set
    static NumEnv from_environment();
};

// value with an absolute error bound
struct MPFloat {
    Real value;
    double bound = 0;

    std::string str(int digits = 20) const;
    friend MPFloat operator+(const MPFloat& a, const MPFloat& b);
    friend MPFloat operator-(const MPFloat& a, const MPFloat& b);
    friend MPFloat operator*(const MPFloat& a, const MPFloat& b);
    friend MPFloat operator*(const MPFloat& a, const Real& s);
};

// sets the working precision for Real temporaries; restores on exit
class PrecisionScope {
public:
    explicit PrecisionScope(const NumEnv& env);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

Real const_pi(const NumEnv& env);
Real const_log2(const NumEnv& env);
Real const_zeta(int m, const NumEnv& env);  // m >= 2

// t(k), k_d >= 2; throws std::invalid_argument on a divergent index
MPFloat t_num(const Index& k, const NumEnv& env);
// zeta(eps; k), convergent, no leading zeros
MPFloat altz_num(const SignedIndex& s, const NumEnv& env);

// A(z) = psi(1) - (psi(1+z) + psi(1-z))/2 = sum zeta(2r+1) z^{2r}; both paths are
// evaluated and must agree (std::runtime_error otherwise); |z| < 1
MPFloat digamma_A(const Real& z, const NumEnv& env);
// B(z) = A(z) - A(z/2)
MPFloat digamma_B(const Real& z, const NumEnv& env);
// the two paths separately, for cross checks
Real digamma_A_psi(const Real& z, const NumEnv& env);
MPFloat digamma_A_series(const Real& z, const NumEnv& env);

// throws std::invalid_argument on an unbound indeterminate
MPFloat eval_num(const SymPoly& p, const std::map<int, Real>& bindings, const NumEnv& env);
MPFloat eval_num(const SymPoly& p, const NumEnv& env);

struct GenSeriesResult {
    MPFloat lhs, rhs;
    Real residual;
    double truncation = 0;  // bound on the dropped terms a + b > A_max
};
// sum_{a+b <= A_max} (-1)^{a+b} t^{*,V}(2^a,1,2^b) (2x)^{2a} (2y)^{2b} against
// 1/2 cos(pi x)(A(x-y) + A(x+y) + 2(V - log2)) + 1/2 cos(pi y)(B(x-y) + B(x+y) + 2 log2)
GenSeriesResult genseries(const Real& x, const Real& y, const Real& V, int A_max, const NumEnv& env);
Real genseries_residual(const Real& x, const Real& y, const Real& V, int A_max, const NumEnv& env);

// t^{*,V}(2^a,1) = V t(2^a) - sum_{i<a} t(2^i,1,2^{a-i}) - sum_{i<a} t(2^i,3,2^{a-1-i})
MPFloat t_star_2a1_num(int a, const Real& V, const NumEnv& env);

// products of t values, alternating zetas and log 2
MPFloat hexpr_num(const HExpr& e, const NumEnv& env);

}  // namespace mtv
