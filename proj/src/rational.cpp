#include "mtv/rational.hpp"

#include <stdexcept>

namespace mtv {

std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto ok = [](const std::string& t) {
        size_t i = (t.size() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto slash = s.find('/');
    std::string n = s.substr(0, slash), d = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!n.empty() && n[0] == '+') n = n.substr(1);
    if (!ok(n) || !ok(d) || d[0] == '-' || d[0] == '+') throw std::invalid_argument("bad rational: " + s);
    Int dn(d);
    if (dn == 0) throw std::invalid_argument("zero denominator: " + s);
    Rat q(Int(n), dn);
    q.canonicalize();
    return q;
}

Int binom(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), (unsigned long)n, (unsigned long)k);
    return r;
}

Int factorial(long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), (unsigned long)n);
    return r;
}

Rat pow2(long e) {
    Int p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, (unsigned long)(e < 0 ? -e : e));
    return e < 0 ? Rat(Int(1), p) : Rat(p);
}

Rat rat_pow(const Rat& q, unsigned long e) {
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
    r.canonicalize();
    return r;
}

}  // namespace mtv
