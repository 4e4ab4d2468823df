#include "mtv/mzvreduce.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace mtv {

// ---- W = 0 trailing regularisation

WComb reg0_trailing(const IntWord& w) {
    std::size_t n = 0;
    while (n < w.size() && w.letters[w.size() - 1 - n] == 1) ++n;
    if (n == 0) return WComb(w, 1);
    if (n == w.size()) return {};
    std::size_t cut = w.size() - n - 1;
    IntWord u(std::vector<int>(w.letters.begin(), w.letters.begin() + cut));
    int a = w.letters[cut];
    WComb out;
    Rat sgn = (n % 2) ? -1 : 1;
    for (auto& [x, c] : shuffle(u, IntWord(std::vector<int>(n, 1)))) {
        IntWord y = x;
        y.letters.push_back(a);
        out.add(y, c * sgn);
    }
    return out;
}

WComb reg0_trailing(const WComb& w) {
    WComb out;
    for (auto& [x, c] : w) out.add(reg0_trailing(x), c);
    return out;
}

namespace {

// ---- modular helpers (p < 2^31)

struct ModP {
    uint64_t p;
    uint64_t m;  // floor(2^64 / p)
    explicit ModP(uint64_t p_) : p(p_), m((uint64_t)(((unsigned __int128)1 << 64) / p_)) {}
    uint64_t red(uint64_t a) const {
        uint64_t q = (uint64_t)(((unsigned __int128)a * m) >> 64);
        uint64_t r = a - q * p;
        return r >= p ? r - p : r;
    }
    uint64_t mul(uint64_t a, uint64_t b) const { return red(a * b); }
    uint64_t pw(uint64_t a, uint64_t e) const {
        uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    uint64_t inv(uint64_t a) const { return pw(a, p - 2); }
    // false if the denominator vanishes mod p
    bool of(const Rat& q, uint64_t& out) const {
        uint64_t n = mpz_fdiv_ui(q.get_num_mpz_t(), p);
        uint64_t d = mpz_fdiv_ui(q.get_den_mpz_t(), p);
        if (d == 0) return false;
        out = mul(n, inv(d));
        return true;
    }
};

std::vector<uint64_t> primes_below_2_31(std::size_t count, uint64_t start) {
    std::vector<uint64_t> out;
    Int n = (unsigned long)start;
    while (out.size() < count) {
        n -= 2;
        if (mpz_probab_prime_p(n.get_mpz_t(), 30)) out.push_back(n.get_ui());
    }
    return out;
}

using SparseRow = std::vector<std::pair<int, Rat>>;

void compositions(int w, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (w == 0) {
        out.push_back(cur);
        return;
    }
    for (int k = 1; k <= w; ++k) {
        cur.push_back(k);
        compositions(w - k, cur, out);
        cur.pop_back();
    }
}

std::vector<SignedIndex> signed_of_weight(int w, bool convergent_only) {
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    compositions(w, cur, comps);
    std::vector<SignedIndex> out;
    for (auto& k : comps) {
        int d = (int)k.size();
        for (unsigned mask = 0; mask < (1u << d); ++mask) {
            SignedIndex s = SignedIndex::plus(Index(k));
            for (int i = 0; i < d; ++i)
                if (mask & (1u << i)) s.parts[i].eps = -1;
            if (!convergent_only || s.convergent()) out.push_back(s);
        }
    }
    return out;
}

bool rational_reconstruct(const Int& u, const Int& m, Rat& out) {
    Int bound;
    mpz_fdiv_q_2exp(bound.get_mpz_t(), m.get_mpz_t(), 1);
    mpz_sqrt(bound.get_mpz_t(), bound.get_mpz_t());
    Int r0 = m, r1 = u, t0 = 0, t1 = 1;
    while (r1 > bound) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0 || abs(t1) > bound) return false;
    Int g = gcd(r1, t1);
    if (g != 1) return false;
    out = Rat(r1, t1);
    out.canonicalize();
    return true;
}

}  // namespace

MzvReducer& MzvReducer::instance() {
    static MzvReducer r;
    return r;
}

const MzvReducer::Level& MzvReducer::level(int w) {
    if (w < 1 || w > kMaxWeight)
        throw std::out_of_range("MzvReducer: weight " + std::to_string(w) + " outside 1.." +
                                std::to_string(kMaxWeight));
    std::lock_guard<std::mutex> lock(mu_);
    auto it = levels_.find(w);
    if (it == levels_.end()) it = levels_.emplace(w, build(w)).first;
    return it->second;
}

int MzvReducer::dimension(int w) { return (int)level(w).free_cols.size(); }
int MzvReducer::relation_count(int w) { return level(w).relations; }
int MzvReducer::column_count(int w) { return (int)level(w).cols.size(); }

MzvReducer::Level MzvReducer::build(int w) {
    Level L;
    L.cols = signed_of_weight(w, true);
    // higher depth columns are eliminated first, so the surviving basis has small depth
    std::stable_sort(L.cols.begin(), L.cols.end(),
                     [](const SignedIndex& a, const SignedIndex& b) { return a.depth() > b.depth(); });
    for (int i = 0; i < (int)L.cols.size(); ++i) L.col_of[L.cols[i]] = i;
    const int n = (int)L.cols.size();
    const int target_rank = n - (int)fibonacci_table(w + 1)[w + 1];

    auto to_sparse = [&](const ZComb& z) {
        SparseRow r;
        for (auto& [s, c] : z) r.push_back({L.col_of.at(s), c});
        return r;
    };

    // relation generator: distribution first, then regularised double shuffle
    std::vector<SparseRow> pending;
    {
        std::vector<std::vector<int>> comps;
        std::vector<int> cur;
        compositions(w, cur, comps);
        for (auto& k : comps) {
            if (k.back() < 2) continue;
            int d = (int)k.size();
            ZComb rel;
            for (auto& [s, c] : t_to_zeta(Index(k))) rel.add(s, pow2(w - d));
            rel.add(SignedIndex::plus(Index(k)), Rat(-1));
            pending.push_back(to_sparse(rel));
        }
    }
    for (int i = 1; i < w; ++i) {
        auto us = signed_of_weight(i, false);
        auto vs = signed_of_weight(w - i, true);
        for (auto& u : us)
            for (auto& v : vs) {
                WComb st = reg0_trailing(zeta_to_words(stuffle(u, v)));
                Rat sg = ((u.depth() + v.depth()) % 2) ? -1 : 1;
                WComb sh = reg0_trailing(shuffle(to_int_word(u), to_int_word(v))) * sg;
                ZComb rel = words_to_zeta(st - sh);
                if (!rel.empty()) pending.push_back(to_sparse(rel));
            }
    }
    L.relations = (int)pending.size();

    // ---- select independent rows mod p
    auto primes = primes_below_2_31(400, 2147483647ull + 2);
    std::size_t pi = 0;
    std::vector<int> sel;
    std::vector<int> pivcol;
    {
        ModP M(primes[pi++]);
        std::vector<std::vector<uint64_t>> piv;
        for (int ri = 0; ri < (int)pending.size(); ++ri) {
            std::vector<uint64_t> row(n, 0);
            bool ok = true;
            for (auto& [c, q] : pending[ri]) ok = ok && M.of(q, row[c]);
            if (!ok) continue;
            for (std::size_t k = 0; k < piv.size(); ++k) {
                uint64_t f = row[pivcol[k]];
                if (!f) continue;
                uint64_t g = M.p - f;
                const auto& pr = piv[k];
                for (int j = 0; j < n; ++j)
                    if (pr[j]) row[j] = M.red(row[j] + g * pr[j]);
            }
            int c = -1;
            for (int j = 0; j < n; ++j)
                if (row[j]) {
                    c = j;
                    break;
                }
            if (c < 0) continue;
            // past the known dimension every further relation must be dependent
            if ((int)sel.size() >= target_rank)
                throw std::logic_error("MzvReducer: relation set exceeds the expected rank at weight " +
                                       std::to_string(w));
            uint64_t iv = M.inv(row[c]);
            for (auto& x : row) x = M.mul(x, iv);
            piv.push_back(std::move(row));
            pivcol.push_back(c);
            sel.push_back(ri);
        }
    }
    const int r = (int)sel.size();
    std::vector<bool> is_piv(n, false);
    for (int c : pivcol) is_piv[c] = true;
    for (int j = 0; j < n; ++j)
        if (!is_piv[j]) L.free_cols.push_back(j);
    const int nf = (int)L.free_cols.size();
    if (r == 0) return L;

    // ---- multi-modular solve for the reduction of each pivot column
    std::vector<std::vector<Int>> resid(r, std::vector<Int>(nf, 0));
    Int modulus = 1;
    std::vector<std::vector<Rat>> prev;
    int used = 0;
    for (;;) {
        if (pi >= primes.size()) throw std::runtime_error("MzvReducer: rational reconstruction did not converge");
        ModP M(primes[pi++]);
        std::vector<std::vector<uint64_t>> rows(r, std::vector<uint64_t>(n, 0));
        bool ok = true;
        for (int k = 0; k < r && ok; ++k)
            for (auto& [c, q] : pending[sel[k]]) ok = ok && M.of(q, rows[k][c]);
        if (!ok) continue;
        for (int k = 0; k < r && ok; ++k) {
            auto& row = rows[k];
            for (int i = 0; i < k; ++i) {
                uint64_t f = row[pivcol[i]];
                if (!f) continue;
                uint64_t g = M.p - f;
                const auto& pr = rows[i];
                for (int j = 0; j < n; ++j)
                    if (pr[j]) row[j] = M.red(row[j] + g * pr[j]);
            }
            int c = -1;
            for (int j = 0; j < n; ++j)
                if (row[j]) {
                    c = j;
                    break;
                }
            if (c != pivcol[k]) {
                ok = false;
                break;
            }
            uint64_t iv = M.inv(row[c]);
            for (auto& x : row) x = M.mul(x, iv);
        }
        if (!ok) continue;
        // back substitution restricted to free columns
        std::vector<std::vector<uint64_t>> fr(r, std::vector<uint64_t>(nf));
        for (int k = r - 1; k >= 0; --k) {
            for (int t = 0; t < nf; ++t) fr[k][t] = rows[k][L.free_cols[t]];
            for (int i = k + 1; i < r; ++i) {
                uint64_t f = rows[k][pivcol[i]];
                if (!f) continue;
                uint64_t g = M.p - f;
                for (int t = 0; t < nf; ++t) fr[k][t] = M.red(fr[k][t] + g * fr[i][t]);
            }
        }
        // CRT: value a = -fr
        Int pz = (unsigned long)M.p;
        Int minv;
        {
            Int mm = modulus % pz;
            mpz_invert(minv.get_mpz_t(), mm.get_mpz_t(), pz.get_mpz_t());
        }
        for (int k = 0; k < r; ++k)
            for (int t = 0; t < nf; ++t) {
                unsigned long a = fr[k][t] ? (unsigned long)(M.p - fr[k][t]) : 0ul;
                Int cur = resid[k][t] % pz;
                Int delta = (Int(a) - cur) % pz;
                if (delta < 0) delta += pz;
                delta = (delta * minv) % pz;
                resid[k][t] += modulus * delta;
            }
        modulus *= pz;
        ++used;
        if (used < 2) continue;

        std::vector<std::vector<Rat>> cand(r, std::vector<Rat>(nf));
        bool rec = true;
        for (int k = 0; k < r && rec; ++k)
            for (int t = 0; t < nf && rec; ++t) {
                rec = rational_reconstruct(resid[k][t], modulus, cand[k][t]);
            }
        if (!rec || cand != prev) {
            prev = std::move(cand);
            continue;
        }
        // exact check on every selected row
        std::vector<int> col_to_k(n, -1);
        for (int k = 0; k < r; ++k) col_to_k[pivcol[k]] = k;
        std::vector<int> col_to_t(n, -1);
        for (int t = 0; t < nf; ++t) col_to_t[L.free_cols[t]] = t;
        bool exact = true;
        for (int k = 0; k < r && exact; ++k) {
            std::vector<Rat> acc(nf, 0);
            for (auto& [c, q] : pending[sel[k]]) {
                if (col_to_t[c] >= 0)
                    acc[col_to_t[c]] += q;
                else
                    for (int t = 0; t < nf; ++t) acc[t] += q * cand[col_to_k[c]][t];
            }
            for (auto& x : acc)
                if (x != 0) exact = false;
        }
        if (!exact) {
            prev = std::move(cand);
            continue;
        }
        for (int k = 0; k < r; ++k) {
            auto& img = L.image[pivcol[k]];
            for (int t = 0; t < nf; ++t)
                if (cand[k][t] != 0) img.push_back({L.free_cols[t], cand[k][t]});
        }
        break;
    }
    return L;
}

ZPoly MzvReducer::linearize(const SymPoly& p) {
    ZPoly out;
    for (auto& [m, c] : p.terms()) {
        SymMonomial ind;
        ZComb z(SignedIndex(), 1);
        for (auto& [g, e] : m.exps()) {
            if (is_indeterminate(g)) {
                ind = ind * SymMonomial(g, e);
                continue;
            }
            ZComb f;
            if (g == PI2) {
                f.add(SignedIndex::from_ints({2 * e}), Rat(1) / even_zeta_coeff(2 * e));
            } else {
                SignedIndex s = g == LOG2 ? SignedIndex::from_ints({-1}) : SignedIndex::from_ints({g - ZBASE});
                Rat sg = g == LOG2 ? Rat(-1) : Rat(1);
                f.add(SignedIndex(), 1);
                for (int i = 0; i < e; ++i) f = stuffle(f, ZComb(s, sg));
            }
            z = stuffle(z, f);
        }
        for (auto& [s, q] : z) out.add(s, SymPoly(ind, c * q));
    }
    return out;
}

ZPoly MzvReducer::linearize(const ZPoly& z) {
    ZPoly out;
    for (auto& [s, coeff] : z) {
        if (s.lead_zeros) throw std::invalid_argument("linearize: leading zeros");
        for (auto& [t, c] : linearize(coeff)) {
            // c is free of constants; split into monomials to stay in ZComb land
            for (auto& [m, q] : c.terms())
                for (auto& [u, k] : stuffle(s, t)) out.add(u, SymPoly(m, q * k));
        }
    }
    return out;
}

ZPoly MzvReducer::reduce(const ZPoly& z) {
    ZPoly lin = linearize(z);
    ZPoly out;
    for (auto& [s, c] : lin) {
        if (s.parts.empty()) {
            out.add(s, c);
            continue;
        }
        if (!s.convergent()) throw std::invalid_argument("reduce: divergent index " + format_signed(s));
        const Level& L = level(s.weight());
        int col = L.col_of.at(s);
        auto it = L.image.find(col);
        if (it == L.image.end()) {
            out.add(s, c);
            continue;
        }
        for (auto& [f, q] : it->second) out.add(L.cols[f], c * SymPoly(q));
    }
    return out;
}

}  // namespace mtv
