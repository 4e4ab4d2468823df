#include "mtv/motivic.hpp"

#include "mtv/closedform.hpp"
#include "mtv/mzvreduce.hpp"
#include "mtv/regularize.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mtv {

// ---- Aff

Aff operator*(const Aff& a, const Aff& b) {
    if (a.c1 != 0 && b.c1 != 0) throw std::domain_error("product of two lambda-affine terms");
    return Aff(a.c0 * b.c0, a.c0 * b.c1 + a.c1 * b.c0);
}

std::string Aff::str() const {
    if (c1 == 0) return rat_str(c0);
    std::string lam = c1 == 1 ? "lambda" : c1 == -1 ? "-lambda" : rat_str(c1) + "*lambda";
    if (c0 == 0) return lam;
    if (c0 > 0) return lam + " + " + rat_str(c0);
    return lam + " - " + rat_str(Rat(-c0));
}

// ---- LieFactor

int LieFactor::weight() const {
    switch (kind) {
        case Kind::Log: return 1;
        case Kind::Zeta: return n;
        case Kind::TTilde: return idx.weight();
        case Kind::ZetaL: return n + idx.weight();
        case Kind::OnesStar: return n;
    }
    return 0;
}

static std::string parts_str(const Index& k) {
    std::string s;
    for (std::size_t i = 0; i < k.parts.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(k.parts[i]);
    }
    return s;
}

std::string LieFactor::str() const {
    switch (kind) {
        case Kind::Log: return "log2^l";
        case Kind::Zeta: return "z^l(" + std::to_string(n) + ")";
        case Kind::TTilde: return "tt^l(" + parts_str(idx) + ")";
        case Kind::ZetaL:
            return n ? "z^l_" + std::to_string(n) + "(" + parts_str(idx) + ")" : "z^l(" + parts_str(idx) + ")";
        case Kind::OnesStar: return "z^l*(1^" + std::to_string(n) + ")";
    }
    return "";
}

// ---- derivations

static void check_r(int r) {
    if (r < 1 || r % 2 == 0) throw std::invalid_argument("D_r needs odd r >= 1, got " + std::to_string(r));
}

static Index concat3(const Index& k, int i, int mid, int j) {
    // k_1..k_{i-1}, mid, k_{j+1}..k_d
    Index out;
    for (int q = 1; q < i; ++q) out.parts.push_back(k.parts[q - 1]);
    out.parts.push_back(mid);
    for (int q = j + 1; q <= k.depth(); ++q) out.parts.push_back(k.parts[q - 1]);
    return out;
}

DerivResult deriv_D(int r, const Index& k) {
    check_r(r);
    DerivResult out;
    int d = k.depth();
    std::vector<int> P(d + 1, 0);
    for (int i = 1; i <= d; ++i) P[i] = P[i - 1] + k.parts[i - 1];

    for (int j = 1; j <= d; ++j)
        if (P[j] == r) out.add({LieFactor::ttilde(k.sub(1, j)), k.sub(j + 1, d)}, 1);

    for (int i = 1; i <= d; ++i) {
        for (int j = i + 1; j <= d; ++j) {
            int full = P[j] - P[i - 1];
            if (r >= full - 1) continue;
            Index right = concat3(k, i, full - r, j);
            int a = P[j] - P[i];  // |k_{i+1,j}|
            if (a <= r) {
                out.add({LieFactor::zetal(r - a, k.sub(i + 1, j)), right}, 1);
                if (r == 1) out.add({LieFactor::log2(), right}, -1);
            }
            int b = P[j - 1] - P[i - 1];  // |k_{i,j-1}|
            if (b <= r) {
                Index rev = k.sub(i, j - 1);
                std::reverse(rev.parts.begin(), rev.parts.end());
                out.add({LieFactor::zetal(r - b, rev), right}, -1);
                if (r == 1) out.add({LieFactor::log2(), right}, 1);
            }
        }
    }
    return out;
}

DerivResult deriv_D_star(int r, const Index& k) {
    DerivResult out = deriv_D(r, k);
    int d = k.depth();
    if (r <= d && std::all_of(k.parts.end() - r, k.parts.end(), [](int x) { return x == 1; }))
        out.add({LieFactor::ones_star(r), k.sub(1, d - r)}, 1);
    return out;
}

DerivResult deriv_D1_fast(const Index& k) {
    DerivResult out;
    int d = k.depth();
    if (d == 0) return out;
    if (k.parts.front() == 1) out.add({LieFactor::log2(), k.sub(2, d)}, 2);
    if (k.parts.back() == 1) out.add({LieFactor::log2(), k.sub(1, d - 1)}, -1);
    return out;
}

// ---- Lie reduction

static std::optional<LieComb> reduce_zeta_l0(const Index& k) {
    if (auto a = match_2a(k)) {
        if (*a >= 1) return LieComb();
    }
    auto p = match_2x2(k);
    if (!p) return std::nullopt;
    if (p->mid == 3) return LieComb(2 * p->a + 2 * p->b + 3, coeff_c_232(p->a, p->b));
    // 2^a 1 2^b: reverse-dual to 2^{b-1} 3 2^a
    if (p->b == 0) return LieComb(p->a == 0 ? 1 : 2 * p->a + 1, coeff_c_21(p->a));
    return LieComb(2 * p->a + 2 * p->b + 1, coeff_c_232(p->b - 1, p->a));
}

std::optional<LieComb> reduce_lie(const LieFactor& f) {
    switch (f.kind) {
        case LieFactor::Kind::Log: return LieComb(1, 1);
        case LieFactor::Kind::Zeta:
            if (f.n % 2 == 0) return LieComb();
            return LieComb(f.n, 1);
        case LieFactor::Kind::TTilde: {
            if (auto a = match_2a(f.idx)) {
                if (*a >= 1) return LieComb();
            }
            auto p = match_2x2(f.idx);
            if (!p) return std::nullopt;
            if (p->mid == 1) {
                if (p->a == 0 && p->b == 0) return LieComb(1, 1);  // d_1 * 1/2 log
                return LieComb(2 * p->a + 2 * p->b + 1, coeff_d_212(p->a, p->b));
            }
            return LieComb(2 * p->a + 2 * p->b + 3, coeff_d_232(p->a, p->b));
        }
        case LieFactor::Kind::ZetaL: {
            if (f.n == 0) return reduce_zeta_l0(f.idx);
            LieComb out;
            for (const auto& [s, c] : unshuffle_zeros(SignedIndex::plus(f.idx, f.n))) {
                auto red = reduce_zeta_l0(s.unsigned_index());
                if (!red) return std::nullopt;
                out.add(*red, Aff(c));
            }
            return out;
        }
        case LieFactor::Kind::OnesStar:
            if (f.n == 1) return LieComb(1, Aff(Rat(-1), Rat(2)));
            if (f.n % 2 == 0) return LieComb();
            return LieComb(f.n, Aff(Rat(1, f.n)));
    }
    return std::nullopt;
}

DerivResult reduce_result(const DerivResult& d) {
    DerivResult out;
    for (const auto& [term, c] : d) {
        auto red = reduce_lie(term.first);
        if (!red) throw std::logic_error("irreducible Lie factor " + term.first.str());
        for (const auto& [g, e] : *red) {
            LieFactor lf = g == 1 ? LieFactor::log2() : LieFactor::zeta(g);
            out.add({lf, term.second}, c * e);
        }
    }
    return out;
}

Aff pi_tilde(const LieComb& c) {
    Aff out;
    for (const auto& [g, e] : c) out += e * Aff(g == 1 ? Rat(1, 2) : pow2(g - 2));
    return out;
}

std::string format_deriv(const DerivResult& d) {
    if (d.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [term, c] : d) {
        std::string cs = c.str();
        bool neg = c.is_const() && c.c0 < 0;
        if (neg) cs = rat_str(Rat(-c.c0));
        else if (!c.is_const()) cs = "(" + cs + ")";
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        first = false;
        if (cs != "1") os << cs << "*";
        os << term.first.str() << " ⊗ " << format_index(term.second, "tt");
    }
    return os.str();
}

// ---- graded maps

bool FiltMatrix::symbolic() const {
    for (auto& row : entries)
        for (auto& e : row)
            if (!e.is_const()) return true;
    return false;
}

std::vector<std::vector<Rat>> FiltMatrix::at(const Rat& lambda) const {
    std::vector<std::vector<Rat>> out(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i)
        for (auto& e : entries[i]) out[i].push_back(e.at(lambda));
    return out;
}

static std::optional<Word> as_word(const Index& k) {
    Word w;
    for (int p : k.parts) {
        if (p < 1 || p > 9) return std::nullopt;
        w.push_back(char('0' + p));
    }
    return w;
}

static std::vector<Aff> graded_row(Kind kind, int N, const Word& w, const std::vector<Word>& Bp,
                                   const std::map<Word, int>& col_of) {
    std::vector<Aff> row(Bp.size());
    Index k = word_to_index(w);
    for (int r = 1; r <= N; r += 2) {
        DerivResult d = kind == Kind::Hstar ? deriv_D_star(r, k) : deriv_D(r, k);
        for (const auto& [term, c] : d) {
            auto rw = as_word(term.second);
            if (!rw) continue;
            auto it = col_of.find(*rw);
            if (it == col_of.end()) continue;
            auto red = reduce_lie(term.first);
            if (!red)
                throw std::logic_error("graded map: irreducible left factor " + term.first.str() + " in D_" +
                                       std::to_string(r) + " tt(" + w + ")");
            row[it->second] += c * pi_tilde(*red);
        }
    }
    return row;
}

std::vector<Aff> graded_partial(Kind kind, int N, int level, const Word& w) {
    BasisSets bs = basis_sets(kind, N, level);
    if (std::find(bs.B.begin(), bs.B.end(), w) == bs.B.end())
        throw std::invalid_argument("graded_partial: word " + w + " not in B");
    std::map<Word, int> col_of;
    for (std::size_t i = 0; i < bs.Bp.size(); ++i) col_of[bs.Bp[i]] = (int)i;
    return graded_row(kind, N, w, bs.Bp, col_of);
}

FiltMatrix build_matrix(Kind kind, int N, int level) {
    BasisSets bs = basis_sets(kind, N, level);
    FiltMatrix m;
    m.kind = kind;
    m.N = N;
    m.level = level;
    m.rows = bs.B;
    m.cols = bs.Bp;
    std::map<Word, int> col_of;
    for (std::size_t i = 0; i < bs.Bp.size(); ++i) col_of[bs.Bp[i]] = (int)i;
    for (auto& w : bs.B) m.entries.push_back(graded_row(kind, N, w, bs.Bp, col_of));
    return m;
}

// ---- determinants

Rat det_rat(const std::vector<std::vector<Rat>>& m) {
    std::size_t n = m.size();
    for (auto& row : m)
        if (row.size() != n) throw std::invalid_argument("det of a non-square matrix");
    if (n == 0) return 1;
    std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
    Int scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Int l = 1;
        for (auto& x : m[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        scale *= l;
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j].get_num() * (l / m[i][j].get_den());
    }
    int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = t;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Rat out(Int(sign * a[n - 1][n - 1]), scale);
    out.canonicalize();
    return out;
}

Aff det_exact(const FiltMatrix& m) {
    if (!m.symbolic()) return Aff(det_rat(m.at(0)));
    Rat d0 = det_rat(m.at(0)), d1 = det_rat(m.at(1)), d2 = det_rat(m.at(2));
    Aff d(d0, Rat(d1 - d0));
    if (d.at(2) != d2) throw std::logic_error("determinant is not affine in lambda");
    return d;
}

static bool is_int(const Rat& q) { return q.get_den() == 1; }
static bool is_odd_int(const Rat& q) { return is_int(q) && mpz_odd_p(q.get_num_mpz_t()); }
static bool is_even_int(const Rat& q) { return is_int(q) && mpz_even_p(q.get_num_mpz_t()); }

// upper triangular mod 2 with odd diagonal, on the given row/column positions
static bool unitri_mod2(const std::vector<std::vector<Rat>>& a, const std::vector<int>& ri,
                        const std::vector<int>& ci) {
    for (std::size_t x = 0; x < ri.size(); ++x)
        for (std::size_t y = 0; y < ci.size(); ++y) {
            const Rat& e = a[ri[x]][ci[y]];
            if (x == y && !is_odd_int(e)) return false;
            if (x > y && !is_even_int(e)) return false;
            if (x < y && !is_int(e)) return false;
        }
    return true;
}

Mod2Report det_mod2_structure(const FiltMatrix& m, const Rat& lambda) {
    Mod2Report rep;
    auto a = m.at(lambda);
    rep.det = det_rat(a);
    int n = (int)a.size();
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;

    if (m.kind == Kind::S) {
        if (m.level > 1) {
            rep.pattern = "upper unitriangular mod 2";
            rep.ok = unitri_mod2(a, all, all);
            if (rep.ok) rep.notes.push_back("det odd");
        } else {
            // last row 2^a 3: its diagonal entry is the full deconcatenation 2^{2a+1} d_{2^a 3}
            rep.pattern = "leading minor upper unitriangular mod 2, nonzero last diagonal entry";
            std::vector<int> lead(all.begin(), all.end() - 1);
            int pa = (m.N - 3) / 2;
            Rat expect = pow2(2 * pa + 1) * coeff_d_232(pa, 0);
            bool last_ok = n > 0 && a[n - 1][n - 1] == expect && expect != 0;
            int extra = 0;
            for (int j = 0; j + 1 < n; ++j)
                if (a[n - 1][j] != 0) ++extra;
            rep.ok = last_ok && unitri_mod2(a, lead, lead);
            if (n > 0) rep.notes.push_back("last diagonal entry " + rat_str(a[n - 1][n - 1]));
            rep.notes.push_back("last row: " + std::to_string(extra) + " further nonzero entries");
        }
        rep.ok = rep.ok && rep.det != 0;
        return rep;
    }

    rep.pattern = "block lower triangular by trailing 1s";
    std::vector<int> rc(n), cc(n);
    for (int i = 0; i < n; ++i) {
        rc[i] = trailing_ones(phi_inv(m.rows[i]));
        cc[i] = trailing_ones(m.cols[i]);
    }
    bool ok = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (cc[j] > rc[i] && a[i][j] != 0) ok = false;
    if (!ok) rep.notes.push_back("nonzero entry above the block diagonal");
    for (int alpha = 0; alpha < m.level; ++alpha) {
        std::vector<int> ri, ci;
        for (int i = 0; i < n; ++i) {
            if (rc[i] == alpha) ri.push_back(i);
            if (cc[i] == alpha) ci.push_back(i);
        }
        if (ri.size() != ci.size()) {
            ok = false;
            rep.notes.push_back("block " + std::to_string(alpha) + " not square");
            continue;
        }
        std::vector<std::vector<Rat>> blk;
        for (int x : ri) {
            blk.emplace_back();
            for (int y : ci) blk.back().push_back(a[x][y]);
        }
        Rat bd = det_rat(blk);
        bool tri = unitri_mod2(a, ri, ci);
        std::string tag = "block " + std::to_string(alpha) + " (" + std::to_string(ri.size()) + "x" +
                          std::to_string(ci.size()) + "): det " + rat_str(bd);
        if (alpha < m.level - 1) {
            if (!tri) ok = false;
            rep.notes.push_back(tag + (tri ? ", upper unitriangular mod 2" : ", NOT unitriangular mod 2"));
        } else {
            bool half = !is_int(bd) && is_odd_int(Rat(2 * bd));
            if (tri) tag += ", upper unitriangular mod 2";
            if (half) tag += ", in 1/2 + Z";
            rep.notes.push_back(tag);
            if (bd == 0) ok = false;
        }
    }
    rep.ok = ok && rep.det != 0;
    return rep;
}

Rat singular_lambda(int N) {
    if (N < 1 || N % 2 == 0) throw std::invalid_argument("singular_lambda needs odd N >= 1");
    Aff d = det_exact(build_matrix(Kind::Hstar, N, 1));
    if (d.c1 == 0) throw std::logic_error("determinant constant in lambda");
    return -d.c0 / d.c1;
}

// ---- level checks

static bool check_level(Kind kind, const Word& w, int r) {
    int lw = word_level(kind, w);
    DerivResult d = deriv_D(r, word_to_index(w));
    // group by right factor so that cancelling left factors are seen as such
    std::map<Index, LieComb> by_right;
    for (const auto& [term, c] : d) {
        auto red = reduce_lie(term.first);
        if (!red) {
            // formal factor: keep it as an opaque nonzero contribution
            by_right[term.second].add(-1000 - (int)by_right.size(), c);
            continue;
        }
        by_right[term.second].add(*red, c);
    }
    for (const auto& [right, lc] : by_right) {
        if (lc.empty()) continue;
        auto rw = as_word(right);
        if (!rw) return false;
        bool cls = kind == Kind::S ? (rw->empty() || is_saha_word(*rw)) : is_hoffman_word(*rw);
        if (!cls || word_level(kind, *rw) > lw - 1) return false;
    }
    return true;
}

bool check_saha_level(const Word& w, int r) { return check_level(Kind::S, w, r); }
bool check_hoffman_level(const Word& w, int r) { return check_level(Kind::H, w, r); }

// ---- D_1 on products

int HFactor::weight() const {
    switch (kind) {
        case Kind::Log2: return 1;
        case Kind::T: return t.weight();
        case Kind::Z: return z.weight();
    }
    return 0;
}

std::string HFactor::str() const {
    switch (kind) {
        case Kind::Log2: return "log2";
        case Kind::T: return format_index(t, "t");
        case Kind::Z: return format_signed(z);
    }
    return "";
}

HMonomial hmono(std::vector<HFactor> fs) {
    std::sort(fs.begin(), fs.end());
    return fs;
}

std::string format_hexpr(const HExpr& e) {
    if (e.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : e) {
        bool neg = c < 0;
        Rat ac = neg ? Rat(-c) : c;
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        first = false;
        std::string body;
        for (std::size_t i = 0; i < m.size();) {
            std::size_t j = i;
            while (j < m.size() && m[j] == m[i]) ++j;
            if (!body.empty()) body += "*";
            body += m[i].str();
            if (j - i > 1) body += "^" + std::to_string(j - i);
            i = j;
        }
        if (body.empty()) os << rat_str(ac);
        else if (ac == 1) os << body;
        else os << rat_str(ac) << "*" << body;
    }
    return os.str();
}

// I^l(a; b; c) = nu(c - b) - nu(a - b), nu(x) = [|x| = 2]
static int ilie(int a, int b, int c) {
    auto nu = [](int x) { return (x == 2 || x == -2) ? 1 : 0; };
    return nu(c - b) - nu(a - b);
}

static HExpr zcomb_to_hexpr(const ZPoly& z) {
    HExpr out;
    for (const auto& [s, c] : z) {
        if (!c.is_rational()) throw std::logic_error("unexpected constant in regularised word");
        if (s.parts.empty()) out.add(HMonomial{}, c.constant_term());
        else out.add(hmono({HFactor::zv(s)}), c.constant_term());
    }
    return out;
}

HExpr d1_log_factor(const HFactor& f) {
    HExpr out;
    switch (f.kind) {
        case HFactor::Kind::Log2: out.add(HMonomial{}, 1); break;
        case HFactor::Kind::T: {
            const Index& k = f.t;
            int d = k.depth();
            if (d == 0) break;
            if (k.parts.back() == 1) throw std::invalid_argument("d1_log: divergent t value");
            auto mono = [](const Index& x) { return x.empty() ? HMonomial{} : hmono({HFactor::tv(x)}); };
            if (k.parts.front() == 1) out.add(mono(k.sub(2, d)), 1);
            break;
        }
        case HFactor::Kind::Z: {
            if (!f.z.convergent() || f.z.lead_zeros) throw std::invalid_argument("d1_log: divergent zeta");
            IntWord w = to_int_word(f.z);
            int n = (int)w.size();
            std::vector<int> a(n + 2);
            a[0] = 0;
            a[n + 1] = 1;
            for (int p = 0; p < n; ++p) a[p + 1] = w.letters[p];
            Rat sgn = sign_pow(f.z.depth());
            for (int p = 1; p <= n; ++p) {
                int c = ilie(a[p - 1], a[p], a[p + 1]);
                if (!c) continue;
                IntWord rest;
                for (int q = 1; q <= n; ++q)
                    if (q != p) rest.letters.push_back(a[q]);
                WPoly reg = shuffle_reg_word(rest, SymPoly(0));
                ZPoly z;
                for (const auto& [word, wc] : reg) {
                    ZComb zc = words_to_zeta(WComb(word, 1));
                    for (const auto& [s, sc] : zc) z.add(s, wc * SymPoly(sc));
                }
                out.add(zcomb_to_hexpr(z), sgn * c);
            }
            break;
        }
    }
    return out;
}

static HExpr mul(const HExpr& a, const HExpr& b) {
    HExpr out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            HMonomial m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            out.add(hmono(m), ca * cb);
        }
    return out;
}

HExpr d1_log(const HExpr& e) {
    HExpr out;
    for (const auto& [m, c] : e) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i > 0 && m[i] == m[i - 1]) continue;
            std::size_t mult = std::count(m.begin(), m.end(), m[i]);
            HMonomial rest = m;
            rest.erase(rest.begin() + i);
            out.add(mul(d1_log_factor(m[i]), HExpr(rest, 1)), c * Rat((long)mult));
        }
    }
    return out;
}

HIdentity hoffman_log_derivation(const HIdentity& id) { return {d1_log(id.lhs), d1_log(id.rhs)}; }

HIdentity hoffman_t132_identity() {
    auto T = [](std::initializer_list<int> k) { return HFactor::tv(Index(k)); };
    auto Z = [](std::vector<int> k) { return HFactor::zv(SignedIndex::from_ints(k)); };
    HIdentity id;
    id.lhs.add(hmono({T({1, 3, 2})}), 1);
    id.rhs.add(hmono({T({6})}), Rat(-2, 21));
    id.rhs.add(hmono({T({3}), T({3})}), Rat(-3, 196));
    id.rhs.add(hmono({T({2}), Z({1, -3})}), Rat(-1, 2));
    id.rhs.add(hmono({Z({1, -5})}), Rat(1, 4));
    id.rhs.add(hmono({T({5}), HFactor::log2()}), Rat(-1, 2));
    id.rhs.add(hmono({T({2}), T({3}), HFactor::log2()}), Rat(4, 7));
    return id;
}

static ZPoly factor_to_zpoly(const HFactor& f) {
    ZPoly out;
    switch (f.kind) {
        case HFactor::Kind::Log2: out.add(SignedIndex(), SymPoly::log2()); break;
        case HFactor::Kind::T:
            for (const auto& [s, c] : t_to_zeta(f.t)) out.add(s, SymPoly(c));
            break;
        case HFactor::Kind::Z: out.add(f.z, SymPoly(1)); break;
    }
    return out;
}

static ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b) {
    ZPoly out;
    for (const auto& [sa, ca] : a)
        for (const auto& [sb, cb] : b)
            for (const auto& [s, c] : stuffle(sa, sb)) out.add(s, ca * cb * SymPoly(c));
    return out;
}

static ZPoly hexpr_to_zpoly(const HExpr& e) {
    ZPoly out;
    for (const auto& [m, c] : e) {
        ZPoly p(SignedIndex(), SymPoly(1));
        for (auto& f : m) p = zpoly_mul(p, factor_to_zpoly(f));
        out.add(p, SymPoly(c));
    }
    return out;
}

bool hexpr_equal_exact(const HExpr& a, const HExpr& b) {
    return MzvReducer::instance().equal(hexpr_to_zpoly(a), hexpr_to_zpoly(b));
}

}  // namespace mtv
