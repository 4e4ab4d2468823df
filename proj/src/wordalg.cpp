#include "mtv/wordalg.hpp"

#include <vector>

namespace mtv {

namespace {

using Parts = std::vector<SignedPart>;

// all quasi-shuffles of a[i..] and b[j..], memoised over suffix pairs
struct StuffleDP {
    const Parts& a;
    const Parts& b;
    std::vector<std::vector<std::vector<std::pair<Parts, Rat>>>> memo;
    std::vector<std::vector<bool>> done;

    StuffleDP(const Parts& a_, const Parts& b_)
        : a(a_), b(b_),
          memo(a_.size() + 1, std::vector<std::vector<std::pair<Parts, Rat>>>(b_.size() + 1)),
          done(a_.size() + 1, std::vector<bool>(b_.size() + 1, false)) {}

    const std::vector<std::pair<Parts, Rat>>& run(std::size_t i, std::size_t j) {
        if (done[i][j]) return memo[i][j];
        auto& out = memo[i][j];
        if (i == a.size() || j == b.size()) {
            Parts p(i == a.size() ? b.begin() + j : a.begin() + i, i == a.size() ? b.end() : a.end());
            out.push_back({p, Rat(1)});
        } else {
            auto prepend = [&](const SignedPart& x, const std::vector<std::pair<Parts, Rat>>& rest) {
                for (auto& [p, c] : rest) {
                    Parts q;
                    q.reserve(p.size() + 1);
                    q.push_back(x);
                    q.insert(q.end(), p.begin(), p.end());
                    out.push_back({std::move(q), c});
                }
            };
            prepend(a[i], run(i + 1, j));
            prepend(b[j], run(i, j + 1));
            prepend({a[i].k + b[j].k, a[i].eps * b[j].eps}, run(i + 1, j + 1));
        }
        done[i][j] = true;
        return out;
    }
};

}  // namespace

ZComb stuffle(const SignedIndex& a, const SignedIndex& b) {
    ZComb out;
    if (a.lead_zeros || b.lead_zeros) throw std::invalid_argument("stuffle: lead zeros not allowed");
    StuffleDP dp(a.parts, b.parts);
    for (auto& [p, c] : dp.run(0, 0)) out.add(SignedIndex(p), c);
    return out;
}

ZComb stuffle(const ZComb& a, const ZComb& b) {
    ZComb out;
    for (auto& [x, cx] : a)
        for (auto& [y, cy] : b) out.add(stuffle(x, y), cx * cy);
    return out;
}

IComb stuffle(const Index& a, const Index& b) {
    IComb out;
    for (auto& [s, c] : stuffle(SignedIndex::plus(a), SignedIndex::plus(b))) out.add(s.unsigned_index(), c);
    return out;
}

WComb shuffle(const IntWord& u, const IntWord& v) {
    // dp[i][j]: shuffles of suffixes u[i..], v[j..]
    std::size_t n = u.size(), m = v.size();
    std::vector<std::vector<std::map<std::vector<int>, Rat>>> dp(n + 1, std::vector<std::map<std::vector<int>, Rat>>(m + 1));
    for (std::size_t i = n + 1; i-- > 0;) {
        for (std::size_t j = m + 1; j-- > 0;) {
            auto& cell = dp[i][j];
            if (i == n || j == m) {
                std::vector<int> w(i == n ? v.letters.begin() + j : u.letters.begin() + i,
                                   i == n ? v.letters.end() : u.letters.end());
                cell[w] = 1;
                continue;
            }
            for (auto& [w, c] : dp[i + 1][j]) {
                std::vector<int> x{u.letters[i]};
                x.insert(x.end(), w.begin(), w.end());
                cell[x] += c;
            }
            for (auto& [w, c] : dp[i][j + 1]) {
                std::vector<int> x{v.letters[j]};
                x.insert(x.end(), w.begin(), w.end());
                cell[x] += c;
            }
        }
        if (i + 1 <= n) dp[i + 1].clear();
    }
    WComb out;
    for (auto& [w, c] : dp[0][0]) out.add(IntWord(w), c);
    return out;
}

WComb shuffle(const WComb& a, const WComb& b) {
    WComb out;
    for (auto& [x, cx] : a)
        for (auto& [y, cy] : b) out.add(shuffle(x, y), cx * cy);
    return out;
}

ZComb t_to_zeta(const Index& k) {
    ZComb out;
    int d = k.depth();
    Rat c = pow2(-d);
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        SignedIndex s = SignedIndex::plus(k);
        int sgn = 1;
        for (int i = 0; i < d; ++i)
            if (mask & (1u << i)) {
                s.parts[i].eps = -1;
                sgn = -sgn;
            }
        out.add(s, c * sgn);
    }
    return out;
}

ZComb t_tilde_to_zeta(const Index& k) { return t_to_zeta(k) * pow2(k.weight()); }

bool stuffle_compat_check(const Index& r, const Index& s) {
    ZComb lhs;
    for (auto& [k, c] : stuffle(r, s)) lhs.add(t_to_zeta(k), c);
    ZComb rhs = stuffle(t_to_zeta(r), t_to_zeta(s));
    return lhs == rhs;
}

WComb zeta_to_words(const ZComb& z) {
    WComb out;
    for (auto& [s, c] : z) out.add(to_int_word(s), s.depth() % 2 ? Rat(-c) : c);
    return out;
}

ZComb words_to_zeta(const WComb& w) {
    ZComb out;
    for (auto& [x, c] : w) {
        if (x.empty()) {
            out.add(SignedIndex(), c);
            continue;
        }
        SignedIndex s = from_int_word(x);
        out.add(s, s.depth() % 2 ? Rat(-c) : c);
    }
    return out;
}

}  // namespace mtv
