#include "mtv/indexcore.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace mtv {

int Index::weight() const { return std::accumulate(parts.begin(), parts.end(), 0); }

Index Index::sub(int i, int j) const {
    if (i > j) return {};
    return Index(std::vector<int>(parts.begin() + (i - 1), parts.begin() + j));
}

SignedIndex SignedIndex::plus(const Index& k, int l) {
    SignedIndex s;
    s.lead_zeros = l;
    for (int x : k.parts) s.parts.push_back({x, 1});
    return s;
}

SignedIndex SignedIndex::from_ints(const std::vector<int>& ks, int l) {
    SignedIndex s;
    s.lead_zeros = l;
    for (int x : ks) {
        if (x == 0) throw std::invalid_argument("zero entry in signed index");
        s.parts.push_back({x < 0 ? -x : x, x < 0 ? -1 : 1});
    }
    return s;
}

int SignedIndex::weight() const {
    int w = lead_zeros;
    for (auto& p : parts) w += p.k;
    return w;
}

bool SignedIndex::convergent() const {
    if (lead_zeros != 0) return false;
    if (parts.empty()) return true;
    return !(parts.back().k == 1 && parts.back().eps == 1);
}

bool SignedIndex::all_plus() const {
    return std::all_of(parts.begin(), parts.end(), [](const SignedPart& p) { return p.eps == 1; });
}

Index SignedIndex::unsigned_index() const {
    Index k;
    for (auto& p : parts) k.parts.push_back(p.k);
    return k;
}

bool IntWord::convergent() const {
    if (letters.empty()) return true;
    return letters.front() != 0 && letters.back() != 1;
}

int IntWord::depth() const {
    return (int)std::count_if(letters.begin(), letters.end(), [](int a) { return a != 0; });
}

IntWord to_int_word(const SignedIndex& s) {
    IntWord w;
    w.letters.assign(s.lead_zeros, 0);
    int d = s.depth();
    std::vector<int> eta(d + 1, 1);
    for (int i = d - 1; i >= 0; --i) eta[i] = eta[i + 1] * s.parts[i].eps;
    for (int i = 0; i < d; ++i) {
        w.letters.push_back(eta[i]);
        for (int z = 1; z < s.parts[i].k; ++z) w.letters.push_back(0);
    }
    return w;
}

SignedIndex from_int_word(const IntWord& w) {
    SignedIndex s;
    std::size_t i = 0;
    while (i < w.size() && w.letters[i] == 0) ++i;
    if (i == w.size()) throw std::invalid_argument("word has no nonzero letter");
    s.lead_zeros = (int)i;
    std::vector<int> eta;
    while (i < w.size()) {
        int a = w.letters[i++];
        if (a != 1 && a != -1) throw std::invalid_argument("letter outside {0,1,-1}");
        int k = 1;
        while (i < w.size() && w.letters[i] == 0) {
            ++k;
            ++i;
        }
        eta.push_back(a);
        s.parts.push_back({k, 1});
    }
    eta.push_back(1);
    for (std::size_t j = 0; j < s.parts.size(); ++j) s.parts[j].eps = eta[j] * eta[j + 1];
    return s;
}

// ---- words

Index word_to_index(const Word& w) {
    Index k;
    for (char c : w) k.parts.push_back(c - '0');
    return k;
}

Word index_to_word(const Index& k) {
    Word w;
    for (int x : k.parts) {
        if (x < 1 || x > 9) throw std::invalid_argument("index entry is not a single digit");
        w.push_back(char('0' + x));
    }
    return w;
}

int word_weight(const Word& w) {
    int s = 0;
    for (char c : w) s += c - '0';
    return s;
}

int word_level(Kind kind, const Word& w) {
    int l = 0;
    for (char c : w)
        if (c == '1' || (kind == Kind::S && c == '3')) ++l;
    return l;
}

bool is_hoffman_word(const Word& w) {
    return std::all_of(w.begin(), w.end(), [](char c) { return c == '1' || c == '2'; });
}

bool is_saha_word(const Word& w) {
    if (w.empty()) return false;
    if (w.back() != '2' && w.back() != '3') return false;
    return is_hoffman_word(w.substr(0, w.size() - 1));
}

static int letter_rank(char c) { return c == '3' ? 0 : c == '1' ? 1 : 2; }

bool colex_before(const Word& a, const Word& b) {
    auto ia = a.rbegin(), ib = b.rbegin();
    for (; ia != a.rend() && ib != b.rend(); ++ia, ++ib) {
        int ra = letter_rank(*ia), rb = letter_rank(*ib);
        if (ra != rb) return ra > rb;
    }
    // the longer word (shorter one is its suffix) comes first
    return ia != a.rend() && ib == b.rend();
}

void colex_sort(std::vector<Word>& ws) { std::sort(ws.begin(), ws.end(), colex_before); }

static void gen12(int n, Word& cur, std::vector<Word>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (char c : {'1', '2'}) {
        int v = c - '0';
        if (v > n) continue;
        cur.push_back(c);
        gen12(n - v, cur, out);
        cur.pop_back();
    }
}

static std::vector<Word> words12(int n) {
    std::vector<Word> out;
    if (n < 0) return out;
    Word cur;
    gen12(n, cur, out);
    return out;
}

std::vector<Word> enumerate_hoffman(int N) {
    auto out = words12(N);
    colex_sort(out);
    return out;
}

std::vector<Word> enumerate_saha(int N) {
    std::vector<Word> out;
    for (char last : {'2', '3'}) {
        for (auto& w : words12(N - (last - '0'))) out.push_back(w + last);
    }
    colex_sort(out);
    return out;
}

std::vector<Word> enumerate_hoffman_level(int N, int level) {
    std::vector<Word> out;
    for (auto& w : enumerate_hoffman(N))
        if (word_level(Kind::H, w) == level) out.push_back(w);
    return out;
}

std::vector<Word> enumerate_saha_level(int N, int level) {
    std::vector<Word> out;
    for (auto& w : enumerate_saha(N))
        if (word_level(Kind::S, w) == level) out.push_back(w);
    return out;
}

BasisSets basis_sets(Kind kind, int N, int level) {
    if (N < 1 || level < 1 || (N - level) % 2 != 0)
        throw std::invalid_argument("basis_sets needs N >= 1, level >= 1, N = level mod 2");
    BasisSets bs;
    bool saha = kind == Kind::S;
    bs.B = saha ? enumerate_saha_level(N, level) : enumerate_hoffman_level(N, level);
    for (int n = N - 1; n >= 0; n -= 2) {
        if (saha) {
            if (n == 0) {
                if (level == 1) bs.Bp.push_back("");
            } else {
                for (auto& w : enumerate_saha_level(n, level - 1)) bs.Bp.push_back(w);
            }
        } else {
            for (auto& w : enumerate_hoffman_level(n, level - 1)) bs.Bp.push_back(w);
        }
    }
    colex_sort(bs.Bp);
    return bs;
}

Word phi(const Word& u, int N) {
    int rest = N - 1 - word_weight(u);
    if (rest < 0 || rest % 2 != 0) throw std::invalid_argument("phi: weight mismatch");
    return Word(rest / 2, '2') + "1" + u;
}

Word phi_inv(const Word& w) {
    auto p = w.find('1');
    if (p == Word::npos) throw std::invalid_argument("phi_inv: word has no 1");
    return w.substr(p + 1);
}

int trailing_ones(const Word& w) {
    int n = 0;
    for (auto it = w.rbegin(); it != w.rend() && *it == '1'; ++it) ++n;
    return n;
}

std::map<int, std::vector<Word>> trailing_ones_partition_Bp(const std::vector<Word>& Bp) {
    std::map<int, std::vector<Word>> out;
    for (auto& w : Bp) out[trailing_ones(w)].push_back(w);
    return out;
}

std::map<int, std::vector<Word>> trailing_ones_partition_B(const std::vector<Word>& B) {
    std::map<int, std::vector<Word>> out;
    for (auto& w : B) out[trailing_ones(phi_inv(w))].push_back(w);
    return out;
}

// ---- text

std::string format_index(const Index& k, const std::string& head) {
    std::string s = head + "(";
    for (std::size_t i = 0; i < k.parts.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(k.parts[i]);
    }
    return s + ")";
}

std::string format_signed(const SignedIndex& s) {
    std::string out = "z";
    if (s.lead_zeros) out += "_" + std::to_string(s.lead_zeros);
    out += "(";
    for (std::size_t i = 0; i < s.parts.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s.parts[i].k * s.parts[i].eps);
    }
    return out + ")";
}

std::string format_int_word(const IntWord& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(w.letters[i]);
    }
    return s + ")";
}

std::string format_word(const Word& w) { return w.empty() ? "∅" : w; }

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void ws() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    bool eat(char c) {
        ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", i);
    }
    int integer(bool allow_sign) {
        ws();
        std::size_t st = i;
        bool neg = false;
        if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
        std::size_t d0 = i;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
        if (i == d0) throw ParseError("expected integer", st);
        if (i - d0 > 6) throw ParseError("integer too large", d0);
        int v = std::stoi(s.substr(d0, i - d0));
        return neg ? -v : v;
    }
    void end() {
        ws();
        if (i != s.size()) throw ParseError("unexpected trailing input", i);
    }
};

std::vector<int> int_list(Cursor& c, bool allow_sign, bool paren, std::vector<std::size_t>* starts = nullptr) {
    std::vector<int> v;
    if (paren) c.expect('(');
    c.ws();
    if (paren && c.eat(')')) return v;
    if (!paren && c.i == c.s.size()) return v;
    for (;;) {
        c.ws();
        if (starts) starts->push_back(c.i);
        v.push_back(c.integer(allow_sign));
        if (c.eat(',')) continue;
        break;
    }
    if (paren) c.expect(')');
    return v;
}

}  // namespace

Index parse_index(const std::string& s) {
    Cursor c{s};
    c.ws();
    bool paren = false;
    if (c.i < s.size() && s[c.i] == 't') {
        ++c.i;
        paren = true;
    } else if (c.i < s.size() && s[c.i] == '(') {
        paren = true;
    }
    std::vector<std::size_t> at;
    auto v = int_list(c, false, paren, &at);
    c.end();
    for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j] < 1) throw ParseError("index entries must be positive", at[j]);
    return Index(v);
}

SignedIndex parse_signed(const std::string& s) {
    Cursor c{s};
    c.expect('z');
    int l = 0;
    if (c.eat('_')) l = c.integer(false);
    std::vector<std::size_t> at;
    auto v = int_list(c, true, true, &at);
    c.end();
    for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j] == 0) throw ParseError("zero entry in signed index", at[j]);
    return SignedIndex::from_ints(v, l);
}

IntWord parse_int_word(const std::string& s) {
    Cursor c{s};
    c.ws();
    bool paren = c.i < s.size() && s[c.i] == '(';
    auto v = int_list(c, true, paren);
    c.end();
    for (int x : v)
        if (x < -1 || x > 1) throw ParseError("letters must be in {0,1,-1}", 0);
    return IntWord(v);
}

std::vector<long long> fibonacci_table(int n) {
    std::vector<long long> f(std::max(n + 1, 2), 0);
    f[1] = 1;
    for (int i = 2; i <= n; ++i) f[i] = f[i - 1] + f[i - 2];
    return f;
}

}  // namespace mtv
