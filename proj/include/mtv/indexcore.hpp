#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mtv {

struct Index {
    std::vector<int> parts;

    Index() = default;
    Index(std::initializer_list<int> p) : parts(p) {}
    explicit Index(std::vector<int> p) : parts(std::move(p)) {}

    int depth() const { return (int)parts.size(); }
    int weight() const;
    bool empty() const { return parts.empty(); }
    // k_i..k_j, 1-based inclusive
    Index sub(int i, int j) const;
    auto operator<=>(const Index&) const = default;
    bool operator==(const Index&) const = default;
};

struct SignedPart {
    int k = 1;
    int eps = 1;  // +1 or -1
    auto operator<=>(const SignedPart&) const = default;
    bool operator==(const SignedPart&) const = default;
};

struct SignedIndex {
    std::vector<SignedPart> parts;
    int lead_zeros = 0;

    SignedIndex() = default;
    explicit SignedIndex(std::vector<SignedPart> p, int l = 0) : parts(std::move(p)), lead_zeros(l) {}
    // all-plus lift
    static SignedIndex plus(const Index& k, int l = 0);
    // negative entries mean eps = -1
    static SignedIndex from_ints(const std::vector<int>& ks, int l = 0);

    int depth() const { return (int)parts.size(); }
    int weight() const;  // includes lead zeros
    bool convergent() const;
    bool all_plus() const;
    Index unsigned_index() const;
    auto operator<=>(const SignedIndex&) const = default;
    bool operator==(const SignedIndex&) const = default;
};

// letters in {0, +1, -1}; I(0; letters; 1)
struct IntWord {
    std::vector<int> letters;

    IntWord() = default;
    IntWord(std::initializer_list<int> l) : letters(l) {}
    explicit IntWord(std::vector<int> l) : letters(std::move(l)) {}

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    bool convergent() const;
    int depth() const;  // number of nonzero letters
    auto operator<=>(const IntWord&) const = default;
    bool operator==(const IntWord&) const = default;
};

IntWord to_int_word(const SignedIndex& s);
// throws std::invalid_argument on a word without nonzero letters
SignedIndex from_int_word(const IntWord& w);

// ---- basis words over {1,2,3}
using Word = std::string;
enum class Kind { S, H, Hstar };

Index word_to_index(const Word& w);
Word index_to_word(const Index& k);  // parts must be single digits
int word_weight(const Word& w);
int word_level(Kind kind, const Word& w);
bool is_saha_word(const Word& w);
bool is_hoffman_word(const Word& w);

// reverse colexicographic, largest first; 3 < 1 < 2, end of word smallest
bool colex_before(const Word& a, const Word& b);
void colex_sort(std::vector<Word>& ws);

std::vector<Word> enumerate_saha(int N);
std::vector<Word> enumerate_hoffman(int N);
std::vector<Word> enumerate_saha_level(int N, int level);
std::vector<Word> enumerate_hoffman_level(int N, int level);

struct BasisSets {
    std::vector<Word> B, Bp;
};
// throws std::invalid_argument unless N >= 1, l >= 1, N = l mod 2
BasisSets basis_sets(Kind kind, int N, int level);

// 2^a 1 u with a fixed by N
Word phi(const Word& u, int N);
// cut after the first 1
Word phi_inv(const Word& w);
int trailing_ones(const Word& w);
std::map<int, std::vector<Word>> trailing_ones_partition_Bp(const std::vector<Word>& Bp);
std::map<int, std::vector<Word>> trailing_ones_partition_B(const std::vector<Word>& B);

// ---- text forms
std::string format_index(const Index& k, const std::string& head = "t");
std::string format_signed(const SignedIndex& s);
std::string format_int_word(const IntWord& w);
std::string format_word(const Word& w);  // "∅" for empty

struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(const std::string& msg, std::size_t p)
        : std::runtime_error(msg + " at position " + std::to_string(p)), pos(p) {}
};

// "t(2,1,2)", "(2,1,2)", "2,1,2"
Index parse_index(const std::string& s);
// "z(2,-3)", "z_1(2,-3)"
SignedIndex parse_signed(const std::string& s);
// comma separated letters in {0,1,-1}, optionally in parentheses
IntWord parse_int_word(const std::string& s);

std::vector<long long> fibonacci_table(int n);  // F_0..F_n

}  // namespace mtv
