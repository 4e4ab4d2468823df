#pragma once

#include "mtv/indexcore.hpp"
#include "mtv/lincomb.hpp"
#include "mtv/symring.hpp"
#include "mtv/wordalg.hpp"

#include <map>
#include <mutex>
#include <vector>

namespace mtv {

// zeta combinations whose coefficients may carry constants and indeterminates
using ZPoly = LinComb<SignedIndex, SymPoly>;

// W = 0 shuffle regularisation of a word without leading zeros:
// u a 1^n  ->  (-1)^n (u sh 1^n) a,  a != 1
WComb reg0_trailing(const IntWord& w);
WComb reg0_trailing(const WComb& w);

// Reduction of alternating MZVs modulo regularised double shuffle and
// distribution relations. Reductions are exact: the map is checked against
// every relation row it was built from.
class MzvReducer {
public:
    static constexpr int kMaxWeight = 7;

    static MzvReducer& instance();

    // Moves all constants (pi2, log2, odd zetas) into the zeta arguments.
    // Result coefficients contain indeterminates only.
    ZPoly linearize(const ZPoly& z);
    ZPoly linearize(const SymPoly& p);

    // canonical form; inputs must be convergent and of weight <= kMaxWeight
    ZPoly reduce(const ZPoly& z);
    bool is_zero(const ZPoly& z) { return reduce(z).empty(); }
    bool equal(const ZPoly& a, const ZPoly& b) { return is_zero(a - b); }

    int dimension(int w);
    int relation_count(int w);
    int column_count(int w);

private:
    struct Level {
        std::vector<SignedIndex> cols;
        std::map<SignedIndex, int> col_of;
        std::vector<int> free_cols;
        std::map<int, std::vector<std::pair<int, Rat>>> image;  // pivot col -> combo over cols
        int relations = 0;
    };
    const Level& level(int w);
    Level build(int w);

    std::mutex mu_;
    std::map<int, Level> levels_;
};

}  // namespace mtv
