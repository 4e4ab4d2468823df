#pragma once

#include "mtv/indexcore.hpp"
#include "mtv/lincomb.hpp"
#include "mtv/rational.hpp"

namespace mtv {

using ZComb = LinComb<SignedIndex, Rat>;
using WComb = LinComb<IntWord, Rat>;
using IComb = LinComb<Index, Rat>;

// quasi-shuffle on signed indices: (k,e) merged with (k',e') gives (k+k', e e')
ZComb stuffle(const SignedIndex& a, const SignedIndex& b);
ZComb stuffle(const ZComb& a, const ZComb& b);
// all-plus specialisation (t-stuffle and zeta-stuffle coincide on unsigned indices)
IComb stuffle(const Index& a, const Index& b);

WComb shuffle(const IntWord& u, const IntWord& v);
WComb shuffle(const WComb& u, const WComb& v);

// t(k) = 2^{-d} sum e_1..e_d zeta(e;k)
ZComb t_to_zeta(const Index& k);
// t~(k) = 2^{|k|} t(k)
ZComb t_tilde_to_zeta(const Index& k);

// t(r * s) == t(r) * t(s) after expanding both into signed zetas
bool stuffle_compat_check(const Index& r, const Index& s);

// zeta(s) = (-1)^d I(0; word(s); 1), extended linearly
WComb zeta_to_words(const ZComb& z);
ZComb words_to_zeta(const WComb& w);

}  // namespace mtv
