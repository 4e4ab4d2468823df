#pragma once

#include <map>
#include <utility>

namespace mtv {

// Customization point, found by ADL for non-arithmetic coefficient types.
template <class C>
bool lincomb_is_zero(const C& c) { return c == 0; }

// Finite formal sum over an ordered basis. Zero coefficients are never stored.
template <class B, class C>
class LinComb {
public:
    using map_type = std::map<B, C>;

    LinComb() = default;
    LinComb(const B& b, const C& c) { add(b, c); }

    void add(const B& b, const C& c) {
        if (lincomb_is_zero(c)) return;
        auto it = m_.find(b);
        if (it == m_.end()) {
            m_.emplace(b, c);
            return;
        }
        it->second += c;
        if (lincomb_is_zero(it->second)) m_.erase(it);
    }

    void add(const LinComb& o, const C& scale) {
        for (const auto& [b, c] : o.m_) add(b, c * scale);
    }

    C coeff(const B& b) const {
        auto it = m_.find(b);
        return it == m_.end() ? C() : it->second;
    }

    LinComb& operator+=(const LinComb& o) {
        for (const auto& [b, c] : o.m_) add(b, c);
        return *this;
    }
    LinComb& operator-=(const LinComb& o) {
        for (const auto& [b, c] : o.m_) add(b, C(-c));
        return *this;
    }
    LinComb& operator*=(const C& s) {
        if (lincomb_is_zero(s)) {
            m_.clear();
            return *this;
        }
        for (auto it = m_.begin(); it != m_.end();) {
            it->second = it->second * s;
            if (lincomb_is_zero(it->second))
                it = m_.erase(it);
            else
                ++it;
        }
        return *this;
    }
    friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
    friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
    friend LinComb operator*(LinComb a, const C& s) { return a *= s; }
    friend LinComb operator*(const C& s, LinComb a) { return a *= s; }
    friend bool operator==(const LinComb& a, const LinComb& b) { return a.m_ == b.m_; }

    bool empty() const { return m_.empty(); }
    std::size_t size() const { return m_.size(); }
    auto begin() const { return m_.begin(); }
    auto end() const { return m_.end(); }
    const map_type& terms() const { return m_; }

    template <class F>
    auto map_basis(F f) const {
        LinComb<decltype(f(std::declval<B>())), C> out;
        for (const auto& [b, c] : m_) out.add(f(b), c);
        return out;
    }

private:
    map_type m_;
};

}  // namespace mtv
