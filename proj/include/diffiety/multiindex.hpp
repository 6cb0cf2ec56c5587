#pragma once
/* Multiindices over the independent variables.
 *
 * A MultiIndex records how many derivatives are taken along each independent
 * variable.  Trailing zero counts are trimmed so that equal multiindices have
 * equal representations regardless of the ambient variable count.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

namespace diffiety {

class MultiIndex {
  public:
    MultiIndex() = default;

    static MultiIndex unit(std::size_t mu) {
        MultiIndex s;
        s.c_.resize(mu + 1, 0);
        s.c_[mu] = 1;
        return s;
    }

    static MultiIndex from_counts(std::vector<std::uint32_t> counts) {
        MultiIndex s;
        s.c_ = std::move(counts);
        s.trim();
        return s;
    }

    int order() const {
        int d = 0;
        for (auto k : c_) d += static_cast<int>(k);
        return d;
    }

    std::uint32_t count(std::size_t mu) const { return mu < c_.size() ? c_[mu] : 0; }

    /* Number of leading variable positions that may carry a nonzero count. */
    std::size_t width() const { return c_.size(); }

    bool empty() const { return c_.empty(); }

    MultiIndex plus(std::size_t mu) const {
        MultiIndex s = *this;
        if (s.c_.size() <= mu) s.c_.resize(mu + 1, 0);
        ++s.c_[mu];
        return s;
    }

    MultiIndex plus(const MultiIndex& o) const {
        MultiIndex s = *this;
        if (s.c_.size() < o.c_.size()) s.c_.resize(o.c_.size(), 0);
        for (std::size_t i = 0; i < o.c_.size(); ++i) s.c_[i] += o.c_[i];
        return s;
    }

    std::optional<MultiIndex> minus(std::size_t mu) const {
        if (count(mu) == 0) return std::nullopt;
        MultiIndex s = *this;
        --s.c_[mu];
        s.trim();
        return s;
    }

    std::optional<MultiIndex> minus(const MultiIndex& o) const {
        if (!o.divides(*this)) return std::nullopt;
        MultiIndex s = *this;
        for (std::size_t i = 0; i < o.c_.size(); ++i) s.c_[i] -= o.c_[i];
        s.trim();
        return s;
    }

    /* Componentwise a <= b. */
    bool divides(const MultiIndex& b) const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] > b.count(i)) return false;
        return true;
    }

    /* Graded order, ties broken lexicographically with the first variable most
     * significant: (0,1) < (1,0). */
    static int cmp(const MultiIndex& a, const MultiIndex& b) {
        int da = a.order(), db = b.order();
        if (da != db) return da < db ? -1 : 1;
        std::size_t w = a.c_.size() > b.c_.size() ? a.c_.size() : b.c_.size();
        for (std::size_t i = 0; i < w; ++i) {
            std::uint32_t x = a.count(i), y = b.count(i);
            if (x != y) return x < y ? -1 : 1;
        }
        return 0;
    }

    bool operator==(const MultiIndex& o) const { return c_ == o.c_; }
    bool operator!=(const MultiIndex& o) const { return !(*this == o); }
    bool operator<(const MultiIndex& o) const { return cmp(*this, o) < 0; }

  private:
    std::vector<std::uint32_t> c_;

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
};

/* All multiindices of order <= max_order over n variables, ascending. */
inline std::vector<MultiIndex> multiindices_up_to(int n, int max_order) {
    std::vector<MultiIndex> out{MultiIndex{}};
    std::size_t lo = 0;
    for (int d = 1; d <= max_order; ++d) {
        std::size_t hi = out.size();
        for (std::size_t i = lo; i < hi; ++i)
            for (int mu = 0; mu < n; ++mu) {
                MultiIndex s = out[i].plus(static_cast<std::size_t>(mu));
                bool seen = false;
                for (std::size_t j = hi; j < out.size(); ++j)
                    if (out[j] == s) {
                        seen = true;
                        break;
                    }
                if (!seen) out.push_back(s);
            }
        lo = hi;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace diffiety
