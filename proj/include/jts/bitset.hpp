#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace jts {

// Fixed-width dynamic bitset used for adjacency rows. Word-parallel set
// operations keep edge tests and neighbourhood intersections O(v/64).
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int capacity() const { return n_; }

    void set(int i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }

    void clear() { std::fill(w_.begin(), w_.end(), std::uint64_t{0}); }

    int count() const {
        int c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }

    bool intersects(const Bitset& o) const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & o.w_[k]) return true;
        return false;
    }

    bool is_subset_of(const Bitset& o) const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }

    int intersection_count(const Bitset& o) const {
        int c = 0;
        for (std::size_t k = 0; k < w_.size(); ++k) c += std::popcount(w_[k] & o.w_[k]);
        return c;
    }

    Bitset& operator&=(const Bitset& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
        return *this;
    }

    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }

    bool operator==(const Bitset& o) const = default;

    // visits set bits in increasing order
    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < w_.size(); ++k) {
            std::uint64_t w = w_[k];
            while (w) {
                int b = std::countr_zero(w);
                f(static_cast<int>(k * 64 + b));
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(count());
        for_each([&](int i) { out.push_back(i); });
        return out;
    }

private:
    int n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace jts
