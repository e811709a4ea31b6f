#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

namespace jts {

// Sorted set of vertex labels. The representation is canonical (sorted,
// no duplicates), so equal sets compare equal member-wise and a VertexSet
// can serve directly as a cache key.
class VertexSet {
public:
    VertexSet() = default;
    VertexSet(std::initializer_list<int> xs) : v_(xs) { normalize(); }
    explicit VertexSet(std::vector<int> xs) : v_(std::move(xs)) { normalize(); }

    static VertexSet singleton(int x) {
        VertexSet s;
        s.v_.push_back(x);
        return s;
    }

    bool empty() const { return v_.empty(); }
    int size() const { return static_cast<int>(v_.size()); }
    int min() const { return v_.front(); }
    const std::vector<int>& members() const { return v_; }

    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }

    bool contains(int x) const { return std::binary_search(v_.begin(), v_.end(), x); }

    bool subset_of(const VertexSet& o) const {
        return std::includes(o.v_.begin(), o.v_.end(), v_.begin(), v_.end());
    }

    bool intersects(const VertexSet& o) const {
        auto a = v_.begin();
        auto b = o.v_.begin();
        while (a != v_.end() && b != o.v_.end()) {
            if (*a < *b)
                ++a;
            else if (*b < *a)
                ++b;
            else
                return true;
        }
        return false;
    }

    VertexSet set_union(const VertexSet& o) const {
        VertexSet r;
        r.v_.reserve(v_.size() + o.v_.size());
        std::set_union(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(), std::back_inserter(r.v_));
        return r;
    }

    VertexSet set_intersection(const VertexSet& o) const {
        VertexSet r;
        std::set_intersection(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(),
                              std::back_inserter(r.v_));
        return r;
    }

    VertexSet set_difference(const VertexSet& o) const {
        VertexSet r;
        std::set_difference(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(),
                            std::back_inserter(r.v_));
        return r;
    }

    int intersection_size(const VertexSet& o) const {
        int c = 0;
        auto a = v_.begin();
        auto b = o.v_.begin();
        while (a != v_.end() && b != o.v_.end()) {
            if (*a < *b)
                ++a;
            else if (*b < *a)
                ++b;
            else {
                ++c;
                ++a;
                ++b;
            }
        }
        return c;
    }

    void insert(int x) {
        auto it = std::lower_bound(v_.begin(), v_.end(), x);
        if (it == v_.end() || *it != x) v_.insert(it, x);
    }

    void erase(int x) {
        auto it = std::lower_bound(v_.begin(), v_.end(), x);
        if (it != v_.end() && *it == x) v_.erase(it);
    }

    bool operator==(const VertexSet& o) const = default;
    auto operator<=>(const VertexSet& o) const = default;

    std::string to_string() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < v_.size(); ++i) {
            if (i) os << ' ';
            os << v_[i];
        }
        return os.str();
    }

private:
    std::vector<int> v_;

    void normalize() {
        std::sort(v_.begin(), v_.end());
        v_.erase(std::unique(v_.begin(), v_.end()), v_.end());
    }
};

struct VertexSetHash {
    std::size_t operator()(const VertexSet& s) const {
        std::size_t h = 1469598103934665603ull;
        for (int x : s) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

}  // namespace jts
