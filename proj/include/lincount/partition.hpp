#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace lincount {

/// A partition of an integer, parts stored sorted ascending.
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    explicit Partition(std::vector<int> p) : parts(std::move(p)) {
        std::sort(parts.begin(), parts.end());
    }

    int sum() const { return std::accumulate(parts.begin(), parts.end(), 0); }
    int count_ones() const {
        int n = 0;
        for (int p : parts)
            if (p == 1) ++n;
        return n;
    }

    bool operator==(const Partition& o) const { return parts == o.parts; }
    bool operator<(const Partition& o) const { return parts < o.parts; }

    std::string str() const {
        std::string s;
        for (size_t i = 0; i < parts.size(); ++i) {
            if (i) s += '+';
            s += std::to_string(parts[i]);
        }
        return s;
    }
};

} // namespace lincount
