#include "xhermite/partition.hpp"

#include "xhermite/errors.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace xh {

Partition make_partition(const std::vector<int>& parts) {
    Partition p;
    p.parts = parts;
    p.length = static_cast<int>(parts.size());
    for (int i = 0; i < p.length; ++i) {
        if (parts[i] < 1)
            throw NonPositivePart("partition part " + std::to_string(i + 1) +
                                  " is " + std::to_string(parts[i]) + " (< 1)");
        if (i + 1 < p.length && parts[i] < parts[i + 1])
            throw NonIncreasingViolation(
                "partition parts must be nonincreasing: part " +
                std::to_string(i + 1) + " < part " + std::to_string(i + 2));
        p.size += parts[i];
    }
    p.even = (p.length % 2 == 0);
    for (int k = 0; p.even && 2 * k + 1 < p.length; ++k)
        if (parts[2 * k] != parts[2 * k + 1]) p.even = false;
    return p;
}

std::vector<int> degree_set(const Partition& lambda, int n_max) {
    std::set<int> excluded;
    for (int i = 1; i <= lambda.length; ++i)
        excluded.insert(lambda.size + lambda.parts[i - 1] - i);
    std::vector<int> out;
    for (int n = std::max(0, lambda.size - lambda.length); n <= n_max; ++n)
        if (!excluded.count(n)) out.push_back(n);
    return out;
}

bool is_admissible_degree(const Partition& lambda, int n) {
    if (n < lambda.size - lambda.length || n < 0) return false;
    for (int i = 1; i <= lambda.length; ++i)
        if (n == lambda.size + lambda.parts[i - 1] - i) return false;
    return true;
}

} // namespace xh
