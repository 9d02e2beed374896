#pragma once

#include <vector>

namespace xh {

// An integer partition λ = (λ_1 ≥ λ_2 ≥ … ≥ λ_r ≥ 1). The empty partition is
// allowed and routes the pipeline to the classical Hermite case.
struct Partition {
    std::vector<int> parts;   // nonincreasing, each ≥ 1
    int size = 0;             // Σ λ_i
    int length = 0;           // r
    // True iff r is even and consecutive entries pair up (λ_{2k-1} = λ_{2k});
    // this is the hypothesis that keeps the denominator polynomial positive
    // on the real line. Vacuously true for the empty partition.
    bool even = true;
};

Partition make_partition(const std::vector<int>& parts);

// Admissible degrees {n : size-r ≤ n ≤ n_max} minus the excluded values
// {size + λ_i - i : i = 1..r}, ascending.
std::vector<int> degree_set(const Partition& lambda, int n_max);

bool is_admissible_degree(const Partition& lambda, int n);

} // namespace xh
