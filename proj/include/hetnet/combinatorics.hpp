#pragma once

#include <cstdint>
#include <vector>

namespace hetnet {

/// (n1,n2,n3) with n1+n2+n3 = n.
struct Composition3 {
    int n1 = 0;
    int n2 = 0;
    int n3 = 0;
    bool operator==(const Composition3&) const = default;
};

/// Solution of sum_a a*m[a-1] = n; m has length n (m[a-1] = multiplicity of
/// part a). The empty partition of 0 is the empty vector.
using WeightedPartition = std::vector<int>;

/// All compositions of n into three nonnegative parts, lexicographic order.
/// Memoized; the returned reference stays valid for the process lifetime.
const std::vector<Composition3>& compositions3(int n);

/// All weighted partitions of n; |result| = p(n). Memoized.
const std::vector<WeightedPartition>& weighted_partitions(int n);

using uint128 = unsigned __int128;

/// Exact n!/(n1! n2! n3!); requires n1+n2+n3 == n and n <= 64.
uint128 multinomial(int n, int n1, int n2, int n3);

inline double multinomial_d(int n, int n1, int n2, int n3) {
    return static_cast<double>(multinomial(n, n1, n2, n3));
}

}  // namespace hetnet
