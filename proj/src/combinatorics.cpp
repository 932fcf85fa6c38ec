#include "hetnet/combinatorics.hpp"

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace hetnet {

namespace {

std::mutex g_memo_mutex;

std::vector<Composition3> build_compositions3(int n) {
    std::vector<Composition3> out;
    out.reserve(static_cast<std::size_t>(n + 1) * (n + 2) / 2);
    for (int n1 = 0; n1 <= n; ++n1)
        for (int n2 = 0; n2 <= n - n1; ++n2) out.push_back({n1, n2, n - n1 - n2});
    return out;
}

// enumerate m_1..m_n with sum a*m_a = n, largest part first
void recurse_partitions(int remaining, int max_part, std::vector<int>& m,
                        std::vector<WeightedPartition>& out) {
    if (remaining == 0) {
        out.push_back(m);
        return;
    }
    for (int a = std::min(remaining, max_part); a >= 1; --a) {
        ++m[a - 1];
        recurse_partitions(remaining - a, a, m, out);
        --m[a - 1];
    }
}

std::vector<WeightedPartition> build_weighted_partitions(int n) {
    std::vector<WeightedPartition> out;
    if (n == 0) {
        out.push_back({});
        return out;
    }
    std::vector<int> m(static_cast<std::size_t>(n), 0);
    recurse_partitions(n, n, m, out);
    return out;
}

}  // namespace

const std::vector<Composition3>& compositions3(int n) {
    if (n < 0) throw std::invalid_argument("compositions3: n must be >= 0");
    std::scoped_lock lock(g_memo_mutex);
    static std::unordered_map<int, std::vector<Composition3>> memo;
    auto it = memo.find(n);
    if (it == memo.end()) it = memo.emplace(n, build_compositions3(n)).first;
    return it->second;
}

const std::vector<WeightedPartition>& weighted_partitions(int n) {
    if (n < 0) throw std::invalid_argument("weighted_partitions: n must be >= 0");
    std::scoped_lock lock(g_memo_mutex);
    static std::unordered_map<int, std::vector<WeightedPartition>> memo;
    auto it = memo.find(n);
    if (it == memo.end()) it = memo.emplace(n, build_weighted_partitions(n)).first;
    return it->second;
}

namespace {

// exact C(n, k) in 128 bits via the stepwise-divisible product
uint128 binomial128(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    uint128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    }
    return r;
}

}  // namespace

uint128 multinomial(int n, int n1, int n2, int n3) {
    if (n1 < 0 || n2 < 0 || n3 < 0 || n1 + n2 + n3 != n)
        throw std::invalid_argument("multinomial: parts must be nonnegative and sum to n");
    if (n > 64) throw std::invalid_argument("multinomial: n must be <= 64");
    return binomial128(n, n1) * binomial128(n - n1, n2);
}

}  // namespace hetnet
