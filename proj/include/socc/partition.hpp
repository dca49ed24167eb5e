#pragma once

#include <numeric>
#include <vector>

namespace socc {

/// Lengths n_1..n_L of the per-computation channel-use blocks.
struct BlockPartition {
    std::vector<int> lengths;

    int total() const { return std::accumulate(lengths.begin(), lengths.end(), 0); }
    int block_count() const { return static_cast<int>(lengths.size()); }
    bool valid() const;

    /// Index of the first channel use of block l (0-based).
    int block_start(int l) const;
};

/// beta' = min{1/m : m natural, 1/m > beta}. The inequality is strict, so
/// beta = 1/m maps to 1/(m-1).
double beta_prime(double beta);

/// L-1 blocks of length 1/beta' plus a final block of at least that length,
/// totalling n, with L >= beta*n. Throws std::invalid_argument when no such
/// partition exists (n too small, or beta >= 1/2 so that blocks would have
/// length one and carry no digital payload).
BlockPartition make_partition(int n, double beta);

/// Partition with equal blocks of `block_length` covering `base_length`
/// digital symbols (total = base_length + L); any remainder is absorbed by
/// the final block.
BlockPartition partition_for_base_length(int base_length, int block_length);

}  // namespace socc
