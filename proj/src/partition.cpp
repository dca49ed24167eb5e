#include "socc/partition.hpp"

#include <cmath>
#include <stdexcept>

namespace socc {

bool BlockPartition::valid() const {
    if (lengths.empty()) {
        return false;
    }
    for (int len : lengths) {
        if (len < 1) {
            return false;
        }
    }
    return true;
}

int BlockPartition::block_start(int l) const {
    int start = 0;
    for (int i = 0; i < l; ++i) {
        start += lengths[i];
    }
    return start;
}

double beta_prime(double beta) {
    if (!(beta > 0.0) || !(beta < 1.0)) {
        throw std::invalid_argument("beta_prime: beta must lie in (0,1)");
    }
    long long m = static_cast<long long>(std::floor(1.0 / beta));
    while (m >= 1 && 1.0 / static_cast<double>(m) <= beta) {
        --m;
    }
    while (1.0 / static_cast<double>(m + 1) > beta) {
        ++m;
    }
    if (m < 1) {
        throw std::invalid_argument("beta_prime: no reciprocal integer above beta");
    }
    return 1.0 / static_cast<double>(m);
}

BlockPartition make_partition(int n, double beta) {
    const double bp = beta_prime(beta);
    const int block = static_cast<int>(std::llround(1.0 / bp));
    if (block < 2) {
        throw std::invalid_argument("make_partition: beta too large, blocks would carry no digital symbols");
    }
    const int count = n / block;
    if (count < 1 || static_cast<double>(count) < beta * static_cast<double>(n)) {
        throw std::invalid_argument("make_partition: n too small for the requested analog rate");
    }
    BlockPartition part;
    part.lengths.assign(count - 1, block);
    part.lengths.push_back(n - (count - 1) * block);
    return part;
}

BlockPartition partition_for_base_length(int base_length, int block_length) {
    if (block_length < 2 || base_length < block_length - 1) {
        throw std::invalid_argument("partition_for_base_length: infeasible block length");
    }
    const int count = base_length / (block_length - 1);
    const int rem = base_length - count * (block_length - 1);
    BlockPartition part;
    part.lengths.assign(count, block_length);
    // a block of length b carries b-1 base symbols, so widening the last
    // block by rem uses absorbs the rem leftover symbols
    part.lengths.back() += rem;
    return part;
}

}  // namespace socc
