#include "socc/mac_code.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "socc/planemap.hpp"

namespace socc {

RandomMacCode::RandomMacCode(int users, int messages_per_user, int block_length, double amplitude,
                             std::uint64_t seed)
    : users_(users), messages_(messages_per_user), n_(block_length), amplitude_(amplitude) {
    if (users < 1 || messages_per_user < 1 || block_length < 1 || !(amplitude > 0.0)) {
        throw std::invalid_argument("RandomMacCode: bad parameters");
    }
    Rng rng(seed, 0x636f6465ull);
    codewords_.reserve(static_cast<std::size_t>(users_) * messages_);
    for (int k = 0; k < users_; ++k) {
        for (int m = 0; m < messages_; ++m) {
            Eigen::VectorXd w(n_);
            for (int i = 0; i < n_; ++i) {
                w[i] = amplitude_ * (2.0 * rng.uniform() - 1.0);
            }
            codewords_.push_back(std::move(w));
        }
    }
}

Eigen::VectorXd RandomMacCode::encode(int user, int message) const {
    if (user < 0 || user >= users_ || message < 0 || message >= messages_) {
        throw std::out_of_range("RandomMacCode::encode: message out of range");
    }
    return codewords_[static_cast<std::size_t>(user) * messages_ + message];
}

std::vector<int> RandomMacCode::decode(const Eigen::VectorXd& received) const {
    if (received.size() != n_) {
        throw std::invalid_argument("RandomMacCode::decode: length mismatch");
    }
    // exhaustive minimum-distance search over message tuples
    std::vector<int> best(users_, 0), current(users_, 0);
    double best_dist = std::numeric_limits<double>::infinity();
    while (true) {
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(n_);
        for (int k = 0; k < users_; ++k) {
            sum += codewords_[static_cast<std::size_t>(k) * messages_ + current[k]];
        }
        const double d = (received - sum).squaredNorm();
        if (d < best_dist) {
            best_dist = d;
            best = current;
        }
        int k = 0;
        while (k < users_ && ++current[k] == messages_) {
            current[k] = 0;
            ++k;
        }
        if (k == users_) {
            break;
        }
    }
    return best;
}

Eigen::VectorXd wrap_signal(const BlockPartition& partition, const Eigen::VectorXd& base) {
    const int n = partition.total();
    const int L = partition.block_count();
    if (base.size() != n - L) {
        throw std::invalid_argument("wrap_signal: base length must be total minus block count");
    }
    Eigen::VectorXd out(n);
    int in_pos = 0;
    int out_pos = 0;
    for (int len : partition.lengths) {
        const PlaneMap& map = cached_planemap(len);
        out.segment(out_pos, len) = map.forward(base.segment(in_pos, len - 1));
        in_pos += len - 1;
        out_pos += len;
    }
    return out;
}

Eigen::VectorXd unwrap_signal(const BlockPartition& partition, const Eigen::VectorXd& received) {
    const int n = partition.total();
    const int L = partition.block_count();
    if (received.size() != n) {
        throw std::invalid_argument("unwrap_signal: length mismatch");
    }
    Eigen::VectorXd out(n - L);
    int in_pos = 0;
    int out_pos = 0;
    for (int len : partition.lengths) {
        const PlaneMap& map = cached_planemap(len);
        out.segment(out_pos, len - 1) = map.adjoint(received.segment(in_pos, len));
        in_pos += len;
        out_pos += len - 1;
    }
    return out;
}

double wrap_amplitude_factor(const BlockPartition& partition) {
    double factor = 0.0;
    for (int len : partition.lengths) {
        factor = std::max(factor, cached_planemap(len).max_row_abs_sum());
    }
    return factor;
}

WrappedCode::WrappedCode(std::shared_ptr<const MacCode> base, BlockPartition partition)
    : base_(std::move(base)), partition_(std::move(partition)) {
    if (!partition_.valid()) {
        throw std::invalid_argument("WrappedCode: invalid partition");
    }
    if (base_->block_length() != partition_.total() - partition_.block_count()) {
        throw std::invalid_argument("WrappedCode: base code length must equal n - L");
    }
}

Eigen::VectorXd WrappedCode::encode(int user, int message) const {
    return wrap_signal(partition_, base_->encode(user, message));
}

Eigen::VectorXd WrappedCode::receive(const Eigen::VectorXd& channel_output) const {
    return unwrap_signal(partition_, channel_output);
}

std::vector<int> WrappedCode::decode(const Eigen::VectorXd& channel_output) const {
    return base_->decode(receive(channel_output));
}

double WrappedCode::amplitude_limit(int user) const {
    return wrap_amplitude_factor(partition_) * base_->amplitude_limit(user);
}

}  // namespace socc
