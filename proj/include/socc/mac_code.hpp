#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "socc/partition.hpp"
#include "socc/rng.hpp"

namespace socc {

/// Digital multiple-access code: one encoder per user and a joint decoder.
class MacCode {
public:
    virtual ~MacCode() = default;

    virtual int users() const = 0;
    virtual int message_count(int user) const = 0;
    virtual int block_length() const = 0;
    virtual Eigen::VectorXd encode(int user, int message) const = 0;
    virtual std::vector<int> decode(const Eigen::VectorXd& received) const = 0;
    virtual double amplitude_limit(int user) const = 0;
    virtual double power_limit(int user) const = 0;
};

/// Small random code with a minimum-distance joint decoder; handy as a stand-in
/// base code when exercising the wrapping machinery.
class RandomMacCode final : public MacCode {
public:
    RandomMacCode(int users, int messages_per_user, int block_length, double amplitude,
                  std::uint64_t seed);

    int users() const override { return users_; }
    int message_count(int) const override { return messages_; }
    int block_length() const override { return n_; }
    Eigen::VectorXd encode(int user, int message) const override;
    std::vector<int> decode(const Eigen::VectorXd& received) const override;
    double amplitude_limit(int) const override { return amplitude_; }
    double power_limit(int) const override { return amplitude_ * amplitude_; }

private:
    int users_;
    int messages_;
    int n_;
    double amplitude_;
    std::vector<Eigen::VectorXd> codewords_;  // users_ * messages_
};

/// Per-block forward transform: contiguous runs of n_l - 1 base symbols map
/// through U_{n_l} onto blocks of n_l channel uses whose entries sum to zero.
/// Total power is preserved and the peak amplitude grows by at most
/// sqrt2/(sqrt2-1) < 3.42.
Eigen::VectorXd wrap_signal(const BlockPartition& partition, const Eigen::VectorXd& base);

/// Per-block adjoint transform; removes any per-block constant bias and maps
/// i.i.d. Gaussian channel noise to i.i.d. Gaussian noise of the same power.
Eigen::VectorXd unwrap_signal(const BlockPartition& partition, const Eigen::VectorXd& received);

/// Worst-case peak amplitude growth over the partition's blocks.
double wrap_amplitude_factor(const BlockPartition& partition);

/// A base MAC code composed with the zero-sum wrapping: same message sets and
/// error statistics over the per-block biased channel as the base code has
/// over the plain channel.
class WrappedCode {
public:
    WrappedCode(std::shared_ptr<const MacCode> base, BlockPartition partition);

    const MacCode& base() const { return *base_; }
    const BlockPartition& partition() const { return partition_; }
    int block_length() const { return partition_.total(); }

    Eigen::VectorXd encode(int user, int message) const;
    Eigen::VectorXd receive(const Eigen::VectorXd& channel_output) const;
    std::vector<int> decode(const Eigen::VectorXd& channel_output) const;

    double amplitude_limit(int user) const;

private:
    std::shared_ptr<const MacCode> base_;
    BlockPartition partition_;
};

}  // namespace socc
