#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace socc {

/// Binary LDPC code with systematic encoding and sum-product decoding.
///
/// The built-in construction is a seeded progressive-edge-growth graph with
/// constant variable degree; (3,6) gives rate 1/2, (3,12) rate 3/4. Codes can
/// also be loaded from plain-text alist files.
class LdpcCode {
public:
    /// Regular (var_degree, check_degree) code; n must be divisible by
    /// check_degree. Construction is deterministic for a fixed seed.
    static LdpcCode regular(int block_length, int var_degree, int check_degree,
                            std::uint64_t seed);

    static LdpcCode from_alist(const std::string& path);
    void to_alist(const std::string& path) const;

    int block_length() const { return n_; }
    int check_count() const { return m_; }
    int message_length() const { return k_; }
    double rate() const { return static_cast<double>(k_) / n_; }

    /// Systematic encode: message bits land on the non-pivot columns.
    std::vector<std::uint8_t> encode(std::span<const std::uint8_t> message) const;

    std::vector<std::uint8_t> extract_message(std::span<const std::uint8_t> codeword) const;

    bool parity_ok(std::span<const std::uint8_t> word) const;

    struct DecodeResult {
        std::vector<std::uint8_t> codeword;
        std::vector<std::uint8_t> message;
        bool converged = false;
        int iterations = 0;
    };

    /// Sum-product belief propagation with syndrome early stopping.
    /// LLR convention: positive favours bit 0.
    DecodeResult decode(std::span<const double> llrs, int max_iterations = 50) const;

private:
    LdpcCode() = default;
    void finalize();  // builds edge layout + systematic encoder tables

    int n_ = 0;
    int m_ = 0;
    int k_ = 0;
    std::vector<std::vector<int>> check_vars_;  // per check: adjacent variables

    // flattened edges grouped by check, plus per-variable edge lists
    std::vector<int> edge_var_;
    std::vector<int> check_offset_;
    std::vector<std::vector<int>> var_edges_;

    // encoder: pivot columns (parity) and free columns (message);
    // parity = A * message over GF(2), rows packed into 64-bit words
    std::vector<int> pivot_cols_;
    std::vector<int> free_cols_;
    std::vector<std::uint64_t> parity_rows_;
    int words_per_row_ = 0;
};

}  // namespace socc
