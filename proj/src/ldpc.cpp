#include "socc/ldpc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "socc/rng.hpp"

namespace socc {

namespace {

// Progressive edge growth: each new edge attaches to a check at maximal graph
// distance from the variable (falling back to lowest degree), which keeps the
// girth large for short codes.
std::vector<std::vector<int>> peg_graph(int n, int m, int var_degree, std::uint64_t seed) {
    Rng rng(seed, 0x70656721ull);
    std::vector<std::vector<int>> var_checks(n);
    std::vector<std::vector<int>> check_vars(m);
    std::vector<int> check_degree(m, 0);
    std::vector<std::uint8_t> seen_check(m), seen_var(n);
    std::vector<int> frontier, next_frontier, new_checks;

    auto pick_min_degree = [&](const std::vector<int>& pool) {
        int best = check_degree[pool[0]];
        for (int c : pool) {
            best = std::min(best, check_degree[c]);
        }
        std::vector<int> ties;
        for (int c : pool) {
            if (check_degree[c] == best) {
                ties.push_back(c);
            }
        }
        return ties[rng.uniform_int(ties.size())];
    };

    std::vector<int> all_checks(m);
    for (int c = 0; c < m; ++c) {
        all_checks[c] = c;
    }

    for (int v = 0; v < n; ++v) {
        for (int e = 0; e < var_degree; ++e) {
            int chosen;
            if (e == 0) {
                chosen = pick_min_degree(all_checks);
            } else {
                std::fill(seen_check.begin(), seen_check.end(), 0);
                std::fill(seen_var.begin(), seen_var.end(), 0);
                seen_var[v] = 1;
                frontier.assign(1, v);
                int reached = 0;
                while (true) {
                    new_checks.clear();
                    for (int vv : frontier) {
                        for (int cc : var_checks[vv]) {
                            if (!seen_check[cc]) {
                                seen_check[cc] = 1;
                                new_checks.push_back(cc);
                            }
                        }
                    }
                    reached += static_cast<int>(new_checks.size());
                    if (reached == m || new_checks.empty()) {
                        break;
                    }
                    next_frontier.clear();
                    for (int cc : new_checks) {
                        for (int vv : check_vars[cc]) {
                            if (!seen_var[vv]) {
                                seen_var[vv] = 1;
                                next_frontier.push_back(vv);
                            }
                        }
                    }
                    if (next_frontier.empty()) {
                        break;
                    }
                    frontier.swap(next_frontier);
                }
                std::vector<int> pool;
                for (int c = 0; c < m; ++c) {
                    if (!seen_check[c]) {
                        pool.push_back(c);
                    }
                }
                if (pool.empty()) {
                    // graph saturated: the last BFS layer is the farthest set
                    pool = new_checks.empty() ? all_checks : new_checks;
                }
                chosen = pick_min_degree(pool);
            }
            var_checks[v].push_back(chosen);
            check_vars[chosen].push_back(v);
            ++check_degree[chosen];
        }
    }
    return check_vars;
}

}  // namespace

LdpcCode LdpcCode::regular(int block_length, int var_degree, int check_degree,
                           std::uint64_t seed) {
    if (block_length <= 0 || var_degree < 2 || check_degree <= var_degree) {
        throw std::invalid_argument("LdpcCode::regular: bad degree profile");
    }
    if ((block_length * var_degree) % check_degree != 0) {
        throw std::invalid_argument("LdpcCode::regular: n*var_degree must divide by check_degree");
    }
    LdpcCode code;
    code.n_ = block_length;
    code.m_ = block_length * var_degree / check_degree;
    code.check_vars_ = peg_graph(block_length, code.m_, var_degree, seed);
    code.finalize();
    return code;
}

LdpcCode LdpcCode::from_alist(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("LdpcCode::from_alist: cannot open " + path);
    }
    int n = 0, m = 0, dvmax = 0, dcmax = 0;
    in >> n >> m >> dvmax >> dcmax;
    if (!in || n <= 0 || m <= 0) {
        throw std::runtime_error("LdpcCode::from_alist: malformed header");
    }
    std::vector<int> var_deg(n), check_deg(m);
    for (auto& d : var_deg) {
        in >> d;
    }
    for (auto& d : check_deg) {
        in >> d;
    }
    LdpcCode code;
    code.n_ = n;
    code.m_ = m;
    code.check_vars_.assign(m, {});
    // variable-side adjacency lists (1-based, zero-padded to dvmax)
    for (int v = 0; v < n; ++v) {
        for (int j = 0; j < dvmax; ++j) {
            int c;
            in >> c;
            if (c > 0) {
                code.check_vars_[c - 1].push_back(v);
            }
        }
    }
    if (!in) {
        throw std::runtime_error("LdpcCode::from_alist: truncated file");
    }
    for (auto& vars : code.check_vars_) {
        std::sort(vars.begin(), vars.end());
    }
    code.finalize();
    return code;
}

void LdpcCode::to_alist(const std::string& path) const {
    std::vector<std::vector<int>> var_checks(n_);
    for (int c = 0; c < m_; ++c) {
        for (int v : check_vars_[c]) {
            var_checks[v].push_back(c);
        }
    }
    std::size_t dvmax = 0, dcmax = 0;
    for (const auto& l : var_checks) {
        dvmax = std::max(dvmax, l.size());
    }
    for (const auto& l : check_vars_) {
        dcmax = std::max(dcmax, l.size());
    }
    std::ofstream out(path);
    out << n_ << " " << m_ << "\n" << dvmax << " " << dcmax << "\n";
    for (const auto& l : var_checks) {
        out << l.size() << " ";
    }
    out << "\n";
    for (const auto& l : check_vars_) {
        out << l.size() << " ";
    }
    out << "\n";
    for (const auto& l : var_checks) {
        for (std::size_t j = 0; j < dvmax; ++j) {
            out << (j < l.size() ? l[j] + 1 : 0) << " ";
        }
        out << "\n";
    }
    for (const auto& l : check_vars_) {
        for (std::size_t j = 0; j < dcmax; ++j) {
            out << (j < l.size() ? l[j] + 1 : 0) << " ";
        }
        out << "\n";
    }
}

void LdpcCode::finalize() {
    check_offset_.assign(m_ + 1, 0);
    for (int c = 0; c < m_; ++c) {
        check_offset_[c + 1] = check_offset_[c] + static_cast<int>(check_vars_[c].size());
    }
    edge_var_.clear();
    edge_var_.reserve(check_offset_[m_]);
    var_edges_.assign(n_, {});
    for (int c = 0; c < m_; ++c) {
        for (int v : check_vars_[c]) {
            var_edges_[v].push_back(static_cast<int>(edge_var_.size()));
            edge_var_.push_back(v);
        }
    }

    // Gaussian elimination over GF(2) to find pivot columns; message bits sit
    // on the free columns and parities on the pivots.
    const int words = (n_ + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows(m_, std::vector<std::uint64_t>(words, 0));
    for (int c = 0; c < m_; ++c) {
        for (int v : check_vars_[c]) {
            rows[c][v / 64] ^= 1ull << (v % 64);
        }
    }
    pivot_cols_.clear();
    int rank = 0;
    for (int col = 0; col < n_ && rank < m_; ++col) {
        int pivot = -1;
        for (int r = rank; r < m_; ++r) {
            if (rows[r][col / 64] >> (col % 64) & 1) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < m_; ++r) {
            if (r != rank && (rows[r][col / 64] >> (col % 64) & 1)) {
                for (int w = 0; w < words; ++w) {
                    rows[r][w] ^= rows[rank][w];
                }
            }
        }
        pivot_cols_.push_back(col);
        ++rank;
    }
    k_ = n_ - rank;
    std::vector<std::uint8_t> is_pivot(n_, 0);
    for (int col : pivot_cols_) {
        is_pivot[col] = 1;
    }
    free_cols_.clear();
    for (int col = 0; col < n_; ++col) {
        if (!is_pivot[col]) {
            free_cols_.push_back(col);
        }
    }

    // parity_rows_[r] holds row r of the reduced system restricted to the
    // free columns: pivot_r = sum over free cols of A[r][j] * message[j]
    words_per_row_ = (k_ + 63) / 64;
    parity_rows_.assign(static_cast<std::size_t>(rank) * words_per_row_, 0);
    for (int r = 0; r < rank; ++r) {
        for (int j = 0; j < k_; ++j) {
            const int col = free_cols_[j];
            if (rows[r][col / 64] >> (col % 64) & 1) {
                parity_rows_[static_cast<std::size_t>(r) * words_per_row_ + j / 64] ^=
                    1ull << (j % 64);
            }
        }
    }
}

std::vector<std::uint8_t> LdpcCode::encode(std::span<const std::uint8_t> message) const {
    if (static_cast<int>(message.size()) != k_) {
        throw std::invalid_argument("LdpcCode::encode: message length mismatch");
    }
    std::vector<std::uint64_t> packed(words_per_row_, 0);
    for (int j = 0; j < k_; ++j) {
        if (message[j] & 1) {
            packed[j / 64] ^= 1ull << (j % 64);
        }
    }
    std::vector<std::uint8_t> word(n_, 0);
    for (int j = 0; j < k_; ++j) {
        word[free_cols_[j]] = message[j] & 1;
    }
    const int rank = static_cast<int>(pivot_cols_.size());
    for (int r = 0; r < rank; ++r) {
        const std::uint64_t* row = parity_rows_.data() + static_cast<std::size_t>(r) * words_per_row_;
        std::uint64_t acc = 0;
        for (int w = 0; w < words_per_row_; ++w) {
            acc ^= row[w] & packed[w];
        }
        word[pivot_cols_[r]] = static_cast<std::uint8_t>(__builtin_popcountll(acc) & 1);
    }
    return word;
}

std::vector<std::uint8_t> LdpcCode::extract_message(std::span<const std::uint8_t> codeword) const {
    if (static_cast<int>(codeword.size()) != n_) {
        throw std::invalid_argument("LdpcCode::extract_message: length mismatch");
    }
    std::vector<std::uint8_t> msg(k_);
    for (int j = 0; j < k_; ++j) {
        msg[j] = codeword[free_cols_[j]] & 1;
    }
    return msg;
}

bool LdpcCode::parity_ok(std::span<const std::uint8_t> word) const {
    if (static_cast<int>(word.size()) != n_) {
        throw std::invalid_argument("LdpcCode::parity_ok: length mismatch");
    }
    for (int c = 0; c < m_; ++c) {
        int s = 0;
        for (int v : check_vars_[c]) {
            s ^= word[v] & 1;
        }
        if (s) {
            return false;
        }
    }
    return true;
}

LdpcCode::DecodeResult LdpcCode::decode(std::span<const double> llrs, int max_iterations) const {
    if (static_cast<int>(llrs.size()) != n_) {
        throw std::invalid_argument("LdpcCode::decode: LLR length mismatch");
    }
    const int edges = static_cast<int>(edge_var_.size());
    std::vector<double> v2c(edges), c2v(edges, 0.0), posterior(n_);
    std::vector<double> fwd, bwd;
    DecodeResult result;
    result.codeword.assign(n_, 0);

    for (int e = 0; e < edges; ++e) {
        v2c[e] = llrs[edge_var_[e]];
    }

    auto clamp_tanh = [](double x) {
        const double t = std::tanh(0.5 * std::clamp(x, -40.0, 40.0));
        return std::clamp(t, -0.9999999999999, 0.9999999999999);
    };

    for (int iter = 1; iter <= max_iterations; ++iter) {
        // check-node update via forward/backward partial products
        for (int c = 0; c < m_; ++c) {
            const int begin = check_offset_[c];
            const int deg = check_offset_[c + 1] - begin;
            fwd.resize(deg);
            bwd.resize(deg);
            fwd[0] = clamp_tanh(v2c[begin]);
            for (int j = 1; j < deg; ++j) {
                fwd[j] = fwd[j - 1] * clamp_tanh(v2c[begin + j]);
            }
            bwd[deg - 1] = clamp_tanh(v2c[begin + deg - 1]);
            for (int j = deg - 2; j >= 0; --j) {
                bwd[j] = bwd[j + 1] * clamp_tanh(v2c[begin + j]);
            }
            for (int j = 0; j < deg; ++j) {
                double prod = 1.0;
                if (j > 0) {
                    prod *= fwd[j - 1];
                }
                if (j + 1 < deg) {
                    prod *= bwd[j + 1];
                }
                prod = std::clamp(prod, -0.9999999999999, 0.9999999999999);
                c2v[begin + j] = 2.0 * std::atanh(prod);
            }
        }
        // variable-node update + posterior
        for (int v = 0; v < n_; ++v) {
            posterior[v] = llrs[v];
        }
        for (int e = 0; e < edges; ++e) {
            posterior[edge_var_[e]] += c2v[e];
        }
        for (int e = 0; e < edges; ++e) {
            v2c[e] = posterior[edge_var_[e]] - c2v[e];
        }
        for (int v = 0; v < n_; ++v) {
            result.codeword[v] = posterior[v] < 0.0 ? 1 : 0;
        }
        result.iterations = iter;
        if (parity_ok(result.codeword)) {
            result.converged = true;
            break;
        }
    }
    result.message = extract_message(result.codeword);
    return result;
}

}  // namespace socc
