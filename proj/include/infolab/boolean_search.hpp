#pragma once

// Exhaustive scans over all Boolean functions on n <= 4 variables (n = 5 as an
// optional resumable job), plus the ball-versus-subcube comparison at large n.
//
// A table on n <= 5 variables is packed into a 64-bit word, bit j = f(index j).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "infolab/boolean_function.hpp"
#include "infolab/kernels.hpp"

namespace infolab {

inline constexpr double kTieTolerance = 1e-12;
inline constexpr std::size_t kWitnessCap = 64;

/// Exact I(f(x); y) for every packed table on n <= 5 variables.
///
/// Pr[f(x) = 1 | y] = sum_d q_d c_d(y) where c_d(y) counts ones of f at
/// distance d from y and q_d = alpha^d (1 - alpha)^(n - d). The entropy of
/// every possible count vector is tabulated once, so scoring a table costs
/// popcounts and lookups only.
class SmallCubeChannel {
 public:
  SmallCubeChannel(int n, double alpha);

  int num_vars() const noexcept { return n_; }
  double alpha() const noexcept { return alpha_; }
  std::uint64_t table_count() const noexcept { return std::uint64_t{1} << (1u << n_); }

  double mutual_information(std::uint64_t table) const noexcept;

 private:
  int n_;
  double alpha_;
  std::vector<std::uint64_t> shells_;  // shells_[y * (n + 1) + d]
  std::vector<int> radix_;             // mixed-radix strides of the count vector
  std::vector<double> cond_entropy_;   // h(Pr[f = 1 | y]) by count-vector key
  std::vector<double> marginal_;       // h(m / 2^n) by m
};

struct SearchReport {
  int n = 0;
  double alpha = 0.0;
  std::optional<long long> ones_count;  // fixed-mean constraint, if any
  double max_mi = 0.0;
  std::vector<std::uint64_t> argmax;    // ascending, at most kWitnessCap
  std::uint64_t argmax_count = 0;       // all tables within tolerance of max_mi
  double bound = 0.0;                   // 1 - h(alpha)
  bool bound_satisfied = false;
  std::uint64_t functions_scanned = 0;
  bool argmax_is_dictators = false;     // argmax set equals the 2n tables +-x_i
  std::optional<bool> lex_attains;      // fixed-mean scans only
};

/// All 2^(2^n) tables, 2 <= n <= 4.
SearchReport exhaustive_verify(int n, double alpha, Execution exec = Execution::serial);

/// All tables with exactly m ones, 1 <= n <= 4.
SearchReport fixed_mean_max(int n, long long m, double alpha,
                            Execution exec = Execution::serial);

/// Every table's MI in index order (n <= 3), for plotting.
std::vector<double> all_function_mi(int n, double alpha);

/// Packed tables of the 2n functions +-x_i, ascending.
std::vector<std::uint64_t> dictator_tables(int n);

/// Least table in the orbit under coordinate permutations, input negations
/// and output complement. "Least" compares tables as index-ascending 0/1
/// strings. n <= 5.
BooleanFunction canonical_form(const BooleanFunction& f);
std::uint64_t canonical_form(int n, std::uint64_t table);

/// Resumable scan of all n = 5 tables. Tables with bit 0 clear represent
/// every complement pair; the watermark i means tables 2i' for i' < i are done.
struct Scan5Options {
  double alpha = 0.1;
  std::string checkpoint_path;      // empty: no checkpoint
  std::uint64_t budget = 0;         // tables scored this call; 0 = until done
  std::uint64_t block = 1u << 20;   // unit of work between checkpoints
  Execution exec = Execution::parallel;
};

struct Scan5State {
  double alpha = 0.0;
  std::uint64_t watermark = 0;      // in [0, 2^31]
  double max_mi = 0.0;
  std::vector<std::uint64_t> canonical_argmax;  // distinct orbit representatives
  std::uint64_t functions_scanned = 0;
  bool complete() const noexcept { return watermark >= (std::uint64_t{1} << 31); }
};

Scan5State scan_n5(const Scan5Options& options);
std::string scan5_to_json(const Scan5State& state);
Scan5State scan5_from_json(const std::string& text);

struct LexFailureRecord {
  int k = 0;
  int n = 0;
  double alpha = 0.0;
  double mi_ball = 0.0;       // exact-mean ball, symmetric lower bound
  double mi_and = 0.0;
  double margin = 0.0;        // mi_ball - mi_and
  double w1_ball = 0.0;       // exact-mean ball profile
  double w1_ball_full = 0.0;  // full-level ball nearest in size
  double w1_and = 0.0;
  int boundary_level = 0;
  double boundary_fraction = 0.0;
  bool ball_wins = false;
};

/// Ball of mean exactly 2^-k on n variables against AND_k. k <= 20, k < n <= 2000.
LexFailureRecord lex_failure_scan(int k, int n, double alpha);

std::vector<LexFailureRecord> lex_failure_grid(const std::vector<int>& ks,
                                               const std::vector<int>& ns,
                                               const std::vector<double>& alphas,
                                               Execution exec = Execution::serial);

}  // namespace infolab
