#pragma once

// Fourier analysis and mutual information on the cube.
//
// The channel flips every coordinate independently with probability alpha;
// rho = 1 - 2 alpha. For single-output f, Pr[f(x) = 1 | y] = T_rho f(y) on the
// 0/1 table because (x, y) is exchangeable.

#include <span>
#include <string>
#include <vector>

#include "infolab/boolean_function.hpp"
#include "infolab/kernels.hpp"

namespace infolab {

/// fhat(S) = 2^-n sum_x f(x) chi_S(x), f read under its declared convention.
FourierSpectrum fwht(const BooleanFunction& f, Execution exec = Execution::serial);
/// Same transform on an arbitrary real table of length 2^n.
FourierSpectrum fwht(int n, std::span<const double> values, Execution exec = Execution::serial);
std::vector<double> fwht_inverse(const FourierSpectrum& spec,
                                 Execution exec = Execution::serial);

/// T_rho f as a table; level-|S| coefficients scaled by rho^|S|. Accepts
/// rho in [-1, 1] so that alpha > 1/2 is also representable.
std::vector<double> noise_operator(const FourierSpectrum& spec, double rho,
                                   Execution exec = Execution::serial);

/// sum_{|S| = k} fhat(S)^2.
double degree_weight(const FourierSpectrum& spec, int k);
/// sum_{S != empty} rho^{2|S|} fhat(S)^2.
double variance_trho(const FourierSpectrum& spec, double rho);

/// I(f(x); y) in bits. alpha in [0, 1].
double mutual_information_direct(const BooleanFunction& f, double alpha,
                                  Execution exec = Execution::serial);
/// Generic O(4^n) enumeration over (x, y); n <= 15.
double mutual_information_direct(const MultiOutputFunction& f, double alpha,
                                 Execution exec = Execution::serial);
/// Ent^Phi[T_rho f] with f read as +-1 (stored bit b gives 1 - 2b).
double mutual_information_phi(const BooleanFunction& f, double rho,
                              Execution exec = Execution::serial);

/// H(f(x)) in bits for uniform x.
double output_entropy(const MultiOutputFunction& f);

// Structured families. The 0/1 version is an indicator g; the +-1 version is
// 2g - 1, so dictator(n, i, plus_minus) reads as x_i.
enum class FamilyKind { dictator, and_k, lex, hamming_ball, majority };

std::string to_string(FamilyKind kind);
FamilyKind parse_family(const std::string& text);

struct FamilyParams {
  FamilyKind kind = FamilyKind::dictator;
  int n = 1;
  long long param = 1;  // i, k, count or ones_count; unused for majority
  ValueConvention conv = ValueConvention::zero_one;
};

BooleanFunction make_family(const FamilyParams& params);

/// Indicator of x_i = +1 (zero_one) or x_i itself (plus_minus).
BooleanFunction dictator(int n, int i, ValueConvention conv = ValueConvention::zero_one);
/// Indicator of x_1 = ... = x_k = +1.
BooleanFunction and_k(int n, int k, ValueConvention conv = ValueConvention::zero_one);
/// Indicator of the first `count` indices.
BooleanFunction lex(int n, long long count, ValueConvention conv = ValueConvention::zero_one);
/// Weight levels 0, 1, ... filled in turn, boundary level by ascending index.
BooleanFunction hamming_ball(int n, long long ones_count,
                             ValueConvention conv = ValueConvention::zero_one);
/// n odd.
BooleanFunction majority(int n, ValueConvention conv = ValueConvention::zero_one);

/// Exact I(AND_k(x); y), O(k) terms.
double and_mi_exact(int k, double alpha);
/// k 2^{1-k} (1 - h(alpha)); reported for comparison only.
double and_mi_simple_form(int k, double alpha);
/// W^1 of the 0/1 AND_k: k 4^{-k}.
double and_w1_exact(int k);

/// -1 / (2 ln 2 mu (1 - mu)).
double c2_coefficient(double mu);

struct TaylorCheck {
  double mean = 0.0;
  double w1 = 0.0;
  double lhs = 0.0;  // (E[h(T_rho f)] - h(mu)) / rho^2
  double rhs = 0.0;  // c2(mu) W^1[f]
  double error = 0.0;
  bool pass = false;
};

/// Second-order expansion of E[h(T_rho f)] around h(mu); f read as 0/1.
TaylorCheck second_order_entropy_check(const BooleanFunction& f, double rho,
                                       double rel_tol = 0.01, double abs_tol = 1e-8);

}  // namespace infolab
