#include "infolab/boolean_search.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "infolab/boolean_analysis.hpp"
#include "infolab/entropy.hpp"
#include "infolab/symmetric.hpp"

namespace infolab {

namespace {

std::uint64_t table_mask(int n) {
  const unsigned bits = 1u << n;
  return bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

// Index-ascending string order: at the lowest differing index, the table
// holding 0 is smaller.
bool table_less(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t d = a ^ b;
  if (d == 0) return false;
  return (b & (d & (~d + 1))) != 0;
}

struct Scored {
  std::uint64_t table;
  double mi;
};

// Fills the max/witness fields of `r` from scores listed in ascending table order.
void summarize(SearchReport& r, const std::vector<Scored>& scores) {
  r.functions_scanned = scores.size();
  r.max_mi = -1.0;
  for (const auto& s : scores) r.max_mi = std::max(r.max_mi, s.mi);
  r.argmax.clear();
  r.argmax_count = 0;
  for (const auto& s : scores) {
    if (s.mi >= r.max_mi - kTieTolerance) {
      ++r.argmax_count;
      if (r.argmax.size() < kWitnessCap) r.argmax.push_back(s.table);
    }
  }
  r.bound = 1.0 - binary_entropy(std::min(r.alpha, 1.0 - r.alpha));
  r.bound_satisfied = r.max_mi <= r.bound + kTieTolerance;
  r.argmax_is_dictators = r.argmax_count == r.argmax.size() && r.argmax == dictator_tables(r.n);
}

void score_all(const SmallCubeChannel& ch, std::vector<Scored>& scores, Execution exec) {
  const auto count = static_cast<long long>(scores.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < count; ++i) scores[i].mi = ch.mutual_information(scores[i].table);
  } else {
    for (auto& s : scores) s.mi = ch.mutual_information(s.table);
  }
}

}  // namespace

// --- SmallCubeChannel ------------------------------------------------------

SmallCubeChannel::SmallCubeChannel(int n, double alpha) : n_(n), alpha_(alpha) {
  if (n < 1 || n > 5) throw std::out_of_range("SmallCubeChannel: n outside [1, 5]");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("SmallCubeChannel: alpha outside [0, 1]");
  const std::size_t points = std::size_t{1} << n;
  const std::size_t width = static_cast<std::size_t>(n) + 1;

  shells_.assign(points * width, 0);
  for (std::size_t y = 0; y < points; ++y) {
    for (std::size_t x = 0; x < points; ++x) {
      shells_[y * width + std::popcount(x ^ y)] |= std::uint64_t{1} << x;
    }
  }

  radix_.assign(width, 1);
  std::vector<int> cap(width);
  int keys = 1;
  for (int d = 0; d <= n; ++d) {
    cap[d] = static_cast<int>(std::lround(std::exp(log_choose(n, d)))) + 1;
    radix_[d] = keys;
    keys *= cap[d];
  }

  const auto q = flip_pattern_probabilities(n, alpha);
  cond_entropy_.assign(static_cast<std::size_t>(keys), 0.0);
  for (int key = 0; key < keys; ++key) {
    KahanSum p;
    for (int d = 0; d <= n; ++d) p += q[d] * ((key / radix_[d]) % cap[d]);
    cond_entropy_[key] = binary_entropy(std::clamp(p.value(), 0.0, 1.0));
  }

  marginal_.resize(points + 1);
  for (std::size_t m = 0; m <= points; ++m) {
    marginal_[m] = binary_entropy(static_cast<double>(m) / static_cast<double>(points));
  }
}

double SmallCubeChannel::mutual_information(std::uint64_t table) const noexcept {
  const std::size_t points = std::size_t{1} << n_;
  const std::size_t width = static_cast<std::size_t>(n_) + 1;
  double cond = 0.0;
  for (std::size_t y = 0; y < points; ++y) {
    const std::uint64_t* shell = &shells_[y * width];
    int key = 0;
    for (std::size_t d = 0; d < width; ++d) key += std::popcount(table & shell[d]) * radix_[d];
    cond += cond_entropy_[key];
  }
  return marginal_[std::popcount(table)] - cond / static_cast<double>(points);
}

// --- scans -----------------------------------------------------------------

std::vector<std::uint64_t> dictator_tables(int n) {
  std::vector<std::uint64_t> out;
  for (int i = 1; i <= n; ++i) {
    const auto w = dictator(n, i).word();
    out.push_back(w);
    out.push_back(~w & table_mask(n));
  }
  std::sort(out.begin(), out.end());
  return out;
}

SearchReport exhaustive_verify(int n, double alpha, Execution exec) {
  if (n < 2 || n > 4) throw std::out_of_range("exhaustive_verify: n outside [2, 4]");
  const SmallCubeChannel ch(n, alpha);
  std::vector<Scored> scores(ch.table_count());
  for (std::uint64_t t = 0; t < scores.size(); ++t) scores[t].table = t;
  score_all(ch, scores, exec);

  SearchReport r;
  r.n = n;
  r.alpha = alpha;
  summarize(r, scores);
  return r;
}

SearchReport fixed_mean_max(int n, long long m, double alpha, Execution exec) {
  if (n < 1 || n > 4) throw std::out_of_range("fixed_mean_max: n outside [1, 4]");
  const long long points = 1LL << n;
  if (m < 0 || m > points) throw std::out_of_range("fixed_mean_max: m outside [0, 2^n]");
  const SmallCubeChannel ch(n, alpha);

  std::vector<Scored> scores;
  if (m == 0) {
    scores.push_back({0, 0.0});
  } else {
    // Gosper's hack walks the m-subsets of the 2^n indices in ascending order.
    const std::uint64_t limit = std::uint64_t{1} << points;
    std::uint64_t t = (std::uint64_t{1} << m) - 1;
    while (t < limit) {
      scores.push_back({t, 0.0});
      const std::uint64_t c = t & (~t + 1);
      const std::uint64_t r = t + c;
      if (r == 0 || r >= limit) break;
      t = (((r ^ t) >> 2) / c) | r;
    }
  }
  score_all(ch, scores, exec);

  SearchReport r;
  r.n = n;
  r.alpha = alpha;
  r.ones_count = m;
  summarize(r, scores);
  r.lex_attains = ch.mutual_information(lex(n, m).word()) >= r.max_mi - kTieTolerance;
  return r;
}

std::vector<double> all_function_mi(int n, double alpha) {
  if (n < 1 || n > 3) throw std::out_of_range("all_function_mi: n outside [1, 3]");
  const SmallCubeChannel ch(n, alpha);
  std::vector<double> out(ch.table_count());
  for (std::uint64_t t = 0; t < out.size(); ++t) out[t] = ch.mutual_information(t);
  return out;
}

// --- canonical form --------------------------------------------------------

std::uint64_t canonical_form(int n, std::uint64_t table) {
  if (n < 1 || n > 5) throw std::out_of_range("canonical_form: n outside [1, 5]");
  const std::size_t points = std::size_t{1} << n;
  const std::uint64_t mask = table_mask(n);
  if (table & ~mask) throw std::invalid_argument("canonical_form: bits beyond 2^n");

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::size_t> image(points);
  std::uint64_t best = table;
  do {
    for (std::size_t x = 0; x < points; ++x) {
      std::size_t px = 0;
      for (int b = 0; b < n; ++b) px |= ((x >> b) & 1u) << perm[b];
      image[x] = px;
    }
    for (std::size_t s = 0; s < points; ++s) {
      std::uint64_t g = 0;
      for (std::size_t x = 0; x < points; ++x) g |= ((table >> (image[x] ^ s)) & 1u) << x;
      if (table_less(g, best)) best = g;
      const std::uint64_t gc = ~g & mask;
      if (table_less(gc, best)) best = gc;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

BooleanFunction canonical_form(const BooleanFunction& f) {
  return BooleanFunction::from_word(f.num_vars(), canonical_form(f.num_vars(), f.word()),
                                    f.convention());
}

// --- n = 5 job -------------------------------------------------------------

std::string scan5_to_json(const Scan5State& s) {
  nlohmann::json j;
  j["n"] = 5;
  j["alpha"] = s.alpha;
  j["watermark"] = s.watermark;
  j["max_mi"] = s.max_mi;
  j["canonical_argmax"] = s.canonical_argmax;
  j["functions_scanned"] = s.functions_scanned;
  return j.dump(2);
}

Scan5State scan5_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.at("n").get<int>() != 5) throw std::invalid_argument("checkpoint is not an n = 5 scan");
  Scan5State s;
  s.alpha = j.at("alpha").get<double>();
  s.watermark = j.at("watermark").get<std::uint64_t>();
  s.max_mi = j.at("max_mi").get<double>();
  s.canonical_argmax = j.at("canonical_argmax").get<std::vector<std::uint64_t>>();
  s.functions_scanned = j.at("functions_scanned").get<std::uint64_t>();
  return s;
}

namespace {

// Running max with witnesses; merging in table order keeps ties deterministic.
struct Best {
  double max_mi = -1.0;
  std::vector<std::uint64_t> tables;

  void offer(std::uint64_t t, double mi) {
    if (mi > max_mi + kTieTolerance) {
      max_mi = mi;
      tables.assign(1, t);
    } else if (mi >= max_mi - kTieTolerance) {
      max_mi = std::max(max_mi, mi);
      if (tables.size() < kWitnessCap) tables.push_back(t);
    }
  }
};

void write_checkpoint(const std::string& path, const Scan5State& s) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint '" + tmp + "'");
    out << scan5_to_json(s) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

Scan5State scan_n5(const Scan5Options& opt) {
  constexpr std::uint64_t total = std::uint64_t{1} << 31;
  constexpr std::uint64_t sub = std::uint64_t{1} << 14;

  Scan5State state;
  state.alpha = opt.alpha;
  if (!opt.checkpoint_path.empty() && std::filesystem::exists(opt.checkpoint_path)) {
    std::ifstream in(opt.checkpoint_path);
    std::stringstream ss;
    ss << in.rdbuf();
    state = scan5_from_json(ss.str());
    if (state.alpha != opt.alpha) {
      throw std::invalid_argument("checkpoint alpha differs from the requested alpha");
    }
  } else {
    state.max_mi = -1.0;
  }

  const SmallCubeChannel ch(5, opt.alpha);
  const std::uint64_t block = std::max<std::uint64_t>(opt.block, sub);
  std::uint64_t left = opt.budget == 0 ? total : opt.budget;

  while (!state.complete() && left > 0) {
    const std::uint64_t len = std::min({block, left, total - state.watermark});
    const std::uint64_t begin = state.watermark;
    const std::uint64_t parts = (len + sub - 1) / sub;
    std::vector<Best> partial(parts);
    const auto body = [&](std::uint64_t p) {
      const std::uint64_t lo = begin + p * sub;
      const std::uint64_t hi = std::min(lo + sub, begin + len);
      for (std::uint64_t i = lo; i < hi; ++i) partial[p].offer(2 * i, ch.mutual_information(2 * i));
    };
    if (opt.exec == Execution::parallel) {
      const auto np = static_cast<long long>(parts);
#pragma omp parallel for schedule(dynamic, 1)
      for (long long p = 0; p < np; ++p) body(static_cast<std::uint64_t>(p));
    } else {
      for (std::uint64_t p = 0; p < parts; ++p) body(p);
    }

    Best merged{state.max_mi, {}};
    for (const auto& part : partial) {
      for (auto t : part.tables) merged.offer(t, part.max_mi);
    }
    if (merged.max_mi > state.max_mi + kTieTolerance) state.canonical_argmax.clear();
    for (auto t : merged.tables) {
      const auto c = canonical_form(5, t);
      if (std::find(state.canonical_argmax.begin(), state.canonical_argmax.end(), c) ==
              state.canonical_argmax.end() &&
          state.canonical_argmax.size() < kWitnessCap) {
        state.canonical_argmax.push_back(c);
      }
    }
    std::sort(state.canonical_argmax.begin(), state.canonical_argmax.end());
    state.max_mi = merged.max_mi;
    state.watermark += len;
    state.functions_scanned += 2 * len;
    left -= len;
    if (!opt.checkpoint_path.empty()) write_checkpoint(opt.checkpoint_path, state);
  }
  return state;
}

// --- ball versus subcube ---------------------------------------------------

LexFailureRecord lex_failure_scan(int k, int n, double alpha) {
  if (k < 1 || k > 20) throw std::out_of_range("lex_failure_scan: k outside [1, 20]");
  if (n <= k || n > kMaxSymmetricVars) throw std::out_of_range("lex_failure_scan: need k < n <= 2000");
  if (!(alpha >= 0.0 && alpha <= 0.5)) throw std::domain_error("lex_failure_scan: alpha outside [0, 1/2]");

  LexFailureRecord r;
  r.k = k;
  r.n = n;
  r.alpha = alpha;
  const double mu = std::ldexp(1.0, -k);
  const auto ball = exact_mean_ball_profile(n, mu);
  r.boundary_level = ball.boundary_level;
  r.boundary_fraction = ball.boundary_fraction;
  r.mi_ball = symmetric_mi(ball.profile, alpha);
  r.mi_and = and_mi_exact(k, alpha);
  r.margin = r.mi_ball - r.mi_and;
  r.ball_wins = r.mi_ball > r.mi_and;
  r.w1_ball = symmetric_w1(ball.profile);
  r.w1_and = and_w1_exact(k);

  // Full ball closest in size: radius boundary - 1 or boundary.
  const auto pmf = binomial_pmf(n, 0.5);
  KahanSum below;
  for (int w = 0; w < ball.boundary_level; ++w) below += pmf[w];
  const double lo_mass = below.value();
  const double hi_mass = lo_mass + pmf[ball.boundary_level];
  const int radius = (mu - lo_mass <= hi_mass - mu) ? ball.boundary_level - 1 : ball.boundary_level;
  r.w1_ball_full = (radius >= 1 && radius < n) ? hamming_ball_w1_exact(n, radius)
                                               : symmetric_w1(ball_profile(n, radius));
  return r;
}

std::vector<LexFailureRecord> lex_failure_grid(const std::vector<int>& ks,
                                               const std::vector<int>& ns,
                                               const std::vector<double>& alphas,
                                               Execution exec) {
  struct Config {
    int k, n;
    double alpha;
  };
  std::vector<Config> configs;
  for (int k : ks) {
    for (int n : ns) {
      if (n <= k) continue;
      for (double a : alphas) configs.push_back({k, n, a});
    }
  }
  std::vector<LexFailureRecord> out(configs.size());
  const auto count = static_cast<long long>(configs.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < count; ++i) {
      out[i] = lex_failure_scan(configs[i].k, configs[i].n, configs[i].alpha);
    }
  } else {
    for (long long i = 0; i < count; ++i) {
      out[i] = lex_failure_scan(configs[i].k, configs[i].n, configs[i].alpha);
    }
  }
  return out;
}

}  // namespace infolab
