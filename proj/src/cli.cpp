#include "infolab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "infolab/boolean_analysis.hpp"
#include "infolab/boolean_search.hpp"
#include "infolab/entropy.hpp"
#include "infolab/gaussian.hpp"
#include "infolab/perfect_code.hpp"
#include "infolab/poincare.hpp"
#include "infolab/record.hpp"
#include "infolab/rng.hpp"
#include "infolab/sphere_ops.hpp"

#ifndef INFOLAB_VERSION
#define INFOLAB_VERSION "0.0.0"
#endif

namespace infolab {

namespace {

constexpr double kCheckTol = 1e-10;

struct Globals {
  std::string format = "json";
  std::string out_path;
  std::uint64_t seed = 1;
  bool serial = false;

  Execution exec() const { return serial ? Execution::serial : Execution::parallel; }
};

/// Collects records; each handler pushes one per logical check.
class Session {
 public:
  explicit Session(const Globals& g) : globals_(g) {}

  RunRecord start(const std::string& command) {
    RunRecord r;
    r.command = command;
    r.seed = globals_.seed;
    r.version = INFOLAB_VERSION;
    clock_ = std::chrono::steady_clock::now();
    return r;
  }
  void finish(RunRecord r) {
    r.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - clock_)
                         .count();
    records_.push_back(std::move(r));
  }
  const std::vector<RunRecord>& records() const { return records_; }
  const Globals& globals() const { return globals_; }

 private:
  const Globals& globals_;
  std::vector<RunRecord> records_;
  std::chrono::steady_clock::time_point clock_;
};

std::string fmt(double x) { return format_double(x); }

template <class T>
std::string join(const std::vector<T>& v, const char* sep = ",") {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s << sep;
    if constexpr (std::is_floating_point_v<T>) {
      s << format_double(v[i]);
    } else {
      s << v[i];
    }
  }
  return s.str();
}

std::string hex_words(const std::vector<std::uint64_t>& words) {
  std::ostringstream s;
  for (std::size_t i = 0; i < words.size(); ++i) s << (i ? " " : "") << "0x" << std::hex << words[i];
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

/// Runs body(i) for i < count, in parallel if requested. Results must be
/// written by index so the output order is fixed.
void for_trials(int count, Execution exec, const std::function<void(int)>& body) {
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < count; ++i) body(i);
  } else {
    for (int i = 0; i < count; ++i) body(i);
  }
}

const auto kAlphaRange = CLI::Range(0.0, 0.5);
const CLI::Validator kRhoRange(
    [](std::string& s) -> std::string {
      double v = 0.0;
      try {
        v = std::stod(s);
      } catch (...) {
        return "not a number: " + s;
      }
      return (v >= 0.0 && v < 1.0) ? "" : "rho must lie in [0, 1)";
    },
    "in [0, 1)");

BooleanFunction random_function(int n, CounterRng& rng) {
  BooleanFunction f(n);
  for (std::size_t x = 0; x < f.size(); ++x) f.set_bit(x, rng() & 1u);
  return f;
}

SphericalField random_field(const PointSetPtr& set, CounterRng& rng) {
  std::vector<double> v(set->size());
  for (double& x : v) x = static_cast<double>(rng.below(2));
  return SphericalField(set, std::move(v));
}

/// Operator whose rows have mass at most 1, so Kf stays in [0, 1] for 0/1 f.
KernelOperator normalized_operator(const PointSetPtr& set, const KernelSpec& kernel) {
  const KernelOperator raw(set, kernel);
  const auto mass = raw.row_mass();
  const double top = *std::max_element(mass.begin(), mass.end());
  return top > 1.0 ? KernelOperator(set, kernel, 1.0 / top) : raw;
}

void fill_report(RunRecord& r, const SearchReport& s) {
  r.set("max_mi", s.max_mi);
  r.set("bound", s.bound);
  r.set("bound_satisfied", s.bound_satisfied);
  r.set("bound_gap", s.bound - s.max_mi);
  r.set("erkip_bound", erkip_bound(s.alpha));
  r.set("argmax", hex_words(s.argmax));
  r.set("argmax_count", s.argmax_count);
  r.set("argmax_is_dictators", s.argmax_is_dictators);
  r.set("functions_scanned", s.functions_scanned);
  if (s.ones_count) r.set("ones_count", static_cast<std::int64_t>(*s.ones_count));
  if (s.lex_attains) r.set("lex_attains", *s.lex_attains);
}

// --- boolean ---------------------------------------------------------------

void add_boolean(CLI::App& app, Session& session, std::vector<std::function<void()>>& actions) {
  auto* boolean = app.add_subcommand("boolean", "Boolean cube checks");
  boolean->require_subcommand(1);
  boolean->fallthrough();

  {
    auto* c = boolean->add_subcommand("verify", "exhaustive scan of all functions on n <= 4 variables");
    auto n = std::make_shared<int>(2);
    auto alpha = std::make_shared<double>(0.1);
    auto ones = std::make_shared<long long>(-1);
    auto table = std::make_shared<std::string>();
    c->add_option("--n", *n, "variables, 2..4")->required()->check(CLI::Range(1, 4));
    c->add_option("--alpha", *alpha, "flip probability")->required()->check(kAlphaRange);
    c->add_option("--ones", *ones, "restrict to tables with this many ones (fixed mean)");
    c->add_option("--table", *table, "write function_index,mi CSV (n <= 3)");
    c->fallthrough();
    c->callback([=, &session, &actions] {
      actions.push_back([=, &session] {
        const auto g = session.globals();
        auto r = session.start("boolean verify");
        r.params = {{"n", std::to_string(*n)}, {"alpha", fmt(*alpha)}};
        SearchReport s;
        if (*ones >= 0) {
          r.params["ones"] = std::to_string(*ones);
          s = fixed_mean_max(*n, *ones, *alpha, g.exec());
          r.pass = s.bound_satisfied;
        } else {
          if (*n < 2) throw CLI::ValidationError("--n", "full scan needs n >= 2");
          s = exhaustive_verify(*n, *alpha, g.exec());
          r.pass = s.bound_satisfied && s.argmax_is_dictators &&
                   std::abs(s.max_mi - s.bound) <= kCheckTol;
        }
        fill_report(r, s);
        if (!table->empty()) {
          if (*n > 3) throw CLI::ValidationError("--table", "per-function table needs n <= 3");
          const auto mi = all_function_mi(*n, *alpha);
          std::string csv = "function_index,mi\n";
          for (std::size_t i = 0; i < mi.size(); ++i) csv += std::to_string(i) + "," + fmt(mi[i]) + "\n";
          write_file(*table, csv);
        }
        session.finish(std::move(r));
      });
    });
  }

  {
    auto* c = boolean->add_subcommand("mi", "mutual information of a truth-table file");
    auto path = std::make_shared<std::string>();
    auto alpha = std::make_shared<double>(0.1);
    auto multi = std::make_shared<int>(0);
    c->add_option("--tt", *path, "truth-table file")->required();
    c->add_option("--alpha", *alpha, "flip probability")->required()->check(kAlphaRange);
    c->add_option("--multi", *multi, "file holds a K-output function")->check(CLI::Range(1, 24));
    c->fallthrough();
    c->callback([=, &session, &actions] {
      actions.push_back([=, &session] {
        const auto g = session.globals();
        auto r = session.start("boolean mi");
        r.params = {{"tt", *path}, {"alpha", fmt(*alpha)}};
        const double bound = 1.0 - binary_entropy(*alpha);
        if (*multi > 0) {
          r.params["multi"] = std::to_string(*multi);
          const auto f = read_multi_output_file(*path);
          if (f.num_outputs() != *multi) {
            throw CLI::ValidationError("--multi", "file declares k=" + std::to_string(f.num_outputs()));
          }
          const double mi = mutual_information_direct(f, *alpha, g.exec());
          r.set("n", f.num_vars());
          r.set("k", f.num_outputs());
          r.set("mi", mi);
          r.set("per_bit", mi / f.num_outputs());
          r.set("output_entropy", output_entropy(f));
          r.set("per_bit_bound", bound);
          r.set("per_bit_margin", mi / f.num_outputs() - bound);
        } else {
          const auto f = read_truth_table_file(*path);
          const double direct = mutual_information_direct(f, *alpha, g.exec());
          const double via_phi = mutual_information_phi(f, flip_to_correlation(*alpha), g.exec());
          const auto spec = fwht(f.with_convention(ValueConvention::zero_one), g.exec());
          r.set("n", f.num_vars());
          r.set("mean", f.density());
          r.set("mi", direct);
          r.set("mi_phi", via_phi);
          r.set("mi_path_diff", std::abs(direct - via_phi));
          r.set("w1", degree_weight(spec, 1));
          r.set("bound", bound);
          r.pass = std::abs(direct - via_phi) <= kCheckTol;
        }
        session.finish(std::move(r));
      });
    });
  }

  {
    auto* c = boolean->add_subcommand("family", "MI and W1 of a structured family");
    auto kind = std::make_shared<std::string>();
    auto n = std::make_shared<int>(0);
    auto param = std::make_shared<long long>(1);
    auto alpha = std::make_shared<double>(0.1);
    c->add_option("--kind", *kind, "dictator|and|lex|ball|majority")
        ->required()
        ->check(CLI::IsMember({"dictator", "and", "lex", "ball", "majority"}));
    c->add_option("--n", *n, "variables, 1..20")->required()->check(CLI::Range(1, 20));
    c->add_option("--param", *param, "i for dictator, k for and, ones count for lex/ball");
    c->add_option("--alpha", *alpha, "flip probability")->required()->check(kAlphaRange);
    c->fallthrough();
    c->callback([=, &session, &actions] {
      actions.push_back([=, &session] {
        const auto g = session.globals();
        auto r = session.start("boolean family");
        r.params = {{"kind", *kind}, {"n", std::to_string(*n)}, {"alpha", fmt(*alpha)}};
        if (*kind != "majority") r.params["param"] = std::to_string(*param);
        const auto f = make_family({parse_family(*kind), *n, *param, ValueConvention::zero_one});
        const auto spec = fwht(f, g.exec());
        r.set("mean", f.density());
        r.set("mi", mutual_information_direct(f, *alpha, g.exec()));
        r.set("w1", degree_weight(spec, 1));
        r.set("bound", 1.0 - binary_entropy(*alpha));
        if (*kind == "and") {
          r.set("mi_and_exact", and_mi_exact(static_cast<int>(*param), *alpha));
          r.set("mi_and_simple_form", and_mi_simple_form(static_cast<int>(*param), *alpha));
        }
        session.finish(std::move(r));
      });
    });
  }

  {
    auto* c = boolean->add_subcommand("perfect-code", "Hamming(15,11) decoder against the per-bit bound");
    auto alpha = std::make_shared<double>(0.1);
    c->add_option("--alpha", *alpha, "flip probability")->required()->check(kAlphaRange);
    c->fallthrough();
    c->callback([=, &session, &actions] {
      actions.push_back([=, &session] {
        const auto g = session.globals();
        auto r = session.start("boolean perfect-code");
        r.params = {{"alpha", fmt(*alpha)}};
        const auto res = perfect_code_mi(*alpha, g.exec());
        const double bound = 1.0 - binary_entropy(*alpha);
        r.set("mi", res.mi);
        r.set("per_bit", res.per_bit);
        r.set("per_bit_bound", bound);
        r.set("margin", res.per_bit - bound);
        r.set("entropy_zero_coset", res.entropy_zero_coset);
        r.set("entropy_unit_coset", res.entropy_unit_coset);
        // The check is that the per-bit bound is violated.
        r.pass = res.per_bit > bound;
        session.finish(std::move(r));
      });
    });
  }

  {
    auto* c = boolean->add_subcommand("lex-failure", "Hamming ball of mean 2^-k against AND_k");
    auto ks = std::make_shared<std::vector<int>>();
    auto ns = std::make_shared<std::vector<int>>();
    auto alphas = std::make_shared<std::vector<double>>();
    auto table = std::make_shared<std::string>();
    c->add_option("--k", *ks, "k, or a comma list")->required()->delimiter(',')->check(CLI::Range(1, 20));
    c->add_option("--n", *ns, "n, or a comma list")->required()->delimiter(',')->check(CLI::Range(2, 2000));
    c->add_option("--alpha", *alphas, "alpha, or a comma list")->required()->delimiter(',')->check(kAlphaRange);
    c->add_option("--table", *table, "write the grid as CSV");
    c->fallthrough();
    c->callback([=, &session, &actions] {
      actions.push_back([=, &session] {
        const auto g = session.globals();
        const auto rows = lex_failure_grid(*ks, *ns, *alphas, g.exec());
        const bool single = rows.size() == 1;
        std::string csv = "k,n,alpha,mi_ball,mi_and,margin,w1_ball,w1_ball_full,w1_and,ball_wins\n";
        bool any = false;
        for (const auto& row : rows) {
          auto r = session.start("boolean lex-failure");
          r.params = {{"k", std::to_string(row.k)}, {"n", std::to_string(row.n)}, {"alpha", fmt(row.alpha)}};
          r.set("mi_ball", row.mi_ball);
          r.set("mi_and", row.mi_and);
          r.set("margin", row.margin);
          r.set("w1_ball", row.w1_ball);
          r.set("w1_ball_full", row.w1_ball_full);
          r.set("w1_and", row.w1_and);
          r.set("boundary_level", row.boundary_level);
          r.set("boundary_fraction", row.boundary_fraction);
          r.set("ball_wins", row.ball_wins);
          if (single) r.pass = row.ball_wins;
          any = any || row.ball_wins;
          csv += std::to_string(row.k) + "," + std::to_string(row.n) + "," + fmt(row.alpha) + "," +
                 fmt(row.mi_ball) + "," + fmt(row.mi_and) + "," + fmt(row.margin) + "," +
                 fmt(row.w1_ball) + "," + fmt(row.w1_ball_full) + "," + fmt(row.w1_and) + "," +
                 (row.ball_wins ? "true" : "false") + "\n";
          session.finish(std::move(r));
        }
        if (!single) {
          auto r = session.start("boolean lex-failure summary");
          r.params = {{"k", join(*ks)}, {"n", join(*ns)}, {"alpha", join(*alphas)}};
          r.set("configurations", static_cast<std::int64_t>(rows.size()));
          const auto best = std::max_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
            return a.margin < b.margin;
          });
          r.set("best_margin", best->margin);
          r.set("best_k", best->k);
          r.set("best_n", best->n);
          r.set("best_alpha", best->alpha);
          r.pass = any;
          session.finish(std::move(r));
        }
        if (!table->empty()) write_file(*table, csv);
      });
    });
  }

  {
    auto* c = boolean->add_subcommand("taylor", "second-order expansion of E[h(T_rho f)] on random f");
    auto n = std::make_shared<int>(4);
    auto trials = std::make_shared<int>(200);
    auto rho = std::make_shared<double>(1e-3);
    c->add_option("--n", *n, "variables, 1..16")->required()->check(CLI::Range(1, 16));
    c->add_option("--trials", *trials, "random functions")->check(CLI::Range(1, 1000000));
    c->add_option("--rho", *rho, "correlation")->check(kRhoRange);
    c->fallthrough();
    c->callback([=, &session, &actions] {
      actions.push_back([=, &session] {
        const auto g = session.globals();
        auto r = session.start("boolean taylor");
        r.params = {{"n", std::to_string(*n)}, {"trials", std::to_string(*trials)}, {"rho", fmt(*rho)}};
        std::vector<TaylorCheck> checks(static_cast<std::size_t>(*trials));
        for_trials(*trials, g.exec(), [&](int t) {
          CounterRng rng(g.seed, static_cast<std::uint64_t>(t));
          checks[t] = second_order_entropy_check(random_function(*n, rng), *rho);
        });
        std::int64_t failures = 0;
        double worst = 0.0;
        for (const auto& c : checks) {
          failures += c.pass ? 0 : 1;
          if (c.rhs != 0.0) worst = std::max(worst, c.error / std::abs(c.rhs));
        }
        r.set("failures", failures);
        r.set("max_relative_error", worst);
        r.pass = failures == 0;
        session.finish(std::move(r));
      });
    });
  }

  {
    auto* c = boolean->add_subcommand("scan5", "resumable scan of all n = 5 functions");
    auto alpha = std::make_shared<double>(0.1);
    auto checkpoint = std::make_shared<std::string>();
    auto budget = std::make_shared<std::uint64_t>(0);
    c->add_option("--alpha", *alpha, "flip probability")->required()->check(kAlphaRange);
    c->add_option("--checkpoint", *checkpoint, "JSON checkpoint file (resumed if present)");
    c->add_option("--budget", *budget, "tables to score in this run, 0 = all");
    c->fallthrough();
    c->callback([=, &session, &actions] {
      actions.push_back([=, &session] {
        const auto g = session.globals();
        auto r = session.start("boolean scan5");
        r.params = {{"alpha", fmt(*alpha)}, {"budget", std::to_string(*budget)}};
        Scan5Options o;
        o.alpha = *alpha;
        o.checkpoint_path = *checkpoint;
        o.budget = *budget;
        o.exec = g.exec();
        const auto s = scan_n5(o);
        const double bound = 1.0 - binary_entropy(*alpha);
        r.set("watermark", s.watermark);
        r.set("complete", s.complete());
        r.set("functions_scanned", s.functions_scanned);
        r.set("max_mi", s.max_mi);
        r.set("bound", bound);
        r.set("canonical_argmax", hex_words(s.canonical_argmax));
        if (s.complete()) r.pass = s.max_mi <= bound + kCheckTol;
        session.finish(std::move(r));
      });
    });
  }
}

// --- sphere ----------------------------------------------------------------

void add_sphere(CLI::App& app, Session& session, std::vector<std::function<void()>>& actions) {
  auto* sphere = app.add_subcommand("sphere", "spherical polarization checks");
  sphere->require_subcommand(1);
  sphere->fallthrough();

  {
    auto* c = sphere->add_subcommand("polarize-check", "J(f) <= J(f^sigma) over every grid reflection");
    auto grid = std::make_shared<int>(64);
    auto rho = std::make_shared<double>(0.5);
    auto psi = std::make_shared<std::string>("neg-entropy");
    auto trials = std::make_shared<int>(100);
    c->add_option("--grid", *grid, "points on the circle")->required()->check(CLI::Range(8, 8192));
    c->add_option("--rho", *rho, "Poisson kernel parameter")->required()->check(kRhoRange);
    c->add_option("--psi", *psi, "neg-entropy|square|abs-power:<p>");
    c->add_option("--trials", *trials, "random 0/1 fields")->check(CLI::Range(1, 1000000));
    c->fallthrough();
    c->callback([=, &session, &actions] {
      actions.push_back([=, &session] {
        const auto g = session.globals();
        auto r = session.start("sphere polarize-check");
        r.params = {{"grid", std::to_string(*grid)}, {"rho", fmt(*rho)}, {"psi", *psi},
                    {"trials", std::to_string(*trials)}};
        const auto ps = PsiSpec::parse(*psi);
        const auto set = circle_grid(*grid);
        const auto op = normalized_operator(set, KernelSpec::poisson(*rho, 2));
        const std::size_t refl = set->reflections().size();
        struct Tally {
          std::int64_t failures = 0, lemma_failures = 0;
          double worst = -INFINITY, sum_err = 0.0, diff_def = -INFINITY;
        };
        std::vector<Tally> tally(static_cast<std::size_t>(*trials));
        for_trials(*trials, g.exec(), [&](int t) {
          CounterRng rng(g.seed, static_cast<std::uint64_t>(t));
          const auto f = random_field(set, rng);
          auto& a = tally[t];
          for (std::size_t i = 0; i < refl; ++i) {
            const auto c = polarization_inequality_check(f, i, op, ps, kCheckTol);
            a.failures += c.pass ? 0 : 1;
            a.lemma_failures += c.lemmas_pass ? 0 : 1;
            a.worst = std::max(a.worst, c.j_before - c.j_after);
            a.sum_err = std::max(a.sum_err, c.sum_equal_error);
            a.diff_def = std::max(a.diff_def, c.diff_bigger_deficit);
          }
        });
        Tally total;
        for (const auto& a : tally) {
          total.failures += a.failures;
          total.lemma_failures += a.lemma_failures;
          total.worst = std::max(total.worst, a.worst);
          total.sum_err = std::max(total.sum_err, a.sum_err);
          total.diff_def = std::max(total.diff_def, a.diff_def);
        }
        r.set("checks", static_cast<std::int64_t>(refl) * *trials);
        r.set("failures", total.failures);
        r.set("lemma_failures", total.lemma_failures);
        r.set("max_j_decrease", total.worst);
        r.set("max_sum_equal_error", total.sum_err);
        r.set("max_diff_bigger_deficit", total.diff_def);
        r.pass = total.failures == 0 && total.lemma_failures == 0;
        session.finish(std::move(r));
      });
    });
  }

  {
    auto* c = sphere->add_subcommand("rearrange", "J(f) <= J(f~) and iterated polarization traces");
    auto grid = std::make_shared<int>(64);
    auto rho = std::make_shared<double>(0.5);
    auto psi = std::make_shared<std::string>("neg-entropy");
    auto trials = std::make_shared<int>(100);
    auto steps = std::make_shared<int>(200);
    auto trace = std::make_shared<std::string>();
    c->add_option("--grid", *grid, "points on the circle")->required()->check(CLI::Range(8, 8192));
    c->add_option("--rho", *rho, "Poisson kernel parameter")->required()->check(kRhoRange);
    c->add_option("--psi", *psi, "neg-entropy|square|abs-power:<p>");
    c->add_option("--trials", *trials, "random 0/1 fields")->check(CLI::Range(1, 1000000));
    c->add_option("--steps", *steps, "polarizations per sequence")->check(CLI::Range(0, 1000000));
    c->add_option("--trace", *trace, "write step,mean_l1,j_trial0 CSV");
    c->fallthrough();
    c->callback([=, &session, &actions] {
      actions.push_back([=, &session] {
        const auto g = session.globals();
        auto r = session.start("sphere rearrange");
        r.params = {{"grid", std::to_string(*grid)}, {"rho", fmt(*rho)}, {"psi", *psi},
                    {"trials", std::to_string(*trials)}, {"steps", std::to_string(*steps)}};
        const auto ps = PsiSpec::parse(*psi);
        const auto set = circle_grid(*grid);
        const auto op = normalized_operator(set, KernelSpec::poisson(*rho, 2));
        struct Out {
          double j = 0.0, j_tilde = 0.0, max_j_drop = 0.0;
          std::vector<double> l1, js;
        };
        std::vector<Out> outs(static_cast<std::size_t>(*trials));
        for_trials(*trials, g.exec(), [&](int t) {
          CounterRng rng(g.seed, static_cast<std::uint64_t>(t));
          const auto f = random_field(set, rng);
          auto& o = outs[t];
          o.j = functional_J(ps, op, f);
          o.j_tilde = functional_J(ps, op, rearrange(f));
          const auto tr = iterate_polarizations(f, rng(), *steps, &op, &ps);
          for (std::size_t s = 1; s < tr.j_values.size(); ++s) {
            o.max_j_drop = std::max(o.max_j_drop, tr.j_values[s - 1] - tr.j_values[s]);
          }
          o.l1 = tr.l1_to_rearranged;
          o.js = tr.j_values;
        });
        std::int64_t dominance_failures = 0, monotone_failures = 0;
        double worst_gap = -INFINITY, worst_drop = 0.0;
        std::vector<double> mean_l1(static_cast<std::size_t>(*steps) + 1, 0.0);
        for (const auto& o : outs) {
          dominance_failures += o.j > o.j_tilde + kCheckTol ? 1 : 0;
          monotone_failures += o.max_j_drop > kCheckTol ? 1 : 0;
          worst_gap = std::max(worst_gap, o.j - o.j_tilde);
          worst_drop = std::max(worst_drop, o.max_j_drop);
          for (std::size_t s = 0; s < mean_l1.size(); ++s) mean_l1[s] += o.l1[s] / *trials;
        }
        double max_mean_l1_rise = 0.0;
        for (std::size_t s = 1; s < mean_l1.size(); ++s) {
          max_mean_l1_rise = std::max(max_mean_l1_rise, mean_l1[s] - mean_l1[s - 1]);
        }
        r.set("dominance_failures", dominance_failures);
        r.set("max_j_minus_j_rearranged", worst_gap);
        r.set("monotone_failures", monotone_failures);
        r.set("max_j_drop_along_sequence", worst_drop);
        r.set("mean_l1_start", mean_l1.front());
        r.set("mean_l1_end", mean_l1.back());
        r.set("max_mean_l1_rise", max_mean_l1_rise);
        r.pass = dominance_failures == 0 && monotone_failures == 0 && max_mean_l1_rise <= kCheckTol;
        if (!trace->empty()) {
          std::string csv = "step,mean_l1,j_trial0\n";
          for (std::size_t s = 0; s < mean_l1.size(); ++s) {
            csv += std::to_string(s) + "," + fmt(mean_l1[s]) + "," + fmt(outs[0].js[s]) + "\n";
          }
          write_file(*trace, csv);
        }
        session.finish(std::move(r));
      });
    });
  }

  {
    auto* c = sphere->add_subcommand("mc", "polarization check on a sigma-paired Monte Carlo point set");
    auto dim = std::make_shared<int>(3);
    auto points = std::make_shared<int>(1024);
    auto rho = std::make_shared<double>(0.5);
    auto psi = std::make_shared<std::string>("square");
    auto trials = std::make_shared<int>(20);
    c->add_option("--dim", *dim, "ambient dimension n (sphere S^{n-1})")->required()->check(CLI::Range(2, 64));
    c->add_option("--points", *points, "even point count")->required()->check(CLI::Range(2, 8192));
    c->add_option("--rho", *rho, "Poisson kernel parameter")->check(kRhoRange);
    c->add_option("--psi", *psi, "neg-entropy|square|abs-power:<p>");
    c->add_option("--trials", *trials, "random 0/1 fields")->check(CLI::Range(1, 1000000));
    c->fallthrough();
    c->callback([=, &session, &actions] {
      actions.push_back([=, &session] {
        const auto g = session.globals();
        auto r = session.start("sphere mc");
        r.params = {{"dim", std::to_string(*dim)}, {"points", std::to_string(*points)},
                    {"rho", fmt(*rho)}, {"psi", *psi}, {"trials", std::to_string(*trials)}};
        if (*points % 2 != 0) throw CLI::ValidationError("--points", "must be even");
        const auto ps = PsiSpec::parse(*psi);
        const auto set = sphere_sample(*dim, *points, g.seed);
        const auto kernel = KernelSpec::poisson(*rho, *dim);
        const auto mass = KernelOperator(set, kernel).row_mass();
        KahanSum mean;
        for (double m : mass) mean += m / mass.size();
        const auto op = normalized_operator(set, kernel);
        std::vector<PolarizationCheck> checks(static_cast<std::size_t>(*trials));
        for_trials(*trials, g.exec(), [&](int t) {
          CounterRng rng(g.seed, static_cast<std::uint64_t>(t) + 1);
          checks[t] = polarization_inequality_check(random_field(set, rng), 0, op, ps, kCheckTol);
        });
        std::int64_t failures = 0, lemma_failures = 0;
        for (const auto& c : checks) {
          failures += c.pass ? 0 : 1;
          lemma_failures += c.lemmas_pass ? 0 : 1;
        }
        r.set("kernel_mass_mean", mean.value());
        r.set("kernel_mass_min", *std::min_element(mass.begin(), mass.end()));
        r.set("kernel_mass_max", *std::max_element(mass.begin(), mass.end()));
        r.set("failures", failures);
        r.set("lemma_failures", lemma_failures);
        r.pass = failures == 0 && lemma_failures == 0;
        session.finish(std::move(r));
      });
    });
  }

  {
    auto* c = sphere->add_subcommand("kernel-mass", "Poisson kernel row mass on the circle grid");
    auto grid = std::make_shared<int>(256);
    auto rho = std::make_shared<double>(0.5);
    auto tol = std::make_shared<double>(1e-6);
    c->add_option("--grid", *grid, "points on the circle")->required()->check(CLI::Range(8, 8192));
    c->add_option("--rho", *rho, "Poisson kernel parameter")->required()->check(kRhoRange);
    c->add_option("--tol", *tol, "allowed |mass - 1|");
    c->fallthrough();
    c->callback([=, &session, &actions] {
      actions.push_back([=, &session] {
        auto r = session.start("sphere kernel-mass");
        r.params = {{"grid", std::to_string(*grid)}, {"rho", fmt(*rho)}, {"tol", fmt(*tol)}};
        const auto mass = KernelOperator(circle_grid(*grid), KernelSpec::poisson(*rho, 2)).row_mass();
        double dev = 0.0;
        for (double m : mass) dev = std::max(dev, std::abs(m - 1.0));
        r.set("mass", mass.front());
        r.set("max_abs_deviation", dev);
        r.pass = dev <= *tol;
        session.finish(std::move(r));
      });
    });
  }
}

// --- gauss -----------------------------------------------------------------

std::vector<double> test_point(const std::vector<double>& given, int n, std::vector<double> fallback) {
  if (!given.empty()) {
    if (static_cast<int>(given.size()) != n) throw CLI::ValidationError("point", "needs n coordinates");
    return given;
  }
  fallback.resize(static_cast<std::size_t>(n), 0.0);
  return fallback;
}

void add_gauss(CLI::App& app, Session& session, std::vector<std::function<void()>>& actions) {
  auto* gauss = app.add_subcommand("gauss", "Gaussian-space checks");
  gauss->require_subcommand(1);
  gauss->fallthrough();

  {
    auto* c = gauss->add_subcommand("halfspace-vs", "-H(halfspace|y) against -H(set|y) at equal measure");
    auto mu = std::make_shared<double>(0.5);
    auto rho = std::make_shared<double>(0.5);
    auto spec = std::make_shared<std::string>();
    auto pieces = std::make_shared<int>(3);
    c->add_option("--measure", *mu, "measure of the random set (ignored with --spec)")->check(CLI::Range(0.0, 1.0));
    c->add_option("--rho", *rho, "correlation")->required()->check(kRhoRange);
    c->add_option("--spec", *spec, "set as JSON text, or @FILE");
    c->add_option("--pieces", *pieces, "intervals in the random set")->check(CLI::Range(1, 64));
    c->fallthrough();
    c->callback([=, &session, &actions] {
      actions.push_back([=, &session] {
        const auto g = session.globals();
        auto r = session.start("gauss halfspace-vs");
        r.params = {{"rho", fmt(*rho)}};
        const auto set = [&] {
          if (!spec->empty()) {
            const auto text = (*spec)[0] == '@' ? read_text(spec->substr(1)) : *spec;
            r.params["spec"] = text;
            return GaussianSetSpec::from_json(text);
          }
          if (!(*mu > 0.0 && *mu < 1.0)) throw CLI::ValidationError("--measure", "must lie in (0, 1)");
          r.params["measure"] = fmt(*mu);
          r.params["pieces"] = std::to_string(*pieces);
          CounterRng rng(g.seed);
          return random_interval_union(*mu, *pieces, rng);
        }();
        const double m = set.measure();
        if (!(m > 0.0 && m < 1.0)) throw CLI::ValidationError("--spec", "set measure must lie in (0, 1)");
        const auto half = GaussianSetSpec::halfspace_with_measure(m);
        const double ns = neg_cond_entropy(set, *rho);
        const double nh = neg_cond_entropy(half, *rho);
        r.set("set", set.to_json());
        r.set("measure", m);
        r.set("neg_cond_entropy_set", ns);
        r.set("neg_cond_entropy_halfspace", nh);
        r.set("mi_set", binary_entropy(m) + ns);
        r.set("mi_halfspace", binary_entropy(m) + nh);
        r.set("margin", nh - ns);
        r.pass = nh >= ns - 1e-8;
        session.finish(std::move(r));
      });
    });
  }

  {
    auto* c = gauss->add_subcommand("kernel-limit", "U_{rho,N}(y,z) against the Mehler kernel as N grows");
    auto n = std::make_shared<int>(2);
    auto rho = std::make_shared<double>(0.5);
    auto bigN = std::make_shared<std::vector<int>>(std::vector<int>{50, 200, 1000});
    auto y = std::make_shared<std::vector<double>>();
    auto z = std::make_shared<std::vector<double>>();
    auto tol = std::make_shared<double>(0.05);
    auto table = std::make_shared<std::string>();
    c->add_option("--n", *n, "dimension of y and z")->check(CLI::Range(1, 64));
    c->add_option("--rho", *rho, "correlation")->check(kRhoRange);
    c->add_option("--bigN", *bigN, "comma list of N, ascending")->delimiter(',');
    c->add_option("--y", *y, "comma list, default (0.5, 0, ...)")->delimiter(',');
    c->add_option("--z", *z, "comma list, default (0.2, 0.3, 0, ...)")->delimiter(',');
    c->add_option("--tol", *tol, "relative error allowed at the largest N");
    c->add_option("--table", *table, "write N,value,reference,rel_err CSV");
    c->fallthrough();
    c->callback([=, &session, &actions] {
      actions.push_back([=, &session] {
        auto r = session.start("gauss kernel-limit");
        const auto yy = test_point(*y, *n, {0.5});
        const auto zz = test_point(*z, *n, {0.2, 0.3});
        r.params = {{"n", std::to_string(*n)}, {"rho", fmt(*rho)}, {"bigN", join(*bigN)},
                    {"y", join(yy)}, {"z", join(zz)}, {"tol", fmt(*tol)}};
        if (bigN->empty() || !std::is_sorted(bigN->begin(), bigN->end())) {
          throw CLI::ValidationError("--bigN", "must be a non-empty ascending list");
        }
        const auto rows = mehler_limit_table(yy, zz, *rho, *bigN);
        const auto arows = a_power_limit_table(yy, zz, *rho, *bigN);
        bool monotone = true;
        std::string csv = "N,value,reference,rel_err,a_power,a_power_reference,a_power_rel_err\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
          const auto& row = rows[i];
          r.set("rel_err_N" + std::to_string(row.N), row.rel_err);
          r.set("a_power_rel_err_N" + std::to_string(row.N), arows[i].rel_err);
          if (i > 0 && !(row.abs_err < rows[i - 1].abs_err)) monotone = false;
          csv += std::to_string(row.N) + "," + fmt(row.value) + "," + fmt(row.reference) + "," +
                 fmt(row.rel_err) + "," + fmt(arows[i].value) + "," + fmt(arows[i].reference) + "," +
                 fmt(arows[i].rel_err) + "\n";
        }
        r.set("mehler", rows.front().reference);
        r.set("errors_monotone", monotone);
        r.pass = monotone && rows.back().rel_err < *tol;
        if (!table->empty()) write_file(*table, csv);
        session.finish(std::move(r));
      });
    });
  }

  {
    auto* c = gauss->add_subcommand("factor-check", "Q_rho = U_{rho,N} x Poisson factor, and the A bound");
    auto bigN = std::make_shared<int>(9);
    auto n = std::make_shared<int>(2);
    auto samples = std::make_shared<std::uint64_t>(100);
    auto bound_samples = std::make_shared<std::uint64_t>(100000);
    c->add_option("--bigN", *bigN, "ambient dimension N")->required()->check(CLI::Range(5, 100000));
    c->add_option("--n", *n, "projected dimension n")->required()->check(CLI::Range(1, 100000));
    c->add_option("--samples", *samples, "random decompositions");
    c->add_option("--bound-samples", *bound_samples, "random (y, z, rho) for the A bound");
    c->fallthrough();
    c->callback([=, &session, &actions] {
      actions.push_back([=, &session] {
        const auto g = session.globals();
        auto r = session.start("gauss factor-check");
        r.params = {{"bigN", std::to_string(*bigN)}, {"n", std::to_string(*n)},
                    {"samples", std::to_string(*samples)}, {"bound_samples", std::to_string(*bound_samples)}};
        if (*bigN < *n + 4) throw CLI::ValidationError("--bigN", "needs N >= n + 4");
        const auto p = LimitParams::make(*bigN, *n);
        const auto f = factor_kernel_check(p, *samples, g.seed);
        const auto a = a_bound_check(p, *bound_samples, g.seed + 1);
        r.set("factor_max_rel_err", f.max_rel_err);
        r.set("a_bound_violations", a.violations);
        r.set("a_bound_worst", a.worst);
        r.set("max_r_over_rho", a.max_r_over_rho);
        r.pass = f.max_rel_err <= 1e-9 && a.violations == 0;
        session.finish(std::move(r));
      });
    });
  }

  {
    auto* c = gauss->add_subcommand("poisson-mass", "Monte Carlo mass of the Poisson factor on S^{d-1}_R");
    auto d = std::make_shared<int>(3);
    auto radius = std::make_shared<double>(1.0);
    auto rr = std::make_shared<double>(0.4);
    auto samples = std::make_shared<std::uint64_t>(200000);
    c->add_option("--dim", *d, "d, the sphere is S^{d-1}")->required()->check(CLI::Range(2, 1000));
    c->add_option("--radius", *radius, "sphere radius")->check(CLI::PositiveNumber);
    c->add_option("--r", *rr, "factor parameter in [0, 1)")->check(kRhoRange);
    c->add_option("--samples", *samples, "Monte Carlo samples");
    c->fallthrough();
    c->callback([=, &session, &actions] {
      actions.push_back([=, &session] {
        const auto g = session.globals();
        auto r = session.start("gauss poisson-mass");
        r.params = {{"dim", std::to_string(*d)}, {"radius", fmt(*radius)}, {"r", fmt(*rr)},
                    {"samples", std::to_string(*samples)}};
        const auto e = poisson_factor_mass(*d, *radius, *rr, *samples, g.seed);
        r.set("mass", e.mean);
        r.set("sigma", e.sigma);
        r.set("z_score", (e.mean - 1.0) / e.sigma);
        r.pass = std::abs(e.mean - 1.0) <= 3.0 * e.sigma;
        session.finish(std::move(r));
      });
    });
  }

  {
    auto* c = gauss->add_subcommand("decomposition", "both sides of the sphere-slicing integral identity");
    auto bigN = std::make_shared<int>(7);
    auto n = std::make_shared<int>(2);
    auto samples = std::make_shared<std::uint64_t>(200000);
    auto exponent = std::make_shared<std::string>("slice");
    auto fn = std::make_shared<std::string>("one");
    c->add_option("--bigN", *bigN, "ambient dimension N <= 10")->check(CLI::Range(5, 10));
    c->add_option("--n", *n, "projected dimension")->check(CLI::Range(1, 6));
    c->add_option("--samples", *samples, "Monte Carlo samples per side");
    c->add_option("--exponent", *exponent, "slice|stated")->check(CLI::IsMember({"slice", "stated"}));
    c->add_option("--g", *fn, "one|u1sq")->check(CLI::IsMember({"one", "u1sq"}));
    c->fallthrough();
    c->callback([=, &session, &actions] {
      actions.push_back([=, &session] {
        const auto g = session.globals();
        auto r = session.start("gauss decomposition");
        r.params = {{"bigN", std::to_string(*bigN)}, {"n", std::to_string(*n)},
                    {"samples", std::to_string(*samples)}, {"exponent", *exponent}, {"g", *fn}};
        if (*bigN < *n + 4) throw CLI::ValidationError("--bigN", "needs N >= n + 4");
        const auto d = decomposition_integral_check(
            *fn == "one" ? TestFunction::one : TestFunction::u1_squared, LimitParams::make(*bigN, *n),
            *exponent == "slice" ? SliceExponent::slice : SliceExponent::stated, *samples, g.seed);
        r.set("lhs", d.lhs);
        r.set("lhs_sigma", d.lhs_sigma);
        r.set("rhs", d.rhs);
        r.set("rhs_sigma", d.rhs_sigma);
        r.set("ratio", d.ratio);
        r.set("ratio_sigma", d.ratio_sigma);
        r.pass = std::abs(d.ratio - 1.0) <= 3.0 * d.ratio_sigma + 1e-12;
        session.finish(std::move(r));
      });
    });
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Globals globals;
  Session session(globals);
  std::vector<std::function<void()>> actions;

  CLI::App app{"Information-theoretic checks on the Boolean cube, sphere and Gaussian space", "infolab"};
  app.require_subcommand(1);
  app.add_option("--format", globals.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", globals.out_path, "write records here instead of stdout");
  app.add_option("--seed", globals.seed, "seed for every randomized command");
  app.add_flag("--serial", globals.serial, "use the serial reference kernels");
  app.set_version_flag("--version", INFOLAB_VERSION);

  add_boolean(app, session, actions);
  add_sphere(app, session, actions);
  add_gauss(app, session, actions);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    for (const auto& a : actions) a();
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const auto format = globals.format == "csv" ? RecordFormat::csv : RecordFormat::json;
  std::string text;
  for (std::size_t i = 0; i < session.records().size(); ++i) {
    if (i > 0 && format == RecordFormat::csv) text += "\n";
    text += emit(session.records()[i], format);
  }
  try {
    if (globals.out_path.empty()) {
      out << text;
    } else {
      write_file(globals.out_path, text);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const bool failed = std::any_of(session.records().begin(), session.records().end(),
                                  [](const RunRecord& r) { return r.pass && !*r.pass; });
  return failed ? 1 : 0;
}

}  // namespace infolab
