#include "infolab/psi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "infolab/entropy.hpp"

namespace infolab {

namespace {
constexpr double kUnitTol = 1e-9;

double clamp_unit(double x, const char* who) {
  if (x < 0.0 && x >= -kUnitTol) return 0.0;
  if (x > 1.0 && x <= 1.0 + kUnitTol) return 1.0;
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(who) + ": argument " + std::to_string(x) +
                            " outside [0,1]");
  }
  return x;
}
}  // namespace

PsiSpec PsiSpec::neg_binary_entropy() { return PsiSpec(Kind::neg_binary_entropy, 0.0, {}); }

PsiSpec PsiSpec::square() { return PsiSpec(Kind::square, 2.0, {}); }

PsiSpec PsiSpec::abs_power(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("abs_power: exponent must be >= 1");
  return PsiSpec(Kind::abs_power, p, {});
}

PsiSpec PsiSpec::custom_table(std::vector<double> values) {
  if (values.size() < 2) throw std::invalid_argument("custom_table: need at least 2 knots");
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    const double second = values[i + 1] - 2.0 * values[i] + values[i - 1];
    if (second < -1e-12) throw std::invalid_argument("custom_table: table is not convex");
  }
  return PsiSpec(Kind::custom_table, 0.0, std::move(values));
}

PsiSpec PsiSpec::parse(const std::string& name) {
  if (name == "neg-entropy" || name == "neg_entropy" || name == "-h") return neg_binary_entropy();
  if (name == "square") return square();
  const std::string prefix = "abs-power:";
  if (name.rfind(prefix, 0) == 0) return abs_power(std::stod(name.substr(prefix.size())));
  throw std::invalid_argument("unknown psi '" + name + "'");
}

std::string PsiSpec::name() const {
  switch (kind_) {
    case Kind::neg_binary_entropy: return "neg-entropy";
    case Kind::square: return "square";
    case Kind::abs_power: return "abs-power:" + std::to_string(exponent_);
    case Kind::custom_table: return "custom-table";
  }
  return "?";
}

double PsiSpec::operator()(double x) const {
  switch (kind_) {
    case Kind::neg_binary_entropy:
      return -binary_entropy(clamp_unit(x, "neg_binary_entropy"));
    case Kind::square:
      return x * x;
    case Kind::abs_power:
      return std::pow(std::abs(x), exponent_);
    case Kind::custom_table: {
      const double u = clamp_unit(x, "custom_table");
      const double pos = u * static_cast<double>(table_.size() - 1);
      const auto lo = std::min(static_cast<std::size_t>(pos), table_.size() - 2);
      const double frac = pos - static_cast<double>(lo);
      return table_[lo] + frac * (table_[lo + 1] - table_[lo]);
    }
  }
  return 0.0;
}

bool PsiSpec::is_increasing() const {
  switch (kind_) {
    case Kind::neg_binary_entropy: return false;
    case Kind::square:
    case Kind::abs_power: return true;
    case Kind::custom_table:
      for (std::size_t i = 1; i < table_.size(); ++i) {
        if (table_[i] < table_[i - 1]) return false;
      }
      return true;
  }
  return false;
}

}  // namespace infolab
