#include "infolab/boolean_function.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "infolab/entropy.hpp"

namespace infolab {

namespace {

void check_vars(int n) {
  if (n < 1 || n > kMaxTransformVars) {
    throw std::out_of_range("Boolean function dimension " + std::to_string(n) +
                            " outside [1, " + std::to_string(kMaxTransformVars) + "]");
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Parses "key=value" tokens of a header line into the requested slots.
std::string header_value(std::string_view header, std::string_view key) {
  std::istringstream in{std::string(header)};
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq != std::string::npos && std::string_view(token).substr(0, eq) == key) {
      return token.substr(eq + 1);
    }
  }
  throw std::invalid_argument("truth table header lacks '" + std::string(key) + "='");
}

int parse_int(const std::string& s, const char* what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument(std::string("bad integer for ") + what + ": '" + s + "'");
  }
  return v;
}

std::pair<std::string_view, std::string_view> split_header(std::string_view text) {
  text = trim(text);
  const auto nl = text.find('\n');
  if (nl == std::string_view::npos) throw std::invalid_argument("truth table: missing body line");
  return {trim(text.substr(0, nl)), trim(text.substr(nl + 1))};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string to_string(ValueConvention conv) {
  return conv == ValueConvention::zero_one ? "zero_one" : "plus_minus";
}

ValueConvention parse_convention(std::string_view text) {
  if (text == "zero_one") return ValueConvention::zero_one;
  if (text == "plus_minus") return ValueConvention::plus_minus;
  throw std::invalid_argument("unknown value convention '" + std::string(text) + "'");
}

std::size_t subset_mask(int n, std::initializer_list<int> coordinates) {
  std::size_t mask = 0;
  for (int i : coordinates) {
    if (i < 1 || i > n) throw std::out_of_range("subset_mask: coordinate out of range");
    mask |= std::size_t{1} << coordinate_bit(n, i);
  }
  return mask;
}

// --- BooleanFunction -------------------------------------------------------

BooleanFunction::BooleanFunction(int n, ValueConvention conv) : n_(n), conv_(conv) {
  check_vars(n);
  words_.assign((size() + 63) / 64, 0);
}

BooleanFunction BooleanFunction::from_bits(int n, std::span<const std::uint8_t> bits,
                                           ValueConvention conv) {
  BooleanFunction f(n, conv);
  if (bits.size() != f.size()) {
    throw std::invalid_argument("from_bits: table length must be 2^n");
  }
  for (std::size_t x = 0; x < bits.size(); ++x) {
    if (bits[x] > 1) throw std::invalid_argument("from_bits: entries must be 0 or 1");
    f.set_bit(x, bits[x] != 0);
  }
  return f;
}

BooleanFunction BooleanFunction::from_word(int n, std::uint64_t word, ValueConvention conv) {
  if (n > 6) throw std::out_of_range("from_word: n must be <= 6");
  BooleanFunction f(n, conv);
  const std::uint64_t mask = n == 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << f.size()) - 1;
  if (word & ~mask) throw std::invalid_argument("from_word: bits beyond 2^n");
  f.words_[0] = word;
  return f;
}

void BooleanFunction::set_bit(std::size_t x, bool value) noexcept {
  const std::uint64_t m = std::uint64_t{1} << (x & 63);
  if (value) {
    words_[x >> 6] |= m;
  } else {
    words_[x >> 6] &= ~m;
  }
}

std::vector<double> BooleanFunction::values() const {
  std::vector<double> out(size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = value(x);
  return out;
}

BooleanFunction BooleanFunction::with_convention(ValueConvention conv) const {
  BooleanFunction g = *this;
  g.conv_ = conv;
  return g;
}

BooleanFunction BooleanFunction::complement() const {
  BooleanFunction g = *this;
  for (auto& w : g.words_) w = ~w;
  if (size() < 64) g.words_[0] &= (std::uint64_t{1} << size()) - 1;
  return g;
}

std::size_t BooleanFunction::count_ones() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

double BooleanFunction::density() const noexcept {
  return static_cast<double>(count_ones()) / static_cast<double>(size());
}

double BooleanFunction::mean() const noexcept {
  const double d = density();
  return conv_ == ValueConvention::zero_one ? d : 1.0 - 2.0 * d;
}

std::uint64_t BooleanFunction::word() const {
  if (n_ > 6) throw std::out_of_range("word: n must be <= 6");
  return words_[0];
}

// --- MultiOutputFunction ---------------------------------------------------

MultiOutputFunction::MultiOutputFunction(int n, int k, std::vector<std::uint32_t> table)
    : n_(n), k_(k), table_(std::move(table)) {
  check_vars(n);
  if (k < 1 || k > 24) throw std::out_of_range("multi-output: k outside [1, 24]");
  if (table_.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("multi-output: table length must be 2^n");
  }
  const std::uint32_t limit = std::uint32_t{1} << k;
  for (auto v : table_) {
    if (v >= limit) throw std::invalid_argument("multi-output: output code >= 2^k");
  }
}

MultiOutputFunction MultiOutputFunction::from_boolean(const BooleanFunction& f) {
  std::vector<std::uint32_t> t(f.size());
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = f.bit(x) ? 1u : 0u;
  return MultiOutputFunction(f.num_vars(), 1, std::move(t));
}

// --- FourierSpectrum -------------------------------------------------------

FourierSpectrum::FourierSpectrum(int n, std::vector<double> coeffs)
    : n_(n), coeffs_(std::move(coeffs)) {
  check_vars(n);
  if (coeffs_.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("spectrum length must be 2^n");
  }
}

double FourierSpectrum::total_weight() const {
  KahanSum s;
  for (double c : coeffs_) s += c * c;
  return s.value();
}

// --- text formats ----------------------------------------------------------

BooleanFunction parse_truth_table(std::string_view text) {
  const auto [header, body] = split_header(text);
  const int n = parse_int(header_value(header, "n"), "n");
  const ValueConvention conv = parse_convention(header_value(header, "conv"));
  BooleanFunction f(n, conv);

  if (body.size() > 2 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X')) {
    const std::string_view hex = body.substr(2);
    const std::size_t digits = (f.size() + 3) / 4;
    if (hex.size() != digits) {
      throw std::invalid_argument("truth table: expected " + std::to_string(digits) +
                                  " hex digits");
    }
    for (std::size_t k = 0; k < digits; ++k) {
      const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(hex[k])));
      int nib;
      if (c >= '0' && c <= '9') {
        nib = c - '0';
      } else if (c >= 'a' && c <= 'f') {
        nib = c - 'a' + 10;
      } else {
        throw std::invalid_argument("truth table: bad hex digit");
      }
      for (std::size_t b = 0; b < 4; ++b) {
        const std::size_t x = 4 * k + b;
        const bool on = (nib >> b) & 1;
        if (x >= f.size()) {
          if (on) throw std::invalid_argument("truth table: hex sets bits beyond 2^n");
          continue;
        }
        f.set_bit(x, on);
      }
    }
    return f;
  }

  if (body.size() != f.size()) {
    throw std::invalid_argument("truth table: expected " + std::to_string(f.size()) +
                                " characters, got " + std::to_string(body.size()));
  }
  for (std::size_t x = 0; x < body.size(); ++x) {
    if (body[x] != '0' && body[x] != '1') {
      throw std::invalid_argument("truth table: entries must be '0' or '1'");
    }
    f.set_bit(x, body[x] == '1');
  }
  return f;
}

std::string format_truth_table(const BooleanFunction& f) {
  std::string out = "n=" + std::to_string(f.num_vars()) + " conv=" + to_string(f.convention()) +
                    "\n";
  out.reserve(out.size() + f.size() + 1);
  for (std::size_t x = 0; x < f.size(); ++x) out.push_back(f.bit(x) ? '1' : '0');
  out.push_back('\n');
  return out;
}

std::string format_hex(const BooleanFunction& f) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out = "0x";
  for (std::size_t k = 0; 4 * k < f.size(); ++k) {
    int nib = 0;
    for (std::size_t b = 0; b < 4 && 4 * k + b < f.size(); ++b) {
      nib |= (f.bit(4 * k + b) ? 1 : 0) << b;
    }
    out.push_back(digits[nib]);
  }
  return out;
}

BooleanFunction read_truth_table_file(const std::string& path) {
  return parse_truth_table(slurp(path));
}

MultiOutputFunction parse_multi_output(std::string_view text) {
  const auto [header, body] = split_header(text);
  const int n = parse_int(header_value(header, "n"), "n");
  const int k = parse_int(header_value(header, "k"), "k");
  check_vars(n);
  std::vector<std::uint32_t> table;
  table.reserve(std::size_t{1} << n);
  std::istringstream in{std::string(body)};
  std::string token;
  while (in >> token) {
    table.push_back(static_cast<std::uint32_t>(parse_int(token, "output code")));
  }
  return MultiOutputFunction(n, k, std::move(table));
}

MultiOutputFunction read_multi_output_file(const std::string& path) {
  return parse_multi_output(slurp(path));
}

}  // namespace infolab
