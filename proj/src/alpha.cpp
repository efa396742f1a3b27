#include "zakharov/alpha.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace zakharov {

Alpha::Alpha(double value) : value_(value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument("alpha must be a positive finite number");
  }
}

Alpha::Alpha(std::int64_t p, std::int64_t q) : value_(0.0) {
  if (q == 0) throw std::invalid_argument("alpha: zero denominator");
  Rational r(p, q);
  if (r <= 0) throw std::invalid_argument("alpha must be positive");
  exact_ = r;
  value_ = static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("alpha: cannot parse integer '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Alpha Alpha::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("alpha: empty string");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return Alpha(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }
  if (text.find_first_of(".eE") == std::string_view::npos) return Alpha(parse_int(text), 1);
  std::size_t used = 0;
  const double v = std::stod(std::string(text), &used);
  if (used != text.size()) throw std::invalid_argument("alpha: trailing characters in '" + std::string(text) + "'");
  return Alpha(v);
}

std::string Alpha::to_string() const {
  if (exact_) {
    return std::to_string(exact_->numerator()) + "/" + std::to_string(exact_->denominator());
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

}  // namespace zakharov
