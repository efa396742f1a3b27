#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace zakharov {

using Rational = boost::rational<std::int64_t>;

/// Dispersion coefficient alpha > 0, optionally carried as an exact p/q so
/// resonance questions can be decided in integer arithmetic.
class Alpha {
 public:
  explicit Alpha(double value);
  Alpha(std::int64_t p, std::int64_t q);

  /// "3/4" -> exact rational; "0.75" -> floating value.
  static Alpha parse(std::string_view text);

  double value() const { return value_; }
  const std::optional<Rational>& exact() const { return exact_; }
  bool is_exact() const { return exact_.has_value(); }

  std::string to_string() const;

 private:
  double value_;
  std::optional<Rational> exact_;
};

}  // namespace zakharov
