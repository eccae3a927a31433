#include "spinlimit/spin.hpp"

#include <charconv>
#include <cmath>

namespace spinlimit {

namespace {

int parse_int(std::string_view text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidInputError("spin: cannot parse '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

SpinNumber SpinNumber::parse(std::string_view text) {
  if (text.empty()) throw InvalidInputError("spin: empty value");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    if (parse_int(text.substr(slash + 1)) != 2) {
      throw InvalidInputError("spin: denominator must be 2 in '" + std::string(text) + "'");
    }
    return SpinNumber(parse_int(text.substr(0, slash)));
  }
  if (text.find('.') == std::string_view::npos) return from_int(parse_int(text));

  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InvalidInputError("spin: cannot parse '" + std::string(text) + "'");
  }
  const double doubled = 2.0 * value;
  if (std::abs(doubled - std::round(doubled)) > 1e-9) {
    throw InvalidInputError("spin: '" + std::string(text) + "' is not a multiple of 1/2");
  }
  return SpinNumber(static_cast<int>(std::lround(doubled)));
}

void SpinNumber::require(MagneticIndex m) const {
  if (!contains(m)) {
    throw InvalidInputError("magnetic number 2m=" + std::to_string(m.two_m()) +
                            " is not valid for j=" + to_string());
  }
}

std::string SpinNumber::to_string() const {
  if (is_integer()) return std::to_string(two_j_ / 2);
  return std::to_string(two_j_) + "/2";
}

}  // namespace spinlimit
