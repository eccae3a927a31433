#include "spinlimit/rng.hpp"

#include <limits>

#include "spinlimit/errors.hpp"

namespace spinlimit {

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InvalidInputError("rng: empty integer range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next_bits());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw = next_bits();
  while (draw >= limit) draw = next_bits();
  return lo + static_cast<std::int64_t>(draw % span);
}

}  // namespace spinlimit
