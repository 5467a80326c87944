#include "sensorec/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sensorec::rng {

std::uint64_t mix(std::uint64_t seed, std::string_view tag) {
  std::uint64_t h = 14695981039346656037ULL ^ seed;
  for (const char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

int uniform_int(Engine& engine, int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
  const std::uint64_t range = static_cast<std::uint64_t>(hi) - lo + 1;
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw;
  do {
    draw = engine();
  } while (draw >= limit);
  return lo + static_cast<int>(draw % range);
}

double uniform_real(Engine& engine, double lo, double hi) {
  const double unit = static_cast<double>(engine() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

double normal(Engine& engine) {
  // (0, 1] for the log argument, [0, 1) for the angle.
  const double u1 = (static_cast<double>(engine() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(engine() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

bool bernoulli(Engine& engine, double p) {
  return uniform_real(engine, 0.0, 1.0) < p;
}

}  // namespace sensorec::rng
