// Deterministic sampling helpers. The standard distributions are
// implementation-defined, so everything observable is drawn through these
// to keep generated datasets and fold plans byte-stable across platforms.
#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace sensorec::rng {

using Engine = std::mt19937_64;

// FNV-1a fold of a tag into a seed; used to derive independent per-entity
// streams from one user-facing seed.
std::uint64_t mix(std::uint64_t seed, std::string_view tag);

// Uniform integer in [lo, hi], rejection-sampled.
int uniform_int(Engine& engine, int lo, int hi);

// Uniform real in [lo, hi) with 53-bit resolution.
double uniform_real(Engine& engine, double lo, double hi);

// Standard normal via Box-Muller; consumes exactly two engine draws.
double normal(Engine& engine);

// Bernoulli(p).
bool bernoulli(Engine& engine, double p);

// Fisher-Yates with uniform_int, stable across standard libraries.
template <typename T>
void shuffle(std::vector<T>& values, Engine& engine) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(
        uniform_int(engine, 0, static_cast<int>(i) - 1));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace sensorec::rng
