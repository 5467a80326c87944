// Aggregation of per-feature compatibilities into one item-level score,
// plus the uniform multi-criteria fusion used by the MC baseline.
#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sensorec/domain.hpp"

namespace sensorec {

enum class Measure { Min, Ave, Cos, RMSD };

std::string_view measure_name(Measure measure);
std::optional<Measure> parse_measure(std::string_view text);

// All four compatibility values per feature, in schema order.
std::vector<double> feature_compatibilities(const UserProfile& user,
                                            const ItemProfile& item,
                                            const FeatureSchema& schema);

// Conjunctive: one fully incompatible feature sinks the item.
double compat_min(std::span<const double> comps);

// Additive: plain mean of the per-feature compatibilities.
double compat_ave(std::span<const double> comps);

// Cosine similarity between the item vector and the user's ideal vector,
// rescaled affinely from (0, 1] onto (1, v_max] so it is commensurate with
// the other measures and with preference values.
double compat_cos(std::span<const double> item_vec, std::span<const double> ideal,
                  int v_max);

// Complement of the root mean square deviation from the ideal vector.
// Deliberately unclamped here; its range is [v_max + 1 - full deviation,
// v_max + 1] and only final predicted ratings are clamped.
double compat_rmsd(std::span<const double> item_vec, std::span<const double> ideal,
                   int v_max);

// Overall item-user compatibility under the given measure.
double item_compatibility(const UserProfile& user, const ItemProfile& item,
                          const FeatureSchema& schema, Measure measure);

// Uniform multi-criteria fusion: the per-feature compatibilities and the
// category preference form one extended value list, aggregated against the
// all-v_max reference for Cos and RMSD.
double mc_score(const UserProfile& user, const ItemProfile& item,
                const FeatureSchema& schema, Measure measure);

}  // namespace sensorec
