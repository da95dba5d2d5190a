#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrf/report.hpp"

namespace qrf {

/// One randomized law. The runner feeds `check` a fresh per-case seed; a
/// returned string is a counterexample witness describing the inputs.
struct Property {
  std::string name;
  std::function<std::optional<std::string>(std::uint64_t case_seed)> check;
};

/// Every law the library promises, across groups, sections, states, the
/// translation scenarios, and superposed geometries.
const std::vector<Property>& all_properties();

/// Run each property `cases` times. Per-case seeds depend only on (seed,
/// property name, case index), so a witness replays no matter which other
/// campaigns ran. One report check per property; a failing check carries
/// the first witness and its case index. Throws ValidationError for
/// cases < 1.
RunReport run_property_suite(std::span<const Property> properties, std::uint64_t seed,
                             int cases);

/// run_property_suite over all_properties().
RunReport verify_suite(std::uint64_t seed, int cases);

}  // namespace qrf
