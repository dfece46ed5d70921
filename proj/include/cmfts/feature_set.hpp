#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "cmfts/complexity.hpp"
#include "cmfts/features.hpp"
#include "cmfts/series.hpp"

namespace cmfts {

inline constexpr std::size_t kFeatureCount = 55;

/// Canonical column names C1..C55, the single source shared by extraction,
/// serialization and model reporting.
const std::array<std::string_view, kFeatureCount>& feature_names();

struct FeatureParams {
    ComplexityParams complexity;
    WindowParams window;
};

/// All 55 features of one series, in canonical order. Entries that cannot
/// be computed carry quiet_NaN; the cleaning pipeline owns the policy.
std::vector<double> extract_feature_vector(const TimeSeries& series,
                                           const FeatureParams& params = {});

}  // namespace cmfts
