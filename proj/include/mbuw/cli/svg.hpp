#pragma once

#include <string>
#include <vector>

#include "mbuw/distribution.hpp"
#include "mbuw/relation_models.hpp"
#include "mbuw/surface_scan.hpp"

namespace mbuw::cli {

/// Empirical step function of the sample with the fitted CDF on top.
std::string cdf_svg(const SampleData& data, const Params& p);

/// Sorted sample against theoretical quantiles at (i - 0.5) / n.
std::string qq_svg(const SampleData& data, const Params& p);

/// nll heatmap, block-minimum downsampled to at most max_cells per side. The
/// grid minimum is drawn as an element with id="grid-min" carrying its data
/// coordinates.
std::string heatmap_svg(const SurfaceGrid& grid, std::size_t max_cells = 120);

/// Ridge pairs as points and each model's curve over the pairs' alpha span.
std::string ridge_fit_svg(const RidgePairs& pairs, const std::vector<RelationModel>& models);

}  // namespace mbuw::cli
