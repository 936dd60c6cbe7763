#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parksent/geo.hpp"

namespace parksent {

/// Two-band reflectance raster. Pixel (col, row) has its center at
/// (origin_lon + (col + 0.5) * pixel_dx, origin_lat + (row + 0.5) * pixel_dy);
/// north-up rasters have pixel_dy < 0. Bands are row-major.
struct RasterGrid {
    int width = 0;
    int height = 0;
    double origin_lon = 0.0;  // top-left corner
    double origin_lat = 0.0;
    double pixel_dx = 0.0;
    double pixel_dy = 0.0;
    std::optional<double> nodata;
    std::vector<double> nir;
    std::vector<double> red;

    double nir_at(int col, int row) const { return nir[static_cast<std::size_t>(row) * width + col]; }
    double red_at(int col, int row) const { return red[static_cast<std::size_t>(row) * width + col]; }
    GeoPoint pixel_center(int col, int row) const {
        return GeoPoint{origin_lat + (row + 0.5) * pixel_dy, origin_lon + (col + 0.5) * pixel_dx};
    }

    /// Self-describing JSON raster: {width, height, origin: [lon, lat],
    /// pixel_size: [dx, dy], nodata, bands: {nir: [...], red: [...]}}.
    static RasterGrid load_json(std::istream& in);
    std::string to_json_string() const;
};

/// (nir - red) / (nir + red), in [-1, 1]. nullopt when nir + red == 0.
/// Negative reflectance throws ValidationError.
std::optional<double> ndvi(double nir, double red);

struct ParkVegStats {
    std::string facility_id;
    double mean_ndvi = 0.0;          // over valid pixels only
    double percent_vegetated = 0.0;  // share of valid pixels at/above threshold
    std::uint64_t pixels_total = 0;  // centers inside the facility
    std::uint64_t pixels_water = 0;
    std::uint64_t pixels_nodata = 0;
};

inline constexpr double kDefaultVegThreshold = 0.2;

/// Aggregate pixels whose centers fall inside the facility. Water polygons
/// are excluded first, then nodata/undefined pixels; the remaining valid
/// pixels produce mean NDVI and percent vegetated (NDVI >= threshold).
/// Throws EmptyPoolError naming the facility when no valid pixel remains.
ParkVegStats park_stats(const RasterGrid& raster, const ParkFacility& facility,
                        std::span<const PolygonWithHoles> water,
                        double veg_threshold = kDefaultVegThreshold);

struct CategoryRow {
    std::string category;
    std::uint64_t count = 0;
    double mean_acres = 0.0;
    double mean_ndvi = 0.0;
    double mean_percent_vegetated = 0.0;
};

/// Unweighted per-category means. Rows come out in the fixed primary order
/// (Regional Park, Neighborhood Park or Playground, Civic Plaza or Square)
/// followed by other categories alphabetically.
std::vector<CategoryRow> category_report(std::span<const ParkVegStats> stats,
                                         std::span<const ParkFacility> facilities);

}  // namespace parksent
