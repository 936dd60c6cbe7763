#include "parksent/vegetation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>

#include <json.hpp>

#include "parksent/errors.hpp"

namespace parksent {

namespace {

using nlohmann::json;

/// Neumaier compensated accumulator; keeps zonal means exact enough that
/// hand-computed raster fixtures reproduce bit-for-bit.
struct CompensatedSum {
    double sum = 0.0;
    double compensation = 0.0;

    void add(double value) {
        const double t = sum + value;
        if (std::abs(sum) >= std::abs(value))
            compensation += (sum - t) + value;
        else
            compensation += (value - t) + sum;
        sum = t;
    }
    double value() const { return sum + compensation; }
};

std::vector<double> band_from_json(const json& j, std::size_t expected, const char* name) {
    std::vector<double> band;
    band.reserve(expected);
    for (const auto& v : j) band.push_back(v.get<double>());
    if (band.size() != expected)
        throw ValidationError(std::string("raster band '") + name + "' has " +
                              std::to_string(band.size()) + " values, expected " +
                              std::to_string(expected));
    return band;
}

}  // namespace

RasterGrid RasterGrid::load_json(std::istream& in) {
    json doc = json::parse(in);
    RasterGrid grid;
    grid.width = doc.at("width").get<int>();
    grid.height = doc.at("height").get<int>();
    if (grid.width <= 0 || grid.height <= 0)
        throw ValidationError("raster dimensions must be positive");
    grid.origin_lon = doc.at("origin").at(0).get<double>();
    grid.origin_lat = doc.at("origin").at(1).get<double>();
    grid.pixel_dx = doc.at("pixel_size").at(0).get<double>();
    grid.pixel_dy = doc.at("pixel_size").at(1).get<double>();
    if (grid.pixel_dx == 0.0 || grid.pixel_dy == 0.0)
        throw ValidationError("raster pixel_size components must be nonzero");
    if (doc.contains("nodata") && !doc["nodata"].is_null())
        grid.nodata = doc["nodata"].get<double>();
    const std::size_t n = static_cast<std::size_t>(grid.width) * grid.height;
    grid.nir = band_from_json(doc.at("bands").at("nir"), n, "nir");
    grid.red = band_from_json(doc.at("bands").at("red"), n, "red");
    return grid;
}

std::string RasterGrid::to_json_string() const {
    json doc;
    doc["width"] = width;
    doc["height"] = height;
    doc["origin"] = {origin_lon, origin_lat};
    doc["pixel_size"] = {pixel_dx, pixel_dy};
    if (nodata) doc["nodata"] = *nodata;
    else doc["nodata"] = nullptr;
    doc["bands"]["nir"] = nir;
    doc["bands"]["red"] = red;
    return doc.dump();
}

std::optional<double> ndvi(double nir, double red) {
    if (nir < 0.0 || red < 0.0)
        throw ValidationError("ndvi: negative reflectance");
    const double sum = nir + red;
    if (sum == 0.0) return std::nullopt;
    return (nir - red) / sum;
}

ParkVegStats park_stats(const RasterGrid& raster, const ParkFacility& facility,
                        std::span<const PolygonWithHoles> water, double veg_threshold) {
    ParkVegStats stats;
    stats.facility_id = facility.id;

    CompensatedSum ndvi_sum;
    std::uint64_t valid = 0;
    std::uint64_t vegetated = 0;

    for (int row = 0; row < raster.height; ++row) {
        for (int col = 0; col < raster.width; ++col) {
            const GeoPoint center = raster.pixel_center(col, row);
            if (!facility_contains(facility, center)) continue;
            ++stats.pixels_total;

            bool in_water = false;
            for (const auto& poly : water)
                if (point_in_polygon(center, poly)) {
                    in_water = true;
                    break;
                }
            if (in_water) {
                ++stats.pixels_water;
                continue;
            }

            const double nir = raster.nir_at(col, row);
            const double red = raster.red_at(col, row);
            if (raster.nodata && (nir == *raster.nodata || red == *raster.nodata)) {
                ++stats.pixels_nodata;
                continue;
            }
            const auto value = ndvi(nir, red);
            if (!value) {
                ++stats.pixels_nodata;
                continue;
            }
            ndvi_sum.add(*value);
            ++valid;
            if (*value >= veg_threshold) ++vegetated;
        }
    }

    if (valid == 0)
        throw EmptyPoolError("park_stats: no valid pixels inside facility '" + facility.id + "'");
    stats.mean_ndvi = ndvi_sum.value() / static_cast<double>(valid);
    stats.percent_vegetated = 100.0 * static_cast<double>(vegetated) / static_cast<double>(valid);
    return stats;
}

std::vector<CategoryRow> category_report(std::span<const ParkVegStats> stats,
                                         std::span<const ParkFacility> facilities) {
    std::map<std::string, const ParkFacility*> by_id;
    for (const auto& f : facilities) by_id[f.id] = &f;

    struct Accumulator {
        std::uint64_t count = 0;
        double acres = 0.0;
        double ndvi = 0.0;
        double percent = 0.0;
    };
    std::map<std::string, Accumulator> acc;
    for (const auto& s : stats) {
        const auto it = by_id.find(s.facility_id);
        if (it == by_id.end())
            throw ValidationError("category_report: stats for unknown facility '" +
                                  s.facility_id + "'");
        const ParkFacility& f = *it->second;
        Accumulator& a = acc[f.category_display()];
        ++a.count;
        a.acres += f.acres;
        a.ndvi += s.mean_ndvi;
        a.percent += s.percent_vegetated;
    }

    // primary categories first, in the conventional reporting order
    std::vector<std::string> order;
    for (const char* primary :
         {"Regional Park", "Neighborhood Park or Playground", "Civic Plaza or Square"})
        if (acc.contains(primary)) order.push_back(primary);
    for (const auto& [name, a] : acc) {
        (void)a;
        if (std::find(order.begin(), order.end(), name) == order.end()) order.push_back(name);
    }

    std::vector<CategoryRow> rows;
    for (const auto& name : order) {
        const Accumulator& a = acc[name];
        const double n = static_cast<double>(a.count);
        rows.push_back(CategoryRow{name, a.count, a.acres / n, a.ndvi / n, a.percent / n});
    }
    return rows;
}

}  // namespace parksent
