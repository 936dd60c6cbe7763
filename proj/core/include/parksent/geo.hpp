#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "parksent/corpus.hpp"

namespace parksent {

struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;
};

/// Ring vertices as (lon, lat), stored open: the closing vertex equal to the
/// first is dropped during normalization. At least 3 distinct vertices.
using Ring = std::vector<std::array<double, 2>>;

struct PolygonWithHoles {
    Ring outer;
    std::vector<Ring> holes;
};

enum class ParkCategory {
    RegionalPark,
    NeighborhoodParkOrPlayground,
    CivicPlazaOrSquare,
    Other,
};

std::string category_name(ParkCategory category, const std::string& other_label = {});
ParkCategory parse_category(const std::string& label);

struct ParkFacility {
    std::string id;
    std::string name;
    ParkCategory category = ParkCategory::Other;
    std::string category_label;  // original string, kept for Other
    std::vector<PolygonWithHoles> geometry;
    double acres = 0.0;

    std::string category_display() const { return category_name(category, category_label); }
};

/// Even-odd ray casting; geometry is planar in degrees (adequate at city
/// scale). A point exactly on any boundary edge, outer or hole, counts as
/// inside. Throws ValidationError for rings with < 3 distinct vertices.
bool point_in_polygon(GeoPoint p, const PolygonWithHoles& polygon);

bool facility_contains(const ParkFacility& facility, GeoPoint p);

/// Annotate each message with the facility containing it, if any. When a
/// point lies in several facilities the smallest acreage wins; acreage ties
/// break on lexicographic facility id.
void spatial_join(std::span<MessageRecord> corpus, std::span<const ParkFacility> facilities);

/// GeoJSON FeatureCollection of Polygon/MultiPolygon features with
/// properties {id, name, category, acres}. Unknown category strings map to
/// Other with the original label retained.
std::vector<ParkFacility> load_facilities_geojson(std::istream& in);

/// Bare polygon list (outer rings + holes) from a FeatureCollection or a
/// single geometry; used for water masks.
std::vector<PolygonWithHoles> load_polygons_geojson(std::istream& in);

std::string facilities_to_geojson(std::span<const ParkFacility> facilities);

}  // namespace parksent
