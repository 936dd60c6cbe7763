#include "parksent/geo.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>

#include <json.hpp>

#include "parksent/errors.hpp"

namespace parksent {

namespace {

using nlohmann::json;

struct BoundingBox {
    double min_lon = std::numeric_limits<double>::infinity();
    double min_lat = std::numeric_limits<double>::infinity();
    double max_lon = -std::numeric_limits<double>::infinity();
    double max_lat = -std::numeric_limits<double>::infinity();

    void expand(const Ring& ring) {
        for (const auto& v : ring) {
            min_lon = std::min(min_lon, v[0]);
            max_lon = std::max(max_lon, v[0]);
            min_lat = std::min(min_lat, v[1]);
            max_lat = std::max(max_lat, v[1]);
        }
    }
    bool contains(GeoPoint p) const {
        return p.lon >= min_lon && p.lon <= max_lon && p.lat >= min_lat && p.lat <= max_lat;
    }
};

void require_valid_ring(const Ring& ring) {
    // count distinct vertices
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        bool dup = false;
        for (std::size_t k = 0; k < i; ++k)
            if (ring[k] == ring[i]) {
                dup = true;
                break;
            }
        if (!dup) ++distinct;
    }
    if (distinct < 3)
        throw ValidationError("degenerate ring: fewer than 3 distinct vertices");
}

bool on_segment(GeoPoint p, const std::array<double, 2>& a, const std::array<double, 2>& b) {
    const double cross = (b[0] - a[0]) * (p.lat - a[1]) - (b[1] - a[1]) * (p.lon - a[0]);
    if (cross != 0.0) return false;
    return p.lon >= std::min(a[0], b[0]) && p.lon <= std::max(a[0], b[0]) &&
           p.lat >= std::min(a[1], b[1]) && p.lat <= std::max(a[1], b[1]);
}

bool on_ring_boundary(GeoPoint p, const Ring& ring) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i)
        if (on_segment(p, ring[i], ring[(i + 1) % n])) return true;
    return false;
}

// Even-odd crossing count with the usual half-open vertex rule.
bool inside_ring(GeoPoint p, const Ring& ring) {
    const std::size_t n = ring.size();
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const double xi = ring[i][0], yi = ring[i][1];
        const double xj = ring[j][0], yj = ring[j][1];
        if ((yi > p.lat) != (yj > p.lat)) {
            const double x_cross = (xj - xi) * (p.lat - yi) / (yj - yi) + xi;
            if (p.lon < x_cross) inside = !inside;
        }
    }
    return inside;
}

Ring normalize_ring(Ring ring) {
    if (ring.size() >= 2 && ring.front() == ring.back()) ring.pop_back();
    require_valid_ring(ring);
    return ring;
}

Ring ring_from_json(const json& coords) {
    Ring ring;
    for (const auto& v : coords) ring.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    return normalize_ring(std::move(ring));
}

PolygonWithHoles polygon_from_json(const json& coords) {
    PolygonWithHoles poly;
    if (coords.empty()) throw ValidationError("polygon with no rings");
    poly.outer = ring_from_json(coords[0]);
    for (std::size_t i = 1; i < coords.size(); ++i) {
        Ring hole = ring_from_json(coords[i]);
        // cheap containment sanity: a hole must start inside its outer ring
        const GeoPoint probe{hole.front()[1], hole.front()[0]};
        if (!inside_ring(probe, poly.outer) && !on_ring_boundary(probe, poly.outer))
            throw ValidationError("polygon hole lies outside its outer ring");
        poly.holes.push_back(std::move(hole));
    }
    return poly;
}

std::vector<PolygonWithHoles> geometry_from_json(const json& geom) {
    std::vector<PolygonWithHoles> polys;
    const std::string type = geom.at("type").get<std::string>();
    if (type == "Polygon") {
        polys.push_back(polygon_from_json(geom.at("coordinates")));
    } else if (type == "MultiPolygon") {
        for (const auto& p : geom.at("coordinates")) polys.push_back(polygon_from_json(p));
    } else {
        throw ValidationError("unsupported geometry type '" + type + "'");
    }
    return polys;
}

json ring_to_json(const Ring& ring) {
    json out = json::array();
    for (const auto& v : ring) out.push_back({v[0], v[1]});
    out.push_back({ring.front()[0], ring.front()[1]});  // close
    return out;
}

}  // namespace

std::string category_name(ParkCategory category, const std::string& other_label) {
    switch (category) {
        case ParkCategory::RegionalPark: return "Regional Park";
        case ParkCategory::NeighborhoodParkOrPlayground: return "Neighborhood Park or Playground";
        case ParkCategory::CivicPlazaOrSquare: return "Civic Plaza or Square";
        case ParkCategory::Other: return other_label.empty() ? "Other" : other_label;
    }
    return "Other";
}

ParkCategory parse_category(const std::string& label) {
    std::string lower;
    lower.reserve(label.size());
    for (char c : label) lower.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
    if (lower == "regional park" || lower == "regionalpark") return ParkCategory::RegionalPark;
    if (lower == "neighborhood park or playground" || lower == "neighborhoodparkorplayground")
        return ParkCategory::NeighborhoodParkOrPlayground;
    if (lower == "civic plaza or square" || lower == "civicplazaorsquare")
        return ParkCategory::CivicPlazaOrSquare;
    return ParkCategory::Other;
}

bool point_in_polygon(GeoPoint p, const PolygonWithHoles& polygon) {
    require_valid_ring(polygon.outer);
    for (const auto& hole : polygon.holes) require_valid_ring(hole);

    if (on_ring_boundary(p, polygon.outer)) return true;
    for (const auto& hole : polygon.holes)
        if (on_ring_boundary(p, hole)) return true;

    if (!inside_ring(p, polygon.outer)) return false;
    for (const auto& hole : polygon.holes)
        if (inside_ring(p, hole)) return false;
    return true;
}

bool facility_contains(const ParkFacility& facility, GeoPoint p) {
    for (const auto& poly : facility.geometry)
        if (point_in_polygon(p, poly)) return true;
    return false;
}

void spatial_join(std::span<MessageRecord> corpus, std::span<const ParkFacility> facilities) {
    std::vector<BoundingBox> boxes(facilities.size());
    for (std::size_t i = 0; i < facilities.size(); ++i)
        for (const auto& poly : facilities[i].geometry) {
            boxes[i].expand(poly.outer);
        }

    for (auto& msg : corpus) {
        const GeoPoint p{msg.lat, msg.lon};
        const ParkFacility* best = nullptr;
        for (std::size_t i = 0; i < facilities.size(); ++i) {
            if (!boxes[i].contains(p)) continue;
            if (!facility_contains(facilities[i], p)) continue;
            const ParkFacility& f = facilities[i];
            if (!best || f.acres < best->acres ||
                (f.acres == best->acres && f.id < best->id))
                best = &f;
        }
        if (best) msg.facility_id = best->id;
        else msg.facility_id.reset();
    }
}

std::vector<ParkFacility> load_facilities_geojson(std::istream& in) {
    json doc = json::parse(in);
    if (doc.at("type").get<std::string>() != "FeatureCollection")
        throw ValidationError("facilities file is not a GeoJSON FeatureCollection");

    std::vector<ParkFacility> facilities;
    std::map<std::string, bool> seen;
    for (const auto& feature : doc.at("features")) {
        const json& props = feature.at("properties");
        ParkFacility f;
        f.id = props.at("id").get<std::string>();
        f.name = props.at("name").get<std::string>();
        const std::string category = props.at("category").get<std::string>();
        f.category = parse_category(category);
        f.category_label = category;
        f.acres = props.at("acres").get<double>();
        if (f.name.empty()) throw ValidationError("facility '" + f.id + "' has an empty name");
        if (!(f.acres > 0.0))
            throw ValidationError("facility '" + f.id + "' has non-positive acreage");
        if (seen[f.id]) throw ValidationError("duplicate facility id '" + f.id + "'");
        seen[f.id] = true;
        f.geometry = geometry_from_json(feature.at("geometry"));
        facilities.push_back(std::move(f));
    }
    return facilities;
}

std::vector<PolygonWithHoles> load_polygons_geojson(std::istream& in) {
    json doc = json::parse(in);
    const std::string type = doc.at("type").get<std::string>();
    std::vector<PolygonWithHoles> polys;
    if (type == "FeatureCollection") {
        for (const auto& feature : doc.at("features")) {
            auto geoms = geometry_from_json(feature.at("geometry"));
            for (auto& g : geoms) polys.push_back(std::move(g));
        }
    } else if (type == "Feature") {
        polys = geometry_from_json(doc.at("geometry"));
    } else {
        polys = geometry_from_json(doc);
    }
    return polys;
}

std::string facilities_to_geojson(std::span<const ParkFacility> facilities) {
    json features = json::array();
    for (const auto& f : facilities) {
        json geometry;
        if (f.geometry.size() == 1) {
            geometry["type"] = "Polygon";
            json rings = json::array();
            rings.push_back(ring_to_json(f.geometry[0].outer));
            for (const auto& hole : f.geometry[0].holes) rings.push_back(ring_to_json(hole));
            geometry["coordinates"] = rings;
        } else {
            geometry["type"] = "MultiPolygon";
            json polys = json::array();
            for (const auto& poly : f.geometry) {
                json rings = json::array();
                rings.push_back(ring_to_json(poly.outer));
                for (const auto& hole : poly.holes) rings.push_back(ring_to_json(hole));
                polys.push_back(rings);
            }
            geometry["coordinates"] = polys;
        }
        json feature;
        feature["type"] = "Feature";
        feature["properties"] = {{"id", f.id},
                                 {"name", f.name},
                                 {"category", f.category_display()},
                                 {"acres", f.acres}};
        feature["geometry"] = geometry;
        features.push_back(feature);
    }
    json doc;
    doc["type"] = "FeatureCollection";
    doc["features"] = features;
    return doc.dump(2);
}

}  // namespace parksent
