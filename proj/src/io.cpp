#include "linex/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"

namespace linex::io {

using nlohmann::json;

std::string format_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

namespace {

std::string fmt(double v) { return format_double(v); }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw Error("write failed for " + path);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool parse_num(const std::string& tok, double& out) {
    char* end = nullptr;
    out = std::strtod(tok.c_str(), &end);
    return end == tok.c_str() + tok.size() && !tok.empty();
}

std::string sidecar_path(const std::string& bsq_path) {
    if (bsq_path.size() >= 4 && bsq_path.substr(bsq_path.size() - 4) == ".bsq")
        return bsq_path.substr(0, bsq_path.size() - 4) + ".hdr.json";
    return bsq_path + ".hdr.json";
}

}  // namespace

GrayImage read_ascii_grid(const std::string& path) {
    std::istringstream in(slurp(path));
    std::map<std::string, double> header;
    std::string line;
    int lineno = 0;
    std::vector<std::string> data_lines;
    std::vector<int> data_linenos;
    bool in_data = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (!in_data && std::isalpha(static_cast<unsigned char>(line[first]))) {
            std::istringstream ls(line);
            std::string key, val;
            ls >> key >> val;
            double num;
            if (val.empty() || !parse_num(val, num))
                throw Error(path + ":" + std::to_string(lineno) + ": bad header line");
            header[lower(key)] = num;
        } else {
            in_data = true;
            data_lines.push_back(line);
            data_linenos.push_back(lineno);
        }
    }
    for (const char* key : {"ncols", "nrows", "xllcorner", "yllcorner", "cellsize"})
        if (!header.count(key))
            throw Error(path + ": missing required key '" + key + "'");

    const int ncols = static_cast<int>(header["ncols"]);
    const int nrows = static_cast<int>(header["nrows"]);
    if (ncols < 1 || nrows < 1) throw Error(path + ": non-positive grid size");
    GeoRef g;
    g.pixel_size = header["cellsize"];
    g.origin_x = header["xllcorner"];
    g.origin_y = header["yllcorner"] + nrows * g.pixel_size;
    g.validate();

    GrayImage img(ncols, nrows, 0.0, g);
    if (header.count("nodata_value")) img.nodata = header["nodata_value"];
    if (static_cast<int>(data_lines.size()) != nrows)
        throw Error(path + ": expected " + std::to_string(nrows) + " data rows, got " +
                    std::to_string(data_lines.size()));
    for (int r = 0; r < nrows; ++r) {
        std::istringstream ls(data_lines[static_cast<std::size_t>(r)]);
        std::string tok;
        int c = 0;
        while (ls >> tok) {
            if (c >= ncols)
                throw Error(path + ":" + std::to_string(data_linenos[static_cast<std::size_t>(r)]) +
                            ": row length mismatch");
            double v;
            if (!parse_num(tok, v))
                throw Error(path + ":" + std::to_string(data_linenos[static_cast<std::size_t>(r)]) +
                            ": non-numeric cell '" + tok + "'");
            img.at(r, c) = v;
            if (!std::isfinite(v) || (img.nodata && v == *img.nodata))
                img.set_valid(r, c, false);
            ++c;
        }
        if (c != ncols)
            throw Error(path + ":" + std::to_string(data_linenos[static_cast<std::size_t>(r)]) +
                        ": row length mismatch");
    }
    return img;
}

void write_ascii_grid(const GrayImage& img, const std::string& path) {
    const bool any_masked = img.valid_count() != img.pixel_count();
    const double nodata = img.nodata.value_or(-9999.0);
    std::ostringstream out;
    out << "ncols " << img.width << "\n";
    out << "nrows " << img.height << "\n";
    out << "xllcorner " << fmt(img.georef.origin_x) << "\n";
    out << "yllcorner " << fmt(img.georef.origin_y - img.height * img.georef.pixel_size) << "\n";
    out << "cellsize " << fmt(img.georef.pixel_size) << "\n";
    if (any_masked || img.nodata) out << "NODATA_value " << fmt(nodata) << "\n";
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            if (c) out << ' ';
            out << fmt(img.is_valid(r, c) ? img.at(r, c) : nodata);
        }
        out << "\n";
    }
    spit(path, out.str());
}

MultibandRaster read_multiband(const std::string& bsq_path) {
    json hdr;
    try {
        hdr = json::parse(slurp(sidecar_path(bsq_path)));
    } catch (const json::exception& e) {
        throw Error(sidecar_path(bsq_path) + ": bad header json: " + e.what());
    }
    for (const char* key : {"width", "height", "bands", "origin_x", "origin_y", "pixel_size"})
        if (!hdr.contains(key))
            throw Error(sidecar_path(bsq_path) + ": missing required key '" + key + "'");
    const int w = hdr["width"].get<int>();
    const int h = hdr["height"].get<int>();
    const int b = hdr["bands"].get<int>();
    if (w < 1 || h < 1) throw Error(bsq_path + ": non-positive grid size");
    if (b < 1) throw Error(bsq_path + ": band count < 1");
    GeoRef g;
    g.origin_x = hdr["origin_x"].get<double>();
    g.origin_y = hdr["origin_y"].get<double>();
    g.pixel_size = hdr["pixel_size"].get<double>();
    if (hdr.contains("epsg_hint")) g.epsg_hint = hdr["epsg_hint"].get<std::string>();
    g.validate();

    const std::string payload = slurp(bsq_path);
    const std::size_t expect = static_cast<std::size_t>(w) * h * b * 4;
    if (payload.size() != expect)
        throw Error(bsq_path + ": payload size mismatch (header implies " +
                    std::to_string(expect) + " bytes, file has " +
                    std::to_string(payload.size()) + ")");

    MultibandRaster r(w, h, b, 0.0, g);
    if (hdr.contains("nodata")) r.nodata = hdr["nodata"].get<double>();
    static_assert(sizeof(float) == 4);
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
        float f;
        std::memcpy(&f, payload.data() + i * 4, 4);
        r.samples[i] = f;
    }
    for (int band = 0; band < b; ++band)
        for (std::size_t p = 0; p < r.plane(); ++p) {
            const double v = r.samples[static_cast<std::size_t>(band) * r.plane() + p];
            if (!std::isfinite(v) || (r.nodata && v == *r.nodata)) r.valid[p] = 0;
        }
    return r;
}

void write_multiband(const MultibandRaster& r, const std::string& bsq_path) {
    json hdr;
    hdr["width"] = r.width;
    hdr["height"] = r.height;
    hdr["bands"] = r.bands;
    hdr["origin_x"] = r.georef.origin_x;
    hdr["origin_y"] = r.georef.origin_y;
    hdr["pixel_size"] = r.georef.pixel_size;
    if (r.nodata) hdr["nodata"] = *r.nodata;
    if (!r.georef.epsg_hint.empty()) hdr["epsg_hint"] = r.georef.epsg_hint;
    spit(sidecar_path(bsq_path), hdr.dump(2) + "\n");

    const double fill = r.nodata.value_or(std::numeric_limits<double>::quiet_NaN());
    std::string payload(r.samples.size() * 4, '\0');
    for (int band = 0; band < r.bands; ++band)
        for (std::size_t p = 0; p < r.plane(); ++p) {
            const std::size_t i = static_cast<std::size_t>(band) * r.plane() + p;
            const float f = static_cast<float>(r.valid[p] ? r.samples[i] : fill);
            std::memcpy(payload.data() + i * 4, &f, 4);
        }
    spit(bsq_path, payload);
}

void write_lineaments(const LineamentSet& set, const std::string& path, VectorFormat fmt_kind) {
    if (fmt_kind == VectorFormat::csv) {
        std::ostringstream out;
        out << "id,seq,x,y\n";
        for (const auto& l : set.lines) {
            int seq = 0;
            for (const auto& v : l.vertices) {
                const Vec2 w = set.georef.pixel_to_world(v.x, v.y);
                out << l.id << ',' << seq++ << ',' << fmt(w.x) << ',' << fmt(w.y) << "\n";
            }
        }
        spit(path, out.str());
        return;
    }
    json root;
    root["type"] = "FeatureCollection";
    root["x_georef"] = {{"origin_x", set.georef.origin_x},
                        {"origin_y", set.georef.origin_y},
                        {"pixel_size", set.georef.pixel_size},
                        {"epsg_hint", set.georef.epsg_hint}};
    if (!set.provenance.empty()) root["x_provenance"] = set.provenance;
    json features = json::array();
    for (const auto& l : set.lines) {
        json coords = json::array();
        for (const auto& v : l.vertices) {
            const Vec2 w = set.georef.pixel_to_world(v.x, v.y);
            coords.push_back({w.x, w.y});
        }
        features.push_back(
            {{"type", "Feature"},
             {"geometry", {{"type", "LineString"}, {"coordinates", coords}}},
             {"properties",
              {{"id", l.id},
               {"length_m", l.pixel_length() * set.georef.pixel_size},
               {"mean_azimuth_deg", l.mean_azimuth_deg()}}}});
    }
    root["features"] = features;
    spit(path, root.dump(2) + "\n");
}

LineamentSet read_lineaments_geojson(const std::string& path) {
    json root;
    try {
        root = json::parse(slurp(path));
    } catch (const json::exception& e) {
        throw Error(path + ": bad json: " + e.what());
    }
    LineamentSet set;
    if (root.contains("x_georef")) {
        const json& g = root["x_georef"];
        set.georef.origin_x = g.value("origin_x", 0.0);
        set.georef.origin_y = g.value("origin_y", 0.0);
        set.georef.pixel_size = g.value("pixel_size", 1.0);
        set.georef.epsg_hint = g.value("epsg_hint", std::string{});
    }
    set.provenance = root.value("x_provenance", std::string{});
    if (!root.contains("features"))
        throw Error(path + ": not a FeatureCollection");
    for (const json& f : root["features"]) {
        const json& geom = f.at("geometry");
        if (geom.at("type").get<std::string>() != "LineString")
            throw Error(path + ": only LineString features supported");
        Lineament l;
        l.id = f.contains("properties") ? f["properties"].value("id", 0) : 0;
        for (const json& c : geom.at("coordinates")) {
            const Vec2 p = set.georef.world_to_pixel(c.at(0).get<double>(), c.at(1).get<double>());
            l.vertices.push_back(p);
        }
        if (l.vertices.size() < 2) throw Error(path + ": LineString with < 2 points");
        set.lines.push_back(std::move(l));
    }
    return set;
}

PointSet read_occurrences(const std::string& path) {
    std::istringstream in(slurp(path));
    std::string line;
    PointSet pts;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!header_seen) {
            header_seen = true;
            if (cells.size() < 2 || lower(cells[0]) != "x" || lower(cells[1]) != "y")
                throw Error(path + ":" + std::to_string(lineno) + ": expected header x,y,label");
            continue;
        }
        if (cells.size() < 2)
            throw Error(path + ":" + std::to_string(lineno) + ": expected at least x,y");
        LabeledPoint p;
        if (!parse_num(cells[0], p.x) || !parse_num(cells[1], p.y))
            throw Error(path + ":" + std::to_string(lineno) + ": non-numeric coordinate");
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw Error(path + ":" + std::to_string(lineno) + ": non-finite coordinate");
        if (cells.size() > 2) p.label = cells[2];
        pts.points.push_back(std::move(p));
    }
    if (!header_seen) throw Error(path + ": empty occurrences file");
    return pts;
}

void write_occurrences(const PointSet& pts, const std::string& path) {
    std::ostringstream out;
    out << "x,y,label\n";
    for (const auto& p : pts.points)
        out << fmt(p.x) << ',' << fmt(p.y) << ',' << p.label << "\n";
    spit(path, out.str());
}

}  // namespace linex::io
