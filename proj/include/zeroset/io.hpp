#ifndef ZEROSET_IO_HPP
#define ZEROSET_IO_HPP

#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "zeroset/errors.hpp"
#include "zeroset/subdivide.hpp"

namespace zeroset {

namespace detail {

inline std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

// Text format: "# domain lo hi ..." and "# k <k>" headers, then one line per
// box, "<status> <level> <i1> ... <ik>" with Z for certified and U for
// undetermined boxes. Indices are exact integers; the box geometry is
// reconstructible through box_of_index.
inline void write_boxes_text(std::ostream& os, const Enclosure& enc) {
    os << "# domain";
    for (const Interval& edge : enc.domain)
        os << " " << detail::fmt_double(edge.lo()) << " " << detail::fmt_double(edge.hi());
    os << "\n# k " << enc.domain.size() << "\n";
    auto write = [&](const std::vector<EnclosureBox>& boxes, char status) {
        for (const auto& b : boxes) {
            os << status << " " << b.level;
            for (auto c : b.index) os << " " << c;
            os << "\n";
        }
    };
    write(enc.included, 'Z');
    write(enc.undetermined, 'U');
}

inline nlohmann::json enclosure_to_json(const Enclosure& enc) {
    nlohmann::json j;
    j["k"] = enc.domain.size();
    auto& dom = j["domain"] = nlohmann::json::array();
    for (const Interval& edge : enc.domain) dom.push_back({edge.lo(), edge.hi()});
    auto& boxes = j["boxes"] = nlohmann::json::array();
    auto add = [&](const std::vector<EnclosureBox>& list, const char* status) {
        for (const auto& b : list)
            boxes.push_back({{"status", status}, {"level", b.level}, {"index", b.index}});
    };
    add(enc.included, "Z");
    add(enc.undetermined, "U");
    return j;
}

inline void write_boxes_json(std::ostream& os, const Enclosure& enc) {
    os << enclosure_to_json(enc).dump(2) << "\n";
}

// Reads the JSON form back into an Enclosure (geometry fields only; stats and
// op counts are run artifacts, not part of the interchange format).
inline Enclosure read_boxes_json(std::istream& is) {
    nlohmann::json j = nlohmann::json::parse(is);
    Enclosure enc;
    for (const auto& edge : j.at("domain"))
        enc.domain.emplace_back(edge.at(0).get<double>(), edge.at(1).get<double>());
    for (const auto& b : j.at("boxes")) {
        EnclosureBox box;
        box.level = b.at("level").get<int>();
        box.index = b.at("index").get<std::vector<std::uint32_t>>();
        const std::string status = b.at("status").get<std::string>();
        if (status == "Z")
            enc.included.push_back(std::move(box));
        else if (status == "U")
            enc.undetermined.push_back(std::move(box));
        else
            throw InputError("read_boxes_json: unknown box status '" + status + "'");
    }
    return enc;
}

// Wavefront OBJ view of a 3-D enclosure: one axis-aligned cube (8 vertices,
// 12 triangles) per box, in output order, without vertex welding.
inline void write_boxes_obj(std::ostream& os, const Enclosure& enc) {
    if (enc.domain.size() != 3)
        throw DimensionUnsupportedError("obj export is only available for 3-variable enclosures");
    // Bottom quad 1-4 counterclockwise, top quad 5-8 directly above it.
    static const int corners[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                                      {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
    static const int faces[12][3] = {{1, 3, 2}, {1, 4, 3}, {5, 6, 7}, {5, 7, 8},
                                     {1, 2, 6}, {1, 6, 5}, {2, 3, 7}, {2, 7, 6},
                                     {3, 4, 8}, {3, 8, 7}, {4, 1, 5}, {4, 5, 8}};
    std::size_t base = 0;
    auto emit = [&](const std::vector<EnclosureBox>& list) {
        for (const auto& b : list) {
            Box box = box_of_index(enc.domain, b.level, b.index);
            for (const auto& c : corners) {
                double x = c[0] ? box[0].hi() : box[0].lo();
                double y = c[1] ? box[1].hi() : box[1].lo();
                double z = c[2] ? box[2].hi() : box[2].lo();
                os << "v " << detail::fmt_double(x) << " " << detail::fmt_double(y) << " "
                   << detail::fmt_double(z) << "\n";
            }
            for (const auto& f : faces)
                os << "f " << base + static_cast<std::size_t>(f[0]) << " " << base + static_cast<std::size_t>(f[1])
                   << " " << base + static_cast<std::size_t>(f[2]) << "\n";
            base += 8;
        }
    };
    emit(enc.included);
    emit(enc.undetermined);
}

} // namespace zeroset

#endif // ZEROSET_IO_HPP
