#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "windex/curve.hpp"
#include "windex/winding.hpp"

namespace windex {

// {"vertices": [[x, y], ...], "closed": true, "corners": [i, ...]}
std::string curve_to_json(const Curve& curve, int indent = 2);
Curve curve_from_json(std::string_view text);

// One "x,y" pair per line; blank lines and lines starting with '#' are
// skipped, as is a leading header row. Corners come from detect_corners().
Curve curve_from_csv(std::string_view text);

// Dispatches on the extension: .csv is CSV, anything else JSON.
Curve load_curve(const std::filesystem::path& path);
void save_curve(const Curve& curve, const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

// x,y,index rows at cell centres; Unknown cells leave the index empty.
std::string index_map_csv(const IndexMap& map);

struct SvgLayer {
    const Curve* curve = nullptr;
    double width = 1.0;     // in units of the default stroke
    std::string color = "#222222";
    double opacity = 1.0;
};

struct SvgOptions {
    double pixels = 800.0;        // larger side of the picture
    const IndexMap* map = nullptr; // optional background tint
    bool mark_corners = true;
};

// Curves drawn in order over the tinted index map. Coordinates use 9
// significant digits, y pointing up.
std::string render_svg(const std::vector<SvgLayer>& layers, const SvgOptions& options = {});

// Diverging palette centred at index 0: blue below, red above.
std::string index_color(int index, int max_abs);

}  // namespace windex
