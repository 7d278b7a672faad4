#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <regex>

#include "windex/error.hpp"
#include "windex/generators.hpp"
#include "windex/io.hpp"

using namespace windex;

TEST_CASE("curve JSON round-trips bit for bit") {
    const Curve c = square_curve(1.0, 7).rotated(0.123);
    const Curve d = curve_from_json(curve_to_json(c));
    CHECK(d.vertices() == c.vertices());
    CHECK(d.corners() == c.corners());
    CHECK(curve_to_json(d) == curve_to_json(c));
}

TEST_CASE("JSON without corners falls back to detection") {
    const Curve d = curve_from_json(R"({"vertices": [[0,0],[1,0],[2,0],[2,1],[2,2],[1,2],[0,2],[0,1]], "closed": true})");
    CHECK(d.corners() == std::vector<std::size_t>{0, 2, 4, 6});
}

TEST_CASE("malformed JSON is InvalidInput") {
    for (const char* text : {"{", R"({"vertices": 3})", R"({"vertices": [[0,0],[1]]})",
                             R"({"vertices": [[0,0],[1,0],[0,1]], "corners": [5]})",
                             R"({"vertices": [[0,0],[1,0],[0,1]], "closed": false})"}) {
        bool raised = false;
        try {
            curve_from_json(text);
        } catch (const Error& e) {
            raised = e.code() == ErrorCode::InvalidInput;
        }
        CHECK_MESSAGE(raised, text);
    }
}

TEST_CASE("CSV import") {
    const Curve c = curve_from_csv("x,y\n0,0\n1,0\n\n# comment\n1,1\n0,1\n");
    CHECK(c.size() == 4);
    CHECK(c.corners().size() == 4);
    bool raised = false;
    try {
        curve_from_csv("0,0\n1,0\nfoo\n");
    } catch (const Error& e) {
        raised = e.code() == ErrorCode::InvalidInput;
    }
    CHECK(raised);
}

TEST_CASE("index map CSV leaves Unknown empty") {
    const IndexMap m = index_map(circle_curve(256), 16);
    const std::string csv = index_map_csv(m);
    CHECK(csv.rfind("x,y,index\n", 0) == 0);
    CHECK(csv.find(",1\n") != std::string::npos);
    CHECK(csv.find(",\n") != std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(m.nx * m.ny + 1));
}

TEST_CASE("SVG output is deterministic and uses 9 significant digits") {
    const Curve c = flower_generate({.samples = 512});
    const IndexMap m = index_map(c, 64);
    const std::string a = render_svg({{&c, 1.0}}, {.map = &m});
    CHECK(a == render_svg({{&c, 1.0}}, {.map = &m}));
    CHECK(a.rfind("<svg", 0) == 0);
    const std::regex long_number("[0-9]\\.?[0-9]{10,}");
    CHECK_FALSE(std::regex_search(a, long_number));
    CHECK(a.find(index_color(-1, 1)) != std::string::npos);
}

TEST_CASE("diverging palette") {
    CHECK(index_color(0, 2) == "#ffffff");
    CHECK(index_color(1, 2) != index_color(-1, 2));
    CHECK(index_color(2, 2) != index_color(1, 2));
}
