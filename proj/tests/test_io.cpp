#include "doctest.h"

#include <cfloat>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "oracles.hpp"
#include "tachyon/io.hpp"

using namespace tgr;

TEST_SUITE("io") {

TEST_CASE("g17 round-trips every double bit pattern it meets") {
    // specials first
    for (double v : {0.0, 1.0, -1.0, 0.1, 1.0 / 3.0, DBL_MIN, DBL_MAX, 5e-324,
                     1.7976931348623157e308, 6.02214076e23}) {
        const std::string s = io::g17(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(std::signbit(std::strtod(io::g17(-0.0).c_str(), nullptr)));

    // random mantissa/exponent combinations
    oracle::TestRng rng(4242);
    int checked = 0;
    while (checked < 2000) {
        const std::uint64_t bits = rng.eng();
        double v;
        std::memcpy(&v, &bits, sizeof v);
        if (!std::isfinite(v)) continue;
        ++checked;
        const std::string s = io::g17(v);
        const double back = std::strtod(s.c_str(), nullptr);
        CHECK(back == v);
    }
}

TEST_CASE("csv_row joins g17 renderings with commas") {
    CHECK(io::csv_row({1.0, 0.5, -0.25}) == "1,0.5,-0.25");
    CHECK(io::csv_row({0.1}) == "0.10000000000000001");
}

TEST_CASE("write_csv returns the text it writes") {
    const std::string path = "tgr_test_io_csv.csv";
    const std::string text =
        io::write_csv(path, "x,y", {{1.0, 2.0}, {3.0, 0.5}});
    CHECK(text == "x,y\n1,2\n3,0.5\n");
    CHECK(io::read_text(path) == text);
    std::remove(path.c_str());
}

TEST_CASE("text files round-trip") {
    const std::string path = "tgr_test_io_text.txt";
    const std::string body = "line one\nline two with trailing spaces   \n\n";
    io::write_text(path, body);
    CHECK(io::read_text(path) == body);
    std::remove(path.c_str());
}

TEST_CASE("json writer: deterministic layout and type-faithful fields") {
    auto build = [] {
        io::JsonWriter w;
        w.begin_object();
        w.field("name", "profile"); // const char* must land as a string
        w.field("count", 3);
        w.field("wide", 9007199254740993ll);
        w.field("flag", true);
        w.field("value", 0.5);
        w.begin_array("items");
        w.element(1.0);
        w.element(std::string("two"));
        w.end_array();
        w.field_raw("raw", "[1,2]");
        w.end_object();
        return w.str();
    };
    const std::string a = build();
    CHECK(a == build());
    CHECK(a ==
          "{\"name\":\"profile\",\"count\":3,\"wide\":9007199254740993,"
          "\"flag\":true,\"value\":0.5,\"items\":[1,\"two\"],\"raw\":[1,2]}");
}

TEST_CASE("json escaping covers quotes, backslashes, and control bytes") {
    CHECK(io::json_escape("a\"b") == "a\\\"b");
    CHECK(io::json_escape("a\\b") == "a\\\\b");
    CHECK(io::json_escape("a\nb\tc") == "a\\nb\\tc");
    CHECK(io::json_escape(std::string(1, '\x01')) == "\\u0001");
}

} // TEST_SUITE
