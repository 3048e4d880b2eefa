#include "vqlm/report.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"

using namespace vqlm;

TEST_CASE("format_double round-trips through strtod") {
    for (double v : {0.0, 1.0, -1.0, 1.0 / 3.0, 0.1, 6.02214076e23, 1e-300,
                     -2.2250738585072014e-308, 8.3333333333333339e-4}) {
        std::string s = format_double(v);
        char* end = nullptr;
        double back = std::strtod(s.c_str(), &end);
        CHECK(*end == '\0');
        CHECK(back == v);
    }
}

TEST_CASE("csv quotes commas, doubles quotes, keeps crlf rows") {
    Table t;
    t.columns = {"name", "value", "note"};
    t.add_row({Cell::str("plain"), Cell::number(2.0), Cell::null()});
    t.add_row({Cell::str("a,b"), Cell::str("say \"hi\""), Cell::str("line\nbreak")});
    std::string csv = to_csv(t);
    CHECK(csv == "name,value,note\r\n"
                 "plain,2,\r\n"
                 "\"a,b\",\"say \"\"hi\"\"\",\"line\nbreak\"\r\n");
}

TEST_CASE("json escapes strings and renders null cells") {
    Table t;
    t.columns = {"k", "v"};
    t.add_row({Cell::str("tab\there"), Cell::number(0.5)});
    t.add_row({Cell::str("q\"b\\s"), Cell::null()});
    std::string js = to_json(t);
    CHECK(js == "[\n"
                " {\"k\": \"tab\\there\", \"v\": 0.5},\n"
                " {\"k\": \"q\\\"b\\\\s\", \"v\": null}\n"
                "]\n");
}

TEST_CASE("row width must match the header") {
    Table t;
    t.columns = {"a", "b"};
    CHECK_THROWS_AS(t.add_row({Cell::number(1.0)}), std::invalid_argument);
    CHECK_THROWS_AS(t.add_row({Cell::number(1.0), Cell::number(2.0), Cell::null()}),
                    std::invalid_argument);
}

TEST_CASE("atomic write lands the full content and no temp file") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "vqlm_report_test";
    fs::create_directories(dir);
    fs::path target = dir / "out.csv";
    write_file_atomic(target.string(), "alpha,beta\r\n1,2\r\n");
    std::ifstream in(target, std::ios::binary);
    std::stringstream got;
    got << in.rdbuf();
    CHECK(got.str() == "alpha,beta\r\n1,2\r\n");
    CHECK_FALSE(fs::exists(dir / "out.csv.tmp"));
    write_file_atomic(target.string(), "replaced");
    std::ifstream in2(target, std::ios::binary);
    std::stringstream got2;
    got2 << in2.rdbuf();
    CHECK(got2.str() == "replaced");
    fs::remove_all(dir);
}

TEST_CASE("atomic write into a missing directory fails cleanly") {
    CHECK_THROWS_AS(write_file_atomic("/nonexistent_vqlm_dir/out.csv", "x"),
                    std::runtime_error);
}
