// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>

#include "dubois/io.hpp"
#include "fixtures.hpp"
#include "test_util.hpp"

using namespace dubois;
using testutil::code_of;
namespace fs = std::filesystem;

TEST_CASE("split_csv_record and csv_field") {
    CHECK(split_csv_record("a,b,c") == std::vector<std::string>{"a", "b", "c"});
    CHECK(split_csv_record(R"("x, y","say ""hi""",)") == std::vector<std::string>{"x, y", "say \"hi\"", ""});
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("q\"") == "\"q\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("dataset CSV") {
    const auto d = parse_dataset_csv("\xEF\xBB\xBFlabel,value\r\nAgriculture,8500\r\n\"Mining, quarrying\",2300\r\n\r\n", "us");
    CHECK(d.id() == "us");
    REQUIRE(d.size() == 2);
    CHECK(d.categories()[1].label == "Mining, quarrying");
    CHECK(d.categories()[1].value == 2300);

    const auto multi = parse_dataset_csv("label,value\n\"two\nlines\",3\nb,4\n", "m");
    CHECK(multi.categories()[0].label == "two\nlines");

    const auto round_trip = parse_dataset_csv(dataset_to_csv(multi), "m");
    CHECK(round_trip == multi);
    const Dataset fine("f", {{"a", 0.1}, {"b", 1.0 / 3.0}});
    CHECK(parse_dataset_csv(dataset_to_csv(fine), "f") == fine);

    CHECK(code_of([] { parse_dataset_csv("name,value\na,1\nb,2\n", "x"); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_dataset_csv("label,value\na,1\nb,abc\n", "x"); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_dataset_csv("label,value\na,1,2\nb,2\n", "x"); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_dataset_csv("label,value\n\"a,1\n", "x"); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_dataset_csv("label,value\na,1\n", "x"); }) == ErrorCode::InvalidDataset);
    CHECK(code_of([] { parse_dataset_csv("label,value\na,1\nb,-2\n", "x"); }) == ErrorCode::InvalidDataset);
    CHECK(code_of([] { parse_dataset_csv("", "x"); }) == ErrorCode::Parse);
}

TEST_CASE("dataset JSON") {
    const auto d = parse_dataset_json(R"({"id":"j","categories":[{"label":"a","value":1},{"label":"b","value":2.5}]})");
    CHECK(d.id() == "j");
    CHECK(d.values() == std::vector<double>{1, 2.5});
    CHECK(code_of([] { parse_dataset_json("{"); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_dataset_json(R"({"id":"j","categories":[{"label":"a"}]})"); }) == ErrorCode::InvalidDataset);
    CHECK(code_of([] { parse_dataset_json(R"({"id":"j","categories":[{"label":"a","value":1}]})"); }) ==
          ErrorCode::InvalidDataset);
}

TEST_CASE("responses CSV") {
    const std::string text =
        "participant_id,dataset_id,chart_type,task,response_label,response_value,elapsed_ms\n"
        "p1,d1,wrapped,identify_max,B,,1200\n"
        "p1,d1,standard,ratio_max_min,,4.5,3000\n";
    const auto rs = parse_responses_csv(text);
    REQUIRE(rs.size() == 2);
    CHECK(rs[0].chart_type == ChartKind::Wrapped);
    CHECK(rs[0].response_label == "B");
    CHECK_FALSE(rs[0].response_value.has_value());
    CHECK(rs[1].task == Task::RatioMaxMin);
    CHECK(rs[1].response_value == 4.5);
    CHECK(rs[1].elapsed_ms == 3000);

    const auto planted = fixtures::planted_responses(3);
    CHECK(parse_responses_csv(responses_to_csv(planted)) == planted);

    const std::string header = "participant_id,dataset_id,chart_type,task,response_label,response_value,elapsed_ms\n";
    CHECK(code_of([&] { parse_responses_csv(header + "p1,d1,pie,identify_max,B,,1\n"); }) == ErrorCode::Parse);
    CHECK(code_of([&] { parse_responses_csv(header + "p1,d1,wrapped,guess,B,,1\n"); }) == ErrorCode::Parse);
    CHECK(code_of([&] { parse_responses_csv(header + "p1,d1,wrapped,identify_max,B,,x\n"); }) == ErrorCode::Parse);
    CHECK(code_of([&] { parse_responses_csv(header + "p1,d1,wrapped,identify_max,,,1\n"); }) ==
          ErrorCode::Parse);
    CHECK(code_of([] { parse_responses_csv("a,b\n"); }) == ErrorCode::Parse);
}

TEST_CASE("files and directories") {
    const fs::path dir = fs::temp_directory_path() / "dubois_io_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    write_file(dir / "b.csv", "label,value\nx,1\ny,2\n");
    write_file(dir / "a.json", R"({"id":"from_json","categories":[{"label":"p","value":3},{"label":"q","value":4}]})");
    write_file(dir / "notes.txt", "ignored");
    const auto all = load_dataset_dir(dir);
    REQUIRE(all.size() == 2);
    CHECK(all[0].id() == "from_json");
    CHECK(all[1].id() == "b");
    CHECK(load_dataset(dir / "b.csv").id() == "b");
    CHECK(code_of([&] { read_file(dir / "missing.csv"); }) == ErrorCode::Io);
    CHECK(code_of([&] { load_dataset_dir(dir / "nope"); }) == ErrorCode::Io);
    CHECK(code_of([&] { write_file(dir / "no" / "such" / "dir.csv", "x"); }) == ErrorCode::Io);
    fs::remove_all(dir);
}
