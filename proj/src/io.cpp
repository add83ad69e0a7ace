// SPDX-License-Identifier: Apache-2.0
#include "dubois/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dubois/error.hpp"
#include "dubois/serialize.hpp"

namespace dubois {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

/// Records of a whole CSV document; quoted fields may span lines.
std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool any = false;
    auto end_record = [&] {
        record.push_back(std::move(field));
        field.clear();
        const bool blank = record.size() == 1 && trim(record[0]).empty() && !any;
        if (!blank) records.push_back(std::move(record));
        record.clear();
        any = false;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                quoted = true;
                any = true;
                break;
            case ',':
                record.push_back(std::move(field));
                field.clear();
                any = true;
                break;
            case '\r':
                break;
            case '\n':
                end_record();
                break;
            default:
                field.push_back(c);
        }
    }
    if (quoted) throw Error(ErrorCode::Parse, "unterminated quoted CSV field");
    if (!field.empty() || !record.empty() || any) end_record();
    return records;
}

double parse_number(std::string_view text, std::string_view what) {
    const auto t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
        throw Error(ErrorCode::Parse, std::string(what) + ": '" + std::string(text) + "' is not a number");
    }
    return v;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

void expect_header(const std::vector<std::string>& got, std::initializer_list<std::string_view> want,
                   std::string_view file_kind) {
    bool ok = got.size() == want.size();
    std::size_t i = 0;
    for (auto w : want) {
        if (!ok) break;
        ok = lower(trim(got[i++])) == w;
    }
    if (!ok) {
        std::string expected;
        for (auto w : want) expected += (expected.empty() ? "" : ",") + std::string(w);
        throw Error(ErrorCode::Parse, std::string(file_kind) + " header must be '" + expected + "'");
    }
}

}  // namespace

std::vector<std::string> split_csv_record(std::string_view line) {
    auto records = parse_csv(line);
    if (records.empty()) return {};
    return std::move(records.front());
}

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

Dataset parse_dataset_csv(std::string_view text, std::string id) {
    const auto records = parse_csv(text);
    if (records.empty()) throw Error(ErrorCode::Parse, "dataset CSV is empty");
    expect_header(records.front(), {"label", "value"}, "dataset CSV");
    std::vector<Category> cats;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.size() != 2) {
            throw Error(ErrorCode::Parse, "dataset CSV row " + std::to_string(r + 1) + ": expected 2 fields, got " +
                                              std::to_string(rec.size()));
        }
        cats.push_back({std::string(trim(rec[0])), parse_number(rec[1], "row " + std::to_string(r + 1))});
    }
    return Dataset(std::move(id), std::move(cats));
}

Dataset parse_dataset_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::Parse, std::string("dataset JSON: ") + e.what());
    }
    return dataset_from_json(j);
}

std::string dataset_to_csv(const Dataset& d) {
    std::string out = "label,value\n";
    char buf[64];
    for (const auto& c : d.categories()) {
        std::snprintf(buf, sizeof buf, "%.17g", c.value);
        out += csv_field(c.label) + "," + buf + "\n";
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::Io, "write failed for '" + path.string() + "'");
}

Dataset load_dataset(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    if (lower(path.extension().string()) == ".json") return parse_dataset_json(text);
    return parse_dataset_csv(text, path.stem().string());
}

std::vector<Dataset> load_dataset_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        throw Error(ErrorCode::Io, "'" + dir.string() + "' is not a directory");
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const auto ext = lower(entry.path().extension().string());
        if (entry.is_regular_file() && (ext == ".csv" || ext == ".json")) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<Dataset> out;
    out.reserve(files.size());
    for (const auto& f : files) out.push_back(load_dataset(f));
    return out;
}

std::vector<TrialResponse> parse_responses_csv(std::string_view text) {
    const auto records = parse_csv(text);
    if (records.empty()) throw Error(ErrorCode::Parse, "responses CSV is empty");
    expect_header(records.front(),
                  {"participant_id", "dataset_id", "chart_type", "task", "response_label", "response_value",
                   "elapsed_ms"},
                  "responses CSV");
    std::vector<TrialResponse> out;
    out.reserve(records.size() - 1);
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        const std::string where = "responses CSV row " + std::to_string(r + 1);
        if (rec.size() != 7) throw Error(ErrorCode::Parse, where + ": expected 7 fields");
        TrialResponse t;
        t.participant_id = std::string(trim(rec[0]));
        t.dataset_id = std::string(trim(rec[1]));
        const auto kind = parse_chart_kind(lower(trim(rec[2])));
        if (!kind) throw Error(ErrorCode::Parse, where + ": chart_type must be standard or wrapped");
        t.chart_type = *kind;
        const auto task = parse_task(lower(trim(rec[3])));
        if (!task) throw Error(ErrorCode::Parse, where + ": unknown task '" + rec[3] + "'");
        t.task = *task;
        if (!trim(rec[4]).empty()) t.response_label = std::string(trim(rec[4]));
        if (!trim(rec[5]).empty()) t.response_value = parse_number(rec[5], where);
        const double ms = parse_number(rec[6], where);
        if (ms < 0 || ms != static_cast<double>(static_cast<std::int64_t>(ms))) {
            throw Error(ErrorCode::Parse, where + ": elapsed_ms must be a non-negative integer");
        }
        t.elapsed_ms = static_cast<std::int64_t>(ms);
        try {
            t.validate();
        } catch (const Error& e) {
            throw Error(ErrorCode::Parse, where + ": " + e.what());
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::string responses_to_csv(std::span<const TrialResponse> responses) {
    std::string out = "participant_id,dataset_id,chart_type,task,response_label,response_value,elapsed_ms\n";
    char buf[64];
    for (const auto& r : responses) {
        out += csv_field(r.participant_id) + "," + csv_field(r.dataset_id) + "," +
               std::string(to_string(r.chart_type)) + "," + std::string(to_string(r.task)) + ",";
        if (r.response_label) out += csv_field(*r.response_label);
        out += ",";
        if (r.response_value) {
            std::snprintf(buf, sizeof buf, "%.17g", *r.response_value);
            out += buf;
        }
        out += "," + std::to_string(r.elapsed_ms) + "\n";
    }
    return out;
}

}  // namespace dubois
