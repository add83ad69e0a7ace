// SPDX-License-Identifier: Apache-2.0
//
// Dataset and response file formats.
//   dataset CSV:  header "label,value", one category per row
//   dataset JSON: {"id": str, "categories": [{"label": str, "value": num}]}
//   responses CSV: participant_id,dataset_id,chart_type,task,
//                  response_label,response_value,elapsed_ms
// Malformed content throws Error(Parse) or Error(InvalidDataset); unreadable
// or unwritable files throw Error(Io).
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dubois/dataset.hpp"
#include "dubois/stats.hpp"

namespace dubois {

/// RFC 4180-style field split of one record (quotes, doubled quotes).
std::vector<std::string> split_csv_record(std::string_view line);
std::string csv_field(std::string_view text);

Dataset parse_dataset_csv(std::string_view text, std::string id);
Dataset parse_dataset_json(std::string_view text);
std::string dataset_to_csv(const Dataset& d);

/// Dispatches on extension: ".json" is JSON, anything else CSV with the id
/// taken from the file stem.
Dataset load_dataset(const std::filesystem::path& path);
/// Every *.csv and *.json file in `dir`, sorted by file name.
std::vector<Dataset> load_dataset_dir(const std::filesystem::path& dir);

std::vector<TrialResponse> parse_responses_csv(std::string_view text);
std::string responses_to_csv(std::span<const TrialResponse> responses);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace dubois
