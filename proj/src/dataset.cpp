// SPDX-License-Identifier: Apache-2.0
#include "dubois/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "dubois/error.hpp"

namespace dubois {

Dataset::Dataset(std::string id, std::vector<Category> categories)
    : id_(std::move(id)), categories_(std::move(categories)) {
    if (categories_.size() < 2) {
        throw Error(ErrorCode::InvalidDataset,
                    "dataset '" + id_ + "' needs at least 2 categories, got " +
                        std::to_string(categories_.size()));
    }
    std::unordered_set<std::string> seen;
    bool any_positive = false;
    for (const auto& c : categories_) {
        if (!std::isfinite(c.value) || c.value < 0.0) {
            throw Error(ErrorCode::InvalidDataset,
                        "dataset '" + id_ + "': value for '" + c.label + "' must be finite and >= 0");
        }
        if (!seen.insert(c.label).second) {
            throw Error(ErrorCode::InvalidDataset,
                        "dataset '" + id_ + "': duplicate label '" + c.label + "'");
        }
        any_positive = any_positive || c.value > 0.0;
    }
    if (!any_positive) {
        throw Error(ErrorCode::InvalidDataset, "dataset '" + id_ + "': all values are 0");
    }
}

std::vector<double> Dataset::values() const {
    std::vector<double> out;
    out.reserve(categories_.size());
    for (const auto& c : categories_) out.push_back(c.value);
    return out;
}

double Dataset::total() const noexcept {
    double sum = 0.0;
    for (const auto& c : categories_) sum += c.value;
    return sum;
}

double Dataset::max_value() const noexcept {
    double m = 0.0;
    for (const auto& c : categories_) m = std::max(m, c.value);
    return m;
}

Dataset Dataset::permuted(std::span<const std::size_t> order) const {
    std::vector<Category> cats;
    cats.reserve(order.size());
    for (std::size_t i : order) cats.push_back(categories_.at(i));
    return Dataset(id_, std::move(cats));
}

std::string spreadsheet_label(std::size_t index) {
    std::string out;
    ++index;
    while (index > 0) {
        --index;
        out.insert(out.begin(), static_cast<char>('A' + index % 26));
        index /= 26;
    }
    return out;
}

Dataset make_dataset(std::string id, std::span<const double> values) {
    std::vector<Category> cats;
    cats.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) cats.push_back({spreadsheet_label(i), values[i]});
    return Dataset(std::move(id), std::move(cats));
}

}  // namespace dubois
