// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace dubois {

struct Category {
    std::string label;
    double value = 0.0;

    friend bool operator==(const Category&, const Category&) = default;
};

/// Ordered, labeled, non-negative category values. Construction validates:
/// at least two categories, every value finite and >= 0, at least one value
/// > 0, labels unique. Throws Error(InvalidDataset) otherwise.
class Dataset {
public:
    Dataset(std::string id, std::vector<Category> categories);

    const std::string& id() const noexcept { return id_; }
    std::span<const Category> categories() const noexcept { return categories_; }
    std::size_t size() const noexcept { return categories_.size(); }
    std::vector<double> values() const;
    double total() const noexcept;
    double max_value() const noexcept;

    /// Same id and labels, categories reordered. `order` must be a permutation.
    Dataset permuted(std::span<const std::size_t> order) const;

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    std::string id_;
    std::vector<Category> categories_;
};

/// Convenience for tests and generators: labels "A", "B", ..., "Z", "AA", ...
std::string spreadsheet_label(std::size_t index);
Dataset make_dataset(std::string id, std::span<const double> values);

}  // namespace dubois
