#pragma once

#include <stdexcept>
#include <string>

#include "knnr/dataset.hpp"

namespace knnr {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Comma-separated rows of D real features followed by one integer label.
/// Elements get ids 0..m-1 in file order; dimension inferred from the first
/// data row. Ragged rows, non-numeric cells and non-integer labels raise
/// ParseError naming the line number.
LabeledDataset load_csv(const std::string& path, bool header = false);

void save_csv(const LabeledDataset& T, const std::string& path);

}  // namespace knnr
