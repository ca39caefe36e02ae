#include "knnr/csv.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace knnr {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& cell, std::size_t line_no) {
  const std::string t = trimmed(cell);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": non-numeric cell '" + cell + "'");
  }
  return v;
}

Label parse_label(const std::string& cell, std::size_t line_no) {
  const std::string t = trimmed(cell);
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || v < 0) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": label '" + cell + "' is not a non-negative integer");
  }
  return static_cast<Label>(v);
}

}  // namespace

LabeledDataset load_csv(const std::string& path, bool header) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);

  std::vector<Element> elements;
  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  ElementId next_id = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (header && line_no == 1) continue;
    if (trimmed(line).empty()) continue;

    const std::vector<std::string> cells = split_line(line);
    if (cells.size() < 2) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected at least one feature and a label");
    }
    if (dim == 0) {
      dim = cells.size() - 1;
    } else if (cells.size() - 1 != dim) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(dim + 1) + " columns, got " +
                       std::to_string(cells.size()));
    }
    Element e;
    e.id = next_id++;
    e.features.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      e.features.push_back(parse_real(cells[i], line_no));
    }
    e.label = parse_label(cells.back(), line_no);
    elements.push_back(std::move(e));
  }
  if (elements.empty()) throw ParseError(path + ": no data rows");
  return LabeledDataset(std::move(elements));
}

void save_csv(const LabeledDataset& T, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out.precision(17);
  for (const Element& e : T.elements()) {
    for (double f : e.features) out << f << ',';
    out << e.label << '\n';
  }
}

}  // namespace knnr
