#include "knnr/poison.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

namespace knnr {

namespace {

// Explicit draws so the injection reproduces across standard libraries.
std::uint64_t draw_index(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;
}

double draw_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

PoisonResult inject_poison(const LabeledDataset& T, int n,
                           std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("poison budget must be >= 1");
  if (T.empty()) throw std::invalid_argument("empty dataset");
  const std::vector<Label> labels = T.labels();
  if (labels.size() < 2) {
    throw std::invalid_argument("cannot reassign labels: single-label dataset");
  }

  const std::size_t dim = T.dimension();
  std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
  std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
  for (const Element& e : T.elements()) {
    for (std::size_t d = 0; d < dim; ++d) {
      lo[d] = std::min(lo[d], e.features[d]);
      hi[d] = std::max(hi[d], e.features[d]);
    }
  }

  std::mt19937_64 rng(seed);
  const int count = 1 + static_cast<int>(draw_index(rng, n));

  ElementId next_id = 0;
  for (const Element& e : T.elements()) next_id = std::max(next_id, e.id);
  ++next_id;

  std::vector<Element> elements = T.elements();
  PoisonResult result;
  for (int i = 0; i < count; ++i) {
    const Element& src =
        T.elements()[draw_index(rng, T.size())];
    Element mutated;
    mutated.id = next_id++;
    mutated.features = src.features;
    for (std::size_t d = 0; d < dim; ++d) {
      const double span = 0.1 * (hi[d] - lo[d]);
      mutated.features[d] += (2.0 * draw_unit(rng) - 1.0) * span;
    }
    // Uniform over the labels other than the source's.
    std::vector<Label> others;
    for (Label l : labels) {
      if (l != src.label) others.push_back(l);
    }
    mutated.label = others[draw_index(rng, others.size())];
    result.injected.push_back(mutated.id);
    elements.push_back(std::move(mutated));
  }
  result.poisoned = LabeledDataset(std::move(elements));
  return result;
}

}  // namespace knnr
