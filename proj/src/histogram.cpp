#include "famcorr/histogram.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>

#include "famcorr/text_format.hpp"

namespace famcorr {

Histogram make_histogram(std::span<const double> values, double lo, double hi, int bins) {
  assert(bins >= 1);
  Histogram hist;
  if (hi <= lo) hi = lo + 1.0;
  const double width = (hi - lo) / bins;
  hist.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) hist.edges[static_cast<std::size_t>(i)] = lo + width * i;
  hist.edges.back() = hi;
  hist.counts.assign(static_cast<std::size_t>(bins), 0);

  for (double v : values) {
    auto bin = static_cast<long>((v - lo) / width);
    bin = std::clamp<long>(bin, 0, bins - 1);
    ++hist.counts[static_cast<std::size_t>(bin)];
  }
  return hist;
}

void save_histogram(const Histogram& hist, std::ostream& out) {
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    out << format_double(hist.edges[i]) << '\t' << format_double(hist.edges[i + 1]) << '\t'
        << hist.counts[i] << '\n';
  }
}

}  // namespace famcorr
