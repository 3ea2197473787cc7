#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace famcorr {

// Equal-width histogram; edges has bins+1 ascending entries. Bins are
// half-open [lo, hi) except the last, which is closed so values equal to
// the top edge are counted.
struct Histogram {
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const {
    std::uint64_t sum = 0;
    for (auto c : counts) sum += c;
    return sum;
  }
};

// Bins `values` over [lo, hi]. Values outside the range are clamped into the
// end bins (callers pass the data range or a fixed scale, so this only
// absorbs rounding). lo == hi degenerates to a single-point range; all
// values land in the first bin and the edges are widened by 1 to stay
// strictly ascending.
Histogram make_histogram(std::span<const double> values, double lo, double hi, int bins);

// TSV `bin_lo<TAB>bin_hi<TAB>count`.
void save_histogram(const Histogram& hist, std::ostream& out);

}  // namespace famcorr
