#pragma once

#include "deepclean/types.hpp"

#include <utility>
#include <vector>

namespace deepclean {

// Half-open index interval [begin, end).
struct Region {
  Index begin = 0;
  Index end = 0;
  Index length() const { return end - begin; }
  friend bool operator==(const Region&, const Region&) = default;
};

// A sampled real-valued signal on a uniform grid. Segments mark the start of
// each contiguous recorded section; points inside a segment may still be
// missing (grid retained so downstream windows keep fixed length).
struct WaveformRecord {
  Vector values;  // mmHg
  double sampling_rate = 125.0;
  std::vector<Index> segment_starts;  // strictly increasing, first entry 0
  BoolArray missing;                  // true = value absent

  Index size() const { return values.size(); }
  void validate() const;
};

WaveformRecord make_record(Vector values, double rate);

// Per-timepoint abnormality marks. `flags` is canonical; regions are derived,
// disjoint, sorted, and reconstruct flags exactly.
struct MarkMask {
  BoolArray flags;

  Index size() const { return flags.size(); }
  Index count() const { return flags.count(); }
  std::vector<Region> regions() const;
};

MarkMask empty_mask(Index length);

// Union of the given regions over [0, length); overlapping inputs merge.
// Throws DataError if a region falls outside [0, length).
MarkMask mask_from_regions(const std::vector<Region>& regions, Index length);

std::vector<Region> regions_from_flags(const BoolArray& flags);

MarkMask mask_union(const MarkMask& a, const MarkMask& b);

}  // namespace deepclean
