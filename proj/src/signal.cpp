#include "deepclean/signal.hpp"

#include <algorithm>

namespace deepclean {

void WaveformRecord::validate() const {
  if (values.size() != missing.size()) {
    throw ShapeError("record: values and missing mask differ in length");
  }
  if (!(sampling_rate > 0)) throw DataError("record: sampling_rate must be > 0");
  if (values.size() == 0) {
    if (!segment_starts.empty()) throw DataError("record: empty record with segments");
    return;
  }
  if (segment_starts.empty() || segment_starts.front() != 0) {
    throw DataError("record: segment_starts must begin at index 0");
  }
  for (std::size_t i = 1; i < segment_starts.size(); ++i) {
    if (segment_starts[i] <= segment_starts[i - 1]) {
      throw DataError("record: segment_starts must be strictly increasing");
    }
  }
  if (segment_starts.back() >= values.size()) {
    throw DataError("record: segment start beyond record end");
  }
}

WaveformRecord make_record(Vector values, double rate) {
  WaveformRecord r;
  r.sampling_rate = rate;
  r.missing = BoolArray::Constant(values.size(), false);
  r.values = std::move(values);
  if (r.size() > 0) r.segment_starts = {0};
  r.validate();
  return r;
}

std::vector<Region> MarkMask::regions() const { return regions_from_flags(flags); }

std::vector<Region> regions_from_flags(const BoolArray& flags) {
  std::vector<Region> out;
  Index n = flags.size();
  Index i = 0;
  while (i < n) {
    if (flags[i]) {
      Index j = i;
      while (j < n && flags[j]) ++j;
      out.push_back({i, j});
      i = j;
    } else {
      ++i;
    }
  }
  return out;
}

MarkMask empty_mask(Index length) { return MarkMask{BoolArray::Constant(length, false)}; }

MarkMask mask_from_regions(const std::vector<Region>& regions, Index length) {
  MarkMask mask = empty_mask(length);
  for (const Region& r : regions) {
    if (r.begin < 0 || r.end > length || r.begin > r.end) {
      throw DataError("mask_from_regions: region out of bounds");
    }
    for (Index i = r.begin; i < r.end; ++i) mask.flags[i] = true;
  }
  return mask;
}

MarkMask mask_union(const MarkMask& a, const MarkMask& b) {
  if (a.size() != b.size()) throw ShapeError("mask_union: size mismatch");
  return MarkMask{a.flags || b.flags};
}

}  // namespace deepclean
