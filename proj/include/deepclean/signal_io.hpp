#pragma once

#include "deepclean/signal.hpp"

#include <filesystem>
#include <iosfwd>

namespace deepclean {

// Text waveform format: `time_s,value` rows in ascending time, empty value
// field for missing points. `# rate=<hz>` records the grid rate and a line
// `# segment` marks the next row as the start of a new recorded section.
// Foreign files without markers get their segmentation inferred from time
// gaps larger than gap_factor / expected_rate.
WaveformRecord parse_waveform(std::istream& in, double expected_rate, double gap_factor);

void write_waveform(const WaveformRecord& record, std::ostream& out);
void write_waveform_csv(const WaveformRecord& record, const std::filesystem::path& path);

// Reads a waveform CSV, honouring an embedded `# rate=` comment when present.
WaveformRecord read_waveform_csv(const std::filesystem::path& path,
                                 double default_rate = 125.0, double gap_factor = 1.5);

// Binary bulk format: 16-byte header (magic "DCW1", u16 version, u16 reserved,
// f32 rate, u32 length), u32 segment count + u32 starts, then f32 values with
// NaN for missing. Values are quantized to 32-bit floats.
void write_waveform_binary(const WaveformRecord& record, const std::filesystem::path& path);
WaveformRecord read_waveform_binary(const std::filesystem::path& path);

// Mask file: `length=<N>` header then one `start,end` (end exclusive) row per
// region.
void write_mask(const MarkMask& mask, std::ostream& out);
void write_mask_csv(const MarkMask& mask, const std::filesystem::path& path);
MarkMask parse_mask(std::istream& in);
MarkMask read_mask_csv(const std::filesystem::path& path);

}  // namespace deepclean
