#pragma once

#include "deepclean/signal.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace deepclean {

struct PreprocessConfig {
  double global_min = 20.0;       // mmHg, rule (i)
  double global_max = 250.0;      // mmHg, rule (i)
  double static_window = 0.4;     // s, rule (ii)
  double static_range_max = 0.5;  // mmHg, rule (ii)
  double jump_window = 0.4;       // s, rule (iii)
  double jump_threshold = 80.0;   // mmHg, rule (iii)
  double merge_ratio = 4.0;
  double window_s = 10.0;
  double meta_window_s = 100.0;
  long test_count = 200;
  double split_ratio = 0.9;
  double smoothing_alpha = 0.02;
  std::uint64_t seed = 0;

  void validate() const;
};

PreprocessConfig parse_preprocess_config(const std::string& text);
PreprocessConfig read_preprocess_config(const std::filesystem::path& path);
std::string preprocess_config_text(const PreprocessConfig& config);

// Marks points failing any of the four gross-abnormality rules: (i) value
// outside [global_min, global_max]; (ii) a static_window-long stretch whose
// range stays below static_range_max; (iii) a first difference larger than
// jump_threshold anywhere in a jump_window-long stretch; (iv) an externally
// supplied annotation mask. Missing points are always marked.
MarkMask mark_abnormal(const WaveformRecord& record, const PreprocessConfig& config,
                       const MarkMask* annotations = nullptr);

// Merges adjacent marked regions whose combined length is at least
// merge_ratio times the gap between them; iterated left-to-right to fixpoint.
MarkMask merge_marked_regions(const MarkMask& mask, double merge_ratio);

// One marked-proportion per consecutive meta window; the final partial window
// is normalized by its own length.
Vector window_mark_proportion(const MarkMask& mask, double meta_window_s, double rate);

// Draws test_count non-overlapping window starts: a meta window is chosen
// with probability proportional to (marked proportion + smoothing_alpha) and
// the window start uniformly inside it. Deterministic given config.seed.
std::vector<Index> sample_test_windows(const WaveformRecord& record, const MarkMask& mask,
                                       const PreprocessConfig& config);

struct WindowSample {
  Vector values;  // standardized
  Index source_start = 0;
  std::optional<bool> label;               // sample-wide: contains artefact
  std::optional<BoolArray> timepoint_label;
};

struct Standardizer {
  double mean = 0.0;
  double sd = 1.0;
};

struct DatasetBundle {
  std::vector<WindowSample> train;
  std::vector<WindowSample> validation;
  std::vector<WindowSample> test;
  Standardizer standardizer;
  Index window_len = 0;
  double rate = 125.0;
  std::uint64_t seed = 0;
  std::string config_hash;
};

// Tiles non-overlapping, fully unmarked, gap-free windows outside the test
// set; shuffles and splits them split_ratio : (1 - split_ratio); standardizes
// everything by the training mean/sd. Test windows are cut at test_starts
// with missing points set to the sentinel value.
DatasetBundle build_datasets(const WaveformRecord& record, const MarkMask& mask,
                             const std::vector<Index>& test_starts,
                             const PreprocessConfig& config);

// Fills test-window labels from a ground-truth or expert mask over the source
// record. Evaluation-only; never feeds the detection pipeline.
void annotate_test_windows(DatasetBundle& bundle, const MarkMask& truth);

void save_bundle(const DatasetBundle& bundle, const std::filesystem::path& dir);
DatasetBundle load_bundle(const std::filesystem::path& dir);

}  // namespace deepclean
