#pragma once

#include "deepclean/signal.hpp"

#include <cstdint>
#include <filesystem>
#include <utility>

namespace deepclean {

// Beat morphology parameters for the synthetic ABP generator. The per-beat
// waveform is a systolic upstroke, a dicrotic notch at notch_phase (fraction
// of the beat) with a diastolic rebound peak after it, and a slow diastolic
// decay.
struct PulseTemplateParams {
  double period = 0.8;                // s
  double systolic_amp = 55.0;         // mmHg above diastolic base
  double diastolic_base = 62.0;       // mmHg
  double notch_depth = 6.0;           // mmHg
  double notch_phase = 0.40;          // in (0,1)
  double respiratory_mod_amp = 3.0;   // mmHg
  double respiratory_period = 4.0;    // s
  double noise_sd = 1.0;              // mmHg per sample
  double drift_sd = 0.8;              // mmHg innovation per beat
  bool jitter = true;                 // +/-2% per-beat period jitter

  void validate() const;
};

WaveformRecord generate_clean(const PulseTemplateParams& params, double duration_s, double rate,
                              std::uint64_t seed);

enum class ArtefactKind { flush, attenuation, overdamping, noise_burst, static_line, spike_train };

const char* artefact_kind_name(ArtefactKind kind);
ArtefactKind artefact_kind_from_name(const std::string& name);

struct ArtefactSpec {
  ArtefactKind kind = ArtefactKind::flush;
  Index start = 0;
  Index duration = 0;   // samples
  double severity = 1.0;  // in (0, 1]

  void validate(Index record_length) const;
};

// Overwrites [start, start+duration) with the artefact and marks the same
// interval in `marks`. Throws DataError if the interval already carries a
// mark, so injected labels stay unambiguous.
void inject_artefact(WaveformRecord& record, MarkMask& marks, const ArtefactSpec& spec,
                     std::uint64_t seed);

std::pair<WaveformRecord, MarkMask> inject_artefact(const WaveformRecord& record,
                                                    const ArtefactSpec& spec, std::uint64_t seed);

struct CorpusConfig {
  double duration_s = 7200.0;
  double rate = 125.0;
  double artefacts_per_hour = 6.0;
  double min_duration_s = 6.0;
  double max_duration_s = 24.0;
  double min_severity = 0.4;
  double max_severity = 1.0;
  // relative draw weights per kind
  double weight_flush = 0.18;
  double weight_attenuation = 0.20;
  double weight_overdamping = 0.15;
  double weight_noise_burst = 0.15;
  double weight_static_line = 0.20;
  double weight_spike_train = 0.12;
  PulseTemplateParams pulse;

  void validate() const;
};

CorpusConfig parse_corpus_config(const std::string& text);
CorpusConfig read_corpus_config(const std::filesystem::path& path);
std::string corpus_config_text(const CorpusConfig& config);

struct Corpus {
  WaveformRecord clean;      // pre-injection signal, for evaluation only
  WaveformRecord corrupted;  // what the pipeline sees
  MarkMask truth;            // ground-truth artefact mask, evaluation only
};

// Deterministic for fixed (config, seed). Artefact count is
// round(artefacts_per_hour * hours); placements are uniform with rejection of
// overlaps. Throws ConfigError if the density is infeasible.
Corpus build_corpus(const CorpusConfig& config, std::uint64_t seed);

}  // namespace deepclean
