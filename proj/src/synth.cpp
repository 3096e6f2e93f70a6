#include "deepclean/synth.hpp"

#include "deepclean/util.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

namespace deepclean {

namespace {

// Unit-height log-normal bump, peak at s = mu.
inline double lognormal_bump(double s, double mu, double sigma) {
  if (s <= 0) return 0.0;
  const double d = std::log(s / mu) / sigma;
  return std::exp(-0.5 * d * d);
}

inline double gauss_bump(double d, double width) {
  const double r = d / width;
  return std::exp(-0.5 * r * r);
}

// Contribution of one beat at normalized offset s = (t - beat_start)/period,
// evaluated on s in (0, 2) so consecutive beats overlap smoothly.
double beat_contribution(double s, const PulseTemplateParams& p) {
  if (s <= 0.0 || s >= 2.0) return 0.0;
  double v = p.systolic_amp * lognormal_bump(s, 0.15, 0.30);
  v += 0.22 * p.systolic_amp * lognormal_bump(s, p.notch_phase + 0.10, 0.20);
  v += 0.18 * p.systolic_amp * lognormal_bump(s, 0.55, 0.35);
  v -= p.notch_depth * gauss_bump(s - p.notch_phase, 0.025);
  return v;
}

}  // namespace

void PulseTemplateParams::validate() const {
  if (!(period > 0)) throw ConfigError("pulse: period must be > 0");
  if (!(systolic_amp > 0)) throw ConfigError("pulse: systolic_amp must be > 0");
  if (!(notch_phase > 0 && notch_phase < 1)) throw ConfigError("pulse: notch_phase must be in (0,1)");
  if (!(respiratory_period > 0)) throw ConfigError("pulse: respiratory_period must be > 0");
  if (noise_sd < 0 || drift_sd < 0) throw ConfigError("pulse: negative noise scale");
}

WaveformRecord generate_clean(const PulseTemplateParams& params, double duration_s, double rate,
                              std::uint64_t seed) {
  params.validate();
  if (!(duration_s > 0)) throw ConfigError("generate_clean: duration must be > 0");
  if (!(rate > 0)) throw ConfigError("generate_clean: rate must be > 0");

  const Index n = static_cast<Index>(std::llround(duration_s * rate));
  const double period_samples = params.period * rate;

  // Beat start times in samples, two warm-up beats before t=0 so early
  // samples see the previous beat's tail like interior ones do.
  Rng jitter_rng(mix_seed(seed, 1));
  std::uniform_real_distribution<double> jitter_dist(-0.02, 0.02);
  std::vector<double> starts;
  std::vector<double> periods;
  double t;
  if (params.jitter) {
    // keep the warm-up beats jittered too, drawn in order
    double p0 = period_samples * (1.0 + jitter_dist(jitter_rng));
    double p1 = period_samples * (1.0 + jitter_dist(jitter_rng));
    starts.push_back(-(p0 + p1));
    periods.push_back(p0);
    starts.push_back(-p1);
    periods.push_back(p1);
    t = 0;
  } else {
    starts.push_back(-2.0 * period_samples);
    periods.push_back(period_samples);
    starts.push_back(-period_samples);
    periods.push_back(period_samples);
    t = 0;
  }
  while (t < static_cast<double>(n)) {
    double p = period_samples;
    if (params.jitter) p *= 1.0 + jitter_dist(jitter_rng);
    starts.push_back(t);
    periods.push_back(p);
    t += p;
  }
  // one trailing beat so the last samples have a following upstroke
  starts.push_back(t);
  periods.push_back(period_samples);

  Vector values = Vector::Constant(n, params.diastolic_base);

  // beat-major accumulation keeps the sample-wise summation order fixed
  for (std::size_t k = 0; k < starts.size(); ++k) {
    const double s0 = starts[k];
    const double pk = periods[k];
    const Index lo = std::max<Index>(0, static_cast<Index>(std::ceil(s0)));
    const Index hi = std::min<Index>(n, static_cast<Index>(std::ceil(s0 + 2.0 * pk)));
    for (Index i = lo; i < hi; ++i) {
      const double s = (static_cast<double>(i) - s0) / pk;
      values[i] += beat_contribution(s, params);
    }
  }

  // respiratory modulation, computed from the sample index so the signal is
  // bitwise periodic when all randomness is disabled
  if (params.respiratory_mod_amp != 0.0) {
    const double resp_samples = params.respiratory_period * rate;
    for (Index i = 0; i < n; ++i) {
      const double phase = std::fmod(static_cast<double>(i), resp_samples) / resp_samples;
      values[i] += params.respiratory_mod_amp * std::sin(2.0 * M_PI * phase);
    }
  }

  // slow mean-reverting drift: per-beat AR(1) innovations of sd drift_sd,
  // linearly interpolated between beat starts (a pure random walk would leave
  // the physiological band over long records)
  if (params.drift_sd > 0.0) {
    Rng drift_rng(mix_seed(seed, 2));
    std::normal_distribution<double> innov(0.0, params.drift_sd);
    std::vector<double> level(starts.size() + 1, 0.0);
    for (std::size_t k = 1; k < level.size(); ++k) {
      level[k] = 0.96 * level[k - 1] + innov(drift_rng);
    }
    std::size_t k = 0;
    for (Index i = 0; i < n; ++i) {
      while (k + 1 < starts.size() && starts[k + 1] <= static_cast<double>(i)) ++k;
      const double span = (k + 1 < starts.size() ? starts[k + 1] : starts[k] + periods[k]) - starts[k];
      const double frac = std::clamp((static_cast<double>(i) - starts[k]) / span, 0.0, 1.0);
      values[i] += level[k] * (1.0 - frac) + level[k + 1] * frac;
    }
  }

  if (params.noise_sd > 0.0) {
    Rng noise_rng(mix_seed(seed, 3));
    std::normal_distribution<double> noise(0.0, params.noise_sd);
    for (Index i = 0; i < n; ++i) values[i] += noise(noise_rng);
  }

  return make_record(std::move(values), rate);
}

const char* artefact_kind_name(ArtefactKind kind) {
  switch (kind) {
    case ArtefactKind::flush: return "flush";
    case ArtefactKind::attenuation: return "attenuation";
    case ArtefactKind::overdamping: return "overdamping";
    case ArtefactKind::noise_burst: return "noise_burst";
    case ArtefactKind::static_line: return "static_line";
    case ArtefactKind::spike_train: return "spike_train";
  }
  throw ConfigError("unknown artefact kind");
}

ArtefactKind artefact_kind_from_name(const std::string& name) {
  for (ArtefactKind k : {ArtefactKind::flush, ArtefactKind::attenuation, ArtefactKind::overdamping,
                         ArtefactKind::noise_burst, ArtefactKind::static_line,
                         ArtefactKind::spike_train}) {
    if (name == artefact_kind_name(k)) return k;
  }
  throw ConfigError("unknown artefact kind '" + name + "'");
}

void ArtefactSpec::validate(Index record_length) const {
  if (duration < 1) throw DataError("artefact: duration must be >= 1");
  if (start < 0 || start + duration > record_length) throw DataError("artefact: out of bounds");
  if (!(severity > 0 && severity <= 1)) throw DataError("artefact: severity must be in (0,1]");
}

namespace {

// Local beat-scale mean of the signal, centered moving average over one beat.
Vector local_mean(const Vector& x, Index width) {
  width = std::max<Index>(1, width);
  const Index n = x.size();
  Vector out(n);
  double acc = 0;
  Index lo = 0, hi = 0;  // current window [lo, hi)
  for (Index i = 0; i < n; ++i) {
    Index want_lo = std::max<Index>(0, i - width / 2);
    Index want_hi = std::min<Index>(n, i + (width + 1) / 2);
    while (hi < want_hi) acc += x[hi++];
    while (lo < want_lo) acc -= x[lo++];
    out[i] = acc / static_cast<double>(hi - lo);
  }
  return out;
}

void apply_flush(Vector& v, Index start, Index dur, double severity, double rate) {
  const double plateau = 300.0 * severity;
  const Index ramp = std::max<Index>(1, std::min<Index>(dur / 4, static_cast<Index>(0.5 * rate)));
  const Index hold_end = start + std::max<Index>(ramp + 1, (6 * dur) / 10);
  const double tau = std::max(1.0, static_cast<double>(start + dur - hold_end) / 3.0);
  for (Index i = start; i < start + dur; ++i) {
    double w;
    if (i < start + ramp) {
      w = static_cast<double>(i - start + 1) / static_cast<double>(ramp);
    } else if (i < hold_end) {
      w = 1.0;
    } else {
      w = std::exp(-static_cast<double>(i - hold_end) / tau);
    }
    v[i] = v[i] * (1.0 - w) + plateau * w;
  }
}

}  // namespace

void inject_artefact(WaveformRecord& record, MarkMask& marks, const ArtefactSpec& spec,
                     std::uint64_t seed) {
  spec.validate(record.size());
  if (marks.size() != record.size()) throw ShapeError("inject_artefact: mask size mismatch");
  for (Index i = spec.start; i < spec.start + spec.duration; ++i) {
    if (marks.flags[i]) {
      throw DataError("inject_artefact: interval overlaps an existing mark");
    }
  }

  Vector& v = record.values;
  const Index start = spec.start;
  const Index dur = spec.duration;
  const double sev = spec.severity;
  const double rate = record.sampling_rate;
  const Index beat_width = std::max<Index>(2, static_cast<Index>(std::llround(0.8 * rate)));

  switch (spec.kind) {
    case ArtefactKind::flush:
      apply_flush(v, start, dur, sev, rate);
      break;
    case ArtefactKind::attenuation: {
      Vector m = local_mean(v, beat_width);
      for (Index i = start; i < start + dur; ++i) {
        v[i] = m[i] - 18.0 * sev + (1.0 - sev) * (v[i] - m[i]);
      }
      break;
    }
    case ArtefactKind::overdamping: {
      Vector m = local_mean(v, beat_width);
      Vector hf = v - m;
      const Index lp_width = 1 + static_cast<Index>(std::llround(sev * 0.12 * rate));
      Vector smooth = local_mean(hf, lp_width);
      for (Index i = start; i < start + dur; ++i) {
        v[i] = m[i] + (1.0 - sev) * smooth[i];
      }
      break;
    }
    case ArtefactKind::noise_burst: {
      Rng rng(mix_seed(seed, 7));
      std::normal_distribution<double> noise(0.0, 20.0 * sev);
      for (Index i = start; i < start + dur; ++i) v[i] += noise(rng);
      break;
    }
    case ArtefactKind::static_line: {
      const double held = v[start];
      for (Index i = start; i < start + dur; ++i) v[i] = held;
      break;
    }
    case ArtefactKind::spike_train: {
      const Index step = std::max<Index>(1, static_cast<Index>(std::llround(0.25 * rate)));
      double sign = 1.0;
      for (Index i = start; i < start + dur; i += step) {
        v[i] += sign * 100.0 * sev;
        sign = -sign;
      }
      break;
    }
  }

  for (Index i = start; i < start + dur; ++i) marks.flags[i] = true;
}

std::pair<WaveformRecord, MarkMask> inject_artefact(const WaveformRecord& record,
                                                    const ArtefactSpec& spec, std::uint64_t seed) {
  WaveformRecord out = record;
  MarkMask marks = empty_mask(record.size());
  inject_artefact(out, marks, spec, seed);
  return {std::move(out), std::move(marks)};
}

void CorpusConfig::validate() const {
  if (!(duration_s > 0)) throw ConfigError("corpus: duration_s must be > 0");
  if (!(rate > 0)) throw ConfigError("corpus: rate must be > 0");
  if (artefacts_per_hour < 0) throw ConfigError("corpus: negative artefact rate");
  if (!(min_duration_s > 0 && max_duration_s >= min_duration_s)) {
    throw ConfigError("corpus: bad artefact duration range");
  }
  if (!(min_severity > 0 && max_severity <= 1 && max_severity >= min_severity)) {
    throw ConfigError("corpus: bad severity range");
  }
  const double wsum = weight_flush + weight_attenuation + weight_overdamping + weight_noise_burst +
                      weight_static_line + weight_spike_train;
  if (!(wsum > 0)) throw ConfigError("corpus: kind weights sum to zero");
  pulse.validate();
}

CorpusConfig parse_corpus_config(const std::string& text) {
  KeyValueReader kv(parse_key_values(text));
  CorpusConfig c;
  c.duration_s = kv.get_real("duration_s", c.duration_s);
  c.rate = kv.get_real("rate", c.rate);
  c.artefacts_per_hour = kv.get_real("artefacts_per_hour", c.artefacts_per_hour);
  c.min_duration_s = kv.get_real("min_duration_s", c.min_duration_s);
  c.max_duration_s = kv.get_real("max_duration_s", c.max_duration_s);
  c.min_severity = kv.get_real("min_severity", c.min_severity);
  c.max_severity = kv.get_real("max_severity", c.max_severity);
  c.weight_flush = kv.get_real("weight_flush", c.weight_flush);
  c.weight_attenuation = kv.get_real("weight_attenuation", c.weight_attenuation);
  c.weight_overdamping = kv.get_real("weight_overdamping", c.weight_overdamping);
  c.weight_noise_burst = kv.get_real("weight_noise_burst", c.weight_noise_burst);
  c.weight_static_line = kv.get_real("weight_static_line", c.weight_static_line);
  c.weight_spike_train = kv.get_real("weight_spike_train", c.weight_spike_train);
  c.pulse.period = kv.get_real("pulse_period", c.pulse.period);
  c.pulse.systolic_amp = kv.get_real("pulse_systolic_amp", c.pulse.systolic_amp);
  c.pulse.diastolic_base = kv.get_real("pulse_diastolic_base", c.pulse.diastolic_base);
  c.pulse.notch_depth = kv.get_real("pulse_notch_depth", c.pulse.notch_depth);
  c.pulse.notch_phase = kv.get_real("pulse_notch_phase", c.pulse.notch_phase);
  c.pulse.respiratory_mod_amp = kv.get_real("pulse_respiratory_mod_amp", c.pulse.respiratory_mod_amp);
  c.pulse.respiratory_period = kv.get_real("pulse_respiratory_period", c.pulse.respiratory_period);
  c.pulse.noise_sd = kv.get_real("pulse_noise_sd", c.pulse.noise_sd);
  c.pulse.drift_sd = kv.get_real("pulse_drift_sd", c.pulse.drift_sd);
  c.pulse.jitter = kv.get_int("pulse_jitter", c.pulse.jitter ? 1 : 0) != 0;
  c.validate();
  return c;
}

CorpusConfig read_corpus_config(const std::filesystem::path& path) {
  return parse_corpus_config(read_text_file(path));
}

std::string corpus_config_text(const CorpusConfig& c) {
  std::ostringstream out;
  out << "duration_s = " << format_double(c.duration_s) << "\n";
  out << "rate = " << format_double(c.rate) << "\n";
  out << "artefacts_per_hour = " << format_double(c.artefacts_per_hour) << "\n";
  out << "min_duration_s = " << format_double(c.min_duration_s) << "\n";
  out << "max_duration_s = " << format_double(c.max_duration_s) << "\n";
  out << "min_severity = " << format_double(c.min_severity) << "\n";
  out << "max_severity = " << format_double(c.max_severity) << "\n";
  out << "weight_flush = " << format_double(c.weight_flush) << "\n";
  out << "weight_attenuation = " << format_double(c.weight_attenuation) << "\n";
  out << "weight_overdamping = " << format_double(c.weight_overdamping) << "\n";
  out << "weight_noise_burst = " << format_double(c.weight_noise_burst) << "\n";
  out << "weight_static_line = " << format_double(c.weight_static_line) << "\n";
  out << "weight_spike_train = " << format_double(c.weight_spike_train) << "\n";
  out << "pulse_period = " << format_double(c.pulse.period) << "\n";
  out << "pulse_systolic_amp = " << format_double(c.pulse.systolic_amp) << "\n";
  out << "pulse_diastolic_base = " << format_double(c.pulse.diastolic_base) << "\n";
  out << "pulse_notch_depth = " << format_double(c.pulse.notch_depth) << "\n";
  out << "pulse_notch_phase = " << format_double(c.pulse.notch_phase) << "\n";
  out << "pulse_respiratory_mod_amp = " << format_double(c.pulse.respiratory_mod_amp) << "\n";
  out << "pulse_respiratory_period = " << format_double(c.pulse.respiratory_period) << "\n";
  out << "pulse_noise_sd = " << format_double(c.pulse.noise_sd) << "\n";
  out << "pulse_drift_sd = " << format_double(c.pulse.drift_sd) << "\n";
  out << "pulse_jitter = " << (c.pulse.jitter ? 1 : 0) << "\n";
  return out.str();
}

Corpus build_corpus(const CorpusConfig& config, std::uint64_t seed) {
  config.validate();
  Corpus corpus;
  corpus.clean = generate_clean(config.pulse, config.duration_s, config.rate, mix_seed(seed, 10));
  corpus.corrupted = corpus.clean;
  corpus.truth = empty_mask(corpus.clean.size());

  const Index n = corpus.clean.size();
  const long count = std::lround(config.artefacts_per_hour * config.duration_s / 3600.0);
  if (count == 0) return corpus;

  Rng rng(mix_seed(seed, 11));
  const double weights[6] = {config.weight_flush,      config.weight_attenuation,
                             config.weight_overdamping, config.weight_noise_burst,
                             config.weight_static_line, config.weight_spike_train};
  std::discrete_distribution<int> kind_dist(weights, weights + 6);
  std::uniform_real_distribution<double> dur_dist(config.min_duration_s, config.max_duration_s);
  std::uniform_real_distribution<double> sev_dist(config.min_severity, config.max_severity);

  const Index edge = static_cast<Index>(std::llround(2.0 * config.rate));
  const Index gap = static_cast<Index>(std::llround(1.0 * config.rate));
  const long max_attempts = 1000 * count;
  long attempts = 0;
  long placed = 0;
  while (placed < count) {
    if (++attempts > max_attempts) {
      throw ConfigError("build_corpus: cannot place artefacts without overlap");
    }
    ArtefactSpec spec;
    spec.kind = static_cast<ArtefactKind>(kind_dist(rng));
    spec.duration = static_cast<Index>(std::llround(dur_dist(rng) * config.rate));
    spec.severity = sev_dist(rng);
    const Index max_start = n - edge - spec.duration;
    if (max_start <= edge) continue;  // this draw does not fit; retry
    std::uniform_int_distribution<Index> start_dist(edge, max_start);
    spec.start = start_dist(rng);

    // keep a one-second buffer between artefacts so labels stay unambiguous
    const Index lo = std::max<Index>(0, spec.start - gap);
    const Index hi = std::min<Index>(n, spec.start + spec.duration + gap);
    bool clear = true;
    for (Index i = lo; i < hi && clear; ++i) clear = !corpus.truth.flags[i];
    if (!clear) continue;

    inject_artefact(corpus.corrupted, corpus.truth, spec, mix_seed(seed, 100 + placed));
    ++placed;
  }
  return corpus;
}

}  // namespace deepclean
