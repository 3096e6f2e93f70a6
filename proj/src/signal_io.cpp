#include "deepclean/signal_io.hpp"

#include "deepclean/util.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace deepclean {

namespace {

struct SourceRow {
  double time;
  double value;
  bool missing;
  bool segment_start;
};

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& token, long lineno, const char* what) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(std::string("bad ") + what + " '" + token + "'", lineno);
  }
  return v;
}

}  // namespace

WaveformRecord parse_waveform(std::istream& in, double expected_rate, double gap_factor) {
  if (!(expected_rate > 0)) throw ConfigError("expected_rate must be > 0");
  if (!(gap_factor > 1)) throw ConfigError("gap_factor must be > 1");

  std::vector<SourceRow> rows;
  std::string line;
  long lineno = 0;
  bool pending_segment = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      if (t.find("segment") != std::string::npos) pending_segment = true;
      continue;
    }
    if (t == "time_s,value") continue;  // column header
    std::size_t comma = t.find(',');
    if (comma == std::string::npos) throw ParseError("expected 'time,value'", lineno);
    std::string tstr = trim(t.substr(0, comma));
    std::string vstr = trim(t.substr(comma + 1));
    if (vstr.find(',') != std::string::npos) throw ParseError("too many fields", lineno);
    SourceRow row;
    row.time = parse_number(tstr, lineno, "timestamp");
    row.missing = vstr.empty();
    row.value = row.missing ? std::numeric_limits<double>::quiet_NaN()
                            : parse_number(vstr, lineno, "value");
    row.segment_start = pending_segment;
    pending_segment = false;
    if (!rows.empty() && !(row.time > rows.back().time)) {
      throw DataError("non-monotone timestamps at line " + std::to_string(lineno));
    }
    rows.push_back(row);
  }

  WaveformRecord record;
  record.sampling_rate = expected_rate;
  if (rows.empty()) {
    record.values = Vector();
    record.missing = BoolArray();
    return record;
  }

  const double t0 = rows.front().time;
  const double period = 1.0 / expected_rate;
  const Index length = static_cast<Index>(std::llround((rows.back().time - t0) * expected_rate)) + 1;
  record.values = Vector::Zero(length);
  record.missing = BoolArray::Constant(length, true);

  // Nearest-timestamp assignment: each grid point takes the closest row
  // within half a sample period, earlier row on an exact tie.
  std::size_t next = 0;
  for (Index i = 0; i < length; ++i) {
    const double g = t0 + static_cast<double>(i) * period;
    while (next + 1 < rows.size() &&
           std::abs(rows[next + 1].time - g) < std::abs(rows[next].time - g)) {
      ++next;
    }
    if (std::abs(rows[next].time - g) <= period / 2 + 1e-12) {
      record.missing[i] = rows[next].missing;
      record.values[i] = rows[next].missing ? 0.0 : rows[next].value;
    }
  }

  // Segment boundaries: explicit markers plus inferred gaps between
  // consecutive source rows.
  std::vector<Index> starts = {0};
  const double gap_threshold = gap_factor / expected_rate;
  std::size_t row_index = 0;
  double prev_time = rows.front().time;
  for (const SourceRow& row : rows) {
    bool boundary = row.segment_start && row_index > 0;
    if (row_index > 0 && row.time - prev_time > gap_threshold) boundary = true;
    if (boundary) {
      starts.push_back(static_cast<Index>(std::llround((row.time - t0) * expected_rate)));
    }
    prev_time = row.time;
    ++row_index;
  }
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
  record.segment_starts = std::move(starts);
  record.validate();
  return record;
}

void write_waveform(const WaveformRecord& record, std::ostream& out) {
  record.validate();
  out << "# deepclean waveform v1\n";
  out << "# rate=" << format_double(record.sampling_rate) << "\n";
  out << "time_s,value\n";
  const double period = 1.0 / record.sampling_rate;
  std::size_t seg = 1;  // segment_starts[0] == 0 is implicit
  for (Index i = 0; i < record.size(); ++i) {
    if (seg < record.segment_starts.size() && record.segment_starts[seg] == i) {
      out << "# segment\n";
      ++seg;
    }
    out << format_double(static_cast<double>(i) * period) << ',';
    if (!record.missing[i]) out << format_double(record.values[i]);
    out << '\n';
  }
}

void write_waveform_csv(const WaveformRecord& record, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_waveform(record, out);
  if (!out.good()) throw IoError("write failed for " + path.string());
}

WaveformRecord read_waveform_csv(const std::filesystem::path& path, double default_rate,
                                 double gap_factor) {
  std::string text = read_text_file(path);
  double rate = default_rate;
  std::istringstream scan(text);
  std::string line;
  while (std::getline(scan, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] != '#') {
      if (!t.empty()) break;
      continue;
    }
    std::size_t pos = t.find("rate=");
    if (pos != std::string::npos) {
      rate = parse_number(trim(t.substr(pos + 5)), 0, "rate");
      break;
    }
  }
  std::istringstream in(text);
  return parse_waveform(in, rate, gap_factor);
}

namespace {

template <typename T>
void put_le(std::string& buf, T v) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  buf.append(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(const std::string& buf, std::size_t& off) {
  if (off + sizeof(T) > buf.size()) throw DataError("binary waveform: truncated file");
  T v;
  std::memcpy(&v, buf.data() + off, sizeof(T));
  off += sizeof(T);
  return v;
}

constexpr char kBinaryMagic[4] = {'D', 'C', 'W', '1'};

}  // namespace

void write_waveform_binary(const WaveformRecord& record, const std::filesystem::path& path) {
  record.validate();
  std::string buf;
  buf.append(kBinaryMagic, 4);
  put_le<std::uint16_t>(buf, 1);  // version
  put_le<std::uint16_t>(buf, 0);
  put_le<float>(buf, static_cast<float>(record.sampling_rate));
  put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(record.size()));
  put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(record.segment_starts.size()));
  for (Index s : record.segment_starts) put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(s));
  for (Index i = 0; i < record.size(); ++i) {
    float v = record.missing[i] ? std::numeric_limits<float>::quiet_NaN()
                                : static_cast<float>(record.values[i]);
    put_le<float>(buf, v);
  }
  write_text_file(path, buf);
}

WaveformRecord read_waveform_binary(const std::filesystem::path& path) {
  std::string buf = read_text_file(path);
  std::size_t off = 0;
  if (buf.size() < 16 || std::memcmp(buf.data(), kBinaryMagic, 4) != 0) {
    throw DataError("binary waveform: bad magic");
  }
  off = 4;
  auto version = get_le<std::uint16_t>(buf, off);
  if (version != 1) throw DataError("binary waveform: unsupported version");
  get_le<std::uint16_t>(buf, off);
  float rate = get_le<float>(buf, off);
  auto length = get_le<std::uint32_t>(buf, off);
  auto nseg = get_le<std::uint32_t>(buf, off);
  WaveformRecord record;
  record.sampling_rate = rate;
  record.segment_starts.reserve(nseg);
  for (std::uint32_t i = 0; i < nseg; ++i) {
    record.segment_starts.push_back(get_le<std::uint32_t>(buf, off));
  }
  record.values = Vector::Zero(length);
  record.missing = BoolArray::Constant(length, false);
  for (std::uint32_t i = 0; i < length; ++i) {
    float v = get_le<float>(buf, off);
    if (std::isnan(v)) {
      record.missing[i] = true;
    } else {
      record.values[i] = v;
    }
  }
  record.validate();
  return record;
}

void write_mask(const MarkMask& mask, std::ostream& out) {
  out << "length=" << mask.size() << "\n";
  for (const Region& r : mask.regions()) out << r.begin << ',' << r.end << "\n";
}

void write_mask_csv(const MarkMask& mask, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_mask(mask, out);
  if (!out.good()) throw IoError("write failed for " + path.string());
}

MarkMask parse_mask(std::istream& in) {
  std::string line;
  long lineno = 0;
  Index length = -1;
  std::vector<Region> regions;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (length < 0) {
      if (t.rfind("length=", 0) != 0) throw ParseError("expected 'length=<N>' header", lineno);
      length = static_cast<Index>(parse_number(t.substr(7), lineno, "length"));
      continue;
    }
    std::size_t comma = t.find(',');
    if (comma == std::string::npos) throw ParseError("expected 'start,end'", lineno);
    Region r;
    r.begin = static_cast<Index>(parse_number(trim(t.substr(0, comma)), lineno, "start"));
    r.end = static_cast<Index>(parse_number(trim(t.substr(comma + 1)), lineno, "end"));
    regions.push_back(r);
  }
  if (length < 0) throw DataError("mask file: missing length header");
  return mask_from_regions(regions, length);
}

MarkMask read_mask_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_mask(in);
}

}  // namespace deepclean
