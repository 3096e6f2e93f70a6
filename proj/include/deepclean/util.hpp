#pragma once

#include "deepclean/types.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace deepclean {

using Rng = std::mt19937_64;

// splitmix64 step; used to derive independent stream seeds from a base seed
// so that per-sample noise does not depend on execution order.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt);

// Shortest round-trip decimal rendering of a double (via std::to_chars).
std::string format_double(double v);

std::string sha256_hex(const void* data, std::size_t size);
std::string sha256_hex(const std::string& s);
std::string sha256_file_hex(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Flat `key = value` config text with '#' comments.
std::map<std::string, std::string> parse_key_values(const std::string& text);

struct KeyValueReader {
  explicit KeyValueReader(std::map<std::string, std::string> kv) : kv(std::move(kv)) {}
  double get_real(const std::string& key, double fallback) const;
  long get_int(const std::string& key, long fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  bool has(const std::string& key) const { return kv.count(key) > 0; }
  std::map<std::string, std::string> kv;
};

// Nearest-rank percentile: the ceil(p/100 * n)-th order statistic. Sorts a
// copy of the input.
double percentile_nearest_rank(std::vector<double> values, double p);

// Runs fn(i) for i in [0, n) across `threads` workers on contiguous chunks.
// fn must be safe to call concurrently for distinct i.
void parallel_for(Index n, int threads, const std::function<void(Index)>& fn);

// Fixed-order pairwise tree sum; result is independent of how the terms were
// produced, so batch reductions are bit-stable for any worker count.
template <typename T, typename Plus>
T pairwise_reduce(std::vector<T>& items, Plus plus) {
  if (items.empty()) throw ShapeError("pairwise_reduce: empty input");
  std::size_t n = items.size();
  while (n > 1) {
    std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) {
      items[i] = plus(std::move(items[2 * i]), std::move(items[2 * i + 1]));
    }
    if (n % 2 == 1) items[half] = std::move(items[n - 1]);
    n = half + n % 2;
  }
  return std::move(items[0]);
}

}  // namespace deepclean
