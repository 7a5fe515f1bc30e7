#pragma once

// Corpus benchmarking and the analysis tables built on the code sets.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace btn::bench {

// The eleven files of the Canterbury corpus.
inline constexpr std::array<std::string_view, 11> kCanterburyFiles{
    "alice29.txt", "asyoulik.txt", "cp.html",      "fields.c", "grammar.lsp", "kennedy.xls",
    "lcet10.txt",  "plrabn12.txt", "ptt5",         "sum",      "xargs.1",
};

struct FileReport {
  std::string name;
  std::uint64_t original_bytes = 0;
  unsigned letter_bits = 0;
  std::uint64_t compressed_bytes = 0;
  std::uint64_t alphabet_bytes = 0;
  double bits_per_byte = 0;
  double percent = 0;
  double encode_ms = 0;
  double decode_ms = 0;
  bool roundtrip_ok = false;
  std::optional<double> price_of_economy;  // ms per freed byte
};

struct Options {
  std::vector<std::string> files;  // empty: the Canterbury list
  bool compress_alphabet = false;
  unsigned jobs = 1;
};

struct CorpusReport {
  std::vector<FileReport> rows;    // file-major, then letter width
  std::vector<FileReport> totals;  // one per letter width, name "TOTAL"
  std::vector<std::string> errors;

  bool ok() const;
};

double bits_per_byte(std::uint64_t compressed, std::uint64_t original);
double percent(std::uint64_t compressed, std::uint64_t original);

// time / (original - compressed); nullopt when nothing was freed.
std::optional<double> price_of_economy(double time_ms, std::uint64_t original_bytes,
                                       std::uint64_t compressed_bytes);

// (price_hi / price_lo - 1) * 100.
std::optional<double> price_change_percent(std::optional<double> price_hi,
                                           std::optional<double> price_lo);

// Compresses, decompresses and verifies one buffer.
FileReport measure(std::string name, std::span<const std::uint8_t> data, unsigned letter_bits,
                   bool compress_alphabet = false);

CorpusReport run_corpus(const std::filesystem::path& dir, const std::vector<unsigned>& widths,
                        const Options& options = {});

struct RecompressRow {
  std::string name;
  std::uint64_t original_bytes = 0;
  std::uint64_t first_bytes = 0;
  std::vector<std::uint64_t> second_bytes;  // one per second width
  bool roundtrip_ok = false;
};

struct RecompressReport {
  unsigned first_bits = 0;
  std::vector<unsigned> second_bits;
  std::vector<RecompressRow> rows;
  RecompressRow totals;
  std::vector<std::string> errors;

  bool ok() const;
};

RecompressReport run_recompress(const std::filesystem::path& dir, unsigned first_bits,
                                const std::vector<unsigned>& second_bits,
                                const Options& options = {});

struct RedundancyRow {
  unsigned letter_bits = 0;
  std::uint64_t m = 0;
  int min_len = 0;
  int max_len = 0;
  double redundancy_pct = 0;
  std::uint64_t total_len = 0;  // sum of the first m code lengths
};

// Equiprobable letters of width L: mean length of the first 2^L codes over L,
// from group sums alone.
RedundancyRow redundancy_row(unsigned letter_bits);
std::vector<RedundancyRow> redundancy_table(unsigned max_bits, unsigned min_bits = 3);

// CSV columns: file, original_bytes, L, compressed_bytes, alphabet_bytes,
// bits_per_byte, percent, encode_ms, decode_ms, price_of_economy
void write_csv(std::ostream& out, const CorpusReport& report);
void write_text(std::ostream& out, const CorpusReport& report);
void write_csv(std::ostream& out, const RecompressReport& report);
void write_text(std::ostream& out, const RecompressReport& report);
void write_csv(std::ostream& out, const std::vector<RedundancyRow>& rows);
void write_text(std::ostream& out, const std::vector<RedundancyRow>& rows);

}  // namespace btn::bench
