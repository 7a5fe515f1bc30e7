#include "btn/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "btn/codebook.hpp"
#include "btn/container.hpp"
#include "btn/error.hpp"
#include "btn/io.hpp"

namespace btn::bench {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<std::string> file_list(const Options& options) {
  if (!options.files.empty()) {
    return options.files;
  }
  return {kCanterburyFiles.begin(), kCanterburyFiles.end()};
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        fn(i);
      }
    });
  }
  for (auto& w : workers) {
    w.join();
  }
}

void fill_ratios(FileReport& r) {
  r.bits_per_byte = bits_per_byte(r.compressed_bytes, r.original_bytes);
  r.percent = percent(r.compressed_bytes, r.original_bytes);
  r.price_of_economy = price_of_economy(r.encode_ms, r.original_bytes, r.compressed_bytes);
}

std::string fixed(double v, int decimals) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(decimals) << v;
  return s.str();
}

std::string optional_fixed(const std::optional<double>& v, int decimals) {
  return v ? fixed(*v, decimals) : std::string();
}

}  // namespace

bool CorpusReport::ok() const {
  return errors.empty() &&
         std::all_of(rows.begin(), rows.end(), [](const FileReport& r) { return r.roundtrip_ok; });
}

bool RecompressReport::ok() const {
  return errors.empty() && std::all_of(rows.begin(), rows.end(),
                                       [](const RecompressRow& r) { return r.roundtrip_ok; });
}

double bits_per_byte(std::uint64_t compressed, std::uint64_t original) {
  return original == 0 ? 0.0 : static_cast<double>(compressed) / static_cast<double>(original) * 8.0;
}

double percent(std::uint64_t compressed, std::uint64_t original) {
  return original == 0 ? 0.0
                       : static_cast<double>(compressed) / static_cast<double>(original) * 100.0;
}

std::optional<double> price_of_economy(double time_ms, std::uint64_t original_bytes,
                                       std::uint64_t compressed_bytes) {
  if (original_bytes == compressed_bytes) {
    return std::nullopt;
  }
  const double freed =
      static_cast<double>(original_bytes) - static_cast<double>(compressed_bytes);
  return time_ms / freed;
}

std::optional<double> price_change_percent(std::optional<double> price_hi,
                                           std::optional<double> price_lo) {
  if (!price_hi || !price_lo || *price_lo == 0.0) {
    return std::nullopt;
  }
  return (*price_hi / *price_lo - 1.0) * 100.0;
}

FileReport measure(std::string name, std::span<const std::uint8_t> data, unsigned letter_bits,
                   bool compress_alphabet) {
  FileReport r;
  r.name = std::move(name);
  r.original_bytes = data.size();
  r.letter_bits = letter_bits;

  auto start = Clock::now();
  const auto packed = container::compress(data, letter_bits, {compress_alphabet});
  r.encode_ms = elapsed_ms(start);
  r.compressed_bytes = packed.size();
  r.alphabet_bytes = container::read_layout(packed).alphabet_bytes;

  start = Clock::now();
  try {
    const auto restored = container::decompress(packed);
    r.decode_ms = elapsed_ms(start);
    r.roundtrip_ok = std::equal(restored.begin(), restored.end(), data.begin(), data.end());
  } catch (const Error&) {
    r.decode_ms = elapsed_ms(start);
    r.roundtrip_ok = false;
  }
  fill_ratios(r);
  return r;
}

CorpusReport run_corpus(const std::filesystem::path& dir, const std::vector<unsigned>& widths,
                        const Options& options) {
  const auto files = file_list(options);
  CorpusReport report;
  std::vector<std::vector<std::uint8_t>> contents(files.size());
  std::vector<bool> loaded(files.size(), false);
  for (std::size_t f = 0; f < files.size(); ++f) {
    try {
      contents[f] = io::read_file(dir / files[f]);
      loaded[f] = true;
    } catch (const IoError& e) {
      report.errors.push_back(files[f] + ": " + e.what());
    }
  }

  struct Task {
    std::size_t file;
    unsigned bits;
  };
  std::vector<Task> tasks;
  for (std::size_t f = 0; f < files.size(); ++f) {
    if (loaded[f]) {
      for (unsigned bits : widths) {
        tasks.push_back(Task{f, bits});
      }
    }
  }
  std::vector<FileReport> rows(tasks.size());
  parallel_for(tasks.size(), options.jobs, [&](std::size_t i) {
    rows[i] = measure(files[tasks[i].file], contents[tasks[i].file], tasks[i].bits,
                      options.compress_alphabet);
  });
  report.rows = std::move(rows);

  for (unsigned bits : widths) {
    FileReport total;
    total.name = "TOTAL";
    total.letter_bits = bits;
    total.roundtrip_ok = true;
    for (const auto& r : report.rows) {
      if (r.letter_bits != bits) {
        continue;
      }
      total.original_bytes += r.original_bytes;
      total.compressed_bytes += r.compressed_bytes;
      total.alphabet_bytes += r.alphabet_bytes;
      total.encode_ms += r.encode_ms;
      total.decode_ms += r.decode_ms;
      total.roundtrip_ok = total.roundtrip_ok && r.roundtrip_ok;
    }
    fill_ratios(total);
    report.totals.push_back(total);
  }
  return report;
}

RecompressReport run_recompress(const std::filesystem::path& dir, unsigned first_bits,
                                const std::vector<unsigned>& second_bits,
                                const Options& options) {
  const auto files = file_list(options);
  RecompressReport report;
  report.first_bits = first_bits;
  report.second_bits = second_bits;

  std::vector<std::optional<RecompressRow>> rows(files.size());
  std::vector<std::string> errors(files.size());
  parallel_for(files.size(), options.jobs, [&](std::size_t f) {
    std::vector<std::uint8_t> data;
    try {
      data = io::read_file(dir / files[f]);
    } catch (const IoError& e) {
      errors[f] = files[f] + ": " + e.what();
      return;
    }
    RecompressRow row;
    row.name = files[f];
    row.original_bytes = data.size();
    const auto first = container::compress(data, first_bits, {options.compress_alphabet});
    row.first_bytes = first.size();
    row.roundtrip_ok = true;
    for (unsigned bits : second_bits) {
      const auto second = container::recompress(first, bits, {options.compress_alphabet});
      row.second_bytes.push_back(second.size());
      try {
        const auto restored = container::decompress(container::decompress(second));
        row.roundtrip_ok = row.roundtrip_ok && restored == data;
      } catch (const Error&) {
        row.roundtrip_ok = false;
      }
    }
    rows[f] = std::move(row);
  });

  report.totals.name = "TOTAL";
  report.totals.second_bytes.assign(second_bits.size(), 0);
  report.totals.roundtrip_ok = true;
  for (std::size_t f = 0; f < files.size(); ++f) {
    if (!errors[f].empty()) {
      report.errors.push_back(errors[f]);
    }
    if (!rows[f]) {
      continue;
    }
    const auto& row = *rows[f];
    report.totals.original_bytes += row.original_bytes;
    report.totals.first_bytes += row.first_bytes;
    for (std::size_t k = 0; k < second_bits.size(); ++k) {
      report.totals.second_bytes[k] += row.second_bytes[k];
    }
    report.totals.roundtrip_ok = report.totals.roundtrip_ok && row.roundtrip_ok;
    report.rows.push_back(row);
  }
  return report;
}

RedundancyRow redundancy_row(unsigned letter_bits) {
  if (letter_bits < 1 || letter_bits > 32) {
    throw std::invalid_argument("letter width must be in 1..32");
  }
  RedundancyRow row;
  row.letter_bits = letter_bits;
  row.m = std::uint64_t{1} << letter_bits;
  const auto set = codebook::code_set_for_alphabet(row.m);
  if (std::holds_alternative<codebook::Degenerate>(set)) {
    row.min_len = row.max_len = 1;
    row.total_len = row.m;
  } else {
    const int n = std::get<codebook::CodeSet>(set).n;
    std::uint64_t left = row.m;
    row.min_len = codebook::group_params(n, n).length;
    for (int z = n; z >= 0 && left > 0; --z) {
      const auto g = codebook::group_params(n, z);
      const std::uint64_t take = std::min(left, g.size);
      row.total_len += take * static_cast<std::uint64_t>(g.length);
      row.max_len = g.length;
      left -= take;
    }
  }
  const double mean = static_cast<double>(row.total_len) / static_cast<double>(row.m);
  row.redundancy_pct = (mean / letter_bits - 1.0) * 100.0;
  return row;
}

std::vector<RedundancyRow> redundancy_table(unsigned max_bits, unsigned min_bits) {
  if (max_bits < 1 || max_bits > 32 || min_bits < 1) {
    throw std::invalid_argument("letter widths must be in 1..32");
  }
  std::vector<RedundancyRow> rows;
  for (unsigned bits = min_bits; bits <= max_bits; ++bits) {
    rows.push_back(redundancy_row(bits));
  }
  return rows;
}

void write_csv(std::ostream& out, const CorpusReport& report) {
  out << "file,original_bytes,L,compressed_bytes,alphabet_bytes,bits_per_byte,percent,"
         "encode_ms,decode_ms,price_of_economy\n";
  auto line = [&](const FileReport& r) {
    out << r.name << ',' << r.original_bytes << ',' << r.letter_bits << ',' << r.compressed_bytes
        << ',' << r.alphabet_bytes << ',' << fixed(r.bits_per_byte, 4) << ','
        << fixed(r.percent, 2) << ',' << fixed(r.encode_ms, 3) << ',' << fixed(r.decode_ms, 3)
        << ',' << optional_fixed(r.price_of_economy, 6) << '\n';
  };
  for (const auto& r : report.rows) {
    line(r);
  }
  for (const auto& r : report.totals) {
    line(r);
  }
}

void write_text(std::ostream& out, const CorpusReport& report) {
  out << std::left << std::setw(14) << "file" << std::right << std::setw(10) << "original"
      << std::setw(4) << "L" << std::setw(11) << "compressed" << std::setw(10) << "alphabet"
      << std::setw(9) << "bit/B" << std::setw(8) << "%" << std::setw(10) << "enc ms"
      << std::setw(10) << "dec ms" << std::setw(6) << "ok" << '\n';
  auto line = [&](const FileReport& r) {
    out << std::left << std::setw(14) << r.name << std::right << std::setw(10)
        << r.original_bytes << std::setw(4) << r.letter_bits << std::setw(11)
        << r.compressed_bytes << std::setw(10) << r.alphabet_bytes << std::setw(9)
        << fixed(r.bits_per_byte, 4) << std::setw(8) << fixed(r.percent, 2) << std::setw(10)
        << fixed(r.encode_ms, 1) << std::setw(10) << fixed(r.decode_ms, 1) << std::setw(6)
        << (r.roundtrip_ok ? "yes" : "NO") << '\n';
  };
  for (const auto& r : report.rows) {
    line(r);
  }
  for (const auto& r : report.totals) {
    line(r);
  }
  for (const auto& e : report.errors) {
    out << "error: " << e << '\n';
  }
}

void write_csv(std::ostream& out, const RecompressReport& report) {
  out << "file,original_bytes,L" << report.first_bits << "_bytes";
  for (unsigned bits : report.second_bits) {
    out << ",L" << bits << "_bytes";
  }
  out << '\n';
  auto line = [&](const RecompressRow& r) {
    out << r.name << ',' << r.original_bytes << ',' << r.first_bytes;
    for (auto b : r.second_bytes) {
      out << ',' << b;
    }
    out << '\n';
  };
  for (const auto& r : report.rows) {
    line(r);
  }
  line(report.totals);
}

void write_text(std::ostream& out, const RecompressReport& report) {
  out << std::left << std::setw(14) << "file" << std::right << std::setw(10) << "original"
      << std::setw(11) << ("L=" + std::to_string(report.first_bits));
  for (unsigned bits : report.second_bits) {
    out << std::setw(11) << ("+L=" + std::to_string(bits));
  }
  out << std::setw(6) << "ok" << '\n';
  auto line = [&](const RecompressRow& r) {
    out << std::left << std::setw(14) << r.name << std::right << std::setw(10)
        << r.original_bytes << std::setw(11) << r.first_bytes;
    for (auto b : r.second_bytes) {
      out << std::setw(11) << b;
    }
    out << std::setw(6) << (r.roundtrip_ok ? "yes" : "NO") << '\n';
  };
  for (const auto& r : report.rows) {
    line(r);
  }
  line(report.totals);
  for (const auto& e : report.errors) {
    out << "error: " << e << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<RedundancyRow>& rows) {
  out << "L,m,min_len,max_len,redundancy_pct\n";
  for (const auto& r : rows) {
    out << r.letter_bits << ',' << r.m << ',' << r.min_len << ',' << r.max_len << ','
        << fixed(r.redundancy_pct, 2) << '\n';
  }
}

void write_text(std::ostream& out, const std::vector<RedundancyRow>& rows) {
  out << std::setw(4) << "L" << std::setw(12) << "m" << std::setw(9) << "min len"
      << std::setw(9) << "max len" << std::setw(14) << "redundancy %" << '\n';
  for (const auto& r : rows) {
    out << std::setw(4) << r.letter_bits << std::setw(12) << r.m << std::setw(9) << r.min_len
        << std::setw(9) << r.max_len << std::setw(14) << fixed(r.redundancy_pct, 2) << '\n';
  }
}

}  // namespace btn::bench
