#include "btn/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "btn/bench.hpp"
#include "btn/codebook.hpp"
#include "btn/container.hpp"
#include "btn/error.hpp"
#include "btn/io.hpp"
#include "btn/numeral.hpp"

namespace btn::cli {
namespace {

struct IntRange {
  unsigned lo = 0;
  unsigned hi = 0;
};

// "3..8" or "5"
IntRange parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const auto v = static_cast<unsigned>(std::stoul(text));
      return {v, v};
    }
    IntRange r{static_cast<unsigned>(std::stoul(text.substr(0, dots))),
               static_cast<unsigned>(std::stoul(text.substr(dots + 2)))};
    if (r.lo > r.hi) {
      throw std::invalid_argument("empty range");
    }
    return r;
  } catch (const std::exception&) {
    throw CLI::ValidationError("range", "expected N or LO..HI, got '" + text + "'");
  }
}

std::string fixed(double v, int decimals) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(decimals) << v;
  return s.str();
}

std::string hex_letter(codec::Letter letter, unsigned letter_bits) {
  std::ostringstream s;
  s << "0x" << std::hex << std::setw(static_cast<int>((letter_bits + 3) / 4)) << std::setfill('0')
    << letter;
  return s.str();
}

void run_inspect(const std::string& path, std::ostream& out) {
  const auto bytes = io::read_file(path);
  const auto layout = container::read_layout(bytes);
  const auto& h = layout.header;
  out << "file:            " << path << " (" << bytes.size() << " bytes)\n"
      << "version:         " << h.version << '\n'
      << "flags:           0x" << std::hex << h.flags << std::dec
      << ((h.flags & container::kFlagAlphabetCompressed) ? " (alphabet compressed)" : "") << '\n'
      << "letter bits (L): " << h.letter_bits << '\n'
      << "original bits:   " << h.original_bit_length << " (" << h.original_bit_length / 8
      << " bytes)\n"
      << "letters:         " << layout.letter_count << '\n'
      << "alphabet (m):    " << layout.m << '\n';
  if (layout.code_set > 0) {
    out << "code set (n):    " << layout.code_set << '\n';
  } else if (layout.m > 0) {
    out << "code set (n):    degenerate (codes 0 and 1)\n";
  }
  out << "alphabet block:  offset " << layout.alphabet_offset << ", " << layout.alphabet_bytes
      << " bytes\n";
  if (!layout.alphabet.empty()) {
    out << "alphabet preview:";
    const std::size_t shown = std::min<std::size_t>(layout.alphabet.size(), 16);
    for (std::size_t i = 0; i < shown; ++i) {
      out << ' ' << hex_letter(layout.alphabet[i], h.letter_bits);
    }
    if (shown < layout.alphabet.size()) {
      out << " ...";
    }
    out << '\n';
  }
  const std::uint64_t bits = container::payload_bits(bytes);
  out << "payload:         offset " << layout.payload_offset << ", " << layout.payload_bytes
      << " bytes, " << bits << " bits\n"
      << "padding bits:    " << (std::uint64_t{layout.payload_bytes} * 8 - bits) << '\n';
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Binary-ternary prefix-code compressor", "btn"};
  app.require_subcommand(1);

  // compress
  auto* compress = app.add_subcommand("compress", "Compress a file into a .btn container");
  std::string in_path;
  std::string out_path;
  unsigned letter_bits = 8;
  bool compress_alphabet = false;
  compress->add_option("input", in_path, "Input file")->required();
  compress->add_option("output", out_path, "Output container")->required();
  compress->add_option("--bits,-L", letter_bits, "Letter width in bits")
      ->check(CLI::Range(1u, 32u));
  compress->add_flag("--compress-alphabet", compress_alphabet,
                     "Store the alphabet compressed when that is smaller");

  // decompress
  auto* decompress = app.add_subcommand("decompress", "Restore a file from a .btn container");
  decompress->add_option("input", in_path, "Input container")->required();
  decompress->add_option("output", out_path, "Output file")->required();

  // inspect
  auto* inspect = app.add_subcommand("inspect", "Describe the structure of a container");
  inspect->add_option("path", in_path, "Container")->required();

  // codebook
  auto* book = app.add_subcommand("codebook", "List the codewords of a code set");
  int set_number = 0;
  std::uint64_t limit = 0;
  book->add_option("--set,-n", set_number, "Code set number")
      ->required()
      ->check(CLI::Range(1, codebook::kMaxSet));
  book->add_option("--limit,-m", limit, "Number of codewords (default: whole set)");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark a corpus directory");
  std::string corpus_dir;
  std::vector<unsigned> widths{8, 16};
  std::vector<unsigned> recompress_widths;
  std::vector<std::string> files;
  std::string report_format = "text";
  unsigned jobs = 1;
  bench_cmd->add_option("dir", corpus_dir, "Corpus directory")->required();
  bench_cmd->add_option("--bits,-L", widths, "Letter widths")
      ->delimiter(',')
      ->check(CLI::Range(1u, 32u));
  bench_cmd->add_option("--recompress", recompress_widths,
                        "Recompress the first-width output at these widths")
      ->delimiter(',')
      ->check(CLI::Range(1u, 32u));
  bench_cmd->add_option("--files", files, "File names (default: Canterbury corpus)")
      ->delimiter(',');
  bench_cmd->add_option("--report", report_format, "Report format")
      ->check(CLI::IsMember({"csv", "text"}));
  bench_cmd->add_option("--jobs,-j", jobs, "Parallel workers")->check(CLI::Range(1u, 256u));
  bench_cmd->add_flag("--compress-alphabet", compress_alphabet, "Compress alphabets");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Analysis tables");
  analyze->require_subcommand(1);
  auto* compactness = analyze->add_subcommand("compactness", "Compactness table as CSV");
  std::string bases_text = "3..8";
  std::string digits_text = "2..12";
  compactness->add_option("--bases", bases_text, "Bases, LO..HI");
  compactness->add_option("--digits", digits_text, "Digit counts, LO..HI");
  auto* minimum = analyze->add_subcommand("minimum", "Minimum of the relaxed estimate");
  auto* redundancy = analyze->add_subcommand("redundancy", "Redundancy on incompressible data");
  unsigned max_bits = 20;
  unsigned min_bits = 3;
  redundancy->add_option("--max-bits", max_bits, "Largest letter width")
      ->check(CLI::Range(1u, 32u));
  redundancy->add_option("--min-bits", min_bits, "Smallest letter width")
      ->check(CLI::Range(1u, 32u));
  redundancy->add_option("--report", report_format, "Report format")
      ->check(CLI::IsMember({"csv", "text"}));

  // tabular
  auto* tabular = app.add_subcommand("tabular", "Tabular and economical forms of a number");
  std::uint64_t number = 0;
  unsigned base = 0;
  tabular->add_option("number", number, "Natural number")->required()->check(CLI::PositiveNumber);
  tabular->add_option("base", base, "Base")->required()->check(CLI::Range(2u, 64u));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*compress) {
      const auto data = io::read_file(in_path);
      const auto packed = container::compress(data, letter_bits, {compress_alphabet});
      io::write_file(out_path, packed);
      out << in_path << " -> " << out_path << ": " << data.size() << " -> " << packed.size()
          << " bytes, " << fixed(bench::bits_per_byte(packed.size(), data.size()), 4)
          << " bit/byte, " << fixed(bench::percent(packed.size(), data.size()), 2) << "%\n";
    } else if (*decompress) {
      const auto packed = io::read_file(in_path);
      const auto data = container::decompress(packed);
      io::write_file(out_path, data);
      out << in_path << " -> " << out_path << ": " << data.size() << " bytes\n";
    } else if (*inspect) {
      run_inspect(in_path, out);
    } else if (*book) {
      const std::uint64_t count = limit == 0 ? codebook::pow3(set_number) : limit;
      for (const auto& cw : codebook::generate_codes(set_number, count)) {
        out << cw.index << ' ' << codebook::trits_to_string(cw.trits) << ' ' << cw.bits << ' '
            << cw.bits.size() << '\n';
      }
    } else if (*bench_cmd) {
      bench::Options options;
      options.files = files;
      options.compress_alphabet = compress_alphabet;
      options.jobs = jobs;
      bool ok = true;
      if (!recompress_widths.empty()) {
        const auto report =
            bench::run_recompress(corpus_dir, widths.front(), recompress_widths, options);
        report_format == "csv" ? bench::write_csv(out, report) : bench::write_text(out, report);
        for (const auto& e : report.errors) {
          err << "error: " << e << '\n';
        }
        ok = report.ok();
      } else {
        const auto report = bench::run_corpus(corpus_dir, widths, options);
        report_format == "csv" ? bench::write_csv(out, report) : bench::write_text(out, report);
        for (const auto& e : report.errors) {
          err << "error: " << e << '\n';
        }
        ok = report.ok();
      }
      return ok ? kOk : kRoundTripFailure;
    } else if (*compactness) {
      const auto bases = parse_range(bases_text);
      const auto digits = parse_range(digits_text);
      if (bases.lo < 3 || digits.lo < 1) {
        throw std::invalid_argument("bases start at 3 and digit counts at 1");
      }
      out << "b,c_b,c_2,l_bar,e_bar\n";
      for (unsigned b = bases.lo; b <= bases.hi; ++b) {
        for (unsigned c = digits.lo; c <= digits.hi; ++c) {
          const auto p = numeral::compactness(b, c);
          out << b << ',' << c << ',' << p.c_2 << ',' << fixed(p.l_bar, 4) << ','
              << fixed(p.e_bar, 3) << '\n';
        }
      }
    } else if (*minimum) {
      const auto m = numeral::continuous_minimum();
      out << "b_star " << fixed(m.base, 4) << "\ne_star " << fixed(m.value, 4) << '\n';
    } else if (*redundancy) {
      if (min_bits > max_bits) {
        throw std::invalid_argument("--min-bits exceeds --max-bits");
      }
      const auto rows = bench::redundancy_table(max_bits, min_bits);
      report_format == "csv" ? bench::write_csv(out, rows) : bench::write_text(out, rows);
    } else if (*tabular) {
      const auto form = numeral::tabular_form(number, base);
      out << number << " in base " << base << ", " << form.columns() << " columns, dominant digit "
          << numeral::dominant_row(form) << "\n\ntabular form:\n"
          << numeral::render_tabular(form) << "\nreduced form:\n"
          << numeral::render_reduced(form);
      if (base >= 3) {
        out << "\neconomical form:\n" << numeral::render_economical(numeral::economical_encode(number, base));
      }
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kFormat;
  } catch (const CorruptionError& e) {
    err << "corrupt data: " << e.what() << '\n';
    return kCorruption;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

}  // namespace btn::cli
