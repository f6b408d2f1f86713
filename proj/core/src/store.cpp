#include "slp/store.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "slp/error.hpp"

namespace slp {

namespace {

void put_u32le(std::uint32_t v, std::ostream& os) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 4);
}

void put_u64le(std::uint64_t v, std::ostream& os) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 8);
}

std::uint32_t get_u32le(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  if (!is) throw CorruptFileError("truncated frontier header");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint64_t get_u64le(std::istream& is) {
  std::uint64_t v = get_u32le(is);
  return v | (static_cast<std::uint64_t>(get_u32le(is)) << 32);
}

}  // namespace

std::filesystem::path frontier_path(const std::filesystem::path& dir, int k) {
  return dir / ("frontier_" + std::to_string(k) + ".slpf");
}

void write_frontier(const Frontier& frontier, const std::filesystem::path& path) {
  if (frontier.length >= 255) {
    throw IndexOverflowError("frontier length " + std::to_string(frontier.length) +
                             " exceeds the one-byte index format");
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw CorruptFileError("cannot open '" + path.string() + "' for writing");
  os.write(kFrontierMagic, sizeof(kFrontierMagic));
  put_u32le(kFrontierFormatVersion, os);
  put_u32le(static_cast<std::uint32_t>(frontier.length), os);
  put_u64le(frontier.count(), os);
  put_u32le(kDigestWidthBits, os);
  os.write(reinterpret_cast<const char*>(frontier.blob.data()),
           static_cast<std::streamsize>(frontier.blob.size()));
  if (!os) throw CorruptFileError("write failed for '" + path.string() + "'");
}

Frontier read_frontier(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw CorruptFileError("cannot open '" + path.string() + "'");
  char magic[sizeof(kFrontierMagic)];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kFrontierMagic, sizeof(magic)) != 0) {
    throw CorruptFileError("bad magic in '" + path.string() + "'");
  }
  const std::uint32_t version = get_u32le(is);
  if (version != kFrontierFormatVersion) {
    throw CorruptFileError("unsupported frontier format version " + std::to_string(version));
  }
  const std::uint32_t k = get_u32le(is);
  if (k >= 255) throw CorruptFileError("frontier length out of range");
  const std::uint64_t count = get_u64le(is);
  const std::uint32_t digest_width = get_u32le(is);
  if (digest_width != kDigestWidthBits) {
    throw CorruptFileError("unexpected digest width " + std::to_string(digest_width));
  }
  Frontier frontier;
  frontier.length = static_cast<int>(k);
  const std::uint64_t body = count * 3 * k;
  frontier.blob.resize(body);
  is.read(reinterpret_cast<char*>(frontier.blob.data()), static_cast<std::streamsize>(body));
  if (static_cast<std::uint64_t>(is.gcount()) != body) {
    throw CorruptFileError("truncated frontier body in '" + path.string() + "'");
  }
  is.peek();
  if (!is.eof()) throw CorruptFileError("trailing bytes in '" + path.string() + "'");
  if (k == 0 && count != 1) {
    throw CorruptFileError("length-0 frontier must hold exactly the empty program");
  }
  return frontier;
}

namespace {

std::string escape_field(const std::string& s) {
  // fields are tab-separated; the only characters needing care
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\\': out += "\\\\"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out(1);
  bool esc = false;
  for (char c : line) {
    if (esc) {
      out.back() += c == 't' ? '\t' : (c == 'n' ? '\n' : c);
      esc = false;
    } else if (c == '\\') {
      esc = true;
    } else if (c == '\t') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

}  // namespace

void append_result(const ResultRecord& record, const std::filesystem::path& ledger) {
  std::ofstream os(ledger, std::ios::app);
  if (!os) throw CorruptFileError("cannot open ledger '" + ledger.string() + "'");
  os << escape_field(record.description) << '\t' << record.n << '\t'
     << target_mode_name(record.mode) << '\t'
     << (record.best_length ? std::to_string(*record.best_length) : "-") << '\t'
     << record.lower_bound << '\t' << (record.optimal ? '1' : '0') << '\t'
     << (record.exemplar.empty() ? "-" : escape_field(record.exemplar)) << '\t'
     << escape_field(record.timestamp) << '\t' << record.max_length << '\t'
     << record.handoff << '\n';
  if (!os) throw CorruptFileError("append failed for '" + ledger.string() + "'");
}

std::vector<ResultRecord> load_ledger(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw CorruptFileError("cannot open ledger '" + path.string() + "'");
  std::vector<ResultRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 10) {
      throw CorruptLedgerError("expected 10 tab-separated fields, got " +
                                   std::to_string(fields.size()),
                               lineno);
    }
    ResultRecord r;
    try {
      r.description = fields[0];
      r.n = parse_decimal(fields[1]);
      r.mode = parse_target_mode(fields[2]);
      if (fields[3] != "-") r.best_length = std::stoi(fields[3]);
      r.lower_bound = std::stoi(fields[4]);
      if (fields[5] != "0" && fields[5] != "1") throw InvalidInputError("bad flag");
      r.optimal = fields[5] == "1";
      r.exemplar = fields[6] == "-" ? std::string() : fields[6];
      r.timestamp = fields[7];
      r.max_length = std::stoi(fields[8]);
      r.handoff = std::stoi(fields[9]);
    } catch (const std::exception& e) {
      throw CorruptLedgerError(std::string("malformed record: ") + e.what(), lineno);
    }
    out.push_back(std::move(r));
  }
  return out;
}

bool verify_record(const ResultRecord& record) {
  if (record.exemplar.empty()) return !record.best_length.has_value();
  if (!record.best_length) return false;
  try {
    const Program program = parse_program(record.exemplar);
    if (program.length() != *record.best_length) return false;
    const Evaluation ev = evaluate(program);
    return is_normalized(ev) && computes_target(ev, record.n, record.mode);
  } catch (const Error&) {
    return false;
  }
}

std::string render_results_table(std::span<const ResultRecord> records) {
  std::ostringstream os;
  for (const ResultRecord& r : records) {
    // strip a leading kind word from "factorial 11"-style descriptions
    std::string label = r.description;
    if (const auto sp = label.rfind(' '); sp != std::string::npos) {
      label = label.substr(sp + 1);
    }
    os << label << " | ";
    if (r.best_length) {
      os << *r.best_length;
    } else {
      os << '-';
    }
    os << " | " << (r.exemplar.empty() ? "-" : r.exemplar) << " | ";
    if (r.optimal) {
      os << "Opt";
    } else {
      os << r.lower_bound;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace slp
