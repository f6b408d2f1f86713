#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "slp/error.hpp"
#include "slp/frontier.hpp"
#include "slp/store.hpp"

using namespace slp;

namespace {

std::filesystem::path tmp_file(const char* name) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

Frontier level(int k) {
  Frontier f = initial_frontier();
  for (int i = 1; i <= k; ++i) f = expand(f);
  return f;
}

}  // namespace

TEST_CASE("frontier files round-trip bit-exactly") {
  const Frontier f1 = level(1);
  const auto path = tmp_file("slp_f1.slpf");
  write_frontier(f1, path);
  // header is 25 bytes; body is one program of one 3-byte step
  CHECK(std::filesystem::file_size(path) == 25 + 3);
  const Frontier back = read_frontier(path);
  CHECK(back.length == f1.length);
  CHECK(back.blob == f1.blob);

  const auto path2 = tmp_file("slp_f1b.slpf");
  write_frontier(f1, path2);
  CHECK(slurp(path) == slurp(path2));  // byte-identical across writes
}

TEST_CASE("level-0 and level-2 frontiers persist") {
  const auto p0 = tmp_file("slp_f0.slpf");
  write_frontier(initial_frontier(), p0);
  const Frontier f0 = read_frontier(p0);
  CHECK(f0.length == 0);
  CHECK(f0.count() == 1);
  CHECK(f0.program_at(0).length() == 0);

  const Frontier f2 = level(2);
  const auto p2 = tmp_file("slp_f2.slpf");
  write_frontier(f2, p2);
  CHECK(read_frontier(p2).blob == f2.blob);
  CHECK(read_frontier(p2).count() == 2);
}

TEST_CASE("corrupt frontier files are rejected") {
  const auto path = tmp_file("slp_bad.slpf");
  {
    std::ofstream os(path, std::ios::binary);
    os << "SLPX1junkjunkjunkjunkjunk";
  }
  CHECK_THROWS_AS(read_frontier(path), CorruptFileError);

  const Frontier f2 = level(2);
  const auto p2 = tmp_file("slp_trunc.slpf");
  write_frontier(f2, p2);
  const std::string full = slurp(p2);
  {
    std::ofstream os(p2, std::ios::binary | std::ios::trunc);
    os << full.substr(0, full.size() - 2);
  }
  CHECK_THROWS_AS(read_frontier(p2), CorruptFileError);

  CHECK_THROWS_AS(read_frontier(tmp_file("slp_missing.slpf")), CorruptFileError);
}

TEST_CASE("overlong programs cannot be stored") {
  Frontier f;
  f.length = 255;
  CHECK_THROWS_AS(write_frontier(f, tmp_file("slp_overflow.slpf")), IndexOverflowError);
}

TEST_CASE("ledger appends, loads and renders") {
  const auto path = tmp_file("slp_ledger.tsv");

  CHECK_THROWS_AS(load_ledger(tmp_file("slp_ledger_missing.tsv")), CorruptFileError);

  ResultRecord r;
  r.description = "factorial 3";
  r.n = 6;
  r.mode = TargetMode::exact;
  r.best_length = 3;
  r.lower_bound = 3;
  r.optimal = true;
  r.exemplar = "{1,1,+},{1,2,+},{2,3,*}";
  r.timestamp = "1970-01-01T00:00:00Z";
  r.max_length = 6;
  r.handoff = 0;
  append_result(r, path);

  ResultRecord r2 = r;
  r2.description = "factorial 7";
  r2.n = 5040;
  r2.mode = TargetMode::multiple;
  r2.best_length.reset();
  r2.exemplar.clear();
  r2.optimal = false;
  r2.lower_bound = 6;
  append_result(r2, path);

  const auto records = load_ledger(path);
  REQUIRE(records.size() == 2);
  CHECK(records[0] == r);
  CHECK(records[1] == r2);

  CHECK(verify_record(records[0]));
  CHECK(verify_record(records[1]));

  const std::string table = render_results_table(records);
  CHECK(table.find("3 | 3 | {1,1,+},{1,2,+},{2,3,*} | Opt") != std::string::npos);
  CHECK(table.find("7 | - | - | 6") != std::string::npos);
}

TEST_CASE("empty ledger loads as no records") {
  const auto path = tmp_file("slp_ledger_empty.tsv");
  std::ofstream(path).close();
  CHECK(load_ledger(path).empty());
}

TEST_CASE("malformed ledger lines carry the line number") {
  const auto path = tmp_file("slp_ledger_bad.tsv");
  {
    std::ofstream os(path);
    os << "factorial 3\t6\texact\t3\t3\t1\t{1,1,+},{1,2,+},{2,3,*}\tt\t6\t0\n";
    os << "broken line without fields\n";
  }
  try {
    load_ledger(path);
    FAIL("expected CorruptLedgerError");
  } catch (const CorruptLedgerError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("tampered exemplars fail re-verification") {
  ResultRecord r;
  r.description = "integer 9";
  r.n = 9;
  r.mode = TargetMode::exact;
  r.best_length = 2;
  r.lower_bound = 2;
  r.optimal = true;
  r.exemplar = "{1,1,+},{2,2,+}";  // computes 4, not 9
  CHECK_FALSE(verify_record(r));

  r.exemplar = "{1,1,+},{1,2,+},{3,3,*}";  // computes 9 but length 3 != 2
  CHECK_FALSE(verify_record(r));

  r.best_length = 3;
  CHECK(verify_record(r));
}
