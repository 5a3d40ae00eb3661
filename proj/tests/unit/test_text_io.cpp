#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "fixtures.hpp"
#include "sparse_expand/error.hpp"
#include "sparse_expand/io.hpp"
#include "sparse_expand/parallel.hpp"
#include "sparse_expand/text.hpp"

namespace text = sparse_expand::text;
namespace io = sparse_expand::io;

TEST_CASE("utf8 round trip and replacement of invalid bytes") {
  const std::string s = "Stra\xc3\x9f" "e \xe2\x80\x99 \xf0\x9f\x8e\xac";
  CHECK(text::encode_utf8(text::decode_utf8(s)) == s);
  CHECK(text::decode_utf8("a\xff" "b") == std::u32string{U'a', 0xFFFD, U'b'});
  // Overlong encoding of '/'.
  CHECK(text::decode_utf8("\xc0\xaf") == std::u32string{0xFFFD, 0xFFFD});
  CHECK(text::decode_utf8("\xe2\x80") == std::u32string{0xFFFD, 0xFFFD});
}

TEST_CASE("lowercase covers Latin-1, Greek and Cyrillic") {
  CHECK(text::lowercase("MOBY Dick") == "moby dick");
  CHECK(text::lowercase("\xc3\x84\xc3\x96\xc3\x9c") == "\xc3\xa4\xc3\xb6\xc3\xbc");  // ÄÖÜ
  CHECK(text::lowercase("\xce\x97\xce\xa7") == "\xce\xb7\xcf\x87");                  // ΗΧ
  CHECK(text::lowercase("\xd0\x97\xd0\x92") == "\xd0\xb7\xd0\xb2");                  // ЗВ
}

TEST_CASE("whitespace helpers") {
  CHECK(text::trim("  a b \t\n") == "a b");
  CHECK(text::trim("   ").empty());
  CHECK(text::split_whitespace(" a  b\tc ") == std::vector<std::string>{"a", "b", "c"});
  CHECK(text::split_whitespace("").empty());
  CHECK(text::collapse_whitespace("  Herman   Melville ") == "Herman Melville");
  CHECK(text::fold_key(" Herman  MELVILLE") == "herman melville");
  CHECK(text::split("a\tb\t", '\t') == std::vector<std::string_view>{"a", "b", ""});
}

TEST_CASE("percent encoding of titles") {
  CHECK(text::percent_encode("Moby-Dick") == "Moby-Dick");
  CHECK(text::percent_encode("Herman Melville") == "Herman%20Melville");
  CHECK(text::percent_encode("a/b") == "a%2Fb");
  CHECK(text::percent_decode("Herman%20Melville") == "Herman Melville");
  CHECK(text::percent_decode("100%") == "100%");
  fixtures::Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    std::string s;
    for (std::size_t j = 0, n = rng.below(12); j < n; ++j) s.push_back(static_cast<char>(rng.below(256)));
    CHECK(text::percent_decode(text::percent_encode(s)) == s);
  }
}

TEST_CASE("double formatting round trips") {
  for (double v : {0.0, 1.0, 0.1, 1.0 / 3.0, 123456.789, 1e-300, 5e-324}) {
    CHECK(io::parse_double(io::format_double(v)) == v);
  }
  CHECK(io::format_double(0.5) == "0.5");
  CHECK_THROWS(io::parse_double("1.5x"));
  CHECK_THROWS(io::parse_double(""));
}

TEST_CASE("fnv1a reference values") {
  CHECK(io::fnv1a("") == 0xcbf29ce484222325ull);
  CHECK(io::fnv1a("a") == 0xaf63dc4c8601ec8cull);
  CHECK(io::fnv1a("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("atomic write replaces the file and leaves no temp file") {
  fixtures::TempDir dir;
  const auto p = dir / "out.txt";
  io::write_file_atomic(p, "first");
  io::write_file_atomic(p, "second");
  CHECK(io::read_file(p) == "second");
  CHECK_FALSE(std::filesystem::exists(p.string() + ".tmp"));
  CHECK_THROWS_AS(io::read_file(dir / "missing"), sparse_expand::DataError);
}

TEST_CASE("parallel_for visits every index once and rethrows") {
  std::vector<int> hits(1000, 0);
  sparse_expand::parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_AS(sparse_expand::parallel_for(10,
                                              [](std::size_t i) {
                                                if (i == 3) throw std::runtime_error("boom");
                                              }),
                  std::runtime_error);
  sparse_expand::parallel_for(0, [](std::size_t) { FAIL("called on empty range"); });
}
