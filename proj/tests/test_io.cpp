#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <splr/io.hpp>

#include "support/temp_files.hpp"

using Catch::Matchers::ContainsSubstring;
using testsupport::TempDir;
using testsupport::write_file;

TEST_CASE("format is chosen by extension") {
  CHECK(splr::format_from_path("a/b.csv") == splr::Format::csv);
  CHECK(splr::format_from_path("a/b.tsv") == splr::Format::tsv);
  CHECK(splr::format_from_path("a/b.txt") == splr::Format::dense_text);
  CHECK(splr::format_from_path("noext") == splr::Format::dense_text);
}

TEST_CASE("csv parses into a row-by-column matrix") {
  TempDir dir("io_csv");
  const auto path = write_file(dir.path("m.csv"), "1,2\n3,4\n5,6\n");
  const splr::Matrix m = splr::read_matrix(path, splr::Format::csv);
  REQUIRE(m.rows() == 3);
  REQUIRE(m.cols() == 2);
  CHECK(m(0, 0) == 1.0);
  CHECK(m(2, 1) == 6.0);
}

TEST_CASE("header rows are recognized and skipped") {
  TempDir dir("io_header");
  const auto path = write_file(dir.path("m.csv"), "alpha,beta\n1,2\n3,4\n");
  const splr::Matrix m = splr::read_matrix(path, splr::Format::csv);
  REQUIRE(m.rows() == 2);
  CHECK(m(0, 1) == 2.0);
}

TEST_CASE("tsv and dense text formats parse") {
  TempDir dir("io_formats");
  const auto tsv = write_file(dir.path("m.tsv"), "1\t2\n3\t4\n");
  CHECK(splr::read_matrix(tsv, splr::Format::tsv)(1, 0) == 3.0);
  const auto dense = write_file(dir.path("m.txt"), " 1  2 \n 3\t4\n");
  const splr::Matrix m = splr::read_matrix(dense, splr::Format::dense_text);
  REQUIRE(m.rows() == 2);
  CHECK(m(1, 1) == 4.0);
}

TEST_CASE("windows line endings and blank lines are tolerated") {
  TempDir dir("io_crlf");
  const auto path = write_file(dir.path("m.csv"), "1,2\r\n\r\n3,4\r\n\n");
  const splr::Matrix m = splr::read_matrix(path, splr::Format::csv);
  REQUIRE(m.rows() == 2);
  CHECK(m(1, 0) == 3.0);
}

TEST_CASE("parse errors carry the path and real line numbers") {
  TempDir dir("io_errors");
  const auto empty = write_file(dir.path("empty.csv"), "");
  REQUIRE_THROWS_WITH(splr::read_matrix(empty, splr::Format::csv),
                      ContainsSubstring("no rows"));

  const auto ragged = write_file(dir.path("ragged.csv"), "1,2\n3\n");
  REQUIRE_THROWS_WITH(splr::read_matrix(ragged, splr::Format::csv),
                      ContainsSubstring("ragged row at line 2"));

  // A blank line in between must not shift reported numbers.
  const auto shifted = write_file(dir.path("shifted.csv"), "1,2\n\n3\n");
  REQUIRE_THROWS_WITH(splr::read_matrix(shifted, splr::Format::csv),
                      ContainsSubstring("ragged row at line 3"));

  const auto bad_cell = write_file(dir.path("cell.csv"), "1,2\nx,4\n");
  REQUIRE_THROWS_WITH(splr::read_matrix(bad_cell, splr::Format::csv),
                      ContainsSubstring("non-numeric cell at line 2, column 1"));

  REQUIRE_THROWS_AS(splr::read_matrix(dir.path("missing.csv").string(), splr::Format::csv),
                    splr::io_error);
}

TEST_CASE("header-only file counts as having no rows") {
  TempDir dir("io_header_only");
  const auto path = write_file(dir.path("m.csv"), "alpha,beta\n");
  REQUIRE_THROWS_WITH(splr::read_matrix(path, splr::Format::csv), ContainsSubstring("no rows"));
}

TEST_CASE("load_matrix rewraps shape violations as parse errors") {
  TempDir dir("io_load");
  const auto path = write_file(dir.path("tiny.csv"), "1,2\n");
  REQUIRE_THROWS_AS(splr::load_matrix(path), splr::parse_error);
}

TEST_CASE("labels load in first-appearance order") {
  TempDir dir("io_labels");
  const auto path = write_file(dir.path("labels.txt"), "a\nb\na\n");
  const splr::LabelVector labels = splr::load_labels(path);
  CHECK(labels.labels() == std::vector<int>{0, 1, 0});
  CHECK(labels.classes() == 2);
  CHECK(labels.size() == 3);
}

TEST_CASE("written matrices read back bit for bit") {
  TempDir dir("io_roundtrip");
  std::mt19937_64 rng(11);
  splr::Matrix m(7, 4);
  for (splr::Index r = 0; r < m.rows(); ++r)
    for (splr::Index c = 0; c < m.cols(); ++c) {
      const double u = splr::uniform01(rng);
      m(r, c) = (u - 0.5) * std::pow(10.0, static_cast<double>(r) - 3.0);
    }
  for (const splr::Format format :
       {splr::Format::csv, splr::Format::tsv, splr::Format::dense_text}) {
    const auto path = dir.path("m.out").string();
    splr::write_matrix(path, m, format, {});
    const splr::Matrix back = splr::read_matrix(path, format);
    REQUIRE(back.rows() == m.rows());
    REQUIRE(back.cols() == m.cols());
    CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("write_matrix can prepend a header") {
  TempDir dir("io_write_header");
  splr::Matrix m(2, 2);
  m << 1, 2, 3, 4;
  const auto path = dir.path("m.csv").string();
  splr::write_matrix(path, m, splr::Format::csv, {"left", "right"});
  const splr::Matrix back = splr::read_matrix(path, splr::Format::csv);
  REQUIRE(back.rows() == 2);
  CHECK(back(0, 0) == 1.0);
  CHECK(testsupport::read_file(path).substr(0, 10) == "left,right");
}
