#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <string>

#include "geomis/adversaries.hpp"
#include "geomis/errors.hpp"
#include "geomis/instance_io.hpp"

using namespace geomis;

namespace {

std::string dump(const ArrivalSequence& s, std::span<const Decision> d = {}) {
  std::ostringstream os;
  write_instance(os, s, d);
  return os.str();
}

ArrivalSequence parse(const std::string& text) {
  std::istringstream is(text);
  return parse_instance(is);
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("instance_io") {
  TEST_CASE("format_double round trips") {
    for (double x : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, 4.002502342285386}) {
      CHECK(std::stod(format_double(x)) == x);
    }
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.1");
  }

  TEST_CASE("generator output round trips byte-exactly") {
    const ArrivalSequence cases[] = {
        random_balls_gen(40, 3, 12.0, 1, 0.5, 2.0),
        random_balls_gen(10, 2, 5.0, 2),
        random_rects_gen(30, 2, 5.0, 10.0, 3),
        random_rects_gen(15, 3, 7.0, 8.0, 4),
        random_graph_gen(25, 0.2, 5),
        level_graph_gen(7, 6),
        ArrivalSequence{},
    };
    for (const auto& seq : cases) {
      const std::string text = dump(seq);
      const auto back = parse(text);
      CHECK(dump(back) == text);
      CHECK(back.graph() == seq.graph());
      CHECK(back.dim == seq.dim);
      if (seq.geometric()) {
        for (std::size_t i = 0; i < seq.size(); ++i) {
          const auto& a = *seq.events[i].payload;
          const auto& b = *back.events[i].payload;
          if (a.is_ball()) {
            CHECK(a.ball().center() == b.ball().center());
            CHECK(a.ball().radius() == b.ball().radius());
          } else {
            CHECK(a.rect().lo() == b.rect().lo());
            CHECK(a.rect().hi() == b.rect().hi());
          }
        }
      }
    }
  }

  TEST_CASE("transcripts keep decisions as comments") {
    FirstFit ff;
    const auto out = star_adversary(3, ff);
    const std::string text = dump(out.played, out.run.decisions);
    CHECK(text.find("# decision 0 accept") != std::string::npos);
    CHECK(text.find("# decision 1 reject") != std::string::npos);
    CHECK(parse(text).graph() == out.played.graph());
  }

  TEST_CASE("file round trip") {
    const auto path = std::filesystem::temp_directory_path() / "geomis_io_test.txt";
    const auto seq = random_balls_gen(12, 3, 6.0, 9);
    save_instance(seq, path);
    CHECK(dump(load_instance(path)) == dump(seq));
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_instance(path), ValidationError);
  }

  TEST_CASE("malformed input is rejected with a line number") {
    const std::string head = "geomis-instance v1\ndim -\n";
    CHECK(error_of(head + "vertex 0 -\nvertex 1 2\n").find("line 4") != std::string::npos);
    CHECK(error_of(head + "vertex 0 -\nvertex 1 0,0\n").find("line 4") != std::string::npos);
    CHECK(error_of(head + "vertex 1 -\n").find("line 3") != std::string::npos);
    CHECK(error_of(head + "ball 0 0 1\n").find("line 3") != std::string::npos);
    CHECK(error_of("geomis-instance v1\ndim 2\nball 0 0 0 1\n").find("line 3") != std::string::npos);
    CHECK(error_of("geomis-instance v1\ndim 2\nball 0 0 1\nrect 0 1 0 1\n").find("line 4") != std::string::npos);
    CHECK(error_of("geomis-instance v1\ndim 2\nvertex 0 -\n").find("line 3") != std::string::npos);
    CHECK(error_of("geomis-instance v1\ndim 2\nball 0 x 1\n").find("line 3") != std::string::npos);
    CHECK(error_of("geomis-instance v1\ndim 2\nball 0 0 -1\n").find("line 3") != std::string::npos);
    CHECK(error_of("geomis-instance v2\ndim 2\n").find("line 1") != std::string::npos);
    CHECK(error_of("geomis-instance v1\n").find("line") != std::string::npos);
    CHECK(error_of("").find("line 1") != std::string::npos);
  }

  TEST_CASE("comments and blank lines are ignored") {
    const auto seq = parse("# hello\ngeomis-instance v1\n\ndim -\nvertex 0 -\n# x\nvertex 1 0\n");
    CHECK(seq.size() == 2);
    CHECK(seq.graph().adjacent(0, 1));
  }
}
