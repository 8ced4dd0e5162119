#include "geomis/instance_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "geomis/errors.hpp"

namespace geomis {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw ValidationError("line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokenize(const std::string& raw) {
  std::string text = raw.substr(0, raw.find('#'));
  std::istringstream ss(text);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(tok);
  return out;
}

double parse_real(const std::string& tok, std::size_t line) {
  double x = 0.0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, x);
  if (ec != std::errc() || ptr != end) fail(line, "bad number '" + tok + "'");
  return x;
}

int parse_int(const std::string& tok, std::size_t line) {
  int x = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, x);
  if (ec != std::errc() || ptr != end) fail(line, "bad integer '" + tok + "'");
  return x;
}

Point parse_point(const std::vector<double>& coords, std::size_t line) {
  try {
    return Point(coords);
  } catch (const UsageError& e) {
    fail(line, e.what());
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

ArrivalSequence parse_instance(std::istream& in) {
  ArrivalSequence seq;
  std::vector<SizedObject> objects;
  bool saw_header = false;
  bool saw_dim = false;
  std::size_t line_no = 0;

  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const auto tok = tokenize(raw);
    if (tok.empty()) continue;

    if (!saw_header) {
      if (tok.size() != 2 || tok[0] + " " + tok[1] != kInstanceMagic) {
        fail(line_no, std::string("expected header '") + kInstanceMagic + "'");
      }
      saw_header = true;
      continue;
    }
    if (!saw_dim) {
      if (tok.size() != 2 || tok[0] != "dim") fail(line_no, "expected 'dim <d>' or 'dim -'");
      if (tok[1] != "-") {
        const int d = parse_int(tok[1], line_no);
        if (d < 1) fail(line_no, "dimension must be positive");
        seq.dim = d;
      }
      saw_dim = true;
      continue;
    }

    const int id = static_cast<int>(seq.events.size());
    const std::string& kind = tok[0];
    if (kind == "vertex") {
      if (seq.geometric()) fail(line_no, "vertex line in a geometric instance");
      if (tok.size() != 3) fail(line_no, "expected 'vertex <id> <ids|->'");
      if (parse_int(tok[1], line_no) != id) {
        fail(line_no, "vertex id must be " + std::to_string(id) + " (arrival order)");
      }
      ArrivalEvent e;
      e.id = id;
      if (tok[2] != "-") {
        std::istringstream list(tok[2]);
        for (std::string item; std::getline(list, item, ',');) {
          const int u = parse_int(item, line_no);
          if (u < 0 || u >= id) {
            fail(line_no, "neighbor " + std::to_string(u) + " is not an earlier vertex");
          }
          e.neighbors.push_back(u);
        }
        std::sort(e.neighbors.begin(), e.neighbors.end());
        if (std::adjacent_find(e.neighbors.begin(), e.neighbors.end()) != e.neighbors.end()) {
          fail(line_no, "duplicate neighbor");
        }
      }
      seq.events.push_back(std::move(e));
    } else if (kind == "ball" || kind == "rect") {
      if (!seq.geometric()) fail(line_no, kind + " line in an abstract instance");
      const int d = *seq.dim;
      const std::size_t want = kind == "ball" ? static_cast<std::size_t>(d) + 2
                                              : 2 * static_cast<std::size_t>(d) + 1;
      if (tok.size() != want) {
        fail(line_no, kind + " needs " + std::to_string(want - 1) + " numbers for dim " +
                          std::to_string(d));
      }
      if (!objects.empty() && objects.front().is_ball() != (kind == "ball")) {
        fail(line_no, "mixed balls and rectangles are not supported");
      }
      std::vector<double> nums;
      for (std::size_t k = 1; k < tok.size(); ++k) nums.push_back(parse_real(tok[k], line_no));
      try {
        if (kind == "ball") {
          const double r = nums.back();
          nums.pop_back();
          objects.emplace_back(Ball(parse_point(nums, line_no), r));
        } else {
          std::vector<double> lo;
          std::vector<double> hi;
          for (int i = 0; i < d; ++i) {
            lo.push_back(nums[2 * static_cast<std::size_t>(i)]);
            hi.push_back(nums[2 * static_cast<std::size_t>(i) + 1]);
          }
          objects.emplace_back(HyperRectangle(parse_point(lo, line_no), parse_point(hi, line_no)));
        }
      } catch (const UsageError& e) {
        fail(line_no, e.what());
      }
      ArrivalEvent e;
      e.id = id;
      e.payload = objects.back();
      for (int u = 0; u < id; ++u) {
        if (objects_intersect(objects[static_cast<std::size_t>(u)], objects.back())) {
          e.neighbors.push_back(u);
        }
      }
      seq.events.push_back(std::move(e));
    } else {
      fail(line_no, "unknown record '" + kind + "'");
    }
  }
  if (!saw_header) fail(std::max<std::size_t>(line_no, 1), "missing header");
  if (!saw_dim) fail(line_no, "missing dim line");
  return seq;
}

ArrivalSequence load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file " + path.string());
  return parse_instance(in);
}

void write_instance(std::ostream& out, const ArrivalSequence& seq,
                    std::span<const Decision> decisions) {
  out << kInstanceMagic << '\n';
  out << "dim " << (seq.dim ? std::to_string(*seq.dim) : std::string("-")) << '\n';
  for (const auto& e : seq.events) {
    if (!e.payload) {
      out << "vertex " << e.id << ' ';
      if (e.neighbors.empty()) {
        out << '-';
      } else {
        for (std::size_t k = 0; k < e.neighbors.size(); ++k) {
          out << (k ? "," : "") << e.neighbors[k];
        }
      }
    } else if (e.payload->is_ball()) {
      const Ball& b = e.payload->ball();
      out << "ball";
      for (double x : b.center().coords()) out << ' ' << format_double(x);
      out << ' ' << format_double(b.radius());
    } else {
      const HyperRectangle& r = e.payload->rect();
      out << "rect";
      for (int i = 0; i < r.dim(); ++i) {
        out << ' ' << format_double(r.lo()[i]) << ' ' << format_double(r.hi()[i]);
      }
    }
    out << '\n';
    const auto idx = static_cast<std::size_t>(e.id);
    if (idx < decisions.size()) {
      out << "# decision " << e.id << ' '
          << (decisions[idx] == Decision::accept ? "accept" : "reject") << '\n';
    }
  }
}

void save_instance(const ArrivalSequence& seq, const std::filesystem::path& path,
                   std::span<const Decision> decisions) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write instance file " + path.string());
  write_instance(out, seq, decisions);
}

}  // namespace geomis
