#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "lembed/graphon.hpp"

namespace lembed {

namespace {

class LineCursor {
public:
  LineCursor(std::string_view text, int line) : text_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, static_cast<int>(pos_) + 1); }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string_view word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }
  Rational rational() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/' ||
                                   text_[pos_] == '+' || text_[pos_] == '-'))
      ++pos_;
    try {
      return Rational::parse(text_.substr(start, pos_ - start));
    } catch (const std::invalid_argument& e) {
      pos_ = start;
      fail(e.what());
    }
  }
  long integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected boundary index");
    return std::stol(std::string(text_.substr(start, pos_ - start)));
  }
  int column() const { return static_cast<int>(pos_) + 1; }

private:
  std::string_view text_;
  int line_;
  std::size_t pos_ = 0;
};

struct PendingBoundary {
  std::vector<Breakpoint> points;
  int line;
};

}  // namespace

StepGraphon parse_spec(std::istream& in) {
  std::optional<std::vector<Rational>> values;
  int values_line = 0;
  std::map<long, PendingBoundary> boundaries;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view text(raw);
    if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    LineCursor cur(text, line_no);
    if (cur.at_end()) continue;
    std::string_view key = cur.word();
    if (key == "values") {
      if (values) cur.fail("duplicate 'values' line");
      cur.expect('=');
      std::vector<Rational> vals{cur.rational()};
      while (cur.accept(',')) vals.push_back(cur.rational());
      if (!cur.at_end()) cur.fail("unexpected trailing text");
      values = std::move(vals);
      values_line = line_no;
    } else if (key == "boundary") {
      int index_col = cur.column();
      long index = cur.integer();
      if (index < 1) throw ParseError("boundary index must be >= 1", line_no, index_col);
      if (boundaries.count(index)) throw ParseError("duplicate boundary " + std::to_string(index), line_no, index_col);
      cur.expect('=');
      std::vector<Breakpoint> pts;
      do {
        cur.expect('(');
        Rational x = cur.rational();
        cur.expect(',');
        Rational y = cur.rational();
        cur.expect(')');
        pts.push_back({std::move(x), std::move(y)});
      } while (cur.accept(','));
      if (!cur.at_end()) cur.fail("unexpected trailing text");
      if (pts.size() < 2) throw ParseError("boundary needs at least two breakpoints", line_no, index_col);
      if (pts.front().x != 0) throw ParseError("boundary must start at x=0", line_no, index_col);
      if (pts.back().y != 1) throw ParseError("boundary must end at value 1", line_no, index_col);
      for (std::size_t k = 1; k < pts.size(); ++k)
        if (!(pts[k - 1].x < pts[k].x) || !(pts[k - 1].y < pts[k].y))
          throw ParseError("breakpoints must be strictly increasing in both coordinates", line_no, index_col);
      boundaries.emplace(index, PendingBoundary{std::move(pts), line_no});
    } else {
      cur.fail(key.empty() ? "expected 'values' or 'boundary'" : "unknown key '" + std::string(key) + "'");
    }
  }
  if (!values) throw ParseError("missing 'values' line", line_no + 1, 1);
  const std::size_t expected = values->size() - 1;
  if (boundaries.size() != expected)
    throw ParseError("expected " + std::to_string(expected) + " boundaries, got " + std::to_string(boundaries.size()),
                     values_line, 1);
  std::vector<PiecewiseLinearMap> upper;
  for (std::size_t i = 1; i <= expected; ++i) {
    auto it = boundaries.find(static_cast<long>(i));
    if (it == boundaries.end()) throw ParseError("missing boundary " + std::to_string(i), values_line, 1);
    upper.emplace_back(std::move(it->second.points));
  }
  return StepGraphon(std::move(*values), std::move(upper));
}

StepGraphon parse_spec(const std::string& text) {
  std::istringstream in(text);
  return parse_spec(in);
}

StepGraphon load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_spec(in);
}

}  // namespace lembed
