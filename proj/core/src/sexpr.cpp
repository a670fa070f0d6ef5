#include "amort/sexpr.hpp"

#include <cctype>

#include "amort/errors.hpp"

namespace amort::sx {

SExpr SExpr::make_atom(std::string text) {
  SExpr e;
  e.atom = std::move(text);
  return e;
}

SExpr SExpr::make_list(std::vector<SExpr> items) {
  SExpr e;
  e.is_list = true;
  e.items = std::move(items);
  return e;
}

const std::string& SExpr::head() const {
  static const std::string empty;
  if (!is_list || items.empty() || items[0].is_list) return empty;
  return items[0].atom;
}

namespace {

class Reader {
public:
  explicit Reader(const std::string& text) : text_(text) {}

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

  SExpr read() {
    skip();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", line_, col_);
    SExpr e;
    e.line = line_;
    e.column = col_;
    char c = text_[pos_];
    if (c == ')') throw ParseError("unexpected ')'", line_, col_);
    if (c == '(') {
      advance();
      e.is_list = true;
      for (;;) {
        skip();
        if (pos_ >= text_.size()) throw ParseError("unclosed '('", e.line, e.column);
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        e.items.push_back(read());
      }
      return e;
    }
    std::size_t start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (d == '[') ++depth;
      if (d == ']') --depth;
      if (depth == 0 && (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')')) break;
      advance();
    }
    if (depth != 0) throw ParseError("unbalanced '[' in atom", e.line, e.column);
    e.atom = text_.substr(start, pos_ - start);
    return e;
  }

private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  bool literal_hash() const {
    if (pos_ + 1 >= text_.size()) return false;
    char n = text_[pos_ + 1];
    return std::isdigit(static_cast<unsigned char>(n)) || n == '-' || text_.compare(pos_ + 1, 3, "inf") == 0;
  }

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#' && !literal_hash()) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

void flat(const SExpr& e, std::string& out) {
  if (!e.is_list) {
    out += e.atom;
    return;
  }
  out += '(';
  for (std::size_t i = 0; i < e.items.size(); ++i) {
    if (i) out += ' ';
    flat(e.items[i], out);
  }
  out += ')';
}

void pretty(const SExpr& e, std::size_t indent, std::size_t width, std::string& out) {
  std::string f = write_flat(e);
  if (!e.is_list || indent + f.size() <= width || e.items.size() < 2) {
    out += f;
    return;
  }
  out += '(';
  std::size_t i = 0;
  // Keep the head and any leading atoms (binders, annotations) on the first line.
  std::size_t col = indent + 1;
  if (e.items[0].is_list) {
    pretty(e.items[0], indent + 1, width, out);
    i = 1;
  }
  while (!e.items[0].is_list && i < e.items.size() && !e.items[i].is_list && (i == 0 || col + e.items[i].atom.size() < width)) {
    if (i) out += ' ';
    out += e.items[i].atom;
    col += e.items[i].atom.size() + 1;
    ++i;
    if (i >= 3) break;
  }
  for (; i < e.items.size(); ++i) {
    out += '\n';
    out.append(indent + 2, ' ');
    pretty(e.items[i], indent + 2, width, out);
  }
  out += ')';
}

}  // namespace

std::vector<SExpr> read_all(const std::string& text) {
  Reader r(text);
  std::vector<SExpr> out;
  while (!r.at_end()) out.push_back(r.read());
  return out;
}

SExpr read_one(const std::string& text) {
  Reader r(text);
  SExpr e = r.read();
  if (!r.at_end()) throw ParseError("trailing input after expression", e.line, e.column);
  return e;
}

std::string write_flat(const SExpr& e) {
  std::string out;
  flat(e, out);
  return out;
}

std::string write_pretty(const SExpr& e, std::size_t width) {
  std::string out;
  pretty(e, 0, width, out);
  return out;
}

}  // namespace amort::sx
