#pragma once

// Text formats: group description files and the small argument syntaxes used
// by the command line (vectors, bases, partitions, matrices, residues).
//
//   group G3 ambient 2
//   gen [1, 0] inv {3}
//   gen [0, 1] inv {5}
//   gen [1/2, 1/2] inv {}

#include <cctype>
#include <fstream>
#include <sstream>

#include "tfag/group.hpp"
#include "tfag/splitting.hpp"

namespace tfag {

class parse_error : public std::runtime_error {
public:
  parse_error(std::size_t line, std::size_t col, const std::string& msg)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }

private:
  std::size_t line_, col_;
};

namespace detail {

// Cursor over one line of text; columns are 1-based.
class Scanner {
public:
  Scanner(std::string_view text, std::size_t line = 1) : s_(text), line_(line) {}

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool at_end() {
    skip_ws();
    return i_ >= s_.size();
  }
  std::size_t column() const { return i_ + 1; }
  [[noreturn]] void fail(const std::string& msg, std::size_t col = 0) const {
    throw parse_error(line_, col ? col : column(), msg);
  }
  bool accept(char c) {
    skip_ws();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string word() {
    skip_ws();
    std::size_t start = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("unexpected end of line");
    return std::string(s_.substr(start, i_ - start));
  }
  void keyword(std::string_view k) {
    std::size_t col = (skip_ws(), column());
    std::string w = word();
    if (w != k) fail("expected '" + std::string(k) + "', found '" + w + "'", col);
  }
  Integer integer() {
    skip_ws();
    std::size_t start = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    std::string t(s_.substr(start, i_ - start));
    if (t.empty() || t == "-" || t == "+") fail("expected an integer", start + 1);
    if (t[0] == '+') t.erase(0, 1);
    return Integer(t);
  }
  Rational rational() {
    skip_ws();
    std::size_t col = column();
    Integer num = integer();
    Integer den = 1;
    if (accept('/')) {
      den = integer();
      if (den == 0) fail("zero denominator", col);
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  // [a, b, ...] or (a, b, ...)
  RationalVector vector() {
    skip_ws();
    char close;
    if (accept('[')) close = ']';
    else if (accept('(')) close = ')';
    else fail("expected '[' or '('");
    RationalVector v;
    if (accept(close)) return v;
    do v.push_back(rational());
    while (accept(','));
    expect(close);
    return v;
  }
  PrimeSet prime_set() {
    skip_ws();
    std::size_t col = column();
    if (s_.substr(i_, 3) == "ALL") {
      i_ += 3;
      return PrimeSet::all();
    }
    expect('{');
    std::vector<Prime> ps;
    if (!accept('}')) {
      do {
        std::size_t pc = (skip_ws(), column());
        Integer p = integer();
        if (p < 2 || !p.fits_ulong_p() || !is_prime(p)) fail(p.get_str() + " is not prime", pc);
        ps.push_back(p.get_ui());
      } while (accept(','));
      expect('}');
    }
    try {
      return PrimeSet::of(ps);
    } catch (const std::invalid_argument& e) {
      fail(e.what(), col);
    }
  }

private:
  std::string_view s_;
  std::size_t line_;
  std::size_t i_ = 0;
};

inline std::string_view strip_comment(std::string_view line) {
  auto h = line.find('#');
  return h == std::string_view::npos ? line : line.substr(0, h);
}

inline bool blank(std::string_view s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace detail

// All groups in a description text, in order.
inline std::vector<GroupRep> parse_groups(std::string_view text) {
  std::vector<GroupRep> out;
  struct Pending {
    std::string name;
    std::size_t n;
    std::size_t line;
    std::vector<Generator> gens;
    std::vector<std::size_t> gen_lines;
  };
  std::optional<Pending> cur;
  auto finish = [&] {
    if (!cur) return;
    try {
      out.emplace_back(cur->n, cur->gens, cur->name);
    } catch (const std::exception& e) {
      throw parse_error(cur->line, 1, e.what());
    }
    cur.reset();
  };
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    line = detail::strip_comment(line);
    if (detail::blank(line)) continue;
    detail::Scanner sc(line, lineno);
    sc.skip_ws();
    std::size_t col = sc.column();
    std::string head = sc.word();
    if (head == "group") {
      finish();
      std::string name = sc.word();
      sc.keyword("ambient");
      std::size_t ncol = (sc.skip_ws(), sc.column());
      Integer n = sc.integer();
      if (n < 0 || !n.fits_ulong_p()) sc.fail("bad ambient dimension", ncol);
      cur = Pending{name, n.get_ui(), lineno, {}, {}};
    } else if (head == "gen") {
      if (!cur) sc.fail("'gen' before any 'group' line", col);
      std::size_t vcol = (sc.skip_ws(), sc.column());
      RationalVector v = sc.vector();
      if (v.size() != cur->n)
        sc.fail("generator has length " + std::to_string(v.size()) + ", ambient is " + std::to_string(cur->n), vcol);
      if (is_zero(v)) sc.fail("zero generator vector", vcol);
      sc.keyword("inv");
      PrimeSet s = sc.prime_set();
      cur->gens.push_back({v, s});
    } else {
      sc.fail("unknown directive '" + head + "'", col);
    }
    if (!sc.at_end()) sc.fail("trailing characters");
  }
  finish();
  return out;
}

inline GroupRep parse_group(std::string_view text) {
  auto gs = parse_groups(text);
  if (gs.size() != 1) throw parse_error(1, 1, "expected exactly one group, found " + std::to_string(gs.size()));
  return gs.front();
}

inline std::string print_group(const GroupRep& g) {
  std::string out = "group " + (g.name().empty() ? std::string("G") : g.name()) + " ambient " +
                    std::to_string(g.ambient()) + "\n";
  for (auto& gen : g.generators()) out += "gen " + format_vector(gen.v) + " inv " + gen.s.str() + "\n";
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline GroupRep load_group(const std::string& path) {
  try {
    return parse_group(read_file(path));
  } catch (const parse_error& e) {
    throw parse_error(e.line(), e.column(), path + ": " + std::string(e.what()).substr(std::string(e.what()).find(' ') + 1));
  }
}

// ---------------------------------------------------------------------------
// argument syntaxes

inline RationalVector parse_vector(std::string_view text) {
  detail::Scanner sc(text);
  RationalVector v = sc.vector();
  if (!sc.at_end()) sc.fail("trailing characters");
  return v;
}

// "(1,0);(0,1)"
inline std::vector<RationalVector> parse_vector_list(std::string_view text) {
  detail::Scanner sc(text);
  std::vector<RationalVector> out;
  if (sc.at_end()) return out;
  do out.push_back(sc.vector());
  while (sc.accept(';'));
  if (!sc.at_end()) sc.fail("trailing characters");
  return out;
}

// "1,3|2" with 1-based indices
inline Partition parse_partition(std::string_view text) {
  detail::Scanner sc(text);
  Partition p(1);
  for (;;) {
    std::size_t col = (sc.skip_ws(), sc.column());
    Integer i = sc.integer();
    if (i < 1 || !i.fits_ulong_p()) sc.fail("indices are 1-based", col);
    p.back().push_back(i.get_ui() - 1);
    if (sc.accept(',')) continue;
    if (sc.accept('|')) {
      p.emplace_back();
      continue;
    }
    break;
  }
  if (!sc.at_end()) sc.fail("trailing characters");
  return p;
}

// "[[0,1],[1,0]]"
inline RationalMatrix parse_matrix(std::string_view text) {
  detail::Scanner sc(text);
  sc.expect('[');
  RationalMatrix m;
  do {
    std::size_t col = (sc.skip_ws(), sc.column());
    RationalVector row = sc.vector();
    if (m.rows() > 0 && row.size() != m.cols()) sc.fail("ragged matrix", col);
    m.append_row(row);
  } while (sc.accept(','));
  sc.expect(']');
  if (!sc.at_end()) sc.fail("trailing characters");
  return m;
}

// residue tuples "(1,0);(0,3)"
inline std::vector<std::vector<Integer>> parse_residues(std::string_view text) {
  std::vector<std::vector<Integer>> out;
  for (auto& v : parse_vector_list(text)) {
    std::vector<Integer> r;
    for (auto& q : v) {
      if (q.get_den() != 1) throw parse_error(1, 1, "residues must be integers");
      r.push_back(q.get_num());
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::string format_residues(const std::vector<Integer>& r) {
  std::string s = "(";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += ",";
    s += r[i].get_str();
  }
  return s + ")";
}

inline std::string format_matrix(const RationalMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += ", ";
    s += format_vector(m.row_vector(i));
  }
  return s + "]";
}

}  // namespace tfag
