#include "fh/fhm1.hpp"

#include <charconv>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "fh/errors.hpp"

namespace fh {

void write_fhm1(std::ostream& out, const SparseExactMatrix& m, const std::string& tag) {
  if (tag.empty() || tag.find_first_of(" \t\r\n") != std::string::npos)
    throw ArgumentError("FHM1 tag must be a single non-empty word");
  out << "FHM1 " << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << ' ' << tag << '\n';
  std::vector<std::string> text;
  text.reserve(m.distinct_values().size());
  for (const Rational& v : m.distinct_values()) text.push_back(to_fraction_string(v));
  std::string line;
  for (Index c = 0; c < m.cols(); ++c) {
    auto rows = m.column_rows(c);
    auto ids = m.column_values(c);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      line.clear();
      line += std::to_string(rows[k]);
      line += ' ';
      line += std::to_string(c);
      line += ' ';
      line += text[ids[k]];
      line += '\n';
      out << line;
    }
  }
}

std::string to_fhm1(const SparseExactMatrix& m, const std::string& tag) {
  std::ostringstream out;
  write_fhm1(out, m, tag);
  return out.str();
}

namespace {

std::vector<std::string> split_words(const std::string& line) {
  std::vector<std::string> words;
  std::istringstream in(line);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

std::optional<std::uint64_t> parse_count(const std::string& s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

bool is_integer_literal(const std::string& s) {
  std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t k = start; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') return false;
  return true;
}

}  // namespace

TaggedMatrix read_fhm1(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(line_no, "missing FHM1 header");
  const auto header = split_words(line);
  if (header.size() != 5 || header[0] != "FHM1")
    throw ParseError(line_no, "header must be 'FHM1 <rows> <cols> <nnz> <tag>'");
  const auto rows = parse_count(header[1]);
  const auto cols = parse_count(header[2]);
  const auto nnz = parse_count(header[3]);
  if (!rows || !cols || !nnz || *rows > 0xffffffffULL || *cols > 0xffffffffULL)
    throw ParseError(line_no, "header dimensions are not valid counts");

  SparseMatrixBuilder builder(static_cast<Index>(*rows), static_cast<Index>(*cols));
  std::vector<std::pair<Index, ValueId>> column;
  std::uint64_t current_col = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> previous;
  std::uint64_t seen = 0;

  auto flush_until = [&](std::uint64_t col) {
    while (current_col < col) {
      builder.add_column(std::move(column));
      column.clear();
      ++current_col;
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    const auto words = split_words(line);
    if (words.empty()) throw ParseError(line_no, "empty line");
    if (words.size() != 3) throw ParseError(line_no, "entry must be '<row> <col> <num>/<den>'");
    const auto r = parse_count(words[0]);
    const auto c = parse_count(words[1]);
    if (!r || !c) throw ParseError(line_no, "indices must be nonnegative integers");
    if (*r >= *rows || *c >= *cols) throw ParseError(line_no, "index out of range");
    const auto slash = words[2].find('/');
    if (slash == std::string::npos) throw ParseError(line_no, "value must be written as num/den");
    const std::string num = words[2].substr(0, slash);
    const std::string den = words[2].substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-')
      throw ParseError(line_no, "malformed fraction");
    Rational value;
    value.get_num() = BigInt(num);
    value.get_den() = BigInt(den);
    if (sgn(value.get_den()) == 0) throw ParseError(line_no, "zero denominator");
    value.canonicalize();
    if (sgn(value) == 0) throw ParseError(line_no, "explicit zero entry");
    if (previous) {
      const auto key = std::make_pair(*c, *r);
      const auto prev = std::make_pair(previous->second, previous->first);
      if (key == prev) throw ParseError(line_no, "duplicate entry");
      if (key < prev) throw ParseError(line_no, "entries not sorted by (col, row)");
    }
    previous = std::make_pair(*r, *c);
    if (++seen > *nnz) throw ParseError(line_no, "more entries than the header declares");
    flush_until(*c);
    column.emplace_back(static_cast<Index>(*r), builder.intern(value));
  }
  if (seen != *nnz)
    throw ParseError(line_no + 1, "header declares " + std::to_string(*nnz) + " entries, found " + std::to_string(seen));
  flush_until(*cols);
  return {std::move(builder).finish(), header[4]};
}

TaggedMatrix parse_fhm1(const std::string& text) {
  std::istringstream in(text);
  return read_fhm1(in);
}

}  // namespace fh
