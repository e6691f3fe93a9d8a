#include "sdet/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "sdet/errors.hpp"

namespace sdet::io {

namespace {

struct Line {
  int number;
  std::string text;
};

std::vector<Line> data_lines(std::istream& is) {
  std::vector<Line> out;
  std::string text;
  int number = 0;
  while (std::getline(is, text)) {
    ++number;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    const auto pos = text.find_first_not_of(" \t");
    if (pos == std::string::npos || text[pos] == '#') continue;
    out.push_back({number, text});
  }
  return out;
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

long parse_int(const std::string& tok, int line) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) throw ParseError(line, "expected an integer, got '" + tok + "'");
  return v;
}

std::vector<long> parse_ints(const std::string& s, int line) {
  std::vector<long> out;
  for (const auto& t : tokens(s)) out.push_back(parse_int(t, line));
  return out;
}

Combination parse_subset(const std::string& s, int r, int n, int line) {
  const auto ints = parse_ints(s, line);
  if (static_cast<int>(ints.size()) != r)
    throw ParseError(line, "expected " + std::to_string(r) + " indices, got " + std::to_string(ints.size()));
  Combination c;
  c.n = n;
  long prev = 0;
  for (long v : ints) {
    if (v <= prev || v > n)
      throw ParseError(line, "indices must be strictly increasing in 1.." + std::to_string(n));
    c.elements.push_back(static_cast<int>(v));
    prev = v;
  }
  return c;
}

// Splits "lhs SEP rhs"; throws if the separator is missing.
std::pair<std::string, std::string> split(const Line& l, const std::string& sep) {
  const auto pos = l.text.find(sep);
  if (pos == std::string::npos) throw ParseError(l.number, "missing '" + sep + "' separator");
  return {l.text.substr(0, pos), l.text.substr(pos + sep.size())};
}

void check_shape(long r, long d, int line) {
  if (r < 1 || d < 1 || r > 64 || d > 64) throw ParseError(line, "header values out of range");
}

// Labels from "subset -> part" lines; every r-subset exactly once.
std::vector<int> read_labels(const std::vector<Line>& lines, std::size_t first, int n, int r, int d) {
  const std::uint64_t count = binomial_u64(n, r);
  std::vector<int> labels(count, 0);
  std::uint64_t seen = 0;
  for (std::size_t k = first; k < lines.size(); ++k) {
    const auto [lhs, rhs] = split(lines[k], "->");
    const Combination c = parse_subset(lhs, r, n, lines[k].number);
    const auto part = parse_ints(rhs, lines[k].number);
    if (part.size() != 1) throw ParseError(lines[k].number, "expected a single part index after '->'");
    if (part[0] < 1 || part[0] > d)
      throw ParseError(lines[k].number, "part index must be in 1.." + std::to_string(d));
    int& slot = labels[rank_combination(c)];
    if (slot != 0) throw ParseError(lines[k].number, "hyperedge " + c.to_string() + " assigned twice");
    slot = static_cast<int>(part[0]);
    ++seen;
  }
  if (seen != count) {
    for (std::uint64_t k = 0; k < count; ++k)
      if (labels[k] == 0)
        throw ParseError(lines.empty() ? 0 : lines.back().number,
                         "hyperedge " + unrank_combination(k, r, n).to_string() + " is not assigned");
  }
  return labels;
}

void write_subset(std::ostream& os, const Combination& c) {
  for (int i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
}

TensorAssignment parse_tensor(const std::vector<Line>& lines) {
  const auto header = parse_ints(lines[0].text, lines[0].number);
  if (header.size() != 2) throw ParseError(lines[0].number, "tensor header must be 'r d'");
  const long r = header[0], d = header[1];
  check_shape(r, d, lines[0].number);
  const int n = static_cast<int>(r * d);
  TensorAssignment t(static_cast<int>(r), static_cast<int>(d));
  std::vector<char> seen(t.entries.size(), 0);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto [lhs, rhs] = split(lines[k], ":");
    const Combination c = parse_subset(lhs, static_cast<int>(r), n, lines[k].number);
    const auto coords = tokens(rhs);
    if (static_cast<long>(coords.size()) != d)
      throw ParseError(lines[k].number, "expected " + std::to_string(d) + " coordinates");
    const auto idx = rank_combination(c);
    if (seen[idx]) throw ParseError(lines[k].number, "subset " + c.to_string() + " listed twice");
    seen[idx] = 1;
    for (long j = 0; j < d; ++j) {
      try {
        t.entries[idx][j] = parse_rational(coords[j]);
      } catch (const std::invalid_argument& e) {
        throw ParseError(lines[k].number, e.what());
      }
    }
  }
  for (std::size_t idx = 0; idx < seen.size(); ++idx)
    if (!seen[idx])
      throw ParseError(lines.back().number,
                       "subset " + unrank_combination(idx, static_cast<int>(r), n).to_string() + " is missing");
  return t;
}

BasisAssignment parse_basis(const std::vector<Line>& lines) {
  const auto header = parse_ints(lines[0].text, lines[0].number);
  long r = 0, d = 0;
  if (header.size() == 2) {
    r = header[0];
    d = header[1];
  } else if (header.size() == 3) {
    r = header[1];
    d = header[2];
    if (header[0] != r * d) throw ParseError(lines[0].number, "basis assignment needs n = r*d");
  } else {
    throw ParseError(lines[0].number, "basis header must be 'r d' or 'n r d'");
  }
  check_shape(r, d, lines[0].number);
  auto labels = read_labels(lines, 1, static_cast<int>(r * d), static_cast<int>(r), static_cast<int>(d));
  return BasisAssignment(static_cast<int>(r), static_cast<int>(d), std::move(labels));
}

std::vector<Line> nonempty(std::istream& is, const char* what) {
  auto lines = data_lines(is);
  if (lines.empty()) throw ParseError(0, std::string("empty ") + what + " file");
  return lines;
}

}  // namespace

mpq_class parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  auto valid_int = [](const std::string& s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const std::string num = text.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) throw std::invalid_argument("bad rational '" + text + "'");
  mpz_class p(num[0] == '+' ? num.substr(1) : num), q(den);
  if (sgn(q) == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  mpq_class out(p, q);
  out.canonicalize();
  return out;
}

TensorAssignment read_tensor(std::istream& is) { return parse_tensor(nonempty(is, "tensor")); }

void write_tensor(std::ostream& os, const TensorAssignment& t) {
  os << t.r << ' ' << t.d << '\n';
  const auto subsets = all_combinations(t.n(), t.r);
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    write_subset(os, subsets[k]);
    os << " :";
    for (const auto& c : t.entries[k]) os << ' ' << c.get_str();
    os << '\n';
  }
}

BasisAssignment read_basis(std::istream& is) { return parse_basis(nonempty(is, "basis assignment")); }

void write_basis(std::ostream& os, const BasisAssignment& b) {
  os << b.n() << ' ' << b.r << ' ' << b.d << '\n';
  std::vector<int> cur(b.r);
  for (int i = 0; i < b.r; ++i) cur[i] = i + 1;
  std::size_t k = 0;
  do {
    for (int i = 0; i < b.r; ++i) os << (i ? " " : "") << cur[i];
    os << " -> " << b.labels[k++] << '\n';
  } while (next_combination(cur, b.n()));
}

DPartition read_partition(std::istream& is) {
  const auto lines = nonempty(is, "partition");
  const auto header = parse_ints(lines[0].text, lines[0].number);
  if (header.size() != 3) throw ParseError(lines[0].number, "partition header must be 'n r d'");
  const long n = header[0], r = header[1], d = header[2];
  check_shape(r, d, lines[0].number);
  if (n < r || n > 64) throw ParseError(lines[0].number, "need r <= n <= 64");
  auto labels = read_labels(lines, 1, static_cast<int>(n), static_cast<int>(r), static_cast<int>(d));
  return DPartition::from_labels(static_cast<int>(n), static_cast<int>(r), static_cast<int>(d), std::move(labels));
}

void write_partition(std::ostream& os, const DPartition& p) {
  os << p.n() << ' ' << p.r() << ' ' << p.d() << '\n';
  std::vector<int> cur(p.r());
  for (int i = 0; i < p.r(); ++i) cur[i] = i + 1;
  std::size_t k = 0;
  do {
    for (int i = 0; i < p.r(); ++i) os << (i ? " " : "") << cur[i];
    os << " -> " << p.labels()[k++] << '\n';
  } while (next_combination(cur, p.n()));
}

Hypergraph read_hypergraph(std::istream& is) {
  const auto lines = nonempty(is, "hypergraph");
  const auto header = parse_ints(lines[0].text, lines[0].number);
  if (header.size() != 2) throw ParseError(lines[0].number, "hypergraph header must be 'n r'");
  const long n = header[0], r = header[1];
  if (r < 1 || n < 0 || n > 4096 || r > 64) throw ParseError(lines[0].number, "header values out of range");
  std::vector<Combination> edges;
  for (std::size_t k = 1; k < lines.size(); ++k)
    edges.push_back(parse_subset(lines[k].text, static_cast<int>(r), static_cast<int>(n), lines[k].number));
  return Hypergraph(static_cast<int>(n), static_cast<int>(r), std::move(edges));
}

void write_hypergraph(std::ostream& os, const Hypergraph& h) {
  os << h.n() << ' ' << h.r() << '\n';
  for (const auto& e : h.hyperedges()) {
    write_subset(os, e);
    os << '\n';
  }
}

std::variant<TensorAssignment, BasisAssignment> read_tensor_or_basis(std::istream& is) {
  const auto lines = nonempty(is, "tensor");
  if (lines.size() > 1 && lines[1].text.find("->") != std::string::npos) return parse_basis(lines);
  return parse_tensor(lines);
}

}  // namespace sdet::io
