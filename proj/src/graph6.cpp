#include "hermsrg/graph6.hpp"

#include <fstream>
#include <stdexcept>

namespace hermsrg {

namespace {
constexpr long long kMaxOrder = 258047;

void append_bits(std::string& out, int& acc, int& nbits, int bit) {
  acc = (acc << 1) | bit;
  if (++nbits == 6) {
    out.push_back(static_cast<char>(acc + 63));
    acc = 0;
    nbits = 0;
  }
}
}  // namespace

std::string to_graph6(const Graph& g) {
  const long long n = g.n();
  if (n < 1 || n > kMaxOrder)
    throw std::invalid_argument("to_graph6: order out of range");
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else {
    out.push_back(126);
    out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
    out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
    out.push_back(static_cast<char>((n & 63) + 63));
  }
  int acc = 0, nbits = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      append_bits(out, acc, nbits, g.adjacent(i, j) ? 1 : 0);
  if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
  return out;
}

Graph from_graph6(const std::string& s) {
  size_t pos = 0;
  auto need = [&](size_t count) {
    if (pos + count > s.size())
      throw std::invalid_argument("from_graph6: truncated input");
  };
  auto val = [&](size_t i) {
    int c = static_cast<unsigned char>(s[i]);
    if (c < 63 || c > 126)
      throw std::invalid_argument("from_graph6: byte out of range");
    return c - 63;
  };
  need(1);
  long long n;
  if (val(0) < 63) {
    n = val(0);
    pos = 1;
  } else {
    need(2);
    if (val(1) == 63) {
      throw std::invalid_argument("from_graph6: order beyond supported range");
    }
    need(4);
    n = (static_cast<long long>(val(1)) << 12) |
        (static_cast<long long>(val(2)) << 6) | val(3);
    pos = 4;
  }
  if (n > kMaxOrder) throw std::invalid_argument("from_graph6: order too large");
  Graph g(static_cast<int>(n));
  const long long bits = n * (n - 1) / 2;
  const long long bytes = (bits + 5) / 6;
  need(static_cast<size_t>(bytes));
  if (pos + static_cast<size_t>(bytes) != s.size())
    throw std::invalid_argument("from_graph6: trailing bytes");
  long long bit = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++bit) {
      int b = val(pos + bit / 6);
      if ((b >> (5 - bit % 6)) & 1) g.add_edge(i, j);
    }
  // Padding bits must be zero.
  for (long long t = bits; t < bytes * 6; ++t)
    if ((val(pos + t / 6) >> (5 - t % 6)) & 1)
      throw std::invalid_argument("from_graph6: nonzero padding");
  return g;
}

void write_graph6_file(const std::string& path,
                       const std::vector<Graph>& graphs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_graph6_file: cannot open " + path);
  out << ">>graph6<<";
  for (const Graph& g : graphs) out << to_graph6(g) << "\n";
  if (!out) throw std::runtime_error("write_graph6_file: write failed");
}

std::vector<Graph> read_graph6_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_graph6_file: cannot open " + path);
  std::vector<Graph> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first) {
      first = false;
      const std::string header = ">>graph6<<";
      if (line.rfind(header, 0) == 0) line = line.substr(header.size());
    }
    if (line.empty()) continue;
    out.push_back(from_graph6(line));
  }
  return out;
}

}  // namespace hermsrg
