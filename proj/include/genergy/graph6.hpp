#pragma once

#include <string>
#include <string_view>

#include "genergy/graph.hpp"

namespace genergy::graph6 {

/// Largest order representable in the single-byte (short) header.
inline constexpr int kMaxOrder = 62;

namespace detail {
constexpr int kBias = 63;

inline bool printable(unsigned char c) { return c >= 63 && c <= 126; }
}  // namespace detail

/// Packs the upper triangle column by column (x(0,1), x(0,2), x(1,2), ...),
/// six bits per byte, most significant bit first, zero padded.
inline std::string encode(const Graph& g) {
  if (g.n() > kMaxOrder)
    throw Error(ErrorKind::unsupported,
                "graph6 short form supports n <= 62, got n=" + std::to_string(g.n()));
  std::string out;
  out.push_back(static_cast<char>(g.n() + detail::kBias));
  int acc = 0;
  int filled = 0;
  for (int j = 1; j < g.n(); ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + detail::kBias));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + detail::kBias));
  return out;
}

/// Strict decoder: rejects bytes outside 63..126, wrong lengths and
/// nonzero padding. Other members of the nauty family are refused with an
/// unsupported-format error.
inline Graph decode(std::string_view code) {
  if (code.empty()) throw FormatError(0, "empty graph6 string");
  if (code.starts_with(">>"))
    throw Error(ErrorKind::unsupported, "graph6 headers are not supported");
  if (code.front() == ':') throw Error(ErrorKind::unsupported, "sparse6 is not supported");
  if (code.front() == '&') throw Error(ErrorKind::unsupported, "digraph6 is not supported");

  auto first = static_cast<unsigned char>(code.front());
  if (!detail::printable(first)) throw FormatError(0, "order byte outside 63..126");
  if (first == 126) throw Error(ErrorKind::unsupported, "long-form graph6 (n > 62) is not supported");

  const int n = first - detail::kBias;
  const std::size_t bits = static_cast<std::size_t>(n) * static_cast<std::size_t>(n > 0 ? n - 1 : 0) / 2;
  const std::size_t bytes = (bits + 5) / 6;
  if (code.size() < bytes + 1)
    throw FormatError(code.size(), "truncated: expected " + std::to_string(bytes + 1) + " bytes");
  if (code.size() > bytes + 1)
    throw FormatError(bytes + 1, "unexpected trailing data");

  for (std::size_t k = 1; k < code.size(); ++k)
    if (!detail::printable(static_cast<unsigned char>(code[k]))) throw FormatError(k, "byte outside 63..126");

  Graph g(n);
  std::size_t bit = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++bit) {
      int byte = static_cast<unsigned char>(code[1 + bit / 6]) - detail::kBias;
      if ((byte >> (5 - bit % 6)) & 1) g.add_edge(i, j);
    }
  }
  if (bits % 6 != 0) {
    int last = static_cast<unsigned char>(code.back()) - detail::kBias;
    int pad_mask = (1 << (6 - bits % 6)) - 1;
    if (last & pad_mask) throw FormatError(code.size() - 1, "nonzero padding bits");
  }
  return g;
}

}  // namespace genergy::graph6
