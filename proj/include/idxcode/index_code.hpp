#ifndef IDXCODE_INDEX_CODE_HPP
#define IDXCODE_INDEX_CODE_HPP

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "idxcode/bits.hpp"
#include "idxcode/coloring.hpp"
#include "idxcode/errors.hpp"
#include "idxcode/gf2.hpp"
#include "idxcode/graph.hpp"
#include "idxcode/random.hpp"

namespace idxcode {

struct SideTerm {
  int vertex = 0;
  bool coef = true;
  friend bool operator==(const SideTerm&, const SideTerm&) = default;
};

/// Receiver i computes <coeffs, broadcast> + sum of coef * x_j over side.
struct ReceiverDecoder {
  BitVector coeffs;
  std::vector<SideTerm> side;  // ascending vertex order
  friend bool operator==(const ReceiverDecoder&, const ReceiverDecoder&) = default;
};

struct LinearIndexCode {
  int n = 0;
  BitMatrix encoder;  // length x n
  std::vector<ReceiverDecoder> receivers;

  int length() const noexcept { return encoder.rows(); }
  friend bool operator==(const LinearIndexCode& a, const LinearIndexCode& b) {
    return a.n == b.n && a.encoder == b.encoder && a.receivers == b.receivers;
  }
};

/// One encoder row per color class of a coloring of complement(g).
inline LinearIndexCode code_from_coloring(const Graph& g, const Coloring& complement_coloring) {
  if (!is_valid_coloring(complement(g), complement_coloring))
    throw InputError("code_from_coloring: not a valid coloring of the complement");
  const int n = g.order();
  const int len = complement_coloring.count;
  LinearIndexCode code;
  code.n = n;
  code.encoder = BitMatrix(len, n);
  for (int v = 0; v < n; ++v) code.encoder.set(complement_coloring.colors[v], v);
  for (int i = 0; i < n; ++i) {
    ReceiverDecoder d{BitVector(static_cast<std::size_t>(len)), {}};
    d.coeffs.set(static_cast<std::size_t>(complement_coloring.colors[i]));
    for (int j = 0; j < n; ++j)
      if (j != i && complement_coloring.colors[j] == complement_coloring.colors[i]) d.side.push_back({j, true});
    code.receivers.push_back(std::move(d));
  }
  return code;
}

/// Encoder is a row basis of a (lowest-index rows); length = rank(a).
inline LinearIndexCode code_from_matrix(const BitMatrix& a, const Graph& g) {
  if (!represents(a, g)) throw InputError("code_from_matrix: matrix does not represent the graph");
  const int n = g.order();
  RowBasis basis(a);
  LinearIndexCode code;
  code.n = n;
  code.encoder = BitMatrix(basis.rank(), n);
  for (int r = 0; r < basis.rank(); ++r) code.encoder.row(r) = a.row(basis.basis_rows()[r]);
  for (int i = 0; i < n; ++i) {
    auto coeffs = basis.express(a.row(i));
    if (!coeffs) throw ContractViolation("code_from_matrix: row outside its own row space");
    ReceiverDecoder d{std::move(*coeffs), {}};
    for (int j = 0; j < n; ++j)
      if (j != i && a.get(i, j)) d.side.push_back({j, true});
    code.receivers.push_back(std::move(d));
  }
  return code;
}

inline BitVector encode(const LinearIndexCode& code, const BitVector& x) {
  if (static_cast<int>(x.size()) != code.n) throw InputError("encode: message width does not match the code");
  return code.encoder.apply(x);
}

/// side_bits has width n; only the positions in receiver i's side set are read.
inline bool decode_receiver(const LinearIndexCode& code, int i, const BitVector& broadcast, const BitVector& side_bits) {
  if (i < 0 || i >= code.n) throw InputError("decode_receiver: receiver out of range");
  if (static_cast<int>(broadcast.size()) != code.length())
    throw InputError("decode_receiver: broadcast width does not match the code length");
  if (static_cast<int>(side_bits.size()) != code.n) throw InputError("decode_receiver: side bits must have width n");
  const ReceiverDecoder& d = code.receivers[i];
  bool bit = d.coeffs.dot(broadcast);
  for (const SideTerm& s : d.side)
    if (s.coef && side_bits.test(static_cast<std::size_t>(s.vertex))) bit = !bit;
  return bit;
}

struct VerifyMode {
  bool exhaustive = true;
  int trials = 0;
  std::uint64_t seed = 0;

  static VerifyMode all_words() { return {}; }
  static VerifyMode sampled(int trials, std::uint64_t seed) { return {false, trials, seed}; }
};

inline constexpr int kExhaustiveVerifyMaxOrder = 20;

struct Counterexample {
  BitVector word;
  int receiver = 0;
  bool decoded = false;
};

struct VerifyVerdict {
  bool pass = true;
  long long words_checked = 0;
  std::string reason;  // structural failure, empty otherwise
  std::optional<Counterexample> counterexample;
};

/// Checks the code's shape, that every side set lies inside the receiver's
/// neighborhood, and decodability on all (or sampled) words.
inline VerifyVerdict verify_code(const Graph& g, const LinearIndexCode& code, const VerifyMode& mode = {}) {
  const int n = g.order();
  VerifyVerdict v;
  auto fail = [&](std::string why) {
    v.pass = false;
    v.reason = std::move(why);
    return v;
  };
  if (code.n != n || code.encoder.cols() != n || static_cast<int>(code.receivers.size()) != n)
    return fail("code size does not match the graph");
  if (code.length() > n) return fail("code length exceeds n");
  for (int i = 0; i < n; ++i) {
    const auto& d = code.receivers[i];
    if (static_cast<int>(d.coeffs.size()) != code.length()) return fail("receiver " + std::to_string(i) + " has wrong coefficient width");
    for (const SideTerm& s : d.side)
      if (s.vertex < 0 || s.vertex >= n || !g.has_edge(i, s.vertex))
        return fail("receiver " + std::to_string(i) + " reads a bit outside its side information");
  }
  if (mode.exhaustive && n > kExhaustiveVerifyMaxOrder)
    throw InputError("verify_code: exhaustive mode needs n <= " + std::to_string(kExhaustiveVerifyMaxOrder));

  auto check_word = [&](const BitVector& x) {
    ++v.words_checked;
    const BitVector y = encode(code, x);
    for (int i = 0; i < n; ++i) {
      const bool got = decode_receiver(code, i, y, x);
      if (got != x.test(static_cast<std::size_t>(i))) {
        v.pass = false;
        v.counterexample = Counterexample{x, i, got};
        return false;
      }
    }
    return true;
  };
  if (mode.exhaustive) {
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t w = 0; w < total; ++w)
      if (!check_word(BitVector::from_mask(w, static_cast<std::size_t>(n)))) break;
  } else {
    StreamRng rng = make_stream(mode.seed, {0x7e41f});
    for (int t = 0; t < mode.trials; ++t) {
      BitVector x(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        if (rng() & 1U) x.set(static_cast<std::size_t>(i));
      if (!check_word(x)) break;
    }
  }
  return v;
}

// Text format:
//   n l
//   l encoder rows, each a bit string of width n
//   n receiver lines "i : c_i | j:coef,j:coef"   (c_i is '-' when l = 0)
inline std::string save_index_code(const LinearIndexCode& code) {
  std::ostringstream os;
  os << code.n << ' ' << code.length() << '\n';
  for (int r = 0; r < code.length(); ++r) os << code.encoder.row(r).to_string() << '\n';
  for (int i = 0; i < code.n; ++i) {
    const auto& d = code.receivers[i];
    os << i << " : " << (code.length() == 0 ? std::string("-") : d.coeffs.to_string()) << " |";
    for (std::size_t s = 0; s < d.side.size(); ++s)
      os << (s == 0 ? " " : ",") << d.side[s].vertex << ':' << (d.side[s].coef ? 1 : 0);
    os << '\n';
  }
  return os.str();
}

inline LinearIndexCode load_index_code(std::string_view text) {
  auto lines = detail::content_lines(text);
  if (lines.empty()) throw ParseError("missing header line 'n l'", 0);
  auto header = detail::split_ws(lines[0].second);
  if (header.size() != 2) throw ParseError("header must be 'n l'", lines[0].first);
  const long long n = detail::parse_int(header[0], lines[0].first);
  const long long len = detail::parse_int(header[1], lines[0].first);
  if (n < 0 || n > kMaxVertices) throw ParseError("n out of range", lines[0].first);
  if (len < 0 || len > n) throw ParseError("code length must be in [0, n]", lines[0].first);
  if (static_cast<long long>(lines.size()) != 1 + len + n)
    throw ParseError("expected " + std::to_string(len) + " encoder rows and " + std::to_string(n) + " receiver lines",
                     lines.back().first);

  auto bits = [](std::string_view tok, long long width, int line_no) {
    if (static_cast<long long>(tok.size()) != width)
      throw ParseError("bit string must have length " + std::to_string(width), line_no);
    try {
      return BitVector::from_string(tok);
    } catch (const InputError& e) {
      throw ParseError(e.what(), line_no);
    }
  };

  LinearIndexCode code;
  code.n = static_cast<int>(n);
  std::vector<BitVector> rows;
  for (long long r = 0; r < len; ++r) {
    auto [line_no, line] = lines[static_cast<std::size_t>(1 + r)];
    auto tok = detail::split_ws(line);
    if (tok.size() != 1) throw ParseError("encoder row must be a single bit string", line_no);
    rows.push_back(bits(tok[0], n, line_no));
  }
  code.encoder = BitMatrix::from_rows(std::move(rows), static_cast<int>(n));
  if (len == 0) code.encoder = BitMatrix(0, static_cast<int>(n));

  for (long long i = 0; i < n; ++i) {
    auto [line_no, line] = lines[static_cast<std::size_t>(1 + len + i)];
    const auto bar = line.find('|');
    if (bar == std::string_view::npos) throw ParseError("receiver line needs '|'", line_no);
    auto left = detail::split_ws(line.substr(0, bar));
    if (left.size() != 3 || left[1] != ":") throw ParseError("receiver line must start with 'i : c_i'", line_no);
    if (detail::parse_int(left[0], line_no) != i) throw ParseError("receivers must appear in order", line_no);
    ReceiverDecoder d;
    if (len == 0) {
      if (left[2] != "-") throw ParseError("coefficients must be '-' for a length-0 code", line_no);
      d.coeffs = BitVector(0);
    } else {
      d.coeffs = bits(left[2], len, line_no);
    }
    auto right = detail::split_ws(line.substr(bar + 1));
    if (right.size() > 1) throw ParseError("side terms must be comma separated without spaces", line_no);
    if (!right.empty()) {
      std::string_view rest = right[0];
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view term = rest.substr(0, comma);
        const auto colon = term.find(':');
        if (colon == std::string_view::npos) throw ParseError("side term must be 'j:coef'", line_no);
        const long long j = detail::parse_int(term.substr(0, colon), line_no);
        const long long c = detail::parse_int(term.substr(colon + 1), line_no);
        if (j < 0 || j >= n || j == i) throw ParseError("side vertex out of range", line_no);
        if (c != 0 && c != 1) throw ParseError("side coefficient must be 0 or 1", line_no);
        if (!d.side.empty() && d.side.back().vertex >= j) throw ParseError("side vertices must be ascending", line_no);
        d.side.push_back({static_cast<int>(j), c == 1});
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
        if (rest.empty()) throw ParseError("trailing comma", line_no);
      }
    }
    code.receivers.push_back(std::move(d));
  }
  return code;
}

}  // namespace idxcode

#endif  // IDXCODE_INDEX_CODE_HPP
