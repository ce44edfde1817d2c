#include "maxplus/io.hpp"

#include <array>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>
#include <vector>

#include <openssl/evp.h>

#include "json.hpp"

#ifndef MAXPLUS_VERSION
#define MAXPLUS_VERSION "0.0.0"
#endif

namespace maxplus::io {
namespace {

using nlohmann::json;

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

std::size_t parse_count(const std::string& tok, std::size_t line, const char* what) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
  try {
    return std::stoull(tok);
  } catch (const std::exception&) {
    throw ParseError(line, std::string(what) + " out of range: '" + tok + "'");
  }
}

Scalar parse_token(const std::string& tok, std::size_t line) {
  try {
    return Scalar::parse(tok);
  } catch (const std::exception&) {
    throw ParseError(line, "bad entry '" + tok + "'");
  }
}

json matrix_json(const TropicalMatrix& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& e : m.row(i)) entries.push_back(json::array({i + 1, e.col + 1, e.value.to_string()}));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

TropicalMatrix matrix_from_json(const json& j) {
  TropicalMatrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  for (const auto& e : j.at("entries")) {
    if (!e.is_array() || e.size() != 3) throw ParseError(0, "matrix entries must be [i, j, \"w\"] triplets");
    const auto i = e[0].get<std::size_t>(), c = e[1].get<std::size_t>();
    if (i == 0 || c == 0 || i > m.rows() || c > m.cols()) throw ParseError(0, "matrix entry index out of range");
    m.set(i - 1, c - 1, Scalar(Rational::parse(e[2].get<std::string>())));
  }
  return m;
}

json nodes_json(const std::vector<std::size_t>& nodes) {
  json out = json::array();
  for (std::size_t v : nodes) out.push_back(v + 1);
  return out;
}

std::vector<std::size_t> nodes_from_json(const json& j) {
  std::vector<std::size_t> out;
  for (const auto& v : j) {
    const auto x = v.get<std::size_t>();
    if (x == 0) throw ParseError(0, "node indices are 1-based");
    out.push_back(x - 1);
  }
  return out;
}

}  // namespace

TropicalMatrix parse_matrix(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty matrix file");
  const Line& header = lines.front();
  if (header.tokens.size() != 1 && header.tokens.size() != 2)
    throw ParseError(header.number, "header must be \"n\" (dense) or \"n m\" (sparse)");
  const std::size_t n = parse_count(header.tokens[0], header.number, "dimension");
  if (n == 0) throw ParseError(header.number, "dimension must be positive");
  TropicalMatrix a(n, n);

  if (header.tokens.size() == 1) {
    if (lines.size() != n + 1)
      throw ParseError(lines.back().number, "expected " + std::to_string(n) + " rows, found " +
                                                std::to_string(lines.size() - 1));
    for (std::size_t i = 0; i < n; ++i) {
      const Line& row = lines[i + 1];
      if (row.tokens.size() != n)
        throw ParseError(row.number, "expected " + std::to_string(n) + " entries, found " +
                                         std::to_string(row.tokens.size()));
      for (std::size_t j = 0; j < n; ++j) a.set(i, j, parse_token(row.tokens[j], row.number));
    }
    return a;
  }

  const std::size_t m = parse_count(header.tokens[1], header.number, "entry count");
  if (lines.size() != m + 1)
    throw ParseError(lines.back().number, "expected " + std::to_string(m) + " triplets, found " +
                                              std::to_string(lines.size() - 1));
  std::vector<char> seen(n * n, 0);
  for (std::size_t k = 1; k <= m; ++k) {
    const Line& t = lines[k];
    if (t.tokens.size() != 3) throw ParseError(t.number, "expected \"i j w\"");
    const std::size_t i = parse_count(t.tokens[0], t.number, "row index");
    const std::size_t j = parse_count(t.tokens[1], t.number, "column index");
    if (i == 0 || j == 0 || i > n || j > n) throw ParseError(t.number, "index out of range 1.." + std::to_string(n));
    if (seen[(i - 1) * n + (j - 1)]) throw ParseError(t.number, "duplicate entry");
    seen[(i - 1) * n + (j - 1)] = 1;
    a.set(i - 1, j - 1, parse_token(t.tokens[2], t.number));
  }
  return a;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw FileError("cannot read '" + path.string() + "'");
  return buf.str();
}

std::string write_dense(const TropicalMatrix& a) {
  std::ostringstream os;
  os << a.rows() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) os << (j ? " " : "") << a.at(i, j);
    os << '\n';
  }
  return os.str();
}

std::string write_sparse(const TropicalMatrix& a) {
  std::ostringstream os;
  os << a.rows() << ' ' << a.finite_count() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (const auto& e : a.row(i)) os << i + 1 << ' ' << e.col + 1 << ' ' << e.value << '\n';
  return os.str();
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream os;
  for (unsigned int k = 0; k < len; ++k) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[k]);
  return os.str();
}

std::string expansion_to_json(const CsrExpansion& x, const std::string& input_digest, int indent) {
  json terms = json::array();
  for (const auto& t : x.terms) {
    json term = {{"group", t.group + 1},
                 {"rate", t.rate.to_string()},
                 {"circuit", nodes_json(t.circuit.nodes)},
                 {"period", t.period()},
                 {"C", matrix_json(t.c_factor)},
                 {"S", matrix_json(t.s_factor)},
                 {"R", matrix_json(t.r_factor)}};
    if (t.classes) {
      json classes = json::array();
      for (const auto& c : *t.classes) classes.push_back(nodes_json(c));
      term["classes"] = std::move(classes);
    }
    terms.push_back(std::move(term));
  }
  json doc = {{"format", "maxplus-csr-expansion"},
              {"n", x.n},
              {"threshold", x.threshold.get_str()},
              {"terms", std::move(terms)},
              {"provenance", {{"tool", "maxplus-csr"}, {"version", MAXPLUS_VERSION}, {"input_sha256", input_digest}}}};
  if (x.source) doc["source"] = matrix_json(*x.source);
  return doc.dump(indent);
}

CsrExpansion expansion_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    if (doc.at("format") != "maxplus-csr-expansion") throw ParseError(0, "not an expansion document");
    CsrExpansion x;
    x.n = doc.at("n").get<std::size_t>();
    x.threshold = BigInt(doc.at("threshold").get<std::string>());
    for (const auto& t : doc.at("terms")) {
      CsrTerm term;
      term.group = t.at("group").get<std::size_t>() - 1;
      term.rate = Rational::parse(t.at("rate").get<std::string>());
      term.c_factor = matrix_from_json(t.at("C"));
      term.s_factor = matrix_from_json(t.at("S"));
      term.r_factor = matrix_from_json(t.at("R"));
      const std::size_t ell = t.at("period").get<std::size_t>();
      if (term.c_factor.rows() != x.n || term.c_factor.cols() != ell || term.s_factor.rows() != ell ||
          term.s_factor.cols() != ell || term.r_factor.rows() != ell || term.r_factor.cols() != x.n)
        throw ParseError(0, "term " + std::to_string(term.group + 1) + " has inconsistent block sizes");
      if (term.s_factor != build_s(ell)) throw ParseError(0, "S must be the cyclic shift");
      const auto nodes = nodes_from_json(t.at("circuit"));
      term.circuit.nodes = nodes;
      if (t.contains("classes")) {
        std::vector<std::vector<std::size_t>> classes;
        for (const auto& c : t.at("classes")) classes.push_back(nodes_from_json(c));
        term.classes = std::move(classes);
      }
      x.terms.push_back(std::move(term));
    }
    if (doc.contains("source")) x.source = matrix_from_json(doc.at("source"));
    return x;
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("invalid expansion document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, std::string("invalid expansion document: ") + e.what());
  }
}

}  // namespace maxplus::io
