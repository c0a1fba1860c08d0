#include <fstream>
#include <sstream>
#include <stdexcept>

#include "riesz/sdp.hpp"

namespace riesz {

std::string format_sdpa_sparse(const SdpProblem& problem, int digits) {
  problem.validate();
  std::ostringstream out;
  out << problem.constraints.size() << "\n" << problem.blocks.size() << "\n";
  for (size_t b = 0; b < problem.blocks.size(); ++b) {
    const auto& blk = problem.blocks[b];
    out << (b ? " " : "") << (blk.kind == BlockKind::kDiagonal ? -blk.size : blk.size);
  }
  out << "\n";
  for (size_t k = 0; k < problem.constraints.size(); ++k)
    out << (k ? " " : "") << problem.constraints[k].rhs.to_string(digits);
  out << "\n";
  auto emit = [&](size_t matno, std::vector<SdpEntry> es) {
    std::stable_sort(es.begin(), es.end(), [](const SdpEntry& a, const SdpEntry& b) {
      return std::tie(a.block, a.i, a.j) < std::tie(b.block, b.i, b.j);
    });
    for (const auto& e : es)
      out << matno << " " << e.block + 1 << " " << e.i + 1 << " " << e.j + 1 << " " << e.value.to_string(digits)
          << "\n";
  };
  emit(0, problem.objective);
  for (size_t k = 0; k < problem.constraints.size(); ++k) emit(k + 1, problem.constraints[k].entries);
  return out.str();
}

void emit_sdpa_sparse(const SdpProblem& problem, const std::string& path, int digits) {
  std::string text = format_sdpa_sparse(problem, digits);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!f.flush()) throw std::runtime_error("write failed: " + path);
}

SdpProblem parse_sdpa_sparse(const std::string& text, long prec) {
  // Comment lines may precede the header; separators ",{}()" count as space.
  std::istringstream lines(text);
  std::string line, body;
  bool header = true;
  while (std::getline(lines, line)) {
    if (header && !line.empty() && (line[0] == '"' || line[0] == '*')) continue;
    header = false;
    for (char& ch : line)
      if (ch == ',' || ch == '{' || ch == '}' || ch == '(' || ch == ')') ch = ' ';
    body += line + "\n";
  }
  std::istringstream in(body);
  auto fail = [](const std::string& what) { throw std::runtime_error("SDPA parse error: " + what); };
  long m = 0, nb = 0;
  if (!(in >> m >> nb) || m < 0 || nb < 0) fail("header");
  SdpProblem p;
  p.precision = prec;
  for (long b = 0; b < nb; ++b) {
    long s = 0;
    if (!(in >> s) || s == 0) fail("block sizes");
    p.blocks.push_back({"block" + std::to_string(b + 1), static_cast<int>(s < 0 ? -s : s),
                        s < 0 ? BlockKind::kDiagonal : BlockKind::kPsd});
  }
  std::string tok;
  for (long k = 0; k < m; ++k) {
    if (!(in >> tok)) fail("objective vector");
    p.constraints.push_back({"c" + std::to_string(k + 1), Scalar::from_string(tok, prec), {}});
  }
  long mat, blk, i, j;
  while (in >> mat) {
    if (!(in >> blk >> i >> j >> tok)) fail("truncated entry");
    if (mat < 0 || mat > m || blk < 1 || blk > nb) fail("entry index");
    if (i > j) std::swap(i, j);
    SdpEntry e{static_cast<int>(blk - 1), static_cast<int>(i - 1), static_cast<int>(j - 1),
               Scalar::from_string(tok, prec)};
    (mat == 0 ? p.objective : p.constraints[mat - 1].entries).push_back(std::move(e));
  }
  if (!in.eof()) fail("unexpected token");
  p.validate();
  return p;
}

SdpProblem read_sdpa_sparse(const std::string& path, long prec) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_sdpa_sparse(ss.str(), prec);
}

}  // namespace riesz
