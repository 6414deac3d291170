#include "nkh/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace nkh {

HomogeneousModel HomogeneousModel::to_float() const {
  HomogeneousModel m = *this;
  m.algebra = algebra.to_float();
  m.metric.g = metric.g.to_float();
  if (m.acs) m.acs->j = acs->j.to_float();
  m.coframe = coframe_from_split(m.algebra, m.split);
  return m;
}

HomogeneousModel parse_model(std::istream& in, const std::string& name) {
  int dim = -1;
  std::vector<int> h;
  std::vector<std::vector<int>> blocks;
  std::vector<std::string> block_names;
  std::vector<LieAlgebraData::Entry> entries;
  struct Assign {
    int i, j;
    Scalar v;
  };
  std::vector<Assign> metric_entries, acs_entries;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    auto want_int = [&](const char* what) {
      std::string t;
      if (!(ls >> t)) fail(Errc::ParseError, std::string("missing ") + what + " on line " + std::to_string(lineno));
      try {
        return std::stoi(t);
      } catch (...) {
        fail(Errc::ParseError, std::string("bad ") + what + " '" + t + "' on line " + std::to_string(lineno));
      }
    };
    auto want_value = [&]() {
      std::string t;
      if (!(ls >> t)) fail(Errc::ParseError, "missing value on line " + std::to_string(lineno));
      return Scalar::rational(rational_from_text(t));
    };
    if (tok == "dim") {
      dim = want_int("dimension");
    } else if (tok == "h_indices") {
      int v;
      while (ls >> v) h.push_back(v);
    } else if (tok == "m_blocks") {
      std::string spec;
      while (ls >> spec) {
        auto colon = spec.find(':');
        std::string bname = colon == std::string::npos ? "m" + std::to_string(blocks.size()) : spec.substr(0, colon);
        std::string idxs = colon == std::string::npos ? spec : spec.substr(colon + 1);
        std::vector<int> blk;
        std::istringstream bs(idxs);
        std::string part;
        while (std::getline(bs, part, ',')) {
          if (part.empty()) continue;
          try {
            blk.push_back(std::stoi(part));
          } catch (...) {
            fail(Errc::ParseError, "bad block index '" + part + "' on line " + std::to_string(lineno));
          }
        }
        if (blk.empty()) fail(Errc::ParseError, "empty m_block on line " + std::to_string(lineno));
        blocks.push_back(blk);
        block_names.push_back(bname);
      }
    } else if (tok == "metric") {
      int i = want_int("row"), j = want_int("col");
      metric_entries.push_back({i, j, want_value()});
    } else if (tok == "acs") {
      int i = want_int("row"), j = want_int("col");
      acs_entries.push_back({i, j, want_value()});
    } else if (tok == "bracket") {
      int i = want_int("i"), j = want_int("j"), k = want_int("k");
      entries.push_back({i, j, k, want_value()});
    } else {
      // bare form: i j k value
      int i;
      try {
        i = std::stoi(tok);
      } catch (...) {
        fail(Errc::ParseError, "unknown directive '" + tok + "' on line " + std::to_string(lineno));
      }
      int j = want_int("j"), k = want_int("k");
      entries.push_back({i, j, k, want_value()});
    }
  }

  if (dim <= 0) fail(Errc::ParseError, "model file must declare a positive dim");
  HomogeneousModel m;
  m.name = name;
  m.algebra = LieAlgebraData::from_entries(dim, entries);
  m.split.h_indices = h;
  if (blocks.empty()) {
    // every non-h index forms one block
    std::vector<int> rest;
    for (int i = 0; i < dim; ++i)
      if (std::find(h.begin(), h.end(), i) == h.end()) rest.push_back(i);
    blocks.push_back(rest);
    block_names.push_back("m");
  }
  m.split.m_blocks = blocks;
  m.split.block_names = block_names;
  m.split.validate(m.algebra);

  int n = m.split.m_dim();
  Matrix g = Matrix::identity(n, Scalar(1));
  for (const auto& e : metric_entries) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n) fail(Errc::ParseError, "metric index out of range");
    g.at(e.i, e.j) = e.v;
    g.at(e.j, e.i) = e.v;
  }
  m.metric.g = g;

  if (!acs_entries.empty()) {
    Matrix j = Matrix::zero_like(n, n, Scalar(0));
    for (const auto& e : acs_entries) {
      if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n) fail(Errc::ParseError, "acs index out of range");
      j.at(e.i, e.j) = e.v;
    }
    m.acs = InvariantACS{j};
  }
  m.coframe = coframe_from_split(m.algebra, m.split);
  return m;
}

HomogeneousModel load_model_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(Errc::ParseError, "cannot open model file '" + path + "'");
  return parse_model(f, path);
}

}  // namespace nkh
