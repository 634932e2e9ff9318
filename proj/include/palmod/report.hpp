#pragma once

// Versioned line-oriented serialization for complexes and reports, plus the
// human-readable renderings.  All output is byte-deterministic: the same
// inputs always produce the same bytes.

#include "palmod/complex.hpp"
#include "palmod/homology.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace palmod {

inline std::string join_numbers(const std::vector<long long>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(v[i]);
  }
  return s;
}

inline std::vector<long long> split_numbers(const std::string& s) {
  std::istringstream in(s);
  std::vector<long long> out;
  long long v;
  while (in >> v) out.push_back(v);
  return out;
}

// ---- complex files -------------------------------------------------------
//
//   palmod complex 1
//   family <token>
//   n <int>
//   p <int>
//   dimension <int>
//   fvector <f0> ... <fD>
//   begin cells <r>
//   <encoding> [face indices, r+1 of them when r >= 1]
//   end cells <r>
//   ...
//   end complex

inline void write_complex(std::ostream& os, const QuotientComplex& q) {
  os << "palmod complex 1\n";
  os << "family " << family_token(q.spec.family) << "\n";
  os << "n " << q.spec.n << "\n";
  os << "p " << q.spec.p << "\n";
  os << "dimension " << q.dimension() << "\n";
  os << "fvector";
  for (const auto& layer : q.cells) os << ' ' << layer.size();
  os << "\n";
  for (int r = 0; r <= q.dimension(); ++r) {
    os << "begin cells " << r << "\n";
    for (std::size_t i = 0; i < q.cells[r].size(); ++i) {
      os << q.cells[r][i];
      if (r >= 1)
        for (int f : q.cell_faces[r][i]) os << ' ' << f;
      os << "\n";
    }
    os << "end cells " << r << "\n";
  }
  os << "end complex\n";
}

inline QuotientComplex read_complex(std::istream& is) {
  auto fail = [](const std::string& why) -> void {
    throw std::runtime_error("malformed complex file: " + why);
  };
  auto next_line = [&](std::string& line) {
    if (!std::getline(is, line)) fail("unexpected end of file");
  };
  std::string line;
  next_line(line);
  if (line != "palmod complex 1") fail("bad header");

  auto keyed = [&](const std::string& key) {
    next_line(line);
    if (line.rfind(key + " ", 0) != 0) fail("expected '" + key + "'");
    return line.substr(key.size() + 1);
  };

  QuotientComplex q;
  q.spec.family = family_from_token(keyed("family"));
  try {
    q.spec.n = std::stoi(keyed("n"));
    q.spec.p = std::stoi(keyed("p"));
  } catch (const std::exception&) {
    fail("bad integer field");
  }
  int dim = 0;
  try {
    dim = std::stoi(keyed("dimension"));
  } catch (const std::exception&) {
    fail("bad dimension");
  }
  if (dim < 0) fail("negative dimension");
  std::vector<long long> fvec = split_numbers(keyed("fvector"));
  if (static_cast<int>(fvec.size()) != dim + 1) fail("fvector length disagrees with dimension");

  q.cells.resize(static_cast<std::size_t>(dim) + 1);
  q.cell_faces.resize(static_cast<std::size_t>(dim) + 1);
  for (int r = 0; r <= dim; ++r) {
    next_line(line);
    if (line != "begin cells " + std::to_string(r)) fail("expected cell block " + std::to_string(r));
    for (long long i = 0; i < fvec[static_cast<std::size_t>(r)]; ++i) {
      next_line(line);
      std::istringstream ls(line);
      std::string enc;
      if (!(ls >> enc)) fail("missing cell encoding");
      std::vector<int> faces;
      int f;
      while (ls >> f) faces.push_back(f);
      if (r == 0) {
        if (!faces.empty()) fail("0-cells carry no faces");
      } else {
        if (static_cast<int>(faces.size()) != r + 1) fail("wrong face count");
        for (int idx : faces)
          if (idx < 0 || idx >= static_cast<int>(q.cells[r - 1].size())) fail("face index out of range");
      }
      q.cells[r].push_back(enc);
      if (r >= 1) q.cell_faces[r].push_back(std::move(faces));
    }
    next_line(line);
    if (line != "end cells " + std::to_string(r)) fail("expected end of cell block");
  }
  next_line(line);
  if (line != "end complex") fail("missing trailer");
  return q;
}

// ---- report files --------------------------------------------------------
//
//   palmod report 1
//   kind <token>
//   <key> <value...>
//   ...
//   end report

struct ReportDoc {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> fields;

  void add(const std::string& key, const std::string& value) { fields.push_back({key, value}); }
  void add(const std::string& key, long long value) { add(key, std::to_string(value)); }
  void add_flag(const std::string& key, bool ok) { add(key, ok ? std::string("pass") : std::string("fail")); }

  const std::string* find(const std::string& key) const {
    for (const auto& [k, v] : fields)
      if (k == key) return &v;
    return nullptr;
  }
};

inline void write_report(std::ostream& os, const ReportDoc& doc) {
  os << "palmod report 1\n";
  os << "kind " << doc.kind << "\n";
  for (const auto& [k, v] : doc.fields) os << k << ' ' << v << "\n";
  os << "end report\n";
}

inline ReportDoc read_report(std::istream& is) {
  auto fail = [](const std::string& why) -> void {
    throw std::runtime_error("malformed report file: " + why);
  };
  std::string line;
  if (!std::getline(is, line) || line != "palmod report 1") fail("bad header");
  if (!std::getline(is, line) || line.rfind("kind ", 0) != 0) fail("missing kind");
  ReportDoc doc;
  doc.kind = line.substr(5);
  while (std::getline(is, line)) {
    if (line == "end report") return doc;
    std::size_t sp = line.find(' ');
    if (sp == std::string::npos || sp == 0) fail("bad field line");
    doc.add(line.substr(0, sp), line.substr(sp + 1));
  }
  fail("missing trailer");
  return doc;  // unreachable
}

inline std::string render_text(const ReportDoc& doc) {
  std::string s = doc.kind + " report\n";
  for (const auto& [k, v] : doc.fields) s += "  " + k + ": " + v + "\n";
  return s;
}

inline std::string render_complex_text(const QuotientComplex& q) {
  ComplexStats st = stats(q);
  std::string s = "complex " + family_token(q.spec.family);
  if (q.spec.family != Family::Fixture) {
    s += " n=" + std::to_string(q.spec.n);
    if (q.spec.family == Family::PSigma) s += " p=" + std::to_string(q.spec.p);
  }
  s += "\n  dimension: " + std::to_string(st.dimension);
  s += "\n  f-vector: " + join_numbers(st.f_vector);
  s += "\n  euler characteristic: " + std::to_string(st.euler);
  s += "\n  components: " + std::to_string(st.components);
  s += "\n";
  return s;
}

}  // namespace palmod
