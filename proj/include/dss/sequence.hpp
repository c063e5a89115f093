#pragma once

// VectorSequence and its plain-text file format:
//
//   n k M
//   a_1[0] ... a_1[k-1]
//   ...
//   a_n[0] ... a_n[k-1]

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dss {

using Vec = std::vector<std::int64_t>;

struct VectorSequence {
  int k = 1;
  std::int64_t bound = 0;  // M
  std::vector<Vec> vectors;

  std::size_t n() const { return vectors.size(); }

  // Every vector has k components, each in [0, M].
  void validate() const {
    if (k < 1) throw std::invalid_argument("sequence dimension must be >= 1");
    if (bound < 0) throw std::invalid_argument("sequence bound M must be >= 0");
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (vectors[i].size() != static_cast<std::size_t>(k))
        throw std::invalid_argument("vector " + std::to_string(i + 1) + " has wrong dimension");
      for (auto c : vectors[i])
        if (c < 0 || c > bound)
          throw std::invalid_argument("vector " + std::to_string(i + 1) + " has a component outside [0, M]");
    }
  }

  bool operator==(const VectorSequence&) const = default;
};

// Builds a sequence from scalars (k = 1) with M = max element.
inline VectorSequence scalar_sequence(const std::vector<std::int64_t>& values) {
  VectorSequence s;
  s.k = 1;
  for (auto v : values) {
    s.vectors.push_back({v});
    if (v > s.bound) s.bound = v;
  }
  return s;
}

inline VectorSequence read_sequence(std::istream& in) {
  long long n = -1;
  VectorSequence s;
  if (!(in >> n >> s.k >> s.bound) || n < 0) throw std::invalid_argument("sequence header must be 'n k M'");
  s.vectors.assign(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(s.k > 0 ? s.k : 0)));
  for (auto& v : s.vectors)
    for (auto& c : v)
      if (!(in >> c)) throw std::invalid_argument("sequence file truncated");
  std::string extra;
  if (in >> extra) throw std::invalid_argument("trailing data after sequence");
  s.validate();
  return s;
}

inline VectorSequence parse_sequence(const std::string& text) {
  std::istringstream in(text);
  return read_sequence(in);
}

inline void write_sequence(std::ostream& out, const VectorSequence& s) {
  out << s.n() << ' ' << s.k << ' ' << s.bound << '\n';
  for (const auto& v : s.vectors) {
    for (std::size_t j = 0; j < v.size(); ++j) out << (j ? " " : "") << v[j];
    out << '\n';
  }
}

inline std::string format_sequence(const VectorSequence& s) {
  std::ostringstream out;
  write_sequence(out, s);
  return out.str();
}

}  // namespace dss
