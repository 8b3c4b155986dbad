// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ksub/instance_io.h"

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "ksub/error.h"

namespace ksub {
namespace {

std::string StripComment(std::string line) {
  if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
  return line;
}

std::vector<std::string> Split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

double ParseDouble(const std::string& token, int line_no) {
  try {
    size_t used = 0;
    const double v = std::stod(token, &used);
    if (used == token.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) +
                                          ": bad number '" + token + "'");
}

int ParseInt(const std::string& token, int line_no) {
  try {
    size_t used = 0;
    const int v = std::stoi(token, &used);
    if (used == token.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) +
                                          ": bad integer '" + token + "'");
}

}  // namespace

std::unique_ptr<ValueOracle> Instance::MakeOracle() const {
  switch (kind) {
    case InstanceKind::kTable:
      return std::make_unique<TableOracle>(dims,
                                           std::get<std::vector<double>>(data));
    case InstanceKind::kCoverage:
      return ExactOracle(std::get<CoverageInstance>(data));
    case InstanceKind::kCoupled:
      return ExactOracle(std::get<CoupledInstance>(data));
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown instance kind");
}

Instance TableInstance(Dims dims, std::vector<double> values) {
  if (values.size() != dims.LatticeSize()) {
    throw Error(ErrorCode::kDimsMismatch, "table size != lattice size");
  }
  return Instance{dims, InstanceKind::kTable, std::move(values)};
}

Instance MakeInstance(CoverageInstance coverage) {
  const Dims dims = coverage.dims();
  return Instance{dims, InstanceKind::kCoverage, std::move(coverage)};
}

Instance MakeInstance(CoupledInstance coupled) {
  const Dims dims = coupled.dims();
  return Instance{dims, InstanceKind::kCoupled, std::move(coupled)};
}

Instance ReadInstance(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    header = Split(StripComment(line));
  }
  if (header.size() != 5 || header[0] != "ksub" || header[1] != "v1") {
    throw Error(ErrorCode::kParseError,
                "expected header 'ksub v1 n=<n> k=<k> kind=<kind>'");
  }
  int n = -1;
  int k = -1;
  std::string kind_name;
  for (size_t f = 2; f < header.size(); ++f) {
    const auto eq = header[f].find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kParseError, "bad header field " + header[f]);
    }
    const std::string key = header[f].substr(0, eq);
    const std::string value = header[f].substr(eq + 1);
    if (key == "n") {
      n = ParseInt(value, line_no);
    } else if (key == "k") {
      k = ParseInt(value, line_no);
    } else if (key == "kind") {
      kind_name = value;
    } else {
      throw Error(ErrorCode::kParseError, "unknown header field " + key);
    }
  }
  if (n < 1 || k < 1) {
    throw Error(ErrorCode::kParseError, "header needs n >= 1 and k >= 1");
  }
  const Dims dims(n, k);

  if (kind_name == "table") {
    const uint64_t size = dims.LatticeSize();
    if (size > (uint64_t{1} << 28)) {
      throw Error(ErrorCode::kInstanceTooLarge, "table lattice too large");
    }
    std::vector<double> values(size, 0.0);
    std::vector<char> seen(size, 0);
    uint64_t filled = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const std::vector<std::string> fields = Split(StripComment(line));
      if (fields.empty()) continue;
      if (fields.size() != 2) {
        throw Error(ErrorCode::kParseError,
                    "line " + std::to_string(line_no) +
                        ": expected '<labels> <value>'");
      }
      const uint64_t index = Assignment::Parse(dims, fields[0]).LatticeIndex();
      if (seen[index]) {
        throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) +
                                                ": duplicate point " +
                                                fields[0]);
      }
      seen[index] = 1;
      values[index] = ParseDouble(fields[1], line_no);
      ++filled;
    }
    if (filled != size) {
      throw Error(ErrorCode::kParseError,
                  "table lists " + std::to_string(filled) + " of " +
                      std::to_string(size) + " lattice points");
    }
    return TableInstance(dims, std::move(values));
  }

  if (kind_name != "coverage" && kind_name != "coupled") {
    throw Error(ErrorCode::kParseError, "unknown instance kind " + kind_name);
  }
  std::optional<int> universe;
  std::vector<double> weights;
  std::vector<double> lambda;
  std::vector<std::vector<int>> covers(static_cast<size_t>(n) * k);
  std::vector<char> have_pair(covers.size(), 0);
  while (std::getline(in, line)) {
    ++line_no;
    std::string stripped = StripComment(line);
    // `pair e i:` may glue the colon to the type.
    for (char& c : stripped) {
      if (c == ':') c = ' ';
    }
    const std::vector<std::string> fields = Split(stripped);
    if (fields.empty()) continue;
    const std::string& key = fields[0];
    if (key == "universe" && fields.size() == 2) {
      universe = ParseInt(fields[1], line_no);
    } else if (key == "weights") {
      for (size_t f = 1; f < fields.size(); ++f) {
        weights.push_back(ParseDouble(fields[f], line_no));
      }
    } else if (key == "lambda") {
      for (size_t f = 1; f < fields.size(); ++f) {
        lambda.push_back(ParseDouble(fields[f], line_no));
      }
    } else if (key == "pair" && fields.size() >= 3) {
      const int e = ParseInt(fields[1], line_no);
      const int i = ParseInt(fields[2], line_no);
      if (e < 0 || e >= n || i < 1 || i > k) {
        throw Error(ErrorCode::kParseError,
                    "line " + std::to_string(line_no) + ": pair out of range");
      }
      const size_t slot = static_cast<size_t>(e) * k + (i - 1);
      have_pair[slot] = 1;
      for (size_t f = 3; f < fields.size(); ++f) {
        covers[slot].push_back(ParseInt(fields[f], line_no));
      }
    } else {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) +
                                              ": unexpected '" + key + "'");
    }
  }
  if (!universe || static_cast<int>(weights.size()) != *universe) {
    throw Error(ErrorCode::kParseError,
                "coverage needs 'universe U' and U weights");
  }
  CoverageInstance coverage(dims, std::move(weights), std::move(covers));
  if (kind_name == "coverage") return MakeInstance(std::move(coverage));
  return MakeInstance(CoupledInstance(std::move(coverage), std::move(lambda)));
}

Instance ReadInstanceFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  return ReadInstance(in);
}

void WriteInstance(std::ostream& out, const Instance& instance) {
  const Dims& dims = instance.dims;
  const char* kind = instance.kind == InstanceKind::kTable      ? "table"
                     : instance.kind == InstanceKind::kCoverage ? "coverage"
                                                                : "coupled";
  out << "ksub v1 n=" << dims.n() << " k=" << dims.k() << " kind=" << kind
      << "\n";
  out << std::setprecision(17);
  if (instance.kind == InstanceKind::kTable) {
    const auto& values = std::get<std::vector<double>>(instance.data);
    Assignment x(dims);
    for (double v : values) {
      out << x.ToString() << " " << v << "\n";
      NextLatticePoint(x);
    }
    return;
  }
  const CoverageInstance& coverage =
      instance.kind == InstanceKind::kCoverage
          ? std::get<CoverageInstance>(instance.data)
          : std::get<CoupledInstance>(instance.data).coverage();
  out << "universe " << coverage.universe_size() << "\nweights";
  for (double w : coverage.weights()) out << " " << w;
  out << "\n";
  if (instance.kind == InstanceKind::kCoupled) {
    out << "lambda";
    for (double l : std::get<CoupledInstance>(instance.data).lambda()) {
      out << " " << l;
    }
    out << "\n";
  }
  for (int e = 0; e < dims.n(); ++e) {
    for (int i = 1; i <= dims.k(); ++i) {
      out << "pair " << e << " " << i << ":";
      for (int u : coverage.Covered(e, i)) out << " " << u;
      out << "\n";
    }
  }
}

}  // namespace ksub
