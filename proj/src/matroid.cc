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

#include "ksub/matroid.h"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>
#include <string>

#include "ksub/error.h"

namespace ksub {
namespace {

uint32_t ToMask(std::span<const int> subset) {
  uint32_t mask = 0;
  for (int e : subset) mask |= 1u << e;
  return mask;
}

ElementSet FromMask(uint32_t mask) {
  ElementSet set;
  for (int e = 0; mask != 0; ++e, mask >>= 1) {
    if (mask & 1u) set.push_back(e);
  }
  return set;
}

std::vector<char> MaskTable(int ground_size,
                            const std::vector<ElementSet>& family) {
  if (ground_size < 0 || ground_size > kMaxExplicitGroundSize) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "explicit matroid ground size " + std::to_string(ground_size));
  }
  std::vector<char> table(size_t{1} << ground_size, 0);
  for (const ElementSet& set : family) {
    for (int e : set) {
      if (e < 0 || e >= ground_size) {
        throw Error(ErrorCode::kInvalidArgument,
                    "element " + std::to_string(e) + " outside ground set");
      }
    }
    table[ToMask(set)] = 1;
  }
  return table;
}

AxiomReport CheckMaskTable(int ground_size, const std::vector<char>& table) {
  AxiomReport report;
  report.empty_set_ok = table[0] != 0;
  const uint32_t full = static_cast<uint32_t>(table.size());
  // (M2): removing one element at a time suffices by induction. Elements are
  // dropped from the highest index down.
  for (uint32_t a = 0; a < full && report.downward_closed_ok; ++a) {
    if (!table[a]) continue;
    for (int e = ground_size - 1; e >= 0; --e) {
      if (!(a & (1u << e))) continue;
      const uint32_t sub = a & ~(1u << e);
      if (!table[sub]) {
        report.downward_closed_ok = false;
        report.downward_witness = FromMask(sub);
        break;
      }
    }
  }
  for (uint32_t a = 0; a < full && report.exchange_ok; ++a) {
    if (!table[a]) continue;
    const int size_a = std::popcount(a);
    for (uint32_t b = 0; b < full; ++b) {
      if (!table[b] || std::popcount(b) <= size_a) continue;
      bool found = false;
      for (uint32_t rest = b & ~a; rest != 0; rest &= rest - 1) {
        const uint32_t e_bit = rest & (~rest + 1);
        if (table[a | e_bit]) {
          found = true;
          break;
        }
      }
      if (!found) {
        report.exchange_ok = false;
        report.exchange_witness = {FromMask(a), FromMask(b)};
        break;
      }
    }
  }
  return report;
}

}  // namespace

UniformMatroid::UniformMatroid(int ground_size, int capacity)
    : ground_size_(ground_size), capacity_(capacity) {
  if (ground_size < 1 || capacity < 0) {
    throw Error(ErrorCode::kInvalidArgument, "bad uniform matroid");
  }
}

bool UniformMatroid::IsIndependent(std::span<const int> subset) const {
  return static_cast<int>(subset.size()) <= capacity_;
}

PartitionMatroid::PartitionMatroid(int ground_size,
                                   std::vector<ElementSet> blocks,
                                   std::vector<int> capacities)
    : ground_size_(ground_size),
      blocks_(std::move(blocks)),
      capacities_(std::move(capacities)),
      block_of_(ground_size, -1) {
  if (blocks_.size() != capacities_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "one capacity per block");
  }
  for (int b = 0; b < static_cast<int>(blocks_.size()); ++b) {
    if (capacities_[b] < 0) {
      throw Error(ErrorCode::kInvalidArgument, "negative block capacity");
    }
    std::sort(blocks_[b].begin(), blocks_[b].end());
    for (int e : blocks_[b]) {
      if (e < 0 || e >= ground_size) {
        throw Error(ErrorCode::kInvalidArgument,
                    "element " + std::to_string(e) + " outside ground set");
      }
      if (block_of_[e] != -1) {
        throw Error(ErrorCode::kInvalidArgument,
                    "element " + std::to_string(e) + " in two blocks");
      }
      block_of_[e] = b;
    }
  }
  for (int e = 0; e < ground_size; ++e) {
    if (block_of_[e] == -1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "element " + std::to_string(e) + " in no block");
    }
  }
}

bool PartitionMatroid::IsIndependent(std::span<const int> subset) const {
  std::vector<int> used(blocks_.size(), 0);
  for (int e : subset) {
    if (++used[block_of_[e]] > capacities_[block_of_[e]]) return false;
  }
  return true;
}

ExplicitMatroid::ExplicitMatroid(int ground_size,
                                 const std::vector<ElementSet>& family)
    : ground_size_(ground_size), independent_(MaskTable(ground_size, family)) {
  const AxiomReport report = CheckMaskTable(ground_size, independent_);
  if (!report.ok()) {
    throw Error(ErrorCode::kNotAMatroid,
                std::string("family violates ") +
                    (!report.empty_set_ok        ? "(M1)"
                     : !report.downward_closed_ok ? "(M2)"
                                                  : "(M3)"));
  }
}

ExplicitMatroid ExplicitMatroid::Materialize(const MatroidOracle& matroid) {
  const int n = matroid.ground_size();
  if (n > kMaxExplicitGroundSize) {
    throw Error(ErrorCode::kInstanceTooLarge, "matroid too large");
  }
  std::vector<ElementSet> family;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    const ElementSet set = FromMask(mask);
    if (matroid.IsIndependent(set)) family.push_back(set);
  }
  return ExplicitMatroid(n, family);
}

bool ExplicitMatroid::IsIndependent(std::span<const int> subset) const {
  return independent_[ToMask(subset)] != 0;
}

std::vector<ElementSet> ExplicitMatroid::Family() const {
  std::vector<ElementSet> family;
  for (uint32_t mask = 0; mask < independent_.size(); ++mask) {
    if (independent_[mask]) family.push_back(FromMask(mask));
  }
  return family;
}

AxiomReport CheckMatroidAxioms(int ground_size,
                               const std::vector<ElementSet>& family) {
  return CheckMaskTable(ground_size, MaskTable(ground_size, family));
}

AxiomReport CheckMatroidAxioms(const MatroidOracle& matroid) {
  const int n = matroid.ground_size();
  if (n > kMaxExplicitGroundSize) {
    throw Error(ErrorCode::kInstanceTooLarge, "matroid too large");
  }
  std::vector<char> table(size_t{1} << n, 0);
  for (uint32_t mask = 0; mask < table.size(); ++mask) {
    table[mask] = matroid.IsIndependent(FromMask(mask)) ? 1 : 0;
  }
  return CheckMaskTable(n, table);
}

std::vector<int> AvailableElements(const MatroidOracle& matroid,
                                   const Assignment& x) {
  if (matroid.ground_size() != x.n()) {
    throw Error(ErrorCode::kDimsMismatch, "matroid ground size != n");
  }
  std::vector<int> support = x.Support();
  if (!matroid.IsIndependent(support)) {
    throw Error(ErrorCode::kInfeasibleState, "supp(x) is not independent");
  }
  std::vector<int> available;
  std::vector<int> extended;
  for (int e = 0; e < x.n(); ++e) {
    if (x[e] != 0) continue;
    extended = support;
    extended.insert(std::upper_bound(extended.begin(), extended.end(), e), e);
    if (matroid.IsIndependent(extended)) available.push_back(e);
  }
  return available;
}

int MatroidRank(const MatroidOracle& matroid) {
  ElementSet basis;
  for (int e = 0; e < matroid.ground_size(); ++e) {
    basis.push_back(e);
    if (!matroid.IsIndependent(basis)) basis.pop_back();
  }
  return static_cast<int>(basis.size());
}

PartitionMatroid ReadPartitionMatroid(std::istream& in, int ground_size) {
  std::vector<ElementSet> blocks;
  std::vector<int> caps;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    std::istringstream tokens(line);
    std::string keyword;
    if (!(tokens >> keyword)) continue;
    const auto fail = [&](const std::string& what) {
      return Error(ErrorCode::kParseError, "partition file line " +
                                               std::to_string(line_no) +
                                               ": " + what);
    };
    if (keyword != "block") throw fail("expected 'block <cap>: ...'");
    std::string cap_token;
    if (!(tokens >> cap_token)) throw fail("missing capacity");
    std::string rest;
    std::getline(tokens, rest);
    if (cap_token.back() == ':') {
      cap_token.pop_back();
    } else {
      auto colon = rest.find(':');
      if (colon == std::string::npos ||
          rest.find_first_not_of(" \t") != colon) {
        throw fail("missing ':' after capacity");
      }
      rest = rest.substr(colon + 1);
    }
    int cap = 0;
    try {
      size_t used = 0;
      cap = std::stoi(cap_token, &used);
      if (used != cap_token.size()) throw fail("bad capacity");
    } catch (const std::logic_error&) {
      throw fail("bad capacity '" + cap_token + "'");
    }
    ElementSet block;
    std::istringstream elements(rest);
    std::string token;
    while (elements >> token) {
      try {
        size_t used = 0;
        block.push_back(std::stoi(token, &used));
        if (used != token.size()) throw fail("bad element");
      } catch (const std::logic_error&) {
        throw fail("bad element '" + token + "'");
      }
    }
    blocks.push_back(std::move(block));
    caps.push_back(cap);
  }
  return PartitionMatroid(ground_size, std::move(blocks), std::move(caps));
}

PartitionMatroid ReadPartitionMatroidFile(const std::string& path,
                                          int ground_size) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  return ReadPartitionMatroid(in, ground_size);
}

}  // namespace ksub
