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

#include "ksub/lattice.h"

#include <charconv>
#include <limits>
#include <string>

#include "ksub/error.h"
#include "ksub/rng.h"

namespace ksub {

Dims::Dims(int n, int k) : n_(n), k_(k) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
}

uint64_t Dims::LatticeSize() const {
  const uint64_t radix = static_cast<uint64_t>(k_) + 1;
  uint64_t size = 1;
  for (int e = 0; e < n_; ++e) {
    if (size > std::numeric_limits<uint64_t>::max() / radix) {
      return std::numeric_limits<uint64_t>::max();
    }
    size *= radix;
  }
  return size;
}

Assignment::Assignment(Dims dims) : dims_(dims), labels_(dims.n(), 0) {}

Assignment::Assignment(Dims dims, std::vector<int> labels)
    : dims_(dims), labels_(std::move(labels)) {
  if (static_cast<int>(labels_.size()) != dims_.n()) {
    throw Error(ErrorCode::kDimsMismatch,
                "label vector has length " + std::to_string(labels_.size()) +
                    ", expected " + std::to_string(dims_.n()));
  }
  for (int label : labels_) {
    if (label < 0 || label > dims_.k()) {
      throw Error(ErrorCode::kTypeOutOfRange,
                  "label " + std::to_string(label) + " outside 0.." +
                      std::to_string(dims_.k()));
    }
  }
}

Assignment Assignment::FromLatticeIndex(Dims dims, uint64_t index) {
  Assignment x(dims);
  const uint64_t radix = static_cast<uint64_t>(dims.k()) + 1;
  for (int e = 0; e < dims.n(); ++e) {
    x.labels_[e] = static_cast<int>(index % radix);
    index /= radix;
  }
  if (index != 0) {
    throw Error(ErrorCode::kInvalidArgument, "lattice index out of range");
  }
  return x;
}

Assignment Assignment::Parse(Dims dims, std::string_view text) {
  std::vector<int> labels;
  const bool list = text.find(',') != std::string_view::npos;
  if (list) {
    size_t start = 0;
    while (start <= text.size()) {
      size_t end = text.find(',', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view token = text.substr(start, end - start);
      int value = 0;
      auto [ptr, ec] =
          std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size() ||
          token.empty()) {
        throw Error(ErrorCode::kParseError,
                    "bad label '" + std::string(token) + "'");
      }
      labels.push_back(value);
      start = end + 1;
    }
  } else {
    for (char c : text) {
      if (c < '0' || c > '9') {
        throw Error(ErrorCode::kParseError,
                    "bad label string '" + std::string(text) + "'");
      }
      labels.push_back(c - '0');
    }
  }
  return Assignment(dims, std::move(labels));
}

void Assignment::Set(int e, int type) {
  if (e < 0 || e >= n()) {
    throw Error(ErrorCode::kInvalidArgument,
                "element " + std::to_string(e) + " out of range");
  }
  if (type < 0 || type > k()) {
    throw Error(ErrorCode::kTypeOutOfRange,
                "type " + std::to_string(type) + " out of range");
  }
  labels_[e] = type;
}

Assignment Assignment::With(int e, int type) const {
  Assignment copy = *this;
  copy.Set(e, type);
  return copy;
}

std::vector<int> Assignment::Support() const {
  std::vector<int> support;
  for (int e = 0; e < n(); ++e) {
    if (labels_[e] != 0) support.push_back(e);
  }
  return support;
}

std::vector<int> Assignment::SupportOfType(int type) const {
  std::vector<int> support;
  for (int e = 0; e < n(); ++e) {
    if (labels_[e] == type) support.push_back(e);
  }
  return support;
}

int Assignment::SupportSize() const {
  int count = 0;
  for (int label : labels_) count += label != 0;
  return count;
}

int Assignment::CountOfType(int type) const {
  int count = 0;
  for (int label : labels_) count += label == type;
  return count;
}

uint64_t Assignment::LatticeIndex() const {
  const uint64_t radix = static_cast<uint64_t>(k()) + 1;
  uint64_t index = 0;
  for (int e = n() - 1; e >= 0; --e) {
    index = index * radix + static_cast<uint64_t>(labels_[e]);
  }
  return index;
}

std::string Assignment::ToString() const {
  std::string out;
  if (k() <= 9) {
    for (int label : labels_) out.push_back(static_cast<char>('0' + label));
    return out;
  }
  for (int e = 0; e < n(); ++e) {
    if (e > 0) out.push_back(',');
    out += std::to_string(labels_[e]);
  }
  return out;
}

size_t Assignment::Hash() const {
  uint64_t h = SplitMix64(static_cast<uint64_t>(n()) * 31 + k());
  for (int label : labels_) h = SplitMix64(h ^ static_cast<uint64_t>(label));
  return static_cast<size_t>(h);
}

bool MixedRadixLess(const Assignment& a, const Assignment& b) {
  for (int e = a.n() - 1; e >= 0; --e) {
    if (a[e] != b[e]) return a[e] < b[e];
  }
  return false;
}

bool NextLatticePoint(Assignment& x) {
  for (int e = 0; e < x.n(); ++e) {
    if (x[e] < x.k()) {
      x.Set(e, x[e] + 1);
      return true;
    }
    x.Set(e, 0);
  }
  return false;
}

bool Precedes(const Assignment& x, const Assignment& y) {
  if (!(x.dims() == y.dims())) {
    throw Error(ErrorCode::kDimsMismatch, "precedes on different dims");
  }
  for (int e = 0; e < x.n(); ++e) {
    if (x[e] != 0 && x[e] != y[e]) return false;
  }
  return true;
}

}  // namespace ksub
