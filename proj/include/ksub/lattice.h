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

#ifndef KSUB_LATTICE_H_
#define KSUB_LATTICE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ksub {

// Ground-set size n and number of types k. Both must be at least 1.
class Dims {
 public:
  Dims(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }

  // (k+1)^n, saturating at UINT64_MAX.
  uint64_t LatticeSize() const;

  friend bool operator==(const Dims&, const Dims&) = default;

 private:
  int n_;
  int k_;
};

// A point of the lattice (k+1)^V stored as one label per element; label 0
// means unassigned. Type supports are disjoint by construction.
class Assignment {
 public:
  explicit Assignment(Dims dims);
  Assignment(Dims dims, std::vector<int> labels);

  // Inverse of LatticeIndex(): element 0 is the least significant digit.
  static Assignment FromLatticeIndex(Dims dims, uint64_t index);

  // Accepts a digit string ("0120") when k <= 9, or a comma separated list.
  static Assignment Parse(Dims dims, std::string_view text);

  const Dims& dims() const { return dims_; }
  int n() const { return dims_.n(); }
  int k() const { return dims_.k(); }

  int operator[](int e) const { return labels_[e]; }
  std::span<const int> labels() const { return labels_; }

  void Set(int e, int type);
  Assignment With(int e, int type) const;

  bool IsAssigned(int e) const { return labels_[e] != 0; }
  std::vector<int> Support() const;
  std::vector<int> SupportOfType(int type) const;
  int SupportSize() const;
  int CountOfType(int type) const;

  // Mixed-radix index sum_e label[e] * (k+1)^e. Requires LatticeSize() to be
  // representable.
  uint64_t LatticeIndex() const;

  std::string ToString() const;

  size_t Hash() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  Dims dims_;
  std::vector<int> labels_;
};

// Strict order consistent with increasing LatticeIndex(), without overflow.
bool MixedRadixLess(const Assignment& a, const Assignment& b);

// Advances to the next lattice point in mixed-radix order. Returns false
// after the last point (all labels k), leaving x at the all-zero point.
bool NextLatticePoint(Assignment& x);

// x ⪯ y: every element assigned in x carries the same type in y.
bool Precedes(const Assignment& x, const Assignment& y);

struct AssignmentHash {
  size_t operator()(const Assignment& x) const { return x.Hash(); }
};

}  // namespace ksub

#endif  // KSUB_LATTICE_H_
