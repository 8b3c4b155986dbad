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

#ifndef KSUB_INSTANCE_IO_H_
#define KSUB_INSTANCE_IO_H_

#include <istream>
#include <memory>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "ksub/coverage.h"
#include "ksub/lattice.h"
#include "ksub/value_oracle.h"

namespace ksub {

enum class InstanceKind { kTable, kCoverage, kCoupled };

// An objective loaded from (or written to) an instance file.
//
//   ksub v1 n=<n> k=<k> kind=<table|coverage|coupled>
//
// table:    one `<label-string> <value>` line per lattice point.
// coverage: `universe <U>`, `weights w_0 ... w_{U-1}`, then
//           `pair <e> <i>: u_1 u_2 ...` for every (element, type) pair.
// coupled:  as coverage plus `lambda l_1 ... l_k`.
// `#` starts a comment; whitespace is free.
struct Instance {
  Dims dims;
  InstanceKind kind;
  std::variant<std::vector<double>, CoverageInstance, CoupledInstance> data;

  std::unique_ptr<ValueOracle> MakeOracle() const;
};

Instance ReadInstance(std::istream& in);
Instance ReadInstanceFile(const std::string& path);
void WriteInstance(std::ostream& out, const Instance& instance);

Instance TableInstance(Dims dims, std::vector<double> values);
Instance MakeInstance(CoverageInstance coverage);
Instance MakeInstance(CoupledInstance coupled);

}  // namespace ksub

#endif  // KSUB_INSTANCE_IO_H_
