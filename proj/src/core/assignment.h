// core/assignment.h

// Copyright 2026 diarkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DIARKIT_CORE_ASSIGNMENT_H_
#define DIARKIT_CORE_ASSIGNMENT_H_

#include <vector>

#include "core/types.h"

namespace diarkit {

// Maximum-weight one-to-one assignment of rows to columns.  Rectangular
// inputs leave the surplus side unmatched (-1).  Cubic in the larger side;
// ties resolve deterministically by scan order.
std::vector<int> MaxWeightAssignment(const Eigen::MatrixXd &weight);

}  // namespace diarkit

#endif  // DIARKIT_CORE_ASSIGNMENT_H_
