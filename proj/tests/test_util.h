// Copyright 2026 The esskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ESSKIT_TESTS_TEST_UTIL_H_
#define ESSKIT_TESTS_TEST_UTIL_H_

#include <string>

#include "esskit/game_io.h"
#include "esskit/sequence_form.h"
#include "esskit/symmetry.h"

namespace esskit::testing {

inline std::string DataPath(const std::string& name) {
  return std::string(ESSKIT_TEST_DATA) + "/" + name;
}

inline SequenceForm SymmetricForm(const GameTree& tree,
                                  const NoiseTable* noise = nullptr) {
  const SymmetryCheck sym = CheckSymmetry(tree);
  if (!sym.map) throw std::runtime_error("test game is not symmetric");
  return BuildSequenceForm(tree, *sym.map, noise);
}

}  // namespace esskit::testing

#endif  // ESSKIT_TESTS_TEST_UTIL_H_
