// Copyright 2026 The benchdyn Authors. All rights reserved.
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

#include "benchdyn/parallel.h"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace benchdyn {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BENCHDYN_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
      // Unparseable values fall through to the default.
    }
  }
  return omp_get_max_threads();
}

}  // namespace benchdyn
