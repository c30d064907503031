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

#ifndef BENCHDYN_PARALLEL_H_
#define BENCHDYN_PARALLEL_H_

namespace benchdyn {

// Thread count for OpenMP regions: `requested` if positive, else the
// BENCHDYN_THREADS environment variable, else the OpenMP default.
int resolve_threads(int requested = 0);

}  // namespace benchdyn

#endif  // BENCHDYN_PARALLEL_H_
