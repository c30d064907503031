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

#ifndef BENCHDYN_CLI_H_
#define BENCHDYN_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace benchdyn {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;

// Entry point of the `benchdyn` tool; returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// %.12g, with "inf" / "-inf" / "nan" spelled out.
std::string format_number(double x);

}  // namespace benchdyn

#endif  // BENCHDYN_CLI_H_
