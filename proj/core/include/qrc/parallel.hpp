// Copyright 2026 The qrc Authors
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

#pragma once

#include <cstddef>
#include <functional>

namespace qrc {

// Name of the environment variable that overrides the worker-pool size.
inline constexpr const char* kWorkersEnv = "QRC_WORKERS";

// requested > 0 wins; otherwise QRC_WORKERS if set and positive; otherwise
// std::thread::hardware_concurrency() (at least 1).
unsigned resolve_workers(unsigned requested = 0);

// Runs body(i) for i in [0, n) on up to `workers` threads with a shared atomic
// cursor. The first exception thrown by any body is rethrown after all threads
// join. Callers keep results order-stable by writing to slot i.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace qrc
