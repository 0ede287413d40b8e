// Copyright 2026 The anomatch Authors
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

#ifndef ANOMATCH_PARALLEL_H_
#define ANOMATCH_PARALLEL_H_

namespace anomatch {

// How reductions inside the kernels are ordered.
//  kDeterministic: every output element is reduced by one thread in a fixed
//    order, so results are bit-identical for any thread count.
//  kFast: per-thread partial sums merged at the end; results agree with the
//    deterministic mode only to rounding.
enum class ExecutionMode { kDeterministic, kFast };

int MaxThreads();
int ThreadIndex();

// Applies the thread count from ANOMATCH_NUM_THREADS when set. Returns the
// resulting maximum thread count.
int ConfigureThreadsFromEnv();
void SetThreads(int n);

}  // namespace anomatch

#endif  // ANOMATCH_PARALLEL_H_
