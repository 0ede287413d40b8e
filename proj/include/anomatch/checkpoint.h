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

#ifndef ANOMATCH_CHECKPOINT_H_
#define ANOMATCH_CHECKPOINT_H_

#include <filesystem>
#include <string>

#include "anomatch/model.h"

namespace anomatch {

// Text checkpoint. Layout:
//
//   anomatch-checkpoint 1
//   input_dim <d>
//   hidden_dim <d_h>
//   config <single-line JSON, may be {}>
//   w1 <d> <d_h>      followed by d rows
//   b1 <d_h>          followed by one row
//   w2 <d> <d_h>      followed by d rows
//   b2 <d_h>          followed by one row
//
// Numbers use the shortest decimal form that round-trips, so loading
// reproduces every parameter bit for bit.
struct Checkpoint {
  ModelParameters params;
  std::string config_json = "{}";
};

void SaveCheckpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint LoadCheckpoint(const std::filesystem::path& path);

}  // namespace anomatch

#endif  // ANOMATCH_CHECKPOINT_H_
