// Copyright 2026 The rshar Authors
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

#ifndef RSHAR_RSHAR_HPP
#define RSHAR_RSHAR_HPP

#include "rshar/bitvector.hpp"
#include "rshar/common.hpp"
#include "rshar/datamodel.hpp"
#include "rshar/ingest.hpp"
#include "rshar/itemset.hpp"
#include "rshar/mapcode.hpp"
#include "rshar/mining.hpp"
#include "rshar/pipeline.hpp"
#include "rshar/rules.hpp"
#include "rshar/synth.hpp"

#endif  // RSHAR_RSHAR_HPP
