// Copyright 2026 The facmech Authors.
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

#ifndef FACMECH_FACMECH_HPP_
#define FACMECH_FACMECH_HPP_

#include "facmech/errors.hpp"
#include "facmech/instances.hpp"
#include "facmech/mechanisms.hpp"
#include "facmech/model.hpp"
#include "facmech/oracle.hpp"
#include "facmech/registry.hpp"
#include "facmech/report_json.hpp"
#include "facmech/verification.hpp"

#endif  // FACMECH_FACMECH_HPP_
