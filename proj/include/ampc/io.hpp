/******************************************************************************
 * Copyright 2026 The AMPC Toolkit Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

#pragma once

#include <iosfwd>
#include <string>

#include "ampc/pso.hpp"
#include "ampc/simulate.hpp"

namespace ampc {

/// Fixed shortest-stable formatting so reruns produce byte-identical files.
std::string format_number(double value);

void write_trace_csv(std::ostream& out, const SimResult& result);
void write_summary_csv(std::ostream& out, const SimResult& result);
void write_convergence_csv(std::ostream& out, const SwarmResult& result);

void write_file(const std::string& path, const std::string& content);

}  // namespace ampc
