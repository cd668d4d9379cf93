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

#include <cstdint>
#include <string>
#include <vector>

#include "ampc/mpc.hpp"
#include "ampc/tire.hpp"
#include "ampc/vehicle.hpp"

namespace ampc {

inline constexpr int kTableSchemaVersion = 1;
inline constexpr double kGridSpeedMin = 3.0;
inline constexpr double kGridSpeedMax = 27.0;
inline constexpr double kGridOffsetMin = -15.0;
inline constexpr double kGridOffsetMax = 15.0;

struct TableKey {
  double long_vel{0};
  double lateral_offset{0};

  bool operator==(const TableKey&) const = default;
};

struct TableEntry {
  TableKey key;
  AdaptiveParams params;
  double fitness{0};          // tuning MSE
  std::uint64_t seed{0};      // tuner seed
  std::string timestamp;      // free-form provenance stamp, may be empty

  bool operator==(const TableEntry&) const = default;
};

struct LookupTable {
  std::vector<double> speed_breakpoints;
  std::vector<double> offset_breakpoints;
  std::vector<TableEntry> entries;
  std::string vehicle_hash;

  void validate() const;  // throws naming the violated invariant

  bool operator==(const LookupTable&) const = default;
};

/// Stable fingerprint of the vehicle + tire configuration a table was tuned
/// for, stored in the table header.
std::string vehicle_config_hash(const VehicleParams& params, const PacejkaCoeffs& coeffs);

void save_table(const LookupTable& table, const std::string& path);
LookupTable load_table(const std::string& path);
std::string table_to_json(const LookupTable& table);
LookupTable table_from_json(const std::string& text);

/// Nearest entry in normalized key space; queries outside the grid clamp to
/// its boundary, equidistant entries resolve to the lower speed key (then the
/// lower offset key).
const TableEntry& nearest_entry(const LookupTable& table, double long_vel,
                                double lateral_offset);

/// Stateful selection with hysteresis: a candidate replaces the incumbent
/// only when its normalized distance to the query beats the incumbent's by
/// the hysteresis margin. Prevents parameter chattering near grid midlines.
class ParameterScheduler {
 public:
  explicit ParameterScheduler(const LookupTable& table, double hysteresis = 0.10);

  const TableEntry& select(double long_vel, double lateral_offset);
  bool switched() const { return switched_; }  // true when the last select changed entry

 private:
  const LookupTable* table_;
  double hysteresis_;
  int current_{-1};
  bool switched_{false};
};

}  // namespace ampc
