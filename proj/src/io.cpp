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

#include "ampc/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace ampc {

std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

void write_trace_csv(std::ostream& out, const SimResult& result) {
  out << "t,x,y,y_ref,delta_f,d_delta_f,yaw_rate,v_x,wind,np,nc,q_y,r_w,lag_n,lag_alpha\n";
  for (std::size_t i = 0; i < result.time.size(); ++i) {
    const AdaptiveParams& p = result.active_params[i];
    out << format_number(result.time[i]) << ',' << format_number(result.x[i]) << ','
        << format_number(result.y[i]) << ',' << format_number(result.y_ref[i]) << ','
        << format_number(result.steer[i]) << ',' << format_number(result.d_steer[i]) << ','
        << format_number(result.yaw_rate[i]) << ',' << format_number(result.long_vel[i])
        << ',' << format_number(result.wind[i]) << ',' << p.pred_horizon << ','
        << p.ctrl_horizon << ',' << format_number(p.weight_track) << ','
        << format_number(p.weight_ctrl) << ',' << p.laguerre_terms << ','
        << format_number(p.laguerre_scale) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const SimResult& result) {
  out << "mse,max_abs_error,violations,diverged\n";
  out << format_number(result.mse) << ',' << format_number(result.max_abs_error) << ','
      << result.constraint_violations << ',' << (result.diverged ? 1 : 0) << '\n';
}

void write_convergence_csv(std::ostream& out, const SwarmResult& result) {
  out << "generation,best_fitness,w,c1,c2\n";
  for (std::size_t g = 0; g < result.fitness_history.size(); ++g) {
    out << g << ',' << format_number(result.fitness_history[g]) << ','
        << format_number(result.w_history[g]) << ',' << format_number(result.c1_history[g])
        << ',' << format_number(result.c2_history[g]) << '\n';
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write file: " + path);
  }
  out << content;
}

}  // namespace ampc
