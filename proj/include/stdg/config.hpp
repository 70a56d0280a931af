// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "stdg/analysis.hpp"
#include "stdg/material.hpp"

namespace stdg {

/// Batch run configuration, read from a flat key = value file with dotted
/// section keys (see docs/config.md for the schema). Validated against the
/// positivity and feasibility rules of the owning modules before assembly.
struct RunConfig {
  Rect domain;
  int nx = 4, ny = 4;
  int degree = 1;       // space.degree (r)
  double final_time = 1.0;
  int slabs = 4;        // time.slabs (N)
  int time_degree = 1;  // time.degree (k)
  bool nu_auto = true;
  double nu = 0.0;
  bool penalty_auto = true;
  double gamma_v = 0.0, gamma_p = 0.0;
  MaterialParams material;
  std::string case_id = "trig";
  std::string output_dir = ".";
  bool dump_fields = false;

  /// Resolved weight: explicit nu, or nu0(gamma = 0.1) + 0.1 when auto.
  double resolve_nu() const;
  PenaltyParams resolve_penalty() const;
  StudyConfig study_config() const;

  /// Throws InputError with a descriptive message if any rule is violated,
  /// including nu below the uniform positivity bound.
  void validate() const;
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<config>");

}  // namespace stdg
