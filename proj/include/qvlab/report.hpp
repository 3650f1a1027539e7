// Copyright 2026 The qvlab Authors
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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qvlab/bench.hpp"

namespace qvlab {

// Plot-ready data derived from a result store. Series files hold one row per
// (line, x) point: "line,x,y,lo,hi,n".
struct ReportFile {
  std::string name;
  std::string content;
};

/// Accepted figures: fig3 (x = shots), fig4 (overlap histogram), fig5, fig6,
/// fig8 (x = density), fig7 (x = layers), fig9, fig10 (x = d_H), table1.
std::vector<std::string> report_figures();

/// Figure implied by an experiment name such as "fig5-desk".
std::string default_figure(const ExperimentSpec& spec);

std::vector<ReportFile> build_report(const ResultStore& store, std::string_view figure,
                                     const AggregateOptions& options, bool svg = false);

/// Writes the files into `dir` and returns their paths.
std::vector<std::filesystem::path> write_report(const std::vector<ReportFile>& files,
                                                const std::filesystem::path& dir);

}  // namespace qvlab
