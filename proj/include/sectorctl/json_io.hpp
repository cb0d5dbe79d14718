// Copyright 2026 The sectorctl Authors
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

#pragma once

#include <string>

#include "json.hpp"
#include "sectorctl/control.hpp"
#include "sectorctl/sectors.hpp"
#include "sectorctl/supermaps.hpp"

namespace sectorctl {

using Json = nlohmann::json;

// {"rows": r, "cols": c, "data": [[re, im], ...]} row-major.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

// {"dim_in": n, "dim_out": m, "kraus": [<matrix>, ...]}
Json cp_map_to_json(const CPMap& c);
CPMap cp_map_from_json(const Json& j);
Json channel_to_json(const KrausChannel& c);
KrausChannel channel_from_json(const Json& j, double tol = kEqTol);

// channel plus {"sectors_in", "sectors_out", "route"}
Json routed_to_json(const RoutedKrausChannel& c);
RoutedKrausChannel routed_from_json(const Json& j, double tol = kEqTol);

// channel plus {"control_dim", "target_in", "target_out"}
Json controlled_to_json(const ControlledChannel& c);
ControlledChannel controlled_from_json(const Json& j, double tol = kEqTol);

Json route_to_json(const Route& r);
Route route_from_json(const Json& j);

Json verify_report_to_json(const VerifyReport& r);

Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace sectorctl
