// Copyright 2026 The qecbound Authors
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


#ifndef QECBOUND_TRACE_H
#define QECBOUND_TRACE_H

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qecbound/dem.h"
#include "qecbound/driver.h"

namespace qecbound {

/// Echo of the run configuration for the trace header.
nlohmann::json config_to_json(const RunConfig &config);

/// {"type": "header", config, model_digest, n_channels, n_detectors, n_observables, seed}.
nlohmann::json trace_header(const RunConfig &config, const DetectorErrorModel &model);

nlohmann::json record_to_json(const BoundRecord &record);
nlohmann::json final_to_json(const BoundsTrace &trace);

/// Writes one JSON object per line and flushes after each, so an interrupted run leaves a
/// readable prefix.
class JsonLinesSink : public TraceSink {
   public:
    JsonLinesSink(std::ostream &out, const nlohmann::json &header);
    void on_record(const BoundRecord &record) override;
    void on_final(const BoundsTrace &trace) override;

   private:
    void write(const nlohmann::json &line);
    std::ostream &out_;
};

/// Writes a finished trace: header, every record, then the final summary.
void emit_trace(const BoundsTrace &trace, const nlohmann::json &header, std::ostream &out);

struct ParsedTrace {
    nlohmann::json header;
    std::vector<BoundRecord> records;
    std::optional<nlohmann::json> final;
};

/// Reads a JSON-lines trace. A missing final line is allowed; malformed lines throw.
ParsedTrace parse_trace(std::istream &in);

/// Records with elapsed time removed, for comparing runs.
std::string canonical_records(const std::vector<BoundRecord> &records);

}  // namespace qecbound

#endif
