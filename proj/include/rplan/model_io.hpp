#pragma once

#include <string>

#include "rplan/model.hpp"

namespace rplan {

// Loads the JSON model document plus its sidecar timeseries (CSV files named
// timeseries/<id>.csv next to the document, columns td,hour,value). The
// returned definition has passed validate_model.
// Throws ParseError on malformed input, MissingReference on broken links,
// ModelError when validation reports violations.
ModelDefinition load_model(const std::string& path);

// Parses the document alone; timeseries referenced by id must already be in
// `external_series` or load as files relative to `base_dir`.
ModelDefinition parse_model_json(const std::string& text, const std::string& base_dir);

Timeseries load_timeseries_csv(const std::string& path, const std::string& id);

} // namespace rplan
