#pragma once

#include "tsboot/spec.hpp"

#include <string>
#include <string_view>

#include <json.hpp>

namespace tsboot {

/// Serializes a spec to the flat key/value config format:
///
///     method = "BlockResidual"
///     block_length = 20
///     ar_order = "auto"
///
///     [inner]
///     method = "MovingBlock"
///     block_length = 20
///
/// Unset optional fields are omitted, except ar_order which is written as
/// "auto" so the selection mode is explicit.
[[nodiscard]] std::string to_config_text(const ResamplerSpec& spec);

/// Parses the config format. Unknown keys, bad values, and nesting deeper than
/// one [inner] section raise Error(MalformedConfig). The result is normalized
/// unless `normalize` is false, in which case an absent [inner] stays absent.
[[nodiscard]] ResamplerSpec parse_config(std::string_view text, bool normalize = true);

/// Serialize then parse; used by the compliance checker.
[[nodiscard]] ResamplerSpec spec_params_roundtrip(const ResamplerSpec& spec);

/// Key/value view of a spec, mirroring the config keys (for metadata echoes).
[[nodiscard]] nlohmann::json spec_to_json(const ResamplerSpec& spec);

}  // namespace tsboot
