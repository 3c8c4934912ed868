#pragma once

#include "qsub/bounds.hpp"
#include "qsub/channel.hpp"
#include "qsub/decoupling.hpp"
#include "qsub/lindblad.hpp"

#include "json.hpp"

namespace qsub {

using Json = nlohmann::json;

/// Matrix as a list of rows of [re, im] pairs.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// {d_in, d_out, kraus}.
Json channel_to_json(const QuantumChannel& t);
QuantumChannel channel_from_json(const Json& j);

/// {d, H, lindblad_ops}.
Json liouvillian_to_json(const Liouvillian& l);
Liouvillian liouvillian_from_json(const Json& j);

Json bound_report_to_json(const BoundReport& b);
BoundReport bound_report_from_json(const Json& j);

Json decoupling_run_to_json(const DecouplingRun& run);

}  // namespace qsub
