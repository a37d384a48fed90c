#pragma once

// JSON encodings of the library's values. Doubles are written in shortest
// round-trip form and object keys are sorted, so encode(decode(text)) is
// byte-stable. Non-finite numbers are written as null.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "barronhjb/error.hpp"
#include "barronhjb/linear_solver.hpp"
#include "barronhjb/nn_sampler.hpp"
#include "barronhjb/policy_iteration.hpp"
#include "barronhjb/problem.hpp"
#include "barronhjb/sde_verifier.hpp"

namespace barronhjb {

using Json = nlohmann::json;

Json number_json(double v);

/// {"dim", "atoms": [{"freq", "re", "im", "pair"}], "ledger": {"s": value}}
Json to_json(const SpectralFunction& f);
SpectralFunction spectral_from_json(const Json& j);

Json to_json(std::span<const SpectralFunction> fs);
SpectralVector spectral_vector_from_json(const Json& j);

Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// {"d", "m", "gamma", "s", "R", "f", "g", "ell"}
Json to_json(const ProblemSpec& spec);
ProblemSpec problem_from_json(const Json& j);

Json to_json(const DiscountReport& r);
Json to_json(const FixedPointReport& r);
Json to_json(const LinearSolveResult& r);
Json to_json(const PolicyIterationReport& r);
Json to_json(const CosineNetwork& net);
CosineNetwork network_from_json(const Json& j);
Json to_json(const CostEstimate& e);
Json to_json(const VerifyReport& r);

Json error_json(ErrorCode code, const std::string& detail);

/// Reads and parses a file; kIo if unreadable, kParse if malformed.
Json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
/// Writes text atomically enough for our purposes; kIo on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Pretty JSON text with a trailing newline.
std::string dump(const Json& j);

}  // namespace barronhjb
