#ifndef HYBZONO_SERIALIZE_HPP_
#define HYBZONO_SERIALIZE_HPP_

/**
 * @file serialize.hpp
 * @brief JSON forms of sets, models and reachability results.
 *
 * Matrices are row-major arrays of rows; empty blocks are written as [].
 */

#include "hybzono/mld.hpp"
#include "hybzono/reach.hpp"
#include "hybzono/setrep.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace hybzono
{

using Json = nlohmann::ordered_json;

Json matrix_to_json(const Matrix& M);
/// `cols` sizes the result when the array is empty.
Matrix matrix_from_json(const Json& j, Index rows, Index cols);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json set_to_json(const HybridZonotope& z);
HybridZonotope set_from_json(const Json& j);

Json tree_to_json(const IntegerFeasibleSet& t);

Json model_to_json(const MldModel& m);
/// Requires dims, system matrices and X, U, W; "R0" is optional (defaults to X).
MldModel model_from_json(const Json& j);

Json report_to_json(const ReductionReport& r);

/// Deterministic part of a run: dims, tree sizes, reduction counts. No timings.
Json result_to_json(const ReachResult& r);
/// Per-step wall-clock seconds.
Json timings_to_json(const ReachResult& r);

/// Canonical text form: two-space indentation and a trailing newline.
std::string dump(const Json& j);
Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace hybzono

#endif
