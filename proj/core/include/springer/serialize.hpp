#pragma once

#include <string>

#include "springer/flag.hpp"
#include "springer/sphere.hpp"
#include "springer/subspace.hpp"

namespace springer {

/// Flag document: {"type":"flag","N":...,"m":...,"spaces":[{"dim":d,
/// "basis":[...]}...]} where basis is the orthonormal 2N x d matrix as a
/// row-major interleaved re/im array. Numbers round-trip exactly.
std::string flag_to_json(const Flag& flag);
Flag flag_from_json(const std::string& text, const Tolerances& tol);

/// Tuple document: {"type":"lines","m":...,"lines":[[re a, im a, re b,
/// im b], ...]} with one 4-array per line.
std::string tuple_to_json(const LineTuple& t);
LineTuple tuple_from_json(const std::string& text);

/// The "type" field of a serialized document ("flag" or "lines").
std::string json_document_type(const std::string& text);

} // namespace springer
