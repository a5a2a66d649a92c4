// JSON input/output: the diagram and singularity-data schemas, canonical
// serialization for round-trips and digests, and shortest round-trip decimal
// formatting for reals quoted as strings.
#ifndef LAMINATION_JSON_IO_HPP
#define LAMINATION_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "lamination/bratteli.hpp"
#include "lamination/errors.hpp"
#include "lamination/surface.hpp"

namespace lamination {

// Key order is preserved so serialization is canonical and byte-stable.
using OrderedJson = nlohmann::ordered_json;

// Parses text as JSON; SchemaError with the parser message on failure.
OrderedJson parse_json_text(const std::string& text);

// Whole-file read; SchemaError when the file cannot be opened.
std::string read_text_file(const std::string& path);

// Diagram schema: {"rank": int, "prefix": [matrix], "period": [matrix]?}
// with matrix a row-major rank x rank array of arrays of nonnegative
// integers; "period", when present, must be nonempty. Violations raise
// SchemaError naming the offending element.
BratteliDiagram parse_diagram(const OrderedJson& doc);
OrderedJson print_diagram(const BratteliDiagram& diagram);

// Singularity-data schema: {"ks": [number]}. Value constraints (nonnegative
// multiples of 1/2) belong to SingularityData and raise its domain error.
SingularityData parse_delta(const OrderedJson& doc);
OrderedJson print_delta(const SingularityData& delta);

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

// 64-bit FNV-1a of a byte string, as 16 lowercase hex digits.
std::string fnv1a_digest(const std::string& bytes);

}  // namespace lamination

#endif
