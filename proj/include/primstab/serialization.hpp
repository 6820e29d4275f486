#pragma once

// Text formats shared by the CLI and tests: DOT and JSON Whitehead graphs,
// representation files, fixed-precision numbers.
//
// Representation file:
//   {"rank": n, "label": str, "generators": [[[a, b], [c, d]], ...]}
// where each entry is a complex number written as [re, im].

#include <string>
#include <string_view>

#include "primstab/representation.hpp"
#include "primstab/whitehead.hpp"

namespace primstab {

/// 12 significant digits, '.' decimal point; "inf", "-inf" and "nan" spelled out.
std::string format_number(double value);

std::string whitehead_dot(const WhiteheadGraph& g, std::string_view source_word);
std::string whitehead_json(const WhiteheadGraph& g, std::string_view source_word);

std::string representation_to_json(const Representation& rho);
/// Normalizes determinants. Throws ValidationError on malformed documents and
/// NumericError on singular matrices.
Representation representation_from_json(std::string_view text);

/// [re, im] or "inf".
std::string sphere_point_json(const SpherePoint& p);

}  // namespace primstab
