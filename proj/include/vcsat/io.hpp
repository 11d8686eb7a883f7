#pragma once

#include "vcsat/family.hpp"

#include <string>

namespace vcsat {

// Text form of a family: a header line "n=<int>", then one line per member
// in canonical (ascending mask) order — each the ascending comma-separated
// element list, with the empty set written as "-".  Chosen over a binary
// form so files diff and compare cleanly.
std::string serialize_family(const SetFamily& fam);

// Inverse of serialize_family.  Strict: the header must be the first
// non-blank line, every member line must list elements of 1..n strictly
// ascending, and member lines must appear in canonical order with no
// duplicates.  Blank lines are ignored.  Malformed input raises an
// invalid-input error naming the offending line.
SetFamily parse_family(const std::string& text);

// File wrappers; unreadable/unwritable paths raise an invalid-input error.
SetFamily read_family_file(const std::string& path);
void write_family_file(const SetFamily& fam, const std::string& path);

} // namespace vcsat
