#pragma once

// JSON and CSV formatting for the command line tool and the tests.
//
// Parsing goes through a JSON library; generation is hand rolled so that key
// order and float formatting are fixed. Every float is printed with 17
// significant digits, which makes repeated runs byte identical and survives a
// parse round trip exactly. Non-finite values are emitted as JSON null.

#include <string>

#include "tetrainterp/blaschke.hpp"
#include "tetrainterp/royal.hpp"

namespace tetrainterp {

// Parsers. The *_text variants take the raw document; the read_* variants load
// from disk first. All failures (unreadable file, malformed JSON, wrong shape)
// throw InvalidData with a description.
BlaschkeData parse_blaschke_data_text(const std::string& text);
RoyalData parse_royal_data_text(const std::string& text);
TetraInnerFn parse_tetra_inner_text(const std::string& text);

BlaschkeData read_blaschke_data(const std::string& path);
RoyalData read_royal_data(const std::string& path);
TetraInnerFn read_tetra_inner(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Formatters. Each returns a complete JSON document ending in a newline.
std::string format_pick_report(const BlaschkeData& data, const PdReport& report);
std::string format_blaschke_result(Complex zeta, const Parametrization& par, const RationalFn& phi,
                                   const BlaschkeReport& report);
std::string format_tetra_inner(const TetraInnerFn& x);
std::string format_royal_result(const TetraInnerFn& x, const RoyalNodeSet& nodes,
                                const TetraReport& report);
std::string format_tetra_report(const TetraReport& report);

// Boundary samples at `count` uniform circle points, as CSV with a header row.
std::string sample_csv(const TetraInnerFn& x, int count);

}  // namespace tetrainterp
