#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pmg/params.hpp"

namespace pmg {

// One JSON object per line: {"d":"<bits>","x":"<bits>","y":0|1}.
// Field order and spacing are fixed so identical runs are byte-identical.
void write_samples_jsonl(std::ostream& out, const std::vector<Sample>& samples);
std::string sample_to_jsonl(const Sample& sample);
std::vector<Sample> read_samples_jsonl(std::istream& in);

// %.15g formatting used for all CSV numbers.
std::string format_g15(double value);

// Round a double through its 15-significant-digit decimal form; applied to
// numbers placed into JSON reports.
double round15(double value);

// Accepts "pi", "pi/64", "3*pi/8", "2pi/5" and plain decimal literals.
double parse_angle(const std::string& text);

// "lo:hi:count" with angle expressions, expanded log-spaced.
std::vector<double> parse_angle_sweep(const std::string& text);

}  // namespace pmg
