#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "urysohn/metric_space.hpp"

// Line-oriented text formats. '#' starts a comment line; blank lines are
// skipped everywhere.
//
// Metric space:
//   n
//   label_1 ... label_n
//   n rows of n rationals ("p/q" or "k")
namespace urysohn::io {

/// Parses and validates; axiom violations surface as Error from validate_metric.
FiniteMetricSpace parse_space(std::istream& in);
FiniteMetricSpace parse_space(const std::string& text);
FiniteMetricSpace read_space_file(const std::string& path);

std::string serialize_space(const FiniteMetricSpace& space);
void write_space(std::ostream& out, const FiniteMetricSpace& space);

/// Lines "label p/q".
std::vector<std::pair<Label, Rational>> parse_label_values(std::istream& in);
std::vector<std::pair<Label, Rational>> read_label_values_file(const std::string& path);

/// Lines "label1 label2".
std::vector<std::pair<Label, Label>> parse_label_pairs(std::istream& in);
std::vector<std::pair<Label, Label>> read_label_pairs_file(const std::string& path);

/// One whitespace-separated label list per line.
std::vector<std::vector<Label>> parse_label_lines(std::istream& in);
std::vector<std::vector<Label>> read_label_lines_file(const std::string& path);

/// Non-comment, non-blank lines split on whitespace.
std::vector<std::vector<std::string>> content_lines(std::istream& in);

}  // namespace urysohn::io
