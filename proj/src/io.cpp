#include "urysohn/io.hpp"

#include <fstream>
#include <sstream>

namespace urysohn::io {

namespace {

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MalformedInput, {path}, "cannot open file");
  return in;
}

Rational parse_value(const std::string& token) {
  try {
    return Rational::parse(token);
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorKind::MalformedInput, {token}, e.what());
  }
}

std::size_t parse_count(const std::string& token) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorKind::MalformedInput, {token}, "expected a point count");
  }
  return std::stoul(token);
}

}  // namespace

std::vector<std::vector<std::string>> content_lines(std::istream& in) {
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::vector<std::string> tokens;
    for (std::string tok; ss >> tok;) tokens.push_back(tok);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    out.push_back(std::move(tokens));
  }
  return out;
}

FiniteMetricSpace parse_space(std::istream& in) {
  const auto lines = content_lines(in);
  if (lines.empty() || lines[0].size() != 1) {
    throw Error(ErrorKind::MalformedInput, {}, "first line must hold the point count");
  }
  const std::size_t n = parse_count(lines[0][0]);
  if (n == 0) {
    if (lines.size() != 1) throw Error(ErrorKind::MalformedInput, {}, "empty space with trailing data");
    return FiniteMetricSpace();
  }
  if (lines.size() != n + 2) {
    throw Error(ErrorKind::MalformedInput, {}, "expected " + std::to_string(n + 2) + " content lines");
  }
  if (lines[1].size() != n) throw Error(ErrorKind::MalformedInput, {}, "label line does not match point count");
  DistanceRows rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& tokens = lines[i + 2];
    if (tokens.size() != n) {
      throw Error(ErrorKind::MalformedInput, {lines[1][i]}, "row does not have " + std::to_string(n) + " entries");
    }
    rows[i].reserve(n);
    for (const auto& t : tokens) rows[i].push_back(parse_value(t));
  }
  return validate_metric(lines[1], rows);
}

FiniteMetricSpace parse_space(const std::string& text) {
  std::istringstream in(text);
  return parse_space(in);
}

FiniteMetricSpace read_space_file(const std::string& path) {
  auto in = open(path);
  return parse_space(in);
}

void write_space(std::ostream& out, const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  out << n << '\n';
  for (std::size_t i = 0; i < n; ++i) out << (i ? " " : "") << space.label(i);
  if (n) out << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out << (j ? " " : "") << space.dist(i, j);
    out << '\n';
  }
}

std::string serialize_space(const FiniteMetricSpace& space) {
  std::ostringstream out;
  write_space(out, space);
  return out.str();
}

std::vector<std::pair<Label, Rational>> parse_label_values(std::istream& in) {
  std::vector<std::pair<Label, Rational>> out;
  for (const auto& tokens : content_lines(in)) {
    if (tokens.size() != 2) throw Error(ErrorKind::MalformedInput, tokens, "expected 'label value'");
    out.emplace_back(tokens[0], parse_value(tokens[1]));
  }
  return out;
}

std::vector<std::pair<Label, Rational>> read_label_values_file(const std::string& path) {
  auto in = open(path);
  return parse_label_values(in);
}

std::vector<std::pair<Label, Label>> parse_label_pairs(std::istream& in) {
  std::vector<std::pair<Label, Label>> out;
  for (const auto& tokens : content_lines(in)) {
    if (tokens.size() != 2) throw Error(ErrorKind::MalformedInput, tokens, "expected 'label1 label2'");
    out.emplace_back(tokens[0], tokens[1]);
  }
  return out;
}

std::vector<std::pair<Label, Label>> read_label_pairs_file(const std::string& path) {
  auto in = open(path);
  return parse_label_pairs(in);
}

std::vector<std::vector<Label>> parse_label_lines(std::istream& in) { return content_lines(in); }

std::vector<std::vector<Label>> read_label_lines_file(const std::string& path) {
  auto in = open(path);
  return parse_label_lines(in);
}

}  // namespace urysohn::io
