#pragma once

#include <iosfwd>
#include <string>

#include "sft/ops.hpp"
#include "sft/spec.hpp"

namespace sft {

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

// Line-oriented text formats. '#' starts a comment; unknown directives are
// rejected with their line number.
//
//   %sft
//   dim: 2
//   alphabet: a b
//   forbid:
//   (0,0) = a
//   (1,0) = a
//
//   %wang
//   colors: r g b
//   tile: t0 n=r e=g s=r w=g
//
//   %torus
//   dims: 2 2
//   cells: a b b a

SftSpec parse_sft(std::istream& in);
WangTileset parse_wang(std::istream& in);
TorusConfig parse_torus(std::istream& in, const Alphabet& alphabet);

// Either an %sft or %wang file, by leading directive.
struct ParsedSpec {
    SftSpec spec;
    bool was_wang = false;
};
ParsedSpec parse_spec_file(const std::string& path);

void write_sft(std::ostream& os, const SftSpec& spec);
void write_wang(std::ostream& os, const WangTileset& tiles);
void write_torus(std::ostream& os, const TorusConfig& config, const Alphabet& alphabet);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace sft
