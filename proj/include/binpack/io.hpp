#pragma once

#include "binpack/clustering.hpp"
#include "binpack/delays.hpp"
#include "binpack/instance.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace binpack {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : std::runtime_error(msg + " at line " + std::to_string(line)), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class InstanceKind { Plain, Clustered, Timed };

// Text format, one record per line:
//   kind plain|clustered|timed
//   k <int>                                  (clustered only)
//   item <num>/<den> [count=<int>] [cluster=<id>] [arrive=<num>/<den>]
//        [delay=linear:<rate>|power:<rate>,<exp>|table:<t>:<v>,<t>:<v>,...]
// '#' starts a comment. Rationals are emitted in lowest terms with an
// explicit denominator, so parse(emit(x)) reproduces the bytes exactly.
struct ParsedInstance {
  InstanceKind kind = InstanceKind::Plain;
  int k = 3;
  std::vector<ItemClass> classes;  // plain and clustered
  std::vector<TimedItem> timed;    // timed
};

ParsedInstance parse_instance(const std::string& text);
std::string emit_instance(const ParsedInstance& inst);

ClusteredInstance group_clusters(const ParsedInstance& inst);
ParsedInstance from_clustered(const ClusteredInstance& inst);

// Certificate sidecar: one 'pattern <multiplicity> <size>x<count>...' line
// per pattern.
std::string emit_certificate(const Certificate& cert);
Certificate parse_certificate(const std::string& text);

// ---- reports ---------------------------------------------------------------

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  struct Row {
    std::string name;
    std::string exact;    // may be empty for float-only quantities
    std::string decimal;
  };
  std::vector<Row> rows;
  std::vector<std::pair<std::string, bool>> verdicts;
  std::optional<std::uint64_t> seed;
  double wall_ms = 0;

  bool all_pass() const;
  // tsv: tab-separated name/exact/decimal rows, deterministic modulo wall time
  void print(std::ostream& os, bool tsv) const;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace binpack
