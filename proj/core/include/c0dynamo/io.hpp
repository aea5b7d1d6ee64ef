#pragma once

#include "c0dynamo/analysis.hpp"
#include "c0dynamo/bump.hpp"
#include "c0dynamo/geometry.hpp"
#include "c0dynamo/sequence.hpp"
#include "c0dynamo/torus.hpp"
#include "c0dynamo/witness.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace c0dynamo {

// Parse or schema failure. line/column locate malformed JSON (0 when not
// applicable); path is the JSON pointer of a failing field.
struct ParseError : std::runtime_error {
  ParseError(const std::string& message, int line_in = 0, int column_in = 0,
             std::string path_in = "")
      : std::runtime_error(message), line(line_in), column(column_in),
        path(std::move(path_in)) {}
  int line = 0;
  int column = 0;
  std::string path;
};

// All documents carry {"schema_version": 1}; rationals travel as "p/q"
// strings in lowest terms; non-finite numbers are rejected both ways.

std::string spec_to_json(const SequenceSpec& spec);  // decidable kinds only
SequenceSpec spec_from_json(const std::string& text);

struct SystemConfig {
  LayoutParams params;
  SequenceSpec spec = SequenceSpec::eventually_constant({}, Rat(1, 2));
  BumpProfile profile = BumpProfile::Smooth;
};

std::string system_to_json(const SystemConfig& config);
SystemConfig system_from_json(const std::string& text);

std::string witness_to_json(const ConjugacyWitness& witness);
ConjugacyWitness witness_from_json(const std::string& text);

std::string certificate_to_json(const NonConjugacyCertificate& cert);
NonConjugacyCertificate certificate_from_json(const std::string& text);

// Bare coefficient map, e.g. {"1": "1/2", "sqrt2": "1"}.
std::string formal_real_to_json(const FormalReal& value);
FormalReal formal_real_from_json(const std::string& text);

std::string rotation_to_json(const TorusRotation& rotation);
TorusRotation rotation_from_json(const std::string& text);

struct RunReport {
  std::string command;
  std::string version;
  double wall_seconds = 0.0;
  std::map<std::string, std::string> input_digests;  // label -> fnv1a-64 hex
  std::map<std::string, std::string> verdicts;
  std::map<std::string, double> numbers;
};

std::string report_to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);

// One-way emitters for command output.
std::string profile_name(BumpProfile profile);
BumpProfile profile_from_name(const std::string& name);
std::string c0_decision_to_json(const C0Decision& decision);
std::string decode_reports_to_json(const std::vector<DecodeReport>& reports);
std::string smoothness_report_to_json(const SmoothnessReport& report);
std::string torus_decision_to_json(const ConjugacyDecision& decision);
std::string fixed_locus_to_json(const FixedLocus& locus);
std::string rotations_to_json(const std::vector<TorusRotation>& rotations);
std::string point_to_json(const Point& p);

// FNV-1a 64-bit, 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace c0dynamo
