#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "fracwave/catalog.hpp"
#include "fracwave/expansion.hpp"
#include "fracwave/verify.hpp"

namespace fracwave::cli {

using json = nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 0x5eed2024;

/// Runs one command line (without the program name). Artifacts go to `out`
/// unless -o is given; error JSON and usage text go to `err`.
/// Returns 0 on success, 1 on validation or domain errors, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// One axis of a grid spec "x:start:stop:count".
struct Axis {
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 0;

  double at(std::size_t i) const;
};

struct GridSpec {
  Axis x;
  Axis t;
};

/// Parses "x:a:b:n,t:a:b:n"; throws InvalidArgument on malformed text.
GridSpec parse_grid(const std::string& text);

json family_json(const catalog::SolutionFamily& f);
json report_json(const verify::ResidualReport& r);
json audit_json(const std::vector<verify::ResidualReport>& reports, const std::vector<std::string>& equations,
                std::uint64_t seed);
json derive_json(const std::string& equation);

/// CSV of the family field on the grid; pole-guarded points are omitted and
/// counted in a trailing comment line.
std::string eval_csv(const catalog::SolutionFamily& f, const symexpr::NumericBindings& params, double alpha,
                     double beta, const GridSpec& grid);

}  // namespace fracwave::cli
