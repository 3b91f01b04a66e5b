#ifndef PGENEO_COMMANDS_HPP
#define PGENEO_COMMANDS_HPP

#include "pgeneo/builders.hpp"
#include "pgeneo/instance.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pgeneo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

/// Exit 0 iff every op of the triple is admissible.
int cmd_validate(const Instance &instance, const std::string &triple, bool json,
                 std::ostream &out);

/// Exit 0 iff the operator is a certified P-GENEO.
int cmd_certify(const Instance &instance, const std::string &op, bool json, std::ostream &out);

/**
 * Parses an aggregator description:
 *   max | min | convex:w1,..,wn | power:p[:w1,..,wn] | sum:w1,..,wn
 * `sum` selects the convex-combination construction; the others build L*.
 */
struct AggregatorSpec {
  enum class Mode { lstar, convex_sum };
  Mode mode = Mode::lstar;
  std::string kind;
  double exponent = 1.0;
  std::vector<double> weights;
};
AggregatorSpec parse_aggregator(const std::string &text);
Aggregator make_aggregator(const AggregatorSpec &spec, std::size_t arity);

struct CombineRequest {
  std::string aggregator;
  std::vector<std::string> operators;
  std::string output;
  std::uint64_t seed = 0;
  std::size_t audit_trials = 20000;
};

/// Adds the combined operator (with its certificate) to `instance` on success.
/// Audit or precondition failures leave the instance untouched and exit 1.
int cmd_combine(Instance &instance, const CombineRequest &request, bool json,
                std::ostream &out);

enum class CoverTarget { domain, ops, operators };
CoverTarget parse_cover_target(const std::string &text);

struct CoverRequest {
  CoverTarget target = CoverTarget::domain;
  double epsilon = 0.0;
  std::string space;                  ///< domain: measurement space name
  std::string triple;                 ///< ops: triple whose S is covered under D_Aut^Φ
  std::vector<std::string> operators; ///< operators: family members (all compatible if empty)
};

int cmd_cover(const Instance &instance, const CoverRequest &request, bool json,
              std::ostream &out);

/// Builds the nested-squares instance and writes it to `path`.
int cmd_demo_squares(const SquaresParams &params, const std::string &path, std::ostream &out);

} // namespace pgeneo::cli

#endif
