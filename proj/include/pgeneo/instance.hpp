#ifndef PGENEO_INSTANCE_HPP
#define PGENEO_INSTANCE_HPP

#include "pgeneo/core.hpp"
#include "pgeneo/operator_pair.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pgeneo {

/// Malformed or inconsistent instance file. The message names the offending field.
class InstanceError : public Error {
public:
  using Error::Error;
};

inline constexpr int kInstanceVersion = 1;

struct SpaceEntry {
  std::string domain;
  MeasurementSpace space;
};

struct OpEntry {
  std::string domain;
  DomainMap map;
};

struct TripleEntry {
  std::string phi;
  std::string phi_prime;
  std::vector<std::string> ops;
  TriplePtr triple;
};

struct OperatorEntry {
  std::string source;
  std::string target;
  std::vector<std::string> T; ///< name of T(s) in the target triple, per source op
  std::vector<std::vector<double>> F;
  std::vector<std::vector<double>> F_prime;
  std::optional<nlohmann::json> certificate;
};

struct LoadOptions {
  std::optional<double> delta_mem;
  std::optional<double> delta_num;
};

/**
 * In-memory form of an instance file: named domains, measurement spaces,
 * maps, perception triples and tabulated operators. Names are kept in sorted
 * maps so that serialization is canonical.
 */
class Instance {
public:
  Tolerances tolerances;
  std::map<std::string, DomainPtr> domains;
  std::map<std::string, SpaceEntry> spaces;
  std::map<std::string, OpEntry> ops;
  std::map<std::string, TripleEntry> triples;
  std::map<std::string, OperatorEntry> operators;

  void add_domain(const std::string &name, DomainPtr domain);
  void add_space(const std::string &name, const std::string &domain,
                 std::vector<std::vector<double>> members);
  void add_op(const std::string &name, const std::string &domain, std::vector<std::size_t> perm);
  void add_triple(const std::string &name, const std::string &phi, const std::string &phi_prime,
                  std::vector<std::string> op_names);
  /// Stores P as a tabulation between two registered triples.
  void add_operator(const std::string &name, const std::string &source,
                    const std::string &target, const OperatorPair &P,
                    std::optional<nlohmann::json> certificate = std::nullopt);

  const TripleEntry &triple(const std::string &name) const;
  OperatorPair operator_pair(const std::string &name) const;

  /// Names of registered triples whose content equals `triple`.
  std::optional<std::string> find_triple(const PerceptionTriple &triple) const;
};

Instance parse_instance(const std::string &text, const LoadOptions &options = {});
Instance load_instance(const std::string &path, const LoadOptions &options = {});

nlohmann::json instance_to_json(const Instance &instance);
/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string serialize_instance(const Instance &instance);
void save_instance(const Instance &instance, const std::string &path);

nlohmann::json certificate_to_json(const Certificate &c);

} // namespace pgeneo

#endif
