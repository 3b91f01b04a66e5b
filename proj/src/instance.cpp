#include "pgeneo/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pgeneo {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string &field, const std::string &message) {
  throw InstanceError("field '" + field + "': " + message);
}

const json &require(const json &obj, const std::string &key, const std::string &path) {
  if (!obj.is_object() || !obj.contains(key))
    fail(path.empty() ? key : path + "." + key, "missing");
  return obj.at(key);
}

std::vector<double> read_values(const json &arr, const std::string &path) {
  if (!arr.is_array())
    fail(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number())
      fail(path + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(arr[i].get<double>());
  }
  return out;
}

std::vector<std::vector<double>> read_rows(const json &arr, const std::string &path) {
  if (!arr.is_array())
    fail(path, "expected an array of arrays");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.push_back(read_values(arr[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::string> read_names(const json &arr, const std::string &path) {
  if (!arr.is_array())
    fail(path, "expected an array of names");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string())
      fail(path + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(arr[i].get<std::string>());
  }
  return out;
}

std::string domain_name(const json &obj, const Instance &inst, const std::string &path) {
  if (obj.contains("domain")) {
    if (!obj.at("domain").is_string())
      fail(path + ".domain", "expected a domain name");
    return obj.at("domain").get<std::string>();
  }
  if (inst.domains.size() == 1)
    return inst.domains.begin()->first;
  fail(path + ".domain", "required when the instance declares several domains");
}

// Rethrows library errors with the field path in front.
template <typename Fn> void at_field(const std::string &path, Fn &&fn) {
  try {
    fn();
  } catch (const InstanceError &) {
    throw;
  } catch (const Error &e) {
    fail(path, e.what());
  }
}

std::vector<std::vector<double>> raw(const Tabulation &t) {
  std::vector<std::vector<double>> out;
  out.reserve(t.size());
  for (const auto &m : t)
    out.emplace_back(m.values().begin(), m.values().end());
  return out;
}

} // namespace

void Instance::add_domain(const std::string &name, DomainPtr domain) {
  if (!domains.emplace(name, std::move(domain)).second)
    throw InstanceError("domain '" + name + "' is defined twice");
}

void Instance::add_space(const std::string &name, const std::string &domain,
                         std::vector<std::vector<double>> members) {
  const std::string path = "spaces." + name;
  auto d = domains.find(domain);
  if (d == domains.end())
    fail(path + ".domain", "unknown domain '" + domain + "'");
  std::vector<Measurement> ms;
  ms.reserve(members.size());
  for (std::size_t i = 0; i < members.size(); ++i)
    at_field(path + ".members[" + std::to_string(i) + "]",
             [&] { ms.emplace_back(d->second, std::move(members[i])); });
  const std::size_t given = ms.size();
  std::vector<Measurement> copy = ms;
  MeasurementSpace space(d->second, std::move(copy), name, tolerances.membership);
  if (space.size() != given) {
    for (std::size_t i = 0; i < given; ++i)
      if (i >= space.size() || !(space.member(i) == ms[i]))
        fail(path + ".members[" + std::to_string(i) + "]",
             "duplicates an earlier member within delta_mem");
  }
  spaces.insert_or_assign(name, SpaceEntry{domain, std::move(space)});
}

void Instance::add_op(const std::string &name, const std::string &domain,
                      std::vector<std::size_t> perm) {
  const std::string path = "ops." + name;
  auto d = domains.find(domain);
  if (d == domains.end())
    fail(path + ".domain", "unknown domain '" + domain + "'");
  at_field(path + ".perm", [&] {
    ops.insert_or_assign(name, OpEntry{domain, DomainMap(d->second, std::move(perm))});
  });
}

void Instance::add_triple(const std::string &name, const std::string &phi,
                          const std::string &phi_prime, std::vector<std::string> op_names) {
  const std::string path = "triples." + name;
  auto p = spaces.find(phi);
  if (p == spaces.end())
    fail(path + ".phi", "unknown space '" + phi + "'");
  auto pp = spaces.find(phi_prime);
  if (pp == spaces.end())
    fail(path + ".phi_prime", "unknown space '" + phi_prime + "'");
  std::vector<DomainMap> maps;
  for (std::size_t i = 0; i < op_names.size(); ++i) {
    auto o = ops.find(op_names[i]);
    if (o == ops.end())
      fail(path + ".ops[" + std::to_string(i) + "]", "unknown op '" + op_names[i] + "'");
    if (std::count(op_names.begin(), op_names.end(), op_names[i]) > 1)
      fail(path + ".ops[" + std::to_string(i) + "]", "op listed twice");
    maps.push_back(o->second.map);
  }
  TriplePtr triple;
  at_field(path, [&] {
    triple = std::make_shared<const PerceptionTriple>(p->second.space, pp->second.space,
                                                      std::move(maps));
  });
  triples.insert_or_assign(name, TripleEntry{phi, phi_prime, std::move(op_names), triple});
}

void Instance::add_operator(const std::string &name, const std::string &source,
                            const std::string &target, const OperatorPair &P,
                            std::optional<json> certificate) {
  const auto &src = triple(source);
  const auto &dst = triple(target);
  if (!same_triple(src.triple, P.source_ptr()) || !same_triple(dst.triple, P.target_ptr()))
    throw InstanceError("operator '" + name + "' does not act between triples '" + source +
                        "' and '" + target + "'");
  OperatorEntry e;
  e.source = source;
  e.target = target;
  for (std::size_t k = 0; k < P.T().assignment().size(); ++k)
    e.T.push_back(dst.ops[P.T().assignment()[k]]);
  e.F = raw(P.F());
  e.F_prime = raw(P.F_prime());
  e.certificate = std::move(certificate);
  operators.insert_or_assign(name, std::move(e));
}

const TripleEntry &Instance::triple(const std::string &name) const {
  auto it = triples.find(name);
  if (it == triples.end())
    throw InstanceError("unknown triple '" + name + "'");
  return it->second;
}

OperatorPair Instance::operator_pair(const std::string &name) const {
  auto it = operators.find(name);
  if (it == operators.end())
    throw InstanceError("unknown operator '" + name + "'");
  const auto &e = it->second;
  const std::string path = "operators." + name;
  const auto &src = triple(e.source);
  const auto &dst = triple(e.target);
  if (e.T.size() != src.ops.size())
    fail(path + ".T", "must name one target op per op of triple '" + e.source + "'");
  std::vector<std::size_t> assignment;
  for (std::size_t k = 0; k < e.T.size(); ++k) {
    auto pos = std::find(dst.ops.begin(), dst.ops.end(), e.T[k]);
    if (pos == dst.ops.end())
      fail(path + ".T[" + std::to_string(k) + "]",
           "'" + e.T[k] + "' is not an op of triple '" + e.target + "'");
    assignment.push_back(static_cast<std::size_t>(pos - dst.ops.begin()));
  }
  const auto &y = dst.triple->domain();
  auto tabulate = [&](const std::vector<std::vector<double>> &rows, const std::string &field) {
    Tabulation t;
    for (std::size_t i = 0; i < rows.size(); ++i)
      at_field(path + "." + field + "[" + std::to_string(i) + "]",
               [&] { t.emplace_back(y, rows[i]); });
    return t;
  };
  std::optional<OperatorPair> out;
  at_field(path, [&] {
    auto T = std::make_shared<const TransformationMap>(src.triple->ops(), dst.triple->ops(),
                                                       std::move(assignment));
    out.emplace(src.triple, dst.triple, std::move(T), tabulate(e.F, "F"),
                tabulate(e.F_prime, "F_prime"));
  });
  return *out;
}

std::optional<std::string> Instance::find_triple(const PerceptionTriple &t) const {
  for (const auto &[name, entry] : triples)
    if (*entry.triple == t)
      return name;
  return std::nullopt;
}

Instance parse_instance(const std::string &text, const LoadOptions &options) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + upto, '\n');
    throw InstanceError("line " + std::to_string(line) + ": " + e.what());
  }
  if (!doc.is_object())
    throw InstanceError("instance must be a JSON object");

  const auto &version = require(doc, "version", "");
  if (!version.is_number_integer() || version.get<int>() != kInstanceVersion)
    fail("version", "unsupported version (expected " + std::to_string(kInstanceVersion) + ")");

  Instance inst;
  if (doc.contains("tolerances")) {
    const auto &tol = doc.at("tolerances");
    if (!tol.is_object())
      fail("tolerances", "expected an object");
    for (const auto &[key, value] : tol.items()) {
      if (!value.is_number() || value.get<double>() < 0.0)
        fail("tolerances." + key, "expected a nonnegative number");
      if (key == "delta_mem")
        inst.tolerances.membership = value.get<double>();
      else if (key == "delta_num")
        inst.tolerances.numeric = value.get<double>();
      else
        fail("tolerances." + key, "unknown tolerance");
    }
  }
  if (options.delta_mem)
    inst.tolerances.membership = *options.delta_mem;
  if (options.delta_num)
    inst.tolerances.numeric = *options.delta_num;

  const auto &domain = require(doc, "domain", "");
  if (domain.is_array()) {
    at_field("domain", [&] { inst.add_domain("X", FiniteDomain::make(read_names(domain, "domain"))); });
  } else if (domain.is_object()) {
    for (const auto &[name, labels] : domain.items())
      at_field("domain." + name, [&] {
        inst.add_domain(name, FiniteDomain::make(read_names(labels, "domain." + name)));
      });
  } else {
    fail("domain", "expected an array of point labels or an object of named domains");
  }
  if (inst.domains.empty())
    fail("domain", "at least one domain is required");

  auto section = [&](const char *key) -> const json & {
    static const json empty = json::object();
    if (!doc.contains(key))
      return empty;
    if (!doc.at(key).is_object())
      fail(key, "expected an object");
    return doc.at(key);
  };

  for (const auto &[name, body] : section("spaces").items()) {
    const std::string path = "spaces." + name;
    inst.add_space(name, domain_name(body, inst, path),
                   read_rows(require(body, "members", path), path + ".members"));
  }

  for (const auto &[name, body] : section("ops").items()) {
    const std::string path = "ops." + name;
    const auto &perm = require(body, "perm", path);
    if (!perm.is_array())
      fail(path + ".perm", "expected an array of point indices");
    std::vector<std::size_t> p;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      if (!perm[i].is_number_unsigned())
        fail(path + ".perm[" + std::to_string(i) + "]", "expected a nonnegative integer");
      p.push_back(perm[i].get<std::size_t>());
    }
    inst.add_op(name, domain_name(body, inst, path), std::move(p));
  }

  for (const auto &[name, body] : section("triples").items()) {
    const std::string path = "triples." + name;
    const auto &phi = require(body, "phi", path);
    const auto &phi_prime = require(body, "phi_prime", path);
    if (!phi.is_string() || !phi_prime.is_string())
      fail(path, "phi and phi_prime must be space names");
    std::vector<std::string> names;
    if (body.contains("ops"))
      names = read_names(body.at("ops"), path + ".ops");
    inst.add_triple(name, phi.get<std::string>(), phi_prime.get<std::string>(), std::move(names));
  }

  for (const auto &[name, body] : section("operators").items()) {
    const std::string path = "operators." + name;
    OperatorEntry e;
    const auto &source = require(body, "source", path);
    const auto &target = require(body, "target", path);
    if (!source.is_string() || !target.is_string())
      fail(path, "source and target must be triple names");
    e.source = source.get<std::string>();
    e.target = target.get<std::string>();
    if (!inst.triples.count(e.source))
      fail(path + ".source", "unknown triple '" + e.source + "'");
    if (!inst.triples.count(e.target))
      fail(path + ".target", "unknown triple '" + e.target + "'");
    e.T = read_names(require(body, "T", path), path + ".T");
    e.F = read_rows(require(body, "F", path), path + ".F");
    e.F_prime = read_rows(require(body, "F_prime", path), path + ".F_prime");
    if (body.contains("certificate"))
      e.certificate = body.at("certificate");
    inst.operators.emplace(name, std::move(e));
    // validates shapes, names and image domains eagerly
    (void)inst.operator_pair(name);
  }

  for (const auto &[key, value] : doc.items()) {
    static const std::vector<std::string> known{"version", "domain", "spaces", "ops",
                                                "triples", "operators", "tolerances"};
    if (std::find(known.begin(), known.end(), key) == known.end())
      fail(key, "unknown top-level field");
  }
  return inst;
}

Instance load_instance(const std::string &path, const LoadOptions &options) {
  std::ifstream in(path);
  if (!in)
    throw InstanceError("cannot open instance file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str(), options);
}

json instance_to_json(const Instance &inst) {
  json doc;
  doc["version"] = kInstanceVersion;
  doc["tolerances"] = {{"delta_mem", inst.tolerances.membership},
                       {"delta_num", inst.tolerances.numeric}};
  doc["domain"] = json::object();
  for (const auto &[name, d] : inst.domains)
    doc["domain"][name] = d->labels();
  doc["spaces"] = json::object();
  for (const auto &[name, e] : inst.spaces) {
    json members = json::array();
    for (const auto &m : e.space.members())
      members.push_back(std::vector<double>(m.values().begin(), m.values().end()));
    doc["spaces"][name] = {{"domain", e.domain}, {"members", members}};
  }
  doc["ops"] = json::object();
  for (const auto &[name, e] : inst.ops)
    doc["ops"][name] = {{"domain", e.domain}, {"perm", e.map.perm()}};
  doc["triples"] = json::object();
  for (const auto &[name, e] : inst.triples)
    doc["triples"][name] = {{"phi", e.phi}, {"phi_prime", e.phi_prime}, {"ops", e.ops}};
  doc["operators"] = json::object();
  for (const auto &[name, e] : inst.operators) {
    json body = {{"source", e.source}, {"target", e.target}, {"T", e.T},
                 {"F", e.F},           {"F_prime", e.F_prime}};
    if (e.certificate)
      body["certificate"] = *e.certificate;
    doc["operators"][name] = std::move(body);
  }
  return doc;
}

std::string serialize_instance(const Instance &instance) {
  return instance_to_json(instance).dump(2) + "\n";
}

void save_instance(const Instance &instance, const std::string &path) {
  const std::string text = serialize_instance(instance);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw InstanceError("cannot write instance file '" + path + "'");
  out << text;
}

json certificate_to_json(const Certificate &c) {
  json missing = json::array();
  for (const auto &[m, k] : c.missing_translates)
    missing.push_back({{"member", m}, {"op", k}});
  json codomain = json::array();
  for (const auto &f : c.codomain_failures)
    codomain.push_back({{"map", f.primed ? "F_prime" : "F"},
                        {"member", f.member},
                        {"gap", std::isfinite(f.gap) ? json(f.gap) : json(nullptr)}});
  json violations = json::array();
  for (const auto &v : c.transformation.violations)
    violations.push_back(
        {{"kind", v.kind == HomomorphismViolation::Kind::product ? "product" : "inverse"},
         {"s", v.s},
         {"t", v.t}});
  json out = {{"certified", c.certified},
              {"equivariance_residual", c.equivariance_residual},
              {"residual_witness", {{"member", c.residual_member}, {"op", c.residual_op}}},
              {"missing_translates", missing},
              {"lipschitz_excess_F", c.lipschitz_excess_F},
              {"lipschitz_excess_F_prime", c.lipschitz_excess_F_prime},
              {"codomain_ok", c.codomain_ok},
              {"codomain_failures", codomain},
              {"homomorphism_ok", c.homomorphism_ok},
              {"homomorphism_violations", violations},
              {"triples_ok", c.triples_ok},
              {"delta_num", c.numeric_tolerance}};
  if (c.transformation.identity_preserved)
    out["identity_preserved"] = *c.transformation.identity_preserved;
  return out;
}

} // namespace pgeneo
