#include "pgeneo/commands.hpp"

#include "pgeneo/covering.hpp"
#include "pgeneo/metrics.hpp"
#include "pgeneo/operations.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace pgeneo::cli {

using nlohmann::json;

namespace {

std::vector<double> parse_numbers(const std::string &text, const std::string &what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size())
        throw std::invalid_argument(item);
    } catch (const std::exception &) {
      throw InvalidArgument("cannot parse " + what + " '" + item + "'");
    }
  }
  return out;
}

json failures_json(const AdmissibilityReport &r, const TripleEntry &t) {
  json arr = json::array();
  for (const auto &f : r.failures) {
    json item = {{"op", t.ops.at(f.op)}, {"member", f.member}};
    if (f.nearest) {
      item["nearest"] = *f.nearest;
      item["gap"] = f.gap;
    } else {
      item["nearest"] = nullptr;
    }
    arr.push_back(item);
  }
  return arr;
}

std::string verdict(bool ok) { return ok ? "ok" : "FAILED"; }

void print_net(const EpsilonNet &net, std::size_t count,
               const std::vector<std::string> &names, std::ostream &out) {
  out << "epsilon            " << net.epsilon << "\n";
  out << "elements           " << count << "\n";
  out << "centers            " << net.centers.size() << "\n";
  out << "radius achieved    " << net.covering_radius << "\n";
  std::vector<std::size_t> histogram(net.centers.size(), 0);
  for (std::size_t a : net.assignment)
    ++histogram[a];
  for (std::size_t c = 0; c < net.centers.size(); ++c)
    out << "  center " << std::setw(4) << net.centers[c] << "  " << names[net.centers[c]]
        << "  covers " << histogram[c] << "\n";
}

json net_json(const EpsilonNet &net, const std::vector<std::string> &names) {
  std::vector<std::string> center_names;
  for (std::size_t c : net.centers)
    center_names.push_back(names[c]);
  return {{"epsilon", net.epsilon},
          {"centers", net.centers},
          {"center_names", center_names},
          {"covering_radius", net.covering_radius},
          {"assignment", net.assignment}};
}

} // namespace

int cmd_validate(const Instance &instance, const std::string &triple, bool as_json,
                 std::ostream &out) {
  const auto &entry = instance.triple(triple);
  const auto report = validate_perception_triple(*entry.triple);
  if (as_json) {
    out << json{{"triple", triple},
                {"admissible", report.admissible},
                {"vacuous", entry.ops.empty()},
                {"failures", failures_json(report, entry)}}
               .dump(2)
        << "\n";
  } else {
    out << "triple " << triple << " (" << entry.phi << ", " << entry.phi_prime << ", "
        << entry.ops.size() << " ops): " << (report.admissible ? "admissible" : "NOT admissible")
        << "\n";
    if (entry.ops.empty())
      out << "  note: S is empty, so the triple is vacuously admissible\n";
    for (const auto &f : report.failures) {
      out << "  op " << entry.ops.at(f.op) << ": member " << f.member << " of " << entry.phi
          << " is carried outside " << entry.phi_prime;
      if (f.nearest)
        out << " (nearest member " << *f.nearest << ", sup gap " << f.gap << ")";
      out << "\n";
    }
  }
  return report.admissible ? kExitOk : kExitCheckFailed;
}

int cmd_certify(const Instance &instance, const std::string &op, bool as_json,
                std::ostream &out) {
  const auto P = instance.operator_pair(op);
  const auto c = certify(P, instance.tolerances);
  const auto restriction = check_restriction(P);
  if (as_json) {
    json j = certificate_to_json(c);
    j["operator"] = op;
    j["restriction"] = restriction.applicable
                           ? json{{"applicable", true},
                                  {"max_gap", restriction.max_gap},
                                  {"witness", restriction.witness}}
                           : json{{"applicable", false}, {"reason", restriction.reason}};
    out << j.dump(2) << "\n";
  } else {
    const auto &e = instance.operators.at(op);
    out << "operator " << op << ": " << e.source << " -> " << e.target << "\n";
    out << "  equivariance residual   " << c.equivariance_residual;
    if (c.equivariance_residual > 0.0)
      out << "  (member " << c.residual_member << ", op " << c.residual_op << ")";
    out << "\n";
    out << "  translates in Phi'      " << verdict(c.missing_translates.empty()) << "\n";
    out << "  Lipschitz excess F      " << c.lipschitz_excess_F << "\n";
    out << "  Lipschitz excess F'     " << c.lipschitz_excess_F_prime << "\n";
    out << "  codomain                " << verdict(c.codomain_ok) << "\n";
    for (const auto &f : c.codomain_failures)
      out << "    " << (f.primed ? "F'" : "F") << " image of member " << f.member
          << " not found (nearest gap " << f.gap << ")\n";
    out << "  T homomorphism          " << verdict(c.homomorphism_ok) << " ("
        << c.transformation.composable_pairs << " composable pairs, "
        << c.transformation.inverse_pairs << " inverse pairs)\n";
    if (c.transformation.identity_preserved)
      out << "  T(id) = id              " << verdict(*c.transformation.identity_preserved)
          << "\n";
    out << "  triples admissible      " << verdict(c.triples_ok) << "\n";
    if (restriction.applicable)
      out << "  restriction F'|Phi - F  " << restriction.max_gap << "\n";
    else
      out << "  restriction check       not applicable: " << restriction.reason << "\n";
    out << "  verdict                 " << (c.certified ? "CERTIFIED" : "NOT certified")
        << " (delta_num " << c.numeric_tolerance << ")\n";
  }
  return c.certified ? kExitOk : kExitCheckFailed;
}

AggregatorSpec parse_aggregator(const std::string &text) {
  AggregatorSpec spec;
  const auto colon = text.find(':');
  spec.kind = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (spec.kind == "max" || spec.kind == "min") {
    if (!rest.empty())
      throw InvalidArgument("aggregator '" + spec.kind + "' takes no parameters");
  } else if (spec.kind == "convex" || spec.kind == "sum") {
    spec.weights = parse_numbers(rest, "weight");
    if (spec.kind == "sum")
      spec.mode = AggregatorSpec::Mode::convex_sum;
  } else if (spec.kind == "power") {
    const auto second = rest.find(':');
    const auto p = parse_numbers(rest.substr(0, second), "exponent");
    if (p.size() != 1)
      throw InvalidArgument("power aggregator needs exactly one exponent");
    spec.exponent = p[0];
    if (second != std::string::npos)
      spec.weights = parse_numbers(rest.substr(second + 1), "weight");
  } else {
    throw InvalidArgument("unknown aggregator '" + text + "'");
  }
  return spec;
}

Aggregator make_aggregator(const AggregatorSpec &spec, std::size_t arity) {
  auto weights = spec.weights;
  if (weights.empty() && (spec.kind == "power"))
    weights.assign(arity, 1.0 / static_cast<double>(arity));
  if (!weights.empty() && weights.size() != arity)
    throw InvalidArgument("aggregator has " + std::to_string(weights.size()) +
                          " weights for " + std::to_string(arity) + " operators");
  if (spec.kind == "max")
    return Aggregator::maximum(arity);
  if (spec.kind == "min")
    return Aggregator::minimum(arity);
  if (spec.kind == "power")
    return Aggregator::power_mean(spec.exponent, std::move(weights));
  return Aggregator::convex(std::move(weights));
}

int cmd_combine(Instance &instance, const CombineRequest &request, bool as_json,
                std::ostream &out) {
  if (request.operators.empty())
    throw InvalidArgument("combine: no operators given");
  if (request.output.empty())
    throw InvalidArgument("combine: output operator name is empty");
  if (instance.operators.count(request.output))
    throw InvalidArgument("combine: operator '" + request.output + "' already exists");
  std::vector<OperatorPair> parts;
  for (const auto &name : request.operators)
    parts.push_back(instance.operator_pair(name));
  const auto spec = parse_aggregator(request.aggregator);

  std::optional<Construction> built;
  try {
    if (spec.mode == AggregatorSpec::Mode::convex_sum) {
      built.emplace(convex_combine(parts, spec.weights, instance.tolerances));
    } else {
      CombineOptions options;
      options.audit_trials = request.audit_trials;
      options.seed = request.seed;
      options.tol = instance.tolerances;
      built.emplace(combine(make_aggregator(spec, parts.size()), parts, options));
    }
  } catch (const PreconditionError &e) {
    if (as_json)
      out << json{{"output", request.output}, {"written", false}, {"error", e.what()}}.dump(2)
          << "\n";
    else
      out << "combine failed: " << e.what() << "\nnothing written\n";
    return kExitCheckFailed;
  }

  const auto &c = built->certificate;
  const auto &first = instance.operators.at(request.operators.front());
  if (c.certified)
    instance.add_operator(request.output, first.source, first.target, built->pair,
                          certificate_to_json(c));
  if (as_json) {
    out << json{{"output", request.output},
                {"written", c.certified},
                {"certificate", certificate_to_json(c)}}
               .dump(2)
        << "\n";
  } else {
    out << "combined " << request.operators.size() << " operators with "
        << request.aggregator << " into " << request.output << "\n";
    out << "  equivariance residual " << c.equivariance_residual << "\n";
    out << "  Lipschitz excess      " << std::max(c.lipschitz_excess_F, c.lipschitz_excess_F_prime)
        << "\n";
    for (const auto &f : c.codomain_failures)
      out << "  codomain hypothesis fails: " << (f.primed ? "F'" : "F") << " image of member "
          << f.member << " is outside "
          << (f.primed ? first.target + ".phi_prime" : first.target + ".phi") << "\n";
    out << "  " << (c.certified ? "CERTIFIED, written" : "NOT certified, nothing written")
        << "\n";
  }
  return c.certified ? kExitOk : kExitCheckFailed;
}

CoverTarget parse_cover_target(const std::string &text) {
  if (text == "domain")
    return CoverTarget::domain;
  if (text == "ops")
    return CoverTarget::ops;
  if (text == "operators")
    return CoverTarget::operators;
  throw InvalidArgument("unknown cover target '" + text + "' (domain, ops or operators)");
}

int cmd_cover(const Instance &instance, const CoverRequest &request, bool as_json,
              std::ostream &out) {
  json report;
  switch (request.target) {
  case CoverTarget::domain: {
    auto it = instance.spaces.find(request.space);
    if (it == instance.spaces.end())
      throw InstanceError("unknown space '" + request.space + "'");
    const auto &space = it->second.space;
    const auto cover = cover_domain(space, request.epsilon, instance.tolerances);
    const auto &labels = space.domain()->labels();
    if (as_json) {
      report = net_json(cover.net, labels);
      report["target"] = "domain";
      report["space"] = request.space;
      report["stability_gap"] = cover.stability_gap;
      report["stability_ok"] = cover.stability_ok;
      report["member_net_size"] = cover.member_net.centers.size();
    } else {
      out << "cover of the points of domain '" << it->second.domain << "' under D_X^"
          << request.space << "\n";
      print_net(cover.net, labels.size(), labels, out);
      out << "thinning " << request.space << " to " << cover.member_net.centers.size()
          << " members moves D_X by at most " << cover.stability_gap << " (bound 2*epsilon): "
          << verdict(cover.stability_ok) << "\n";
    }
    if (!cover.stability_ok) {
      if (as_json)
        out << report.dump(2) << "\n";
      return kExitCheckFailed;
    }
    break;
  }
  case CoverTarget::ops: {
    const auto &entry = instance.triple(request.triple);
    const auto net = cover_operations(*entry.triple, request.epsilon);
    if (as_json) {
      report = net_json(net, entry.ops);
      report["target"] = "ops";
      report["triple"] = request.triple;
    } else {
      out << "cover of the ops of triple '" << request.triple << "' under D_Aut^" << entry.phi
          << "\n";
      print_net(net, entry.ops.size(), entry.ops, out);
    }
    break;
  }
  case CoverTarget::operators: {
    std::vector<std::string> names = request.operators;
    std::vector<OperatorPair> family;
    if (names.empty()) {
      if (instance.operators.empty())
        throw InvalidArgument("cover: the instance has no operators");
      const auto first = instance.operator_pair(instance.operators.begin()->first);
      for (const auto &[name, e] : instance.operators) {
        auto P = instance.operator_pair(name);
        if (same_triple(P.source_ptr(), first.source_ptr()) &&
            same_triple(P.target_ptr(), first.target_ptr()) &&
            same_transformation(P.T_ptr(), first.T_ptr())) {
          names.push_back(name);
          family.push_back(std::move(P));
        }
      }
    } else {
      for (const auto &name : names)
        family.push_back(instance.operator_pair(name));
    }
    const auto net = cover_operator_family(family, request.epsilon, instance.tolerances);
    if (as_json) {
      report = net_json(net, names);
      report["target"] = "operators";
      report["scope"] = "supplied family only";
    } else {
      out << "cover of " << names.size() << " operators under D_P-GENEO\n";
      print_net(net, names.size(), names, out);
      out << "note: coverage is certified for the supplied family only\n";
    }
    break;
  }
  }
  if (as_json)
    out << report.dump(2) << "\n";
  return kExitOk;
}

int cmd_demo_squares(const SquaresParams &params, const std::string &path, std::ostream &out) {
  const auto instance = squares_instance(params);
  save_instance(instance, path);
  out << "wrote nested-squares instance to " << path << " (grid " << params.grid << ", side "
      << params.side << ", margin " << params.margin << ", shift " << params.shift.row << ","
      << params.shift.col << ")\n";
  return kExitOk;
}

} // namespace pgeneo::cli
