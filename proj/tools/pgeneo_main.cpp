#include "pgeneo/builders.hpp"
#include "pgeneo/commands.hpp"
#include "pgeneo/instance.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

using namespace pgeneo;

struct Common {
  std::string instance;
  bool json = false;
  std::optional<double> delta_mem;
  std::optional<double> delta_num;

  void attach(CLI::App *app, bool needs_instance = true) {
    auto *opt = app->add_option("--instance", instance, "instance file (JSON)");
    if (needs_instance)
      opt->required();
    app->add_flag("--json", json, "machine-readable report");
    app->add_option("--delta-mem", delta_mem, "membership tolerance override");
    app->add_option("--delta-num", delta_num, "numeric slack override");
  }

  Instance load() const { return load_instance(instance, LoadOptions{delta_mem, delta_num}); }
};

GridOffset parse_offset(const std::string &text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw InvalidArgument("expected ROW,COL but got '" + text + "'");
  try {
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
  } catch (const std::exception &) {
    throw InvalidArgument("expected ROW,COL but got '" + text + "'");
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Certify and construct partial group equivariant non-expansive operators on "
               "finite instances"};
  app.require_subcommand(1);

  Common validate_opts;
  std::string triple;
  auto *validate = app.add_subcommand("validate", "check that a triple's ops are admissible");
  validate_opts.attach(validate);
  validate->add_option("--triple", triple, "triple name")->required();

  Common certify_opts;
  std::string op;
  auto *certify_cmd = app.add_subcommand("certify", "certify a tabulated operator pair");
  certify_opts.attach(certify_cmd);
  certify_cmd->add_option("--operator", op, "operator name")->required();

  Common combine_opts;
  cli::CombineRequest combine_req;
  std::string combine_out;
  auto *combine_cmd = app.add_subcommand("combine", "build a new operator from certified ones");
  combine_opts.attach(combine_cmd);
  combine_cmd
      ->add_option("--aggregator", combine_req.aggregator,
                   "max | min | convex:W,.. | power:P[:W,..] | sum:W,..")
      ->required();
  combine_cmd->add_option("--operators", combine_req.operators, "operator names")
      ->required()
      ->delimiter(',');
  combine_cmd->add_option("--output", combine_req.output, "name of the new operator")
      ->required();
  combine_cmd->add_option("--seed", combine_req.seed, "aggregator audit seed");
  combine_cmd->add_option("--trials", combine_req.audit_trials, "aggregator audit trials");
  combine_cmd->add_option("--write", combine_out, "output file (default: overwrite --instance)");

  Common cover_opts;
  std::string cover_target = "domain";
  cli::CoverRequest cover_req;
  auto *cover = app.add_subcommand("cover", "build and verify an epsilon-net");
  cover_opts.attach(cover);
  cover->add_option("--target", cover_target, "domain | ops | operators")->required();
  cover->add_option("--epsilon", cover_req.epsilon, "net radius")->required();
  cover->add_option("--space", cover_req.space, "space inducing D_X (target domain)");
  cover->add_option("--triple", cover_req.triple, "triple whose ops are covered (target ops)");
  cover->add_option("--operators", cover_req.operators, "family members (target operators)")
      ->delimiter(',');

  SquaresParams squares;
  std::string squares_out, shift = "4,4", origin = "1,1", variant = "standard";
  auto *demo = app.add_subcommand("demo-squares", "write the nested-squares instance");
  demo->add_option("--out", squares_out, "output file")->required();
  demo->add_option("--grid", squares.grid, "grid side in cells")->capture_default_str();
  demo->add_option("--side", squares.side, "square side")->capture_default_str();
  demo->add_option("--margin", squares.margin, "inner margin")->capture_default_str();
  demo->add_option("--shift", shift, "translation ROW,COL")->capture_default_str();
  demo->add_option("--origin", origin, "corner of Q1 ROW,COL")->capture_default_str();
  demo->add_option("--members", squares.members, "random images in Phi")->capture_default_str();
  demo->add_option("--seed", squares.seed, "image seed")->capture_default_str();
  demo->add_option("--variant", variant, "standard | overlap-equal")
      ->check(CLI::IsMember({"standard", "overlap-equal"}));

  std::string digit_out;
  auto *digit = app.add_subcommand("demo-digit", "write the rotated-digit instance");
  digit->add_option("--out", digit_out, "output file")->required();

  CyclicParams cyclic;
  std::string cyclic_out;
  auto *cyc = app.add_subcommand("demo-cyclic", "write a circular-convolution instance");
  cyc->add_option("--out", cyclic_out, "output file")->required();
  cyc->add_option("--n", cyclic.n, "points of the cycle")->capture_default_str();
  cyc->add_option("--members", cyclic.members, "random seed images")->capture_default_str();
  cyc->add_option("--seed", cyclic.seed, "image seed")->capture_default_str();
  cyc->add_flag("--group", cyclic.group, "use every shift and an orbit-closed Phi = Phi'");
  cyc->add_option("--shifts", cyclic.shifts, "shifts in S when not --group")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitInputError;
  }

  try {
    if (*validate)
      return cli::cmd_validate(validate_opts.load(), triple, validate_opts.json, std::cout);
    if (*certify_cmd)
      return cli::cmd_certify(certify_opts.load(), op, certify_opts.json, std::cout);
    if (*combine_cmd) {
      auto inst = combine_opts.load();
      const int code = cli::cmd_combine(inst, combine_req, combine_opts.json, std::cout);
      if (code == cli::kExitOk)
        save_instance(inst, combine_out.empty() ? combine_opts.instance : combine_out);
      return code;
    }
    if (*cover) {
      cover_req.target = cli::parse_cover_target(cover_target);
      return cli::cmd_cover(cover_opts.load(), cover_req, cover_opts.json, std::cout);
    }
    if (*demo) {
      squares.shift = parse_offset(shift);
      squares.origin = parse_offset(origin);
      squares.overlap_equal = variant == "overlap-equal";
      return cli::cmd_demo_squares(squares, squares_out, std::cout);
    }
    if (*digit) {
      save_instance(digit_instance(), digit_out);
      std::cout << "wrote rotated-digit instance to " << digit_out << "\n";
      return cli::kExitOk;
    }
    if (*cyc) {
      save_instance(cyclic_instance(cyclic), cyclic_out);
      std::cout << "wrote cyclic instance to " << cyclic_out << " (n " << cyclic.n
                << (cyclic.group ? ", all shifts" : "") << ")\n";
      return cli::kExitOk;
    }
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitInputError;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitInputError;
  }
  return cli::kExitInputError;
}
